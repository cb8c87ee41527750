#include <cmath>
#include <numbers>

#include "hyperpol/sweep.hpp"

namespace hyperpol {

namespace {

// Rate at a trial interval; -inf where the timeline cannot be rendered, zero where the
// channel does not converge.
double trial_rate(const SystemParams& sys, SequenceParams seq, double tau) {
  seq.tau = tau;
  if (!validate(seq).empty()) return -INFINITY;
  try {
    return exact_rate(sys, seq);
  } catch (const std::invalid_argument&) {
    return -INFINITY;
  } catch (const std::runtime_error&) {
    return 0.0;
  }
}

}  // namespace

TauSearchResult find_tau_res(const SystemParams& sys, const SequenceParams& seq, double tau_pi,
                             double search_halfwidth, double grid_step) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
  if (!(search_halfwidth >= 0.0)) throw std::invalid_argument("search_halfwidth must be >= 0");
  SequenceParams base = seq;
  const PulsePlacement placement = seq.pulse.placement;
  base.pulse = tau_pi > 0.0 ? PulseModel::finite(tau_pi, placement) : PulseModel::ideal();

  TauSearchResult res;
  res.tau_center = finite_pulse_tau(seq.tau, tau_pi, seq.n_p);

  const int half = static_cast<int>(std::floor(search_halfwidth / grid_step + 1e-9));
  double best_tau = res.tau_center;
  double best = -INFINITY;
  for (int i = -half; i <= half; ++i) {
    const double tau = res.tau_center + i * grid_step;
    const double g = trial_rate(sys, base, tau);
    if (g > best) {  // strict: ties keep the smaller tau
      best = g;
      best_tau = tau;
    }
  }
  if (!(best > 0.0)) throw NoResonanceError("no tau in the search window polarizes the nucleus");

  // Golden-section refinement inside the neighbouring grid cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_tau - grid_step;
  double b = best_tau + grid_step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = trial_rate(sys, base, c);
  double gd = trial_rate(sys, base, d);
  while (b - a > grid_step / 5.0) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = trial_rate(sys, base, c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = trial_rate(sys, base, d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double gm = trial_rate(sys, base, mid);
  res.tau = gm >= best ? mid : best_tau;
  res.gamma = std::max(gm, best);
  return res;
}

}  // namespace hyperpol
