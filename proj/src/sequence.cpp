#include "hyperpol/sequence.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hyperpol {

double PulseModel::rabi_frequency() const { return std::numbers::pi / tau_pi; }

double SequenceParams::nominal_repetition_time() const {
  return 2.0 * t_s + t_w + 4.0 * n_p * tau + effective_t_c();
}

std::vector<std::string> validate(const SequenceParams& seq) {
  std::vector<std::string> out;
  if (seq.n_p < 1) out.emplace_back("n_p must be >= 1");
  if (seq.n_r < 1) out.emplace_back("n_r must be >= 1");
  if (!(seq.tau >= 0.0)) out.emplace_back("tau negative");
  if (!(seq.t_s >= 0.0)) out.emplace_back("t_s negative");
  if (!(seq.t_w >= 0.0)) out.emplace_back("t_w negative");
  if (!(seq.t_c >= 0.0)) out.emplace_back("t_c negative");
  if (seq.pulse.is_finite()) {
    if (!(seq.pulse.tau_pi > 0.0)) {
      out.emplace_back("tau_pi must be positive");
    } else if (seq.pulse.placement == PulsePlacement::centered && seq.tau < seq.pulse.tau_pi) {
      out.emplace_back("pulse longer than interval: tau must be >= tau_pi");
    }
  }
  return out;
}

std::vector<std::string> validate(const SystemParams& sys) {
  std::vector<std::string> out;
  if (!(sys.omega > 0.0)) out.emplace_back("omega must be positive");
  if (!(sys.a_perp >= 0.0)) out.emplace_back("a_perp negative");
  if (!std::isfinite(sys.a_z)) out.emplace_back("a_z not finite");
  return out;
}

namespace {

class Renderer {
 public:
  explicit Renderer(const SequenceParams& seq) : seq_(seq) {
    if (seq.pulse.is_finite()) {
      pi_duration_ = seq.pulse.tau_pi;
      half_pi_duration_ = 0.5 * seq.pulse.tau_pi;
      if (seq.pulse.placement == PulsePlacement::centered) {
        free_half_ = 0.5 * (seq.tau - seq.pulse.tau_pi);
      } else {
        free_half_ = 0.5 * seq.tau;
      }
    } else {
      free_half_ = 0.5 * seq.tau;
    }
  }

  void dd_block(Axis half_pi_axis, Axis pi_axis) {
    pulse(half_pi_axis, std::numbers::pi / 2, half_pi_duration_);
    for (int k = 0; k < seq_.n_p; ++k) {
      free(SegmentKind::free_hyperfine, free_half_);
      pulse(pi_axis, std::numbers::pi, pi_duration_);
      free(SegmentKind::free_hyperfine, free_half_);
    }
    pulse(half_pi_axis, std::numbers::pi / 2, half_pi_duration_);
  }

  void wait(double duration) { free(SegmentKind::free_nuclear, duration); }

  std::vector<Segment> take() { return std::move(segments_); }

 private:
  void pulse(Axis axis, double angle, double duration) {
    segments_.push_back({SegmentKind::pulse, duration, axis, angle});
  }
  void free(SegmentKind kind, double duration) { segments_.push_back({kind, duration, Axis::plus_x, 0.0}); }

  const SequenceParams& seq_;
  double pi_duration_ = 0.0;
  double half_pi_duration_ = 0.0;
  double free_half_ = 0.0;
  std::vector<Segment> segments_;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

}  // namespace

Timeline render_unit(const SystemParams& sys, const SequenceParams& seq) {
  auto problems = validate(seq);
  auto sys_problems = validate(sys);
  problems.insert(problems.end(), sys_problems.begin(), sys_problems.end());
  if (!problems.empty()) throw std::invalid_argument("invalid parameters: " + join(problems));

  Renderer r(seq);
  for (int rep = 0; rep < seq.n_r; ++rep) {
    r.dd_block(Axis::plus_y, Axis::minus_x);
    r.wait(seq.t_s);
    r.dd_block(Axis::plus_x, Axis::plus_y);
    r.wait(seq.t_w);
    r.dd_block(Axis::plus_y, Axis::minus_x);
    r.wait(seq.t_s);
    r.dd_block(Axis::plus_x, Axis::plus_y);
    if (seq.n_r > 1) r.wait(seq.t_c);
  }

  Timeline t;
  t.segments = r.take();
  t.n_r = seq.n_r;
  t.nominal_repetition = seq.nominal_repetition_time();
  t.actual_repetition = total_duration(t) / seq.n_r;
  if (!seq.pulse.is_finite()) t.actual_repetition = t.nominal_repetition;
  return t;
}

double total_duration(const Timeline& t) {
  return std::accumulate(t.segments.begin(), t.segments.end(), 0.0,
                         [](double acc, const Segment& s) { return acc + s.duration; });
}

std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::plus_x: return "+x";
    case Axis::minus_x: return "-x";
    case Axis::plus_y: return "+y";
    case Axis::minus_y: return "-y";
  }
  return "?";
}

std::string to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::free_hyperfine: return "free_hyperfine";
    case SegmentKind::free_nuclear: return "free_nuclear";
    case SegmentKind::pulse: return "pulse";
  }
  return "?";
}

}  // namespace hyperpol
