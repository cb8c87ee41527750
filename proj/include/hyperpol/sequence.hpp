#pragma once

// Protocol parameters and their rendering to a piecewise-constant timeline.
//
// One initialization cycle is N_R repetitions of
//   DDX, wait t_S, DDY, wait t_W, DDX, wait t_S, DDY, wait t_C
// with
//   DDX = half-pi(+y) . [tau/2, pi(-x), tau/2]^{N_p} . half-pi(+y)
//   DDY = half-pi(+x) . [tau/2, pi(+y), tau/2]^{N_p} . half-pi(+x)
// Intervals inside a DD block evolve under the full hyperfine Hamiltonian; waits evolve
// the nucleus alone under omega I_z.

#include <string>
#include <vector>

namespace hyperpol {

struct SystemParams {
  double omega = 1.0;   // nuclear Larmor frequency
  double a_perp = 0.0;  // transverse hyperfine coupling
  double a_z = 0.0;     // longitudinal hyperfine coupling
};

enum class PulseKind { ideal, finite };

// Where a finite pi pulse sits relative to its DD interval.
//   centered: the pulse occupies the middle of the interval, so the free halves shrink to
//             (tau - tau_pi)/2 and the pulse-to-pulse period stays tau.
//   appended: the free halves keep tau/2 and every pi pulse adds tau_pi to the block.
// Half-pi pulses always add their duration.
enum class PulsePlacement { centered, appended };

struct PulseModel {
  PulseKind kind = PulseKind::ideal;
  double tau_pi = 0.0;  // pi-pulse duration; half-pi pulses last tau_pi / 2
  PulsePlacement placement = PulsePlacement::centered;

  static PulseModel ideal() { return {}; }
  static PulseModel finite(double tau_pi, PulsePlacement placement = PulsePlacement::centered) {
    return {PulseKind::finite, tau_pi, placement};
  }
  bool is_finite() const { return kind == PulseKind::finite; }
  // Omega = pi / tau_pi.
  double rabi_frequency() const;
};

struct SequenceParams {
  int n_p = 1;
  double tau = 0.0;
  double t_s = 0.0;
  double t_w = 0.0;
  double t_c = 0.0;  // ignored when n_r == 1
  int n_r = 1;
  PulseModel pulse;

  // t_c as used by the protocol: zero for a single repetition.
  double effective_t_c() const { return n_r == 1 ? 0.0 : t_c; }
  // 2 t_S + t_W + 4 N_p tau + t_C for one repetition, pulses excluded.
  double nominal_repetition_time() const;
};

enum class SegmentKind { free_hyperfine, free_nuclear, pulse };
enum class Axis { plus_x, minus_x, plus_y, minus_y };

struct Segment {
  SegmentKind kind = SegmentKind::free_nuclear;
  double duration = 0.0;
  Axis axis = Axis::plus_x;  // pulses only
  double angle = 0.0;        // pulses only: pi or pi/2

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Timeline {
  std::vector<Segment> segments;
  int n_r = 1;
  double nominal_repetition = 0.0;  // T
  double actual_repetition = 0.0;   // T including finite pulse durations

  double nominal_cycle() const { return n_r * nominal_repetition; }
  double actual_cycle() const { return n_r * actual_repetition; }

  friend bool operator==(const Timeline&, const Timeline&) = default;
};

// Return an empty list when the parameters are usable.
std::vector<std::string> validate(const SequenceParams& seq);
std::vector<std::string> validate(const SystemParams& sys);

// Renders one initialization cycle. Throws std::invalid_argument on invalid parameters.
Timeline render_unit(const SystemParams& sys, const SequenceParams& seq);

// Sum of segment durations.
double total_duration(const Timeline& t);

std::string to_string(Axis axis);
std::string to_string(SegmentKind kind);

}  // namespace hyperpol
