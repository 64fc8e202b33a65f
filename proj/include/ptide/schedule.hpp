#pragma once

#include <array>

namespace ptide {

enum class ScheduleKind { constant, cosine_tidal, pulse_tidal, alternating };

// Maps a step index (or continuous time) to the second-moment exponent p.
//
//   constant     p(t) = p_const
//   cosine_tidal p(t) = p_mid + p_amp * sin(2*pi*t/period + phase)
//   alternating  p(t) = alt_values[floor(t/alt_interval) mod 2]
//   pulse_tidal  p(t) = pulse_p for t < pulse_len, then alternating with
//                its clock restarted at 0
//
// The schedule is unit-agnostic; callers own the time convention.
struct PSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double p_const = 0.0;

  double p_mid = 0.0;
  double p_amp = 0.0;
  double period = 1.0;
  double phase = 0.0;

  double pulse_p = 0.0;
  long pulse_len = 0;

  std::array<double, 2> alt_values{0.0, 0.0};
  long alt_interval = 1;

  static PSchedule constant(double p);
  static PSchedule cosine(double p_mid, double p_amp, double period, double phase = 0.0);
  static PSchedule alternating(double p_a, double p_b, long interval);
  static PSchedule pulse_tidal(double pulse_p, long pulse_len, double p_a, double p_b,
                               long interval);

  void validate() const;

  // Exponent at time t >= 0; throws std::invalid_argument for t < 0.
  double p_at(double t) const;

  // Time-average (1/horizon) * integral of p over [0, horizon]; closed form
  // for constant/cosine, exact piecewise integration for the step policies.
  double p_eff(double horizon) const;
};

}  // namespace ptide
