#include "ptide/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptide {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PSchedule PSchedule::constant(double p) {
  PSchedule s;
  s.kind = ScheduleKind::constant;
  s.p_const = p;
  return s;
}

PSchedule PSchedule::cosine(double p_mid, double p_amp, double period, double phase) {
  PSchedule s;
  s.kind = ScheduleKind::cosine_tidal;
  s.p_mid = p_mid;
  s.p_amp = p_amp;
  s.period = period;
  s.phase = phase;
  return s;
}

PSchedule PSchedule::alternating(double p_a, double p_b, long interval) {
  PSchedule s;
  s.kind = ScheduleKind::alternating;
  s.alt_values = {p_a, p_b};
  s.alt_interval = interval;
  return s;
}

PSchedule PSchedule::pulse_tidal(double pulse_p, long pulse_len, double p_a, double p_b,
                                 long interval) {
  PSchedule s = alternating(p_a, p_b, interval);
  s.kind = ScheduleKind::pulse_tidal;
  s.pulse_p = pulse_p;
  s.pulse_len = pulse_len;
  return s;
}

void PSchedule::validate() const {
  if (kind == ScheduleKind::cosine_tidal && !(period > 0.0))
    throw std::invalid_argument("PSchedule: period must be > 0");
  if ((kind == ScheduleKind::alternating || kind == ScheduleKind::pulse_tidal) &&
      alt_interval <= 0)
    throw std::invalid_argument("PSchedule: alt_interval must be > 0");
  if (kind == ScheduleKind::pulse_tidal && pulse_len < 0)
    throw std::invalid_argument("PSchedule: pulse_len must be >= 0");
}

namespace {

double alternating_at(const PSchedule& s, double t) {
  const long block = static_cast<long>(std::floor(t / static_cast<double>(s.alt_interval)));
  return s.alt_values[static_cast<std::size_t>(block % 2)];
}

// Exact integral of the alternating step function over [0, h].
double alternating_integral(const PSchedule& s, double h) {
  const double L = static_cast<double>(s.alt_interval);
  const long full = static_cast<long>(std::floor(h / L));
  const long pairs = full / 2;
  double acc = static_cast<double>(pairs) * L * (s.alt_values[0] + s.alt_values[1]);
  if (full % 2 == 1) acc += L * s.alt_values[0];
  const double rem = h - static_cast<double>(full) * L;
  acc += rem * s.alt_values[static_cast<std::size_t>(full % 2)];
  return acc;
}

}  // namespace

double PSchedule::p_at(double t) const {
  if (t < 0.0) throw std::invalid_argument("PSchedule::p_at: t must be >= 0");
  switch (kind) {
    case ScheduleKind::constant:
      return p_const;
    case ScheduleKind::cosine_tidal:
      return p_mid + p_amp * std::sin(kTwoPi * t / period + phase);
    case ScheduleKind::alternating:
      return alternating_at(*this, t);
    case ScheduleKind::pulse_tidal:
      if (t < static_cast<double>(pulse_len)) return pulse_p;
      return alternating_at(*this, t - static_cast<double>(pulse_len));
  }
  throw std::logic_error("PSchedule::p_at: unknown kind");
}

double PSchedule::p_eff(double horizon) const {
  if (!(horizon > 0.0)) throw std::invalid_argument("PSchedule::p_eff: horizon must be > 0");
  switch (kind) {
    case ScheduleKind::constant:
      return p_const;
    case ScheduleKind::cosine_tidal: {
      // integral of sin(2*pi*t/T + phi) over [0,h] = T/(2*pi) * (cos phi - cos(2*pi*h/T + phi))
      const double s = period / kTwoPi *
                       (std::cos(phase) - std::cos(kTwoPi * horizon / period + phase));
      return p_mid + p_amp * s / horizon;
    }
    case ScheduleKind::alternating:
      return alternating_integral(*this, horizon) / horizon;
    case ScheduleKind::pulse_tidal: {
      const double pl = static_cast<double>(pulse_len);
      if (horizon <= pl) return pulse_p;
      return (pulse_p * pl + alternating_integral(*this, horizon - pl)) / horizon;
    }
  }
  throw std::logic_error("PSchedule::p_eff: unknown kind");
}

}  // namespace ptide
