#include "twoatom/timescales.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "twoatom/entanglement.hpp"
#include "twoatom/nonlocality.hpp"

namespace twoatom {

namespace {

constexpr double kFirstProbe = 1.0 / 16.0;
constexpr double kProbeCap = 64.0;
constexpr int kPersistenceSamples = 32;
constexpr double kPersistenceWindow = 4.0;

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw Error(ErrorCode::Domain, "rate gamma must be positive and finite");
}

void require_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi))
    throw Error(ErrorCode::Domain, std::string(name) + " outside [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]: " + std::to_string(v));
}

TimescaleResult closed(double gamma_t, double gamma) {
  TimescaleResult r;
  r.time = gamma_t / gamma;
  r.method = TimescaleMethod::closed_form;
  return r;
}

// First tau (= gamma t) where `crossed` holds. `crossed` must be false at 0.
Bracket first_crossing(const std::function<bool(double)>& crossed, double tol, const char* what) {
  double lo = 0.0;
  double hi = kFirstProbe;
  while (!crossed(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kProbeCap)
      throw Error(ErrorCode::NoBracket,
                  std::string(what) + " did not reach zero by gamma*t = " + std::to_string(kProbeCap));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (crossed(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

TimescaleResult numeric_result(const Bracket& b, double gamma, double residual) {
  TimescaleResult r;
  r.method = TimescaleMethod::numeric;
  r.time = b.hi / gamma;
  r.bracket = Bracket{b.lo / gamma, b.hi / gamma};
  r.residual = residual;
  return r;
}

TimescaleResult zero_numeric(double residual) {
  TimescaleResult r;
  r.method = TimescaleMethod::numeric;
  r.bracket = Bracket{0.0, 0.0};
  r.residual = residual;
  return r;
}

void require_tol(const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::Domain, "root tolerance must be positive");
}

}  // namespace

TimescaleResult disentanglement_time_numeric(const DensityMatrix4& rho0, double gamma,
                                             const SolverOptions& opts) {
  require_gamma(gamma);
  require_tol(opts);
  const double c0 = concurrence(rho0);
  if (c0 <= opts.zero_threshold) return zero_numeric(c0);

  // Work at unit rate; the propagator only depends on gamma*t.
  const auto state_at = [&](double tau) { return evolve_numeric(rho0, tau, 1.0, opts.evolution); };
  const Bracket b = first_crossing([&](double tau) { return concurrence_margin(state_at(tau)) <= 0.0; },
                                   opts.tol, "concurrence");
  TimescaleResult r = numeric_result(b, gamma, concurrence(state_at(b.hi)));

  for (int k = 1; k <= kPersistenceSamples; ++k) {
    const double tau = b.hi + kPersistenceWindow * k / kPersistenceSamples;
    if (!is_separable_ppt(state_at(tau))) {
      r.revival_detected = true;
      break;
    }
  }
  return r;
}

TimescaleResult locality_time_numeric(const DensityMatrix4& rho0, double gamma, const SolverOptions& opts) {
  require_gamma(gamma);
  require_tol(opts);
  const double n0 = n_value(rho0);
  if (n0 <= opts.zero_threshold) return zero_numeric(n0);

  const auto state_at = [&](double tau) { return evolve_numeric(rho0, tau, 1.0, opts.evolution); };
  const Bracket b =
      first_crossing([&](double tau) { return m_value(state_at(tau)) <= 1.0; }, opts.tol, "m - 1");
  return numeric_result(b, gamma, n_value(state_at(b.hi)));
}

TimescaleResult t_d_single_excitation(double c0, double gamma) {
  require_gamma(gamma);
  require_range(c0, 0.0, 1.0, "concurrence");
  return closed(0.5 * std::log(c0 + std::sqrt(1.0 + c0 * c0)), gamma);
}

TimescaleResult t_d_pure(double c, double gamma) {
  require_gamma(gamma);
  require_range(c, 0.0, 1.0, "concurrence c");
  return closed(0.5 * std::log(c + std::sqrt(1.0 + c * c)), gamma);
}

TimescaleResult t_d_werner(double p, double gamma) {
  require_gamma(gamma);
  require_range(p, 0.0, 1.0, "Werner weight p");
  if (p <= 1.0 / 3.0) return closed(0.0, gamma);
  return closed(0.5 * std::log(p + std::sqrt(p * (1.0 + p))), gamma);
}

double mems_lower_branch(double c, double radical_coefficient) {
  const double q = 36.0 * c * c + 10.0;
  return 0.25 * std::log(5.0 / 9.0 + 2.0 * c * c + radical_coefficient * std::sqrt(q * q - 36.0));
}

double mems_upper_branch(double c) {
  return 0.25 * std::log(1.0 - 2.0 * c + 4.0 * c * c +
                         2.0 * std::sqrt(2.0) * c * std::sqrt(1.0 - 2.0 * c + 2.0 * c * c));
}

TimescaleResult t_d_mems(double c, double gamma) {
  require_gamma(gamma);
  require_range(c, 0.0, 1.0, "concurrence c");
  return closed(c <= 2.0 / 3.0 ? mems_lower_branch(c) : mems_upper_branch(c), gamma);
}

double pure_locality_switch_point() { return std::pow(2.0, -0.25); }

PureLocalityTimes t_loc_pure(double c, double gamma) {
  require_gamma(gamma);
  require_range(c, 0.0, 1.0, "concurrence c");
  PureLocalityTimes out;
  const double c2 = c * c;
  out.assumed_pair = closed(0.25 * std::log(0.5 * (c2 + std::sqrt(4.0 + c2 * c2))), gamma);
  out.assumed_pair_valid = c <= pure_locality_switch_point();
  out.largest_pair = out.assumed_pair_valid ? out.assumed_pair : closed(0.25 * std::log(2.0 * c2), gamma);
  return out;
}

TimescaleResult t_loc_werner(double p, double gamma) {
  require_gamma(gamma);
  require_range(p, 0.0, 1.0, "Werner weight p");
  if (p <= 1.0 / std::sqrt(2.0)) return closed(0.0, gamma);
  return closed(0.25 * std::log(2.0 * p * p), gamma);
}

TimescaleResult t_loc_mems(double c, double gamma) {
  require_gamma(gamma);
  require_range(c, 0.0, 1.0, "concurrence c");
  if (c <= 1.0 / std::sqrt(2.0)) return closed(0.0, gamma);
  return closed(0.25 * std::log(2.0 * c * c), gamma);
}

double decoherence_rate(const DensityMatrix4& pure, double gamma) {
  require_gamma(gamma);
  const double s0 = linear_entropy(pure);
  if (s0 > 1e-9) throw Error(ErrorCode::NotPure, "decoherence rate needs a pure state", s0);
  const EvolutionConfig cfg{Method::expm, 1000};
  const auto entropy_at = [&](double t) { return linear_entropy(propagate(pure.matrix(), t, gamma, cfg)); };
  const auto central = [&](double h) { return (entropy_at(h) - entropy_at(-h)) / (2.0 * h); };
  const double h = 1e-5 / gamma;
  const double slope = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  return 0.5 * slope;
}

}  // namespace twoatom
