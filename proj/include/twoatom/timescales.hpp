#pragma once

#include <optional>

#include "twoatom/core.hpp"
#include "twoatom/dynamics.hpp"

namespace twoatom {

enum class TimescaleMethod { closed_form, numeric };

struct Bracket {
  double lo;
  double hi;
};

/// A characteristic time, in the same time units as 1/gamma.
struct TimescaleResult {
  double time = 0.0;
  TimescaleMethod method = TimescaleMethod::closed_form;
  /// Final bisection interval (numeric results only).
  std::optional<Bracket> bracket;
  /// Monitored quantity at `time`: concurrence for t_d, n(rho) for t_loc.
  double residual = 0.0;
  /// Set when an entangled sample was found after t_d.
  bool revival_detected = false;
};

struct SolverOptions {
  /// Root tolerance in units of gamma*t.
  double tol = 1e-8;
  /// Propagator used for each trial time.
  EvolutionConfig evolution{Method::expm, 1000};
  /// Concurrence (resp. m - 1) at or below this counts as zero at t = 0.
  double zero_threshold = 1e-9;
};

/// Smallest t with rho(t) separable, by doubling from gamma*t = 1/16 and
/// bisecting on the concurrence; afterwards samples the PPT test on
/// (t_d, t_d + 4/gamma] and flags any entangled sample.
/// Throws Error{NoBracket} if still entangled at gamma*t = 64.
TimescaleResult disentanglement_time_numeric(const DensityMatrix4& rho0, double gamma,
                                             const SolverOptions& opts = {});

/// First t with m(rho(t)) <= 1, located the same way. Always uses the full
/// eigenvalue computation of m.
TimescaleResult locality_time_numeric(const DensityMatrix4& rho0, double gamma,
                                      const SolverOptions& opts = {});

// Closed forms. All return times in units of 1/gamma.

/// States supported on span{f2, f3} (single excitation): asinh(C)/(2 gamma).
TimescaleResult t_d_single_excitation(double c0, double gamma);
TimescaleResult t_d_pure(double c, double gamma);
/// ln(p + sqrt(p(1+p)))/(2 gamma) for p > 1/3, else 0.
TimescaleResult t_d_werner(double p, double gamma);

/// gamma*t_d of mems(c) for c <= 2/3:
///   ln(5/9 + 2c^2 + k sqrt((36c^2 + 10)^2 - 36)) / 4.
/// k = 1/18 vanishes at c = 0 and joins the upper branch at c = 2/3; k = 1/16
/// does neither and is kept only so the two can be compared.
inline constexpr double kMemsRadicalCoefficient = 1.0 / 18.0;
double mems_lower_branch(double c, double radical_coefficient = kMemsRadicalCoefficient);
/// gamma*t_d of mems(c) for c >= 2/3:
///   ln(1 - 2c + 4c^2 + 2 sqrt2 c sqrt(1 - 2c + 2c^2)) / 4.
double mems_upper_branch(double c);
TimescaleResult t_d_mems(double c, double gamma);

/// Locality time of pure_phi(c). `assumed_pair` solves x^2 + c^2 x = 1
/// (x = e^{-4 gamma t}) and is correct only for c <= 2^{-1/4}; `largest_pair`
/// uses the true two largest eigenvalues and switches to ln(2c^2)/(4 gamma)
/// beyond that point.
struct PureLocalityTimes {
  TimescaleResult assumed_pair;
  TimescaleResult largest_pair;
  bool assumed_pair_valid = true;
};
PureLocalityTimes t_loc_pure(double c, double gamma);
/// 2^{-1/4}: where the pair of largest eigenvalues changes.
double pure_locality_switch_point();

/// ln(2p^2)/(4 gamma) for p > 1/sqrt2, else 0.
TimescaleResult t_loc_werner(double p, double gamma);
/// ln(2c^2)/(4 gamma) for c > 1/sqrt2, else 0.
TimescaleResult t_loc_mems(double c, double gamma);

/// Half the initial growth rate of the linear entropy of a pure state,
/// by a Richardson-extrapolated central difference with h = 1e-5/gamma.
/// Throws Error{NotPure}.
double decoherence_rate(const DensityMatrix4& pure, double gamma);

}  // namespace twoatom
