#pragma once

#include "twoatom/core.hpp"

namespace twoatom {

using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

/// Row-major vectorization: vec(X)[4*i + j] = X(i, j).
Vector16 vectorize(const Matrix4& m);
Matrix4 unvectorize(const Vector16& v);

/// Right-hand side of the single-atom master equation with absorption rate
/// `gamma_up` and emission rate `gamma_down`:
///   1/2 G_up   ([s+, rho s-] + [s+ rho, s-])
/// + 1/2 G_down ([s-, rho s+] + [s- rho, s+])
Matrix2 single_qubit_rhs(const DensityMatrix2& rho, double gamma_up, double gamma_down);

/// Thermal rates G_up = gamma0 n, G_down = gamma0 (1 + n), n = 1/(e^{beta w0} - 1).
struct ThermalRates {
  double up;
  double down;
};
ThermalRates thermal_rates(double gamma0, double beta_omega0);

/// Infinite-temperature single-atom semigroup, solved exactly: the population
/// imbalance decays as e^{-2 G t}, the coherence as e^{-G t}.
DensityMatrix2 evolve_single_qubit(const DensityMatrix2& rho, double t, double gamma);

/// Generator of two independent atoms in infinite-temperature baths,
///   L(rho) = G (sum_{X=A,B} s+^X rho s-^X + s-^X rho s+^X  -  2 rho),
/// as a 16x16 superoperator on row-major vectorized states.
class Liouvillian {
 public:
  explicit Liouvillian(double gamma);

  double gamma() const noexcept { return gamma_; }
  const Matrix16& matrix() const noexcept { return matrix_; }

  Matrix4 apply(const Matrix4& rho) const;

 private:
  double gamma_;
  Matrix16 matrix_;
};

Liouvillian build_liouvillian(double gamma);

/// Same generator evaluated directly with 4x4 matrix products.
Matrix4 liouvillian_rhs(const Matrix4& rho, double gamma);

/// Time derivative of every collective-basis element (e, s, a, g order).
CollectiveComponents collective_rhs(const CollectiveComponents& comp, double gamma);

enum class Method { rk4, expm };

struct EvolutionConfig {
  Method method = Method::rk4;
  int steps_per_unit_gamma_t = 1000;
};

/// Scaling-and-squaring exponential of a 16x16 matrix (Taylor core).
Matrix16 expm(const Matrix16& a);

/// e^{tL} applied to an arbitrary matrix; t may be negative for expm. No
/// validation of the result.
Matrix4 propagate(const Matrix4& rho0, double t, double gamma, const EvolutionConfig& cfg = {});

/// e^{tL} rho0 by the configured method; the result is re-validated.
DensityMatrix4 evolve_numeric(const DensityMatrix4& rho0, double t, double gamma,
                              const EvolutionConfig& cfg = {});

/// Closed-form trajectory for states of the X class. Throws Error{NotXClass}.
DensityMatrix4 evolve_x_closed(const DensityMatrix4& rho0, double t, double gamma);

}  // namespace twoatom
