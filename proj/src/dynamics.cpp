#include "twoatom/dynamics.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace twoatom {

Vector16 vectorize(const Matrix4& m) {
  Vector16 v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v(4 * i + j) = m(i, j);
  return v;
}

Matrix4 unvectorize(const Vector16& v) {
  Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = v(4 * i + j);
  return m;
}

namespace {

Matrix2 commutator(const Matrix2& a, const Matrix2& b) { return a * b - b * a; }

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw Error(ErrorCode::Domain, "rate gamma must be positive and finite, got " + std::to_string(gamma));
}

// A X B vectorized row-major is (A (x) B^T) vec(X). For the dissipator term
// J X J^dagger the right factor is (J^dagger)^T = conj(J).
Matrix16 sandwich(const Matrix4& left, const Matrix4& right) {
  Matrix16 out;
  const Matrix4 rt = right.transpose();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = left(i, j) * rt;
  return out;
}

const std::array<Matrix4, 4>& jump_operators() {
  static const std::array<Matrix4, 4> ops = {
      kron(pauli::raising(), pauli::identity()), kron(pauli::lowering(), pauli::identity()),
      kron(pauli::identity(), pauli::raising()), kron(pauli::identity(), pauli::lowering())};
  return ops;
}

const Matrix16& unit_liouvillian() {
  static const Matrix16 l = [] {
    Matrix16 m = -2.0 * Matrix16::Identity();
    for (const Matrix4& j : jump_operators()) m += sandwich(j, j.adjoint());
    return m;
  }();
  return l;
}

Vector16 rk4(const Vector16& v0, double tau, int steps_per_unit) {
  if (steps_per_unit < 1) throw Error(ErrorCode::Domain, "steps_per_unit_gamma_t must be >= 1");
  const Matrix16& l = unit_liouvillian();
  const long n = std::max<long>(1, static_cast<long>(std::ceil(std::abs(tau) * steps_per_unit)));
  const double h = tau / static_cast<double>(n);
  Vector16 v = v0;
  for (long k = 0; k < n; ++k) {
    const Vector16 k1 = l * v;
    const Vector16 k2 = l * (v + 0.5 * h * k1);
    const Vector16 k3 = l * (v + 0.5 * h * k2);
    const Vector16 k4 = l * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return v;
}

}  // namespace

Matrix2 single_qubit_rhs(const DensityMatrix2& state, double gamma_up, double gamma_down) {
  if (gamma_up < 0.0 || gamma_down < 0.0) throw Error(ErrorCode::Domain, "rates must be non-negative");
  const Matrix2& rho = state.matrix();
  const Matrix2 sp = pauli::raising();
  const Matrix2 sm = pauli::lowering();
  return 0.5 * gamma_up * (commutator(sp, rho * sm) + commutator(sp * rho, sm)) +
         0.5 * gamma_down * (commutator(sm, rho * sp) + commutator(sm * rho, sp));
}

ThermalRates thermal_rates(double gamma0, double beta_omega0) {
  if (gamma0 < 0.0 || !(beta_omega0 > 0.0))
    throw Error(ErrorCode::Domain, "thermal rates need gamma0 >= 0 and beta*omega0 > 0");
  const double n = 1.0 / std::expm1(beta_omega0);
  return {gamma0 * n, gamma0 * (1.0 + n)};
}

DensityMatrix2 evolve_single_qubit(const DensityMatrix2& state, double t, double gamma) {
  require_positive_gamma(gamma);
  if (t < 0.0) throw Error(ErrorCode::Domain, "time must be non-negative");
  const Matrix2& rho = state.matrix();
  const double imbalance = 0.5 * (rho(0, 0).real() - rho(1, 1).real()) * std::exp(-2.0 * gamma * t);
  Matrix2 out;
  out(0, 0) = 0.5 + imbalance;
  out(1, 1) = 0.5 - imbalance;
  out(0, 1) = rho(0, 1) * std::exp(-gamma * t);
  out(1, 0) = std::conj(out(0, 1));
  return validate_density2(out);
}

Liouvillian::Liouvillian(double gamma) : gamma_(gamma) {
  require_positive_gamma(gamma);
  matrix_ = gamma * unit_liouvillian();
}

Matrix4 Liouvillian::apply(const Matrix4& rho) const { return unvectorize(matrix_ * vectorize(rho)); }

Liouvillian build_liouvillian(double gamma) { return Liouvillian(gamma); }

Matrix4 liouvillian_rhs(const Matrix4& rho, double gamma) {
  Matrix4 out = -2.0 * rho;
  for (const Matrix4& j : jump_operators()) out += j * rho * j.adjoint();
  return gamma * out;
}

CollectiveComponents collective_rhs(const CollectiveComponents& c, double gamma) {
  using L = Level;
  const auto r = [&c](L x, L y) { return c(x, y); };
  CollectiveComponents d;
  d(L::a, L::a) = -2.0 * r(L::a, L::a) + r(L::e, L::e) + r(L::g, L::g);
  d(L::s, L::s) = -2.0 * r(L::s, L::s) + r(L::e, L::e) + r(L::g, L::g);
  d(L::g, L::g) = -2.0 * r(L::g, L::g) + r(L::s, L::s) + r(L::a, L::a);
  d(L::e, L::e) = -2.0 * r(L::e, L::e) + r(L::s, L::s) + r(L::a, L::a);
  d(L::e, L::g) = -2.0 * r(L::e, L::g);
  d(L::a, L::s) = -2.0 * r(L::a, L::s);
  // couples to rho_ga, not rho_gs
  d(L::a, L::e) = -2.0 * r(L::a, L::e) - r(L::g, L::a);
  d(L::a, L::g) = -2.0 * r(L::a, L::g) - r(L::e, L::a);
  d(L::s, L::e) = -2.0 * r(L::s, L::e) + r(L::g, L::s);
  d(L::s, L::g) = -2.0 * r(L::s, L::g) + r(L::e, L::s);
  for (auto [x, y] : {std::pair{L::g, L::e}, {L::s, L::a}, {L::e, L::a}, {L::g, L::a}, {L::e, L::s},
                      {L::g, L::s}})
    d(x, y) = std::conj(d(y, x));
  d.elements *= gamma;
  return d;
}

Matrix16 expm(const Matrix16& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix16 scaled = a / std::ldexp(1.0, squarings);
  // ||scaled|| <= 1/2, so 24 Taylor terms leave a remainder below 1e-30.
  Matrix16 result = Matrix16::Identity();
  Matrix16 term = Matrix16::Identity();
  for (int k = 1; k <= 24; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

Matrix4 propagate(const Matrix4& rho0, double t, double gamma, const EvolutionConfig& cfg) {
  require_positive_gamma(gamma);
  if (t == 0.0) return rho0;
  const double tau = gamma * t;
  const Vector16 v0 = vectorize(rho0);
  switch (cfg.method) {
    case Method::rk4: return unvectorize(rk4(v0, tau, cfg.steps_per_unit_gamma_t));
    case Method::expm: return unvectorize(expm(tau * unit_liouvillian()) * v0);
  }
  throw Error(ErrorCode::Domain, "unknown evolution method");
}

DensityMatrix4 evolve_numeric(const DensityMatrix4& rho0, double t, double gamma,
                              const EvolutionConfig& cfg) {
  if (!(t >= 0.0)) throw Error(ErrorCode::Domain, "time must be non-negative");
  if (t == 0.0) return rho0;
  return validate_density(propagate(rho0.matrix(), t, gamma, cfg));
}

DensityMatrix4 evolve_x_closed(const DensityMatrix4& rho0, double t, double gamma) {
  require_positive_gamma(gamma);
  if (!(t >= 0.0)) throw Error(ErrorCode::Domain, "time must be non-negative");
  if (!is_x_class(rho0)) throw Error(ErrorCode::NotXClass, "closed-form propagator needs an X-class state");
  if (t == 0.0) return rho0;
  using L = Level;
  const CollectiveComponents c0 = canonical_to_collective(rho0);
  const double e2 = std::exp(-2.0 * gamma * t);
  const double e4 = std::exp(-4.0 * gamma * t);
  const double aa = c0.aa(), ss = c0.ss(), ee = c0.ee(), gg = c0.gg();

  CollectiveComponents c;
  c(L::a, L::a) = 0.25 + 0.5 * e2 * (aa - ss) + 0.5 * e4 * (aa + ss - 0.5);
  c(L::s, L::s) = 0.25 - 0.5 * e2 * (aa - ss) + 0.5 * e4 * (aa + ss - 0.5);
  c(L::e, L::e) = 0.25 + 0.5 * e2 * (ee - gg) + 0.5 * e4 * (ee + gg - 0.5);
  c(L::g, L::g) = 0.25 - 0.5 * e2 * (ee - gg) + 0.5 * e4 * (ee + gg - 0.5);
  c(L::e, L::g) = e2 * c0(L::e, L::g);
  c(L::g, L::e) = std::conj(c(L::e, L::g));
  c(L::a, L::s) = e2 * c0(L::a, L::s);
  c(L::s, L::a) = std::conj(c(L::a, L::s));
  return validate_density(collective_to_canonical(c));
}

}  // namespace twoatom
