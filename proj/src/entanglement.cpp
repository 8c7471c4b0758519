#include "twoatom/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twoatom {

Matrix4 spin_flip(const DensityMatrix4& rho) {
  const Matrix4 yy = kron(pauli::y(), pauli::y());
  return yy * rho.matrix().conjugate() * yy;
}

Matrix4 state_square_root(const DensityMatrix4& rho, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(rho.matrix());
  Eigen::Vector4d lambda = es.eigenvalues();
  // Eigenvalues at rounding level are zeros of a rank-deficient state; their
  // square roots (~1e-8) would otherwise leak into every root below.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * lambda.cwiseAbs().maxCoeff();
  for (int i = 0; i < 4; ++i) {
    if (lambda(i) < -psd_tol)
      throw Error(ErrorCode::NotPositive, "state has a negative eigenvalue", -lambda(i));
    if (lambda(i) < floor) lambda(i) = 0.0;
  }
  return es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

std::array<double, 4> wootters_roots(const DensityMatrix4& rho, double psd_tol) {
  // sqrt(rho) rho~ sqrt(rho) = M^dagger M with M = conj(sqrt(rho)) Y sqrt(rho),
  // so the square roots of its eigenvalues are the singular values of M.
  const Matrix4 root = state_square_root(rho, psd_tol);
  const Matrix4 yy = kron(pauli::y(), pauli::y());
  const Matrix4 m = root.conjugate() * yy * root;
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Matrix4>(m).singularValues();
  std::array<double, 4> out{sv(0), sv(1), sv(2), sv(3)};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double concurrence_margin(const DensityMatrix4& rho) {
  const auto s = wootters_roots(rho);
  return s[0] - s[1] - s[2] - s[3];
}

double concurrence(const DensityMatrix4& rho) { return std::max(0.0, concurrence_margin(rho)); }

namespace {

void require_x(const DensityMatrix4& rho) {
  if (!is_x_class(rho)) throw Error(ErrorCode::NotXClass, "X-state concurrence needs an X-class state");
}

ConcurrenceBreakdown make_breakdown(double c1, double c2) {
  return {c1, c2, std::max({0.0, c1, c2})};
}

double checked_sqrt(double radicand, double psd_tol, const char* what) {
  if (radicand < -psd_tol)
    throw Error(ErrorCode::ComplexRoot, std::string(what) + " has a negative radicand", -radicand);
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

ConcurrenceBreakdown concurrence_x(const DensityMatrix4& rho) {
  require_x(rho);
  const XStateParams p = x_params(rho);
  const double c1 = 2.0 * (std::abs(p.rho14) - std::sqrt(std::max(0.0, p.rho22 * p.rho33)));
  const double c2 = 2.0 * (std::abs(p.rho23) - std::sqrt(std::max(0.0, p.rho11 * p.rho44)));
  return make_breakdown(c1, c2);
}

ConcurrenceBreakdown concurrence_x_collective(const DensityMatrix4& rho) {
  require_x(rho);
  using L = Level;
  const CollectiveComponents c = canonical_to_collective(rho);
  const Complex as = c(L::a, L::s);
  const Complex sa = c(L::s, L::a);
  // (as + sa) is real and (as - sa) purely imaginary for Hermitian input.
  const double sum = (as + sa).real();
  const double diff = (as - sa).imag();
  const double c1 = 2.0 * std::abs(c(L::e, L::g)) -
                    std::sqrt(std::max(0.0, std::pow(c.aa() + c.ss(), 2) - sum * sum));
  const double c2 = std::sqrt(std::pow(c.ss() - c.aa(), 2) + diff * diff) -
                    2.0 * std::sqrt(std::max(0.0, c.ee() * c.gg()));
  return make_breakdown(c1, c2);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entanglement_of_formation_from_concurrence(double c) {
  if (c <= 0.0) return 0.0;
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_of_formation(const DensityMatrix4& rho) {
  return entanglement_of_formation_from_concurrence(concurrence(rho));
}

ConcurrenceBreakdown c1c2_evolved(const DensityMatrix4& rho0, double t, double gamma, double psd_tol) {
  require_x(rho0);
  if (!(gamma > 0.0)) throw Error(ErrorCode::Domain, "rate gamma must be positive");
  if (!(t >= 0.0)) throw Error(ErrorCode::Domain, "time must be non-negative");
  using L = Level;
  const CollectiveComponents c = canonical_to_collective(rho0);
  const double e2 = std::exp(-2.0 * gamma * t);
  const double e4 = e2 * e2;
  const double e8 = e4 * e4;
  const double aa = c.aa(), ss = c.ss(), ee = c.ee(), gg = c.gg();
  const double sum = (c(L::a, L::s) + c(L::s, L::a)).real();
  const double diff = (c(L::a, L::s) - c(L::s, L::a)).imag();

  const double block = e4 * (aa + ss - 0.5) + 0.5;
  const double c1 = 2.0 * e2 * std::abs(c(L::e, L::g)) -
                    checked_sqrt(block * block - e4 * sum * sum, psd_tol, "C1(t)");

  const double outer = 1.0 + e8 * std::pow(2.0 * ee + 2.0 * gg - 1.0, 2) +
                       4.0 * e4 * (ee + gg - 0.5 - std::pow(ee - gg, 2));
  const double c2 = e2 * std::sqrt(std::pow(ss - aa, 2) + diff * diff) -
                    0.5 * checked_sqrt(outer, psd_tol, "C2(t)");
  return make_breakdown(c1, c2);
}

Matrix4 partial_transpose(const Matrix4& m) {
  Matrix4 out;
  // index = 2*a + b; transpose the b indices
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) out(2 * a + b, 2 * a2 + b2) = m(2 * a + b2, 2 * a2 + b);
  return out;
}

double min_partial_transpose_eigenvalue(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(partial_transpose(rho.matrix()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_separable_ppt(const DensityMatrix4& rho, double psd_tol) {
  return min_partial_transpose_eigenvalue(rho) >= -psd_tol;
}

}  // namespace twoatom
