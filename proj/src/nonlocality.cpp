#include "twoatom/nonlocality.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace twoatom {

CorrelationMatrix correlation_matrix(const Matrix4& m) {
  const std::array<Matrix2, 3> sigma = {pauli::x(), pauli::y(), pauli::z()};
  CorrelationMatrix out;
  for (int n = 0; n < 3; ++n)
    for (int k = 0; k < 3; ++k) {
      const Complex v = (m * kron(sigma[n], sigma[k])).trace();
      if (std::abs(v.imag()) > 1e-9)
        throw Error(ErrorCode::NonRealCorrelation, "Pauli correlation has an imaginary part",
                    std::abs(v.imag()));
      out.t(n, k) = v.real();
    }
  return out;
}

CorrelationMatrix correlation_matrix(const DensityMatrix4& rho) { return correlation_matrix(rho.matrix()); }

Eigen::Vector3d correlation_eigenvalues(const CorrelationMatrix& corr) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(corr.t.transpose() * corr.t,
                                                    Eigen::EigenvaluesOnly);
  // ascending from Eigen
  return es.eigenvalues().reverse();
}

double m_value(const CorrelationMatrix& corr) {
  const Eigen::Vector3d u = correlation_eigenvalues(corr);
  return u(0) + u(1);
}

double m_value(const DensityMatrix4& rho) { return m_value(correlation_matrix(rho)); }

double n_value(const DensityMatrix4& rho) { return std::max(0.0, m_value(rho) - 1.0); }

PureEvolvedM m_pure_evolved(double c, double t, double gamma) {
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::Domain, "c must lie in [0, 1]");
  if (!(t >= 0.0)) throw Error(ErrorCode::Domain, "time must be non-negative");
  if (!(gamma > 0.0)) throw Error(ErrorCode::Domain, "rate gamma must be positive");
  const double x = std::exp(-4.0 * gamma * t);
  const double c2 = c * c;
  return {x * x + c2 * x, c2 * x + std::max(c2 * x, x * x), x >= c2};
}

}  // namespace twoatom
