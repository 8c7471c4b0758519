#pragma once

#include <Eigen/Dense>

#include "twoatom/core.hpp"

namespace twoatom {

/// t_nm = tr(rho sigma_n (x) sigma_m), n, m in {x, y, z}.
struct CorrelationMatrix {
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
};

CorrelationMatrix correlation_matrix(const DensityMatrix4& rho);
CorrelationMatrix correlation_matrix(const Matrix4& m);

/// Eigenvalues of T^T T, largest first.
Eigen::Vector3d correlation_eigenvalues(const CorrelationMatrix& corr);

/// Sum of the two largest eigenvalues of T^T T. The state violates some
/// CHSH inequality iff this exceeds 1.
double m_value(const DensityMatrix4& rho);
double m_value(const CorrelationMatrix& corr);

/// max(0, m - 1): 0 for local states, 1 at maximal violation.
double n_value(const DensityMatrix4& rho);

/// Closed forms of m along the trajectory of pure_phi(c). With x = e^{-4 G t}
/// the spectrum of T^T T is {c^2 x, c^2 x, x^2}:
///   reduced   = x^2 + c^2 x, the sum of the two largest only while x >= c^2
///   corrected = c^2 x + max(c^2 x, x^2), valid everywhere
struct PureEvolvedM {
  double reduced;
  double corrected;
  bool reduced_valid;
};
PureEvolvedM m_pure_evolved(double c, double t, double gamma);

}  // namespace twoatom
