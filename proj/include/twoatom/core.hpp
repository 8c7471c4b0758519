#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "twoatom/error.hpp"

namespace twoatom {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;

// Single-atom basis: |1> (excited) = (1,0)^T, |0> (ground) = (0,1)^T.
// Two-atom canonical basis, in this order:
//   f1 = |1>|1>,  f2 = |1>|0>,  f3 = |0>|1>,  f4 = |0>|0>.
// Every 4x4 matrix in the library is expressed in this basis.

struct Tolerances {
  double hermitian = 1e-9;
  double trace = 1e-9;
  double psd = 1e-9;
};

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
/// sigma_+ = |1><0|, raises the ground state to the excited state.
Matrix2 raising();
/// sigma_- = |0><1|.
Matrix2 lowering();
}  // namespace pauli

Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Validated two-atom state. Only constructible through `validate_density`
/// (or the factories below), so holding one means the Hermitian, unit-trace
/// and PSD invariants held within tolerance at construction.
class DensityMatrix4 {
 public:
  const Matrix4& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit DensityMatrix4(const Matrix4& m) : m_(m) {}
  friend DensityMatrix4 validate_density(const ComplexMatrix&, const Tolerances&);

  Matrix4 m_;
};

class DensityMatrix2 {
 public:
  const Matrix2& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit DensityMatrix2(const Matrix2& m) : m_(m) {}
  friend DensityMatrix2 validate_density2(const ComplexMatrix&, const Tolerances&);

  Matrix2 m_;
};

/// Checks the density-matrix invariants of a 4x4 matrix. On success the
/// Hermitian part is kept and the trace renormalized to exactly 1.
/// Throws Error{NotHermitian|TraceNotOne|NotPositive} with the residual.
DensityMatrix4 validate_density(const ComplexMatrix& m, const Tolerances& tol = {});
DensityMatrix2 validate_density2(const ComplexMatrix& m, const Tolerances& tol = {});

/// Real eigenvalues of a Hermitian matrix, largest first.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double hermitian_tol = 1e-9);

/// Collective basis |e>=f1, |s>=(f2+f3)/sqrt2, |a>=(f2-f3)/sqrt2, |g>=f4.
enum class Level : int { e = 0, s = 1, a = 2, g = 3 };

/// Matrix elements rho_{xy} = <x|rho|y> with x, y in {e, s, a, g}. Stored as
/// a 4x4 matrix with rows/columns in the order e, s, a, g.
struct CollectiveComponents {
  Matrix4 elements = Matrix4::Zero();

  Complex operator()(Level row, Level col) const {
    return elements(static_cast<int>(row), static_cast<int>(col));
  }
  Complex& operator()(Level row, Level col) {
    return elements(static_cast<int>(row), static_cast<int>(col));
  }
  double ee() const { return elements(0, 0).real(); }
  double ss() const { return elements(1, 1).real(); }
  double aa() const { return elements(2, 2).real(); }
  double gg() const { return elements(3, 3).real(); }
};

/// Columns are |e>, |s>, |a>, |g> written in the canonical basis.
const Matrix4& collective_basis();

CollectiveComponents canonical_to_collective(const DensityMatrix4& rho);
CollectiveComponents canonical_to_collective(const Matrix4& m);
Matrix4 collective_to_canonical(const CollectiveComponents& comp);

enum class Subsystem { A, B };

/// Reduced state of the subsystem that is kept.
DensityMatrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep);

double linear_entropy(const DensityMatrix4& rho);
double linear_entropy(const Matrix4& m);

/// Rank-one projector onto (sqrt(1+sqrt(1-c^2)) f1 + sqrt(1-sqrt(1-c^2)) f4)/sqrt2,
/// the representative pure state of concurrence c.
DensityMatrix4 pure_phi(double c);

enum class WernerSign { plus, minus };

/// (1-p) I/4 + p |Psi><Psi| with Psi = (f4 +/- f1)/sqrt2.
DensityMatrix4 werner(double p, WernerSign sign = WernerSign::plus);

/// Maximally entangled mixed state of concurrence c.
DensityMatrix4 mems(double c);
double mems_g(double c);

struct XStateParams {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  double rho44 = 0.0;
  Complex rho14{};
  Complex rho23{};
};

DensityMatrix4 x_state(const XStateParams& params, const Tolerances& tol = {});
XStateParams x_params(const DensityMatrix4& rho);

/// True iff every entry off the diagonal and anti-diagonal is below tol.
bool is_x_class(const DensityMatrix4& rho, double tol = 1e-10);
bool is_x_class(const Matrix4& m, double tol = 1e-10);

/// Ginibre-distributed full-rank state, deterministic per seed.
DensityMatrix4 random_density(std::uint64_t seed);

/// X-pattern part of a Ginibre state. Keeping only the X entries is a
/// pinching, so the result stays PSD with unit trace.
DensityMatrix4 random_x_state(std::uint64_t seed);

}  // namespace twoatom
