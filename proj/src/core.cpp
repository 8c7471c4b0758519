#include "twoatom/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace twoatom {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::NotXClass: return "NotXClass";
    case ErrorCode::ComplexRoot: return "ComplexRoot";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NonRealCorrelation: return "NonRealCorrelation";
    case ErrorCode::Format: return "FormatError";
  }
  return "Unknown";
}

namespace pauli {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix2 y() {
  const Complex i{0.0, 1.0};
  Matrix2 m;
  m << 0.0, -i, i, 0.0;
  return m;
}
Matrix2 z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
Matrix2 raising() { return 0.5 * (x() + Complex{0.0, 1.0} * y()); }
Matrix2 lowering() { return 0.5 * (x() - Complex{0.0, 1.0} * y()); }
}  // namespace pauli

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

namespace {

std::string residual_message(const char* what, double residual, double tol) {
  std::ostringstream os;
  os << what << " (residual " << residual << ", tolerance " << tol << ")";
  return os.str();
}

// Shared invariant check for the 2x2 and 4x4 states.
ComplexMatrix validated_matrix(const ComplexMatrix& m, const Tolerances& tol) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian)
    throw Error(ErrorCode::NotHermitian, residual_message("matrix is not Hermitian", herm, tol.hermitian),
                herm);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  const double tr_res = std::abs(tr - 1.0);
  if (tr_res > tol.trace)
    throw Error(ErrorCode::TraceNotOne, residual_message("trace differs from 1", tr_res, tol.trace),
                tr_res);
  const ComplexMatrix out = h / tr;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.psd)
    throw Error(ErrorCode::NotPositive,
                residual_message("matrix has a negative eigenvalue", min_eig, tol.psd), -min_eig);
  return out;
}

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw Error(ErrorCode::Domain, std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
}

}  // namespace

DensityMatrix4 validate_density(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error(ErrorCode::Domain, "two-atom state must be 4x4");
  return DensityMatrix4(Matrix4(validated_matrix(m, tol)));
}

DensityMatrix2 validate_density2(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != 2 || m.cols() != 2)
    throw Error(ErrorCode::Domain, "single-atom state must be 2x2");
  return DensityMatrix2(Matrix2(validated_matrix(m, tol)));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double hermitian_tol) {
  if (h.rows() != h.cols()) throw Error(ErrorCode::Domain, "matrix must be square");
  const double herm = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm > hermitian_tol)
    throw Error(ErrorCode::NotHermitian,
                residual_message("matrix is not Hermitian", herm, hermitian_tol), herm);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

const Matrix4& collective_basis() {
  static const Matrix4 basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix4 u = Matrix4::Zero();
    u(0, 0) = 1.0;            // e
    u(1, 1) = u(2, 1) = r;    // s
    u(1, 2) = r;              // a
    u(2, 2) = -r;
    u(3, 3) = 1.0;            // g
    return u;
  }();
  return basis;
}

CollectiveComponents canonical_to_collective(const Matrix4& m) {
  const Matrix4& u = collective_basis();
  return CollectiveComponents{u.adjoint() * m * u};
}

CollectiveComponents canonical_to_collective(const DensityMatrix4& rho) {
  return canonical_to_collective(rho.matrix());
}

Matrix4 collective_to_canonical(const CollectiveComponents& comp) {
  const Matrix4& u = collective_basis();
  return u * comp.elements * u.adjoint();
}

DensityMatrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep) {
  const Matrix4& m = rho.matrix();
  Matrix2 r = Matrix2::Zero();
  // index = 2*a + b for atom A state a and atom B state b
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        r(i, j) += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
  return validate_density2(r);
}

double linear_entropy(const Matrix4& m) { return 1.0 - (m * m).trace().real(); }

double linear_entropy(const DensityMatrix4& rho) { return linear_entropy(rho.matrix()); }

DensityMatrix4 pure_phi(double c) {
  require_unit_interval(c, "concurrence c");
  const double root = std::sqrt(1.0 - c * c);
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 0.5 * (1.0 + root);
  m(3, 3) = 0.5 * (1.0 - root);
  m(0, 3) = m(3, 0) = 0.5 * c;
  return validate_density(m);
}

DensityMatrix4 werner(double p, WernerSign sign) {
  require_unit_interval(p, "Werner weight p");
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<Complex, 4, 1> psi = Eigen::Matrix<Complex, 4, 1>::Zero();
  psi(3) = r;
  psi(0) = sign == WernerSign::plus ? r : -r;
  const Matrix4 m = (1.0 - p) * Matrix4::Identity() / 4.0 + p * psi * psi.adjoint();
  return validate_density(m);
}

double mems_g(double c) { return c <= 2.0 / 3.0 ? 1.0 / 3.0 : 0.5 * c; }

DensityMatrix4 mems(double c) {
  require_unit_interval(c, "concurrence c");
  const double g = mems_g(c);
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = g;
  m(1, 1) = 1.0 - 2.0 * g;
  m(3, 3) = g;
  m(0, 3) = m(3, 0) = 0.5 * c;
  return validate_density(m);
}

DensityMatrix4 x_state(const XStateParams& p, const Tolerances& tol) {
  const double diag[] = {p.rho11, p.rho22, p.rho33, p.rho44};
  for (double d : diag)
    if (d < -tol.psd)
      throw Error(ErrorCode::NotPositive, "X-state population is negative", -d);
  const double outer = std::norm(p.rho14) - p.rho11 * p.rho44;
  const double inner = std::norm(p.rho23) - p.rho22 * p.rho33;
  if (outer > tol.psd || inner > tol.psd)
    throw Error(ErrorCode::NotPositive, "X-state block fails |coherence|^2 <= product of populations",
                std::max(outer, inner));
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = p.rho11;
  m(1, 1) = p.rho22;
  m(2, 2) = p.rho33;
  m(3, 3) = p.rho44;
  m(0, 3) = p.rho14;
  m(3, 0) = std::conj(p.rho14);
  m(1, 2) = p.rho23;
  m(2, 1) = std::conj(p.rho23);
  return validate_density(m, tol);
}

XStateParams x_params(const DensityMatrix4& rho) {
  return XStateParams{rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
                      rho(3, 3).real(), rho(0, 3),        rho(1, 2)};
}

bool is_x_class(const Matrix4& m, double tol) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(m(i, j)) > tol) return false;
  return true;
}

bool is_x_class(const DensityMatrix4& rho, double tol) { return is_x_class(rho.matrix(), tol); }

DensityMatrix4 random_density(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex{normal(rng), normal(rng)};
  const Matrix4 w = g * g.adjoint();
  return validate_density(w / w.trace().real());
}

DensityMatrix4 random_x_state(std::uint64_t seed) {
  Matrix4 m = random_density(seed).matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) m(i, j) = 0.0;
  return validate_density(m);
}

}  // namespace twoatom
