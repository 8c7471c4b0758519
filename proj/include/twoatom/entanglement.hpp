#pragma once

#include <array>

#include "twoatom/core.hpp"

namespace twoatom {

/// C1 and C2 of an X-class state and C = max(0, C1, C2).
struct ConcurrenceBreakdown {
  double c1 = 0.0;
  double c2 = 0.0;
  double value = 0.0;
};

/// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)
Matrix4 spin_flip(const DensityMatrix4& rho);

/// rho^{1/2}, with eigenvalues at rounding level set to zero.
Matrix4 state_square_root(const DensityMatrix4& rho, double psd_tol = 1e-9);

/// Square roots of the eigenvalues of rho^{1/2} rho~ rho^{1/2}, largest first,
/// computed as singular values so that zero roots stay at rounding level.
std::array<double, 4> wootters_roots(const DensityMatrix4& rho, double psd_tol = 1e-9);

/// sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4) before clamping at zero. It is
/// continuous through the separability boundary, which makes it a usable
/// bisection target.
double concurrence_margin(const DensityMatrix4& rho);

double concurrence(const DensityMatrix4& rho);

/// Canonical-basis form: C1 = 2(|r14| - sqrt(r22 r33)), C2 = 2(|r23| - sqrt(r11 r44)).
ConcurrenceBreakdown concurrence_x(const DensityMatrix4& rho);

/// The same quantities written with collective-basis elements:
///   C1 = 2|r_eg| - sqrt((r_aa + r_ss)^2 - (r_as + r_sa)^2)
///   C2 = sqrt((r_ss - r_aa)^2 - (r_as - r_sa)^2) - 2 sqrt(r_ee r_gg)
ConcurrenceBreakdown concurrence_x_collective(const DensityMatrix4& rho);

/// Binary entropy in bits, h(0) = h(1) = 0.
double binary_entropy(double x);

/// Two-qubit entanglement of formation as the Wootters function of C.
double entanglement_of_formation(const DensityMatrix4& rho);
double entanglement_of_formation_from_concurrence(double c);

/// C1(t), C2(t) of an X-class initial state evolved for time t, without
/// propagating the state. Throws Error{ComplexRoot} when a radicand is
/// negative beyond psd_tol.
ConcurrenceBreakdown c1c2_evolved(const DensityMatrix4& rho0, double t, double gamma,
                                  double psd_tol = 1e-9);

/// Partial transpose over atom B.
Matrix4 partial_transpose(const Matrix4& m);

/// Peres-Horodecki test; exact separability criterion for two qubits.
bool is_separable_ppt(const DensityMatrix4& rho, double psd_tol = 1e-9);
double min_partial_transpose_eigenvalue(const DensityMatrix4& rho);

}  // namespace twoatom
