#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"

using namespace twoatom;
using twoatom::testing::max_abs_diff;

namespace {

using Vec4 = Eigen::Matrix<Complex, 4, 1>;

DensityMatrix4 basis_projector(int i) {
  Vec4 v = Vec4::Zero();
  v(i) = 1.0;
  return validate_density(twoatom::testing::projector(v));
}

DensityMatrix4 bell_psi_plus() {
  Vec4 v = Vec4::Zero();
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return validate_density(twoatom::testing::projector(v));
}

// Single-excitation family: supported on span{f2, f3}.
DensityMatrix4 single_excitation(double r22, Complex r23) {
  XStateParams p;
  p.rho22 = r22;
  p.rho33 = 1.0 - r22;
  p.rho23 = r23;
  return x_state(p);
}

// Eigenvalues of the non-Hermitian product rho rho~, as an independent route.
std::vector<double> product_spectrum_roots(const DensityMatrix4& rho) {
  Eigen::ComplexEigenSolver<Matrix4> es(rho.matrix() * spin_flip(rho));
  std::vector<double> out;
  for (int i = 0; i < 4; ++i) out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

TEST_CASE("spin_flip") {
  const DensityMatrix4 bell = bell_psi_plus();
  CHECK(max_abs_diff(spin_flip(bell), bell.matrix()) < 1e-15);
  CHECK(max_abs_diff(spin_flip(basis_projector(0)), basis_projector(3).matrix()) < 1e-15);
  const DensityMatrix4 mixed = validate_density(Matrix4::Identity() / 4.0);
  CHECK(max_abs_diff(spin_flip(mixed), mixed.matrix()) < 1e-15);

  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix4 f = spin_flip(random_density(s));
    CHECK_NOTHROW(validate_density(f));
  }
}

TEST_CASE("concurrence") {
  CHECK(concurrence(pure_phi(0.6)) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(concurrence(validate_density(Matrix4::Identity() / 4.0)) == 0.0);
  CHECK(concurrence(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(concurrence(bell_psi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 4; ++i) CHECK(concurrence(basis_projector(i)) < 1e-12);

  for (std::uint64_t s = 0; s < 500; ++s) {
    const double c = concurrence(random_density(s));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const DensityMatrix4 rho = random_density(s);
    const DensityMatrix4 turned =
        twoatom::testing::apply_local(rho, twoatom::testing::random_unitary2(rng), twoatom::testing::random_unitary2(rng));
    worst = std::max(worst, std::abs(concurrence(rho) - concurrence(turned)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("Wootters roots agree with the spectrum of rho rho~") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const DensityMatrix4 rho = random_density(s);
    const auto roots = wootters_roots(rho);
    const auto other = product_spectrum_roots(rho);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(roots[i] - other[i]) < 1e-7);

    // Hermitian form, sqrt(rho) rho~ sqrt(rho)
    const Matrix4 r = state_square_root(rho);
    const std::vector<double> h = hermitian_eigenvalues(r * spin_flip(rho) * r);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(roots[i] - std::sqrt(std::max(0.0, h[i]))) < 1e-7);
  }
}

TEST_CASE("concurrence_x") {
  SUBCASE("examples") {
    const ConcurrenceBreakdown m = concurrence_x(mems(0.4));
    CHECK(m.c1 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(m.c2 < 0.0);
    CHECK(m.value == doctest::Approx(0.4).epsilon(1e-12));

    const ConcurrenceBreakdown mixed = concurrence_x(validate_density(Matrix4::Identity() / 4.0));
    CHECK(mixed.c1 == doctest::Approx(-0.5));
    CHECK(mixed.c2 == doctest::Approx(-0.5));
    CHECK(mixed.value == 0.0);

    const DensityMatrix4 se = single_excitation(0.4, 0.2);
    CHECK(concurrence_x(se).value == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("agrees with the general definition and the collective form") {
    double worst = 0.0, worst_form = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const DensityMatrix4 x = random_x_state(s);
      const ConcurrenceBreakdown a = concurrence_x(x);
      const ConcurrenceBreakdown b = concurrence_x_collective(x);
      worst = std::max(worst, std::abs(a.value - concurrence(x)));
      worst_form = std::max({worst_form, std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2)});
    }
    CHECK(worst <= 1e-10);
    CHECK(worst_form <= 1e-12);
  }
  SUBCASE("rejects non-X states") {
    CHECK_THROWS_AS(concurrence_x(random_density(3)), Error);
    try {
      concurrence_x_collective(random_density(3));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotXClass);
    }
  }
}

TEST_CASE("entanglement of formation") {
  CHECK(entanglement_of_formation(bell_psi_plus()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(entanglement_of_formation(basis_projector(1)) == 0.0);
  CHECK(entanglement_of_formation_from_concurrence(0.6) == doctest::Approx(0.468996).epsilon(1e-6));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double e = entanglement_of_formation_from_concurrence(0.01 * i);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("c1c2_evolved") {
  SUBCASE("matches the concurrence of the evolved state") {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const DensityMatrix4 x = random_x_state(s);
      for (double gt : {0.0, 0.05, 0.2, 0.5, 1.0, 3.0}) {
        const ConcurrenceBreakdown closed = c1c2_evolved(x, gt, 1.0);
        const ConcurrenceBreakdown direct = concurrence_x(evolve_x_closed(x, gt, 1.0));
        worst = std::max({worst, std::abs(closed.c1 - direct.c1), std::abs(closed.c2 - direct.c2)});
      }
    }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("t = 0 reduces to the collective form") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const DensityMatrix4 x = random_x_state(s);
      const ConcurrenceBreakdown a = c1c2_evolved(x, 0.0, 1.0);
      const ConcurrenceBreakdown b = concurrence_x_collective(x);
      CHECK(std::abs(a.c1 - b.c1) < 1e-12);
      CHECK(std::abs(a.c2 - b.c2) < 1e-12);
    }
  }
  SUBCASE("single-excitation family") {
    for (double r23 : {0.05, 0.15, 0.25, 0.35, 0.5}) {
      const DensityMatrix4 se = single_excitation(0.5, Complex{0.6, 0.8} * r23);
      const double c0 = concurrence(se);
      CHECK(c0 == doctest::Approx(2.0 * r23).epsilon(1e-12));
      for (double gt : {0.0, 0.1, 0.3, 0.6}) {
        const double expected = std::max(0.0, std::exp(-2.0 * gt) * c0 - 0.5 * (1.0 - std::exp(-4.0 * gt)));
        CHECK(c1c2_evolved(se, gt, 1.0).value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(concurrence(evolve_x_closed(se, gt, 1.0)) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
  SUBCASE("pure_phi") {
    for (double c : {0.1, 0.5, 1.0}) {
      for (double gt : {0.0, 0.1, 0.4, 1.0}) {
        const double expected = c * std::exp(-2.0 * gt) - 0.5 * (1.0 - std::exp(-4.0 * gt));
        CHECK(c1c2_evolved(pure_phi(c), gt, 1.0).c1 == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("rate scaling") {
    const DensityMatrix4 x = random_x_state(8);
    CHECK(c1c2_evolved(x, 0.2, 2.5).c1 == doctest::Approx(c1c2_evolved(x, 0.5, 1.0).c1).epsilon(1e-13));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(c1c2_evolved(random_density(2), 0.1, 1.0), Error);
    CHECK_THROWS_AS(c1c2_evolved(pure_phi(0.5), -0.1, 1.0), Error);
    CHECK_THROWS_AS(c1c2_evolved(pure_phi(0.5), 0.1, 0.0), Error);
    // Not a state: |rho_as + rho_sa| exceeds rho_aa + rho_ss. A loose PSD
    // tolerance lets it past validation so the radicand check is reached.
    Matrix4 bad = Matrix4::Zero();
    bad(0, 0) = 0.5;
    bad(3, 3) = 0.5;
    bad(1, 1) = 0.3;
    bad(2, 2) = -0.3;
    const DensityMatrix4 broken = validate_density(bad, {1e-9, 1e-9, 1.0});
    try {
      c1c2_evolved(broken, 0.0, 1.0);
      FAIL("expected ComplexRoot");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ComplexRoot);
    }
  }
}

TEST_CASE("PPT test agrees with vanishing concurrence") {
  CHECK(is_separable_ppt(validate_density(Matrix4::Identity() / 4.0)));
  CHECK_FALSE(is_separable_ppt(bell_psi_plus()));
  CHECK(min_partial_transpose_eigenvalue(bell_psi_plus()) == doctest::Approx(-0.5));

  int disagreements = 0, entangled = 0;
  for (std::uint64_t s = 0; s < 5000; ++s) {
    const DensityMatrix4 rho = random_density(s);
    const bool sep = is_separable_ppt(rho, 1e-9);
    const bool zero = concurrence(rho) <= 1e-9;
    if (sep != zero) ++disagreements;
    if (!sep) ++entangled;
  }
  CHECK(disagreements == 0);
  // both classes must actually be represented
  CHECK(entangled > 100);
  CHECK(entangled < 4900);
}

TEST_CASE("partial transpose is an involution") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matrix4 m = random_density(s).matrix();
    CHECK(max_abs_diff(partial_transpose(partial_transpose(m)), m) == 0.0);
    CHECK(std::abs(partial_transpose(m).trace() - m.trace()) < 1e-15);
  }
}

TEST_CASE("concurrence does not increase along trajectories") {
  const EvolutionConfig cfg{Method::expm, 1000};
  int increases = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DensityMatrix4 rho0 = random_density(1000 + s);
    double prev = concurrence(rho0);
    for (int k = 1; k <= 40; ++k) {
      const double c = concurrence(evolve_numeric(rho0, 0.02 * k, 1.0, cfg));
      if (c > prev + 1e-12) ++increases;
      prev = c;
    }
  }
  CHECK(increases == 0);
}
