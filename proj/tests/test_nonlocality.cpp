#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/nonlocality.hpp"

using namespace twoatom;

namespace {

using Vec4 = Eigen::Matrix<Complex, 4, 1>;

DensityMatrix4 bell_phi_plus() {
  Vec4 v = Vec4::Zero();
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return validate_density(twoatom::testing::projector(v));
}

const Eigen::Matrix3d& diag_bell() {
  static const Eigen::Matrix3d d = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
  return d;
}

}  // namespace

TEST_CASE("correlation_matrix") {
  CHECK((correlation_matrix(bell_phi_plus()).t - diag_bell()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(correlation_matrix(validate_density(Matrix4::Identity() / 4.0)).t.cwiseAbs().maxCoeff() < 1e-15);

  Vec4 up = Vec4::Zero();
  up(0) = 1.0;
  const Eigen::Matrix3d zz = Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal();
  CHECK((correlation_matrix(validate_density(twoatom::testing::projector(up))).t - zz).cwiseAbs().maxCoeff() < 1e-15);

  SUBCASE("recovers the tensor of a Bloch-form matrix") {
    // 1/4 (I + a.s (x) I + I (x) b.s + sum t_nm s_n (x) s_m); the matrix need
    // not be positive, only Hermitian, so T is arbitrary.
    const std::array<Matrix2, 3> s = {pauli::x(), pauli::y(), pauli::z()};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      Eigen::Matrix3d t;
      Matrix4 m = Matrix4::Identity();
      for (int i = 0; i < 3; ++i) {
        m += u(rng) * kron(s[i], pauli::identity()) + u(rng) * kron(pauli::identity(), s[i]);
        for (int j = 0; j < 3; ++j) {
          t(i, j) = u(rng);
          m += t(i, j) * kron(s[i], s[j]);
        }
      }
      CHECK((correlation_matrix(Matrix4(m / 4.0)).t - t).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("entries stay in [-1, 1]") {
    for (std::uint64_t s = 0; s < 200; ++s)
      CHECK(correlation_matrix(random_density(s)).t.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
  }
  SUBCASE("non-Hermitian input is rejected") {
    Matrix4 m = Matrix4::Identity() / 4.0;
    m(0, 3) = Complex{0.0, 0.1};
    try {
      correlation_matrix(m);
      FAIL("expected NonRealCorrelation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonRealCorrelation);
    }
  }
}

TEST_CASE("m_value and n_value") {
  for (int i = 0; i <= 20; ++i) {
    const double c = 0.05 * i;
    CHECK(std::abs(m_value(pure_phi(c)) - (1.0 + c * c)) <= 1e-10);
    if (c > 0.0) CHECK(m_value(pure_phi(c)) > 1.0);
  }
  CHECK(m_value(validate_density(Matrix4::Identity() / 4.0)) == 0.0);
  for (double p : {0.0, 0.3, 1.0 / std::sqrt(2.0), 0.9, 1.0}) {
    CHECK(m_value(werner(p)) == doctest::Approx(2.0 * p * p).epsilon(1e-12));
    CHECK(m_value(werner(p, WernerSign::minus)) == doctest::Approx(2.0 * p * p).epsilon(1e-12));
  }
  CHECK(n_value(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n_value(pure_phi(0.5)) == doctest::Approx(0.25).epsilon(1e-12));

  int separable = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const DensityMatrix4 rho = random_density(s);
    const double m = m_value(rho);
    CHECK(m >= 0.0);
    CHECK(m <= 2.0 + 1e-12);
    if (is_separable_ppt(rho)) {
      ++separable;
      CHECK(n_value(rho) == 0.0);
    }
  }
  CHECK(separable > 0);

  // m = 2 only at maximally entangled pure states
  for (std::uint64_t s = 0; s < 2000; ++s) CHECK(m_value(random_density(s)) < 2.0 - 1e-6);
}

TEST_CASE("m_value is invariant under local unitaries") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const DensityMatrix4 rho = random_density(s);
    const DensityMatrix4 turned = twoatom::testing::apply_local(rho, twoatom::testing::random_unitary2(rng),
                                                                twoatom::testing::random_unitary2(rng));
    worst = std::max(worst, std::abs(m_value(rho) - m_value(turned)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("m_pure_evolved") {
  for (double c : {0.0, 0.3, 0.7, 1.0}) {
    const PureEvolvedM at0 = m_pure_evolved(c, 0.0, 1.0);
    CHECK(at0.corrected == doctest::Approx(1.0 + c * c));
  }
  for (double gt : {0.0, 0.1, 0.5, 2.0}) {
    const PureEvolvedM z = m_pure_evolved(0.0, gt, 1.0);
    CHECK(z.reduced == doctest::Approx(std::exp(-8.0 * gt)).epsilon(1e-14));
    CHECK(z.reduced_valid);
  }

  const PureEvolvedM one = m_pure_evolved(1.0, 0.3, 1.0);
  CHECK(one.reduced == doctest::Approx(std::exp(-2.4) + std::exp(-1.2)).epsilon(1e-14));
  CHECK(one.reduced == doctest::Approx(0.391912).epsilon(1e-6));
  CHECK(one.corrected == doctest::Approx(0.602388).epsilon(1e-6));
  CHECK_FALSE(one.reduced_valid);

  SUBCASE("against the eigen-based value of the evolved state") {
    const EvolutionConfig cfg{Method::expm, 1000};
    double worst_inside = 0.0, worst_corrected = 0.0;
    int inside = 0, outside = 0;
    for (int i = 0; i <= 20; ++i) {
      const double c = 0.05 * i;
      for (int k = 0; k <= 20; ++k) {
        const double gt = 0.025 * k;
        const double m = m_value(evolve_numeric(pure_phi(c), gt, 1.0, cfg));
        const PureEvolvedM f = m_pure_evolved(c, gt, 1.0);
        const double x = std::exp(-4.0 * gt);
        if (f.reduced_valid) {
          ++inside;
          worst_inside = std::max(worst_inside, std::abs(f.reduced - m));
        } else {
          ++outside;
          worst_corrected = std::max(worst_corrected, std::abs(2.0 * c * c * x - m));
        }
        worst_corrected = std::max(worst_corrected, std::abs(f.corrected - m));
      }
    }
    CHECK(inside > 0);
    CHECK(outside > 0);
    CHECK(worst_inside <= 1e-10);
    CHECK(worst_corrected <= 1e-10);
  }
  SUBCASE("rate scaling") {
    CHECK(m_pure_evolved(0.6, 0.1, 3.0).corrected == doctest::Approx(m_pure_evolved(0.6, 0.3, 1.0).corrected));
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(m_pure_evolved(1.2, 0.1, 1.0), Error);
    CHECK_THROWS_AS(m_pure_evolved(0.5, -0.1, 1.0), Error);
    CHECK_THROWS_AS(m_pure_evolved(0.5, 0.1, 0.0), Error);
  }
}
