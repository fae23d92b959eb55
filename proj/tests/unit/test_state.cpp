#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include "random_states.hpp"
#include "xgeom/state.hpp"

using namespace xgeom;
using Catch::Matchers::WithinAbs;

TEST_CASE("validate_density accepts and rejects", "[state]") {
  CHECK_NOTHROW(validate_density(Matrix4cd::Identity() / 4.0));
  CHECK_THAT(purity(make_bell(3).matrix()), WithinAbs(1.0, 1e-15));

  // |r14| above sqrt(r11 r44) breaks positivity.
  XState s{0.25, 0.25, 0.25, 0.25, 0.3, 0, 0, 0};
  try {
    validate_density(s.matrix());
    FAIL("expected NotPSD");
  } catch (const InvalidDensity& e) {
    CHECK(e.reason() == InvalidDensity::Reason::NotPSD);
    CHECK_THAT(e.worst(), WithinAbs(-0.05, 1e-14));
  }

  Matrix4cd skew = Matrix4cd::Identity() / 4.0;
  skew(0, 1) = 0.1;
  try {
    validate_density(skew);
    FAIL("expected NotHermitian");
  } catch (const InvalidDensity& e) {
    CHECK(e.reason() == InvalidDensity::Reason::NotHermitian);
    CHECK_THAT(e.worst(), WithinAbs(0.1, 1e-15));
  }

  try {
    validate_density(Matrix4cd::Identity() / 2.0);
    FAIL("expected TraceNotOne");
  } catch (const InvalidDensity& e) {
    CHECK(e.reason() == InvalidDensity::Reason::TraceNotOne);
    CHECK_THAT(e.worst(), WithinAbs(1.0, 1e-15));
  }

  Matrix4cd nan = Matrix4cd::Identity() / 4.0;
  nan(2, 2) = std::nan("");
  CHECK_THROWS_AS(validate_density(nan), DomainError);
}

TEST_CASE("X-state construction", "[state]") {
  const XState s = make_x_state({0.4, 0.1, 0.2, 0.3}, 0.2, -1.0, 0.1, 7.0);
  CHECK(s.theta >= 0);
  CHECK(s.theta < 2 * std::numbers::pi);
  CHECK_THAT(s.phi, WithinAbs(7.0 - 2 * std::numbers::pi, 1e-15));
  CHECK_NOTHROW(validate_density(s.matrix()));

  CHECK_THROWS_AS(make_x_state({0.4, 0.1, 0.2, 0.3}, 0.4, 0, 0, 0), ParameterError);
  CHECK_THROWS_AS(make_x_state({0.4, 0.1, 0.2, 0.2}, 0, 0, 0, 0), ParameterError);
  CHECK_THROWS_AS(make_x_state({0.6, -0.1, 0.2, 0.3}, 0, 0, 0, 0), ParameterError);

  CHECK(unit_phase(std::numbers::pi) == std::complex<double>(-1, 0));
  CHECK(unit_phase(0.5 * std::numbers::pi) == std::complex<double>(0, 1));

  const XState back = x_state_from_density(validate_density(s.matrix()));
  CHECK_THAT(back.x, WithinAbs(s.x, 1e-15));
  CHECK_THAT(back.theta, WithinAbs(s.theta, 1e-14));
  CHECK_THAT(back.phi, WithinAbs(s.phi, 1e-14));

  Matrix4cd m = s.matrix();
  m(0, 2) = 0.01;
  m(2, 0) = 0.01;
  try {
    x_state_from_density(validate_density(m));
    FAIL("expected NotXShaped");
  } catch (const NotXShaped& e) {
    CHECK(e.row() == 0);
    CHECK(e.col() == 2);
    CHECK_THAT(e.magnitude(), WithinAbs(0.01, 1e-15));
  }
}

TEST_CASE("closed-form X spectrum against Eigen", "[state]") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const XState s = testing::random_x_state(rng);
    const auto sp = x_state_eigensystem(s);
    const Matrix4cd m = s.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    Vector4d sorted = sp.values;
    std::sort(sorted.data(), sorted.data() + 4, std::greater<>());
    for (int k = 0; k < 4; ++k) CHECK_THAT(sorted[k], WithinAbs(es.eigenvalues()[3 - k], 1e-13));
    for (int k = 0; k < 4; ++k) {
      CHECK_THAT(sp.vectors.col(k).norm(), WithinAbs(1.0, 1e-14));
      CHECK((m * sp.vectors.col(k) - sp.values[k] * sp.vectors.col(k)).norm() <= 1e-14);
    }
  }

  // Degenerate blocks fall back to basis vectors.
  const auto id = x_state_eigensystem(XState{0.25, 0.25, 0.25, 0.25});
  CHECK((id.vectors.adjoint() * id.vectors - Matrix4cd::Identity()).norm() <= 1e-15);
}

TEST_CASE("Delta and subsystem entropies", "[state]") {
  Matrix4cd m = Matrix4cd::Zero();
  m.diagonal() << 0.5, 0.3, 0.1, 0.1;
  const auto rep = compute_delta(validate_density(m));
  CHECK_THAT(rep.delta, WithinAbs(0.08, 1e-15));
  CHECK_FALSE(rep.entropies_equal);
  CHECK(rep.entropy1 != rep.entropy2);

  const auto product = compute_delta(validate_density(XState{1, 0, 0, 0}.matrix()));
  CHECK(product.delta == 0);
  CHECK(product.entropy1 == 0);
  CHECK(product.entropy2 == 0);

  const auto werner = compute_delta(validate_density(make_werner(3, 0.5).matrix()));
  CHECK(werner.delta == 0);
  CHECK(werner.entropies_equal);
  CHECK(werner.entropy1 == 1.0);

  // Delta = 0 exactly when the entropies coincide.
  std::mt19937_64 rng(22);
  for (int i = 0; i < 500; ++i) {
    XState s = testing::random_x_state(rng);
    s.r44 = s.r11;
    const double total = s.r11 + s.r22 + s.r33 + s.r44;
    s.r11 /= total;
    s.r22 /= total;
    s.r33 /= total;
    s.r44 = s.r11;
    s.x = std::min(s.x, s.r11);
    s.y = std::min(s.y, std::sqrt(s.r22 * s.r33));
    const auto r = compute_delta(validate_density(s.matrix()));
    CHECK(std::abs(r.delta) <= 1e-15);
    CHECK_THAT(r.entropy1, WithinAbs(r.entropy2, 1e-12));
  }
  for (int i = 0; i < 500; ++i) {
    const auto rho = validate_density(testing::random_mixture(rng, 2));
    const auto r = compute_delta(rho);
    const double s1 = von_neumann_entropy(partial_trace(rho.matrix(), Qubit::First));
    const double s2 = von_neumann_entropy(partial_trace(rho.matrix(), Qubit::Second));
    CHECK_THAT(r.entropy1, WithinAbs(s1, 1e-9));
    CHECK_THAT(r.entropy2, WithinAbs(s2, 1e-9));
    CHECK(r.lambda1.lambda <= 0.5 + 1e-12);
  }
}

TEST_CASE("pure-state factorization", "[state]") {
  const auto alpha = factorize_pure(make_bell(3));
  REQUIRE(alpha);
  const double h = std::numbers::sqrt2 / 2;
  CHECK((*alpha - Vector4cd(0, h, h, 0)).norm() <= 1e-15);

  CHECK_FALSE(factorize_pure(validate_density(make_werner(1, 0.5).matrix())));

  const auto up = factorize_pure(validate_density(XState{1, 0, 0, 0}.matrix()));
  REQUIRE(up);
  CHECK(*up == Vector4cd(1, 0, 0, 0));

  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const Matrix4cd m = testing::random_pure(rng);
    const auto a = factorize_pure(validate_density(m));
    REQUIRE(a);
    CHECK((m - *a * a->adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((*a)[0].imag() == 0);
    CHECK((*a)[0].real() > 0);
  }
}

TEST_CASE("Bell states and families", "[state]") {
  const Vector4cd b1 = bell_vector(1), b3 = bell_vector(3);
  CHECK(std::abs(b1.dot(b3)) == 0);
  CHECK_THROWS_AS(bell_vector(5), ParameterError);
  for (int k = 1; k <= 4; ++k) {
    const Matrix4cd p = make_bell(k).matrix();
    CHECK((p - bell_vector(k) * bell_vector(k).adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
  }

  // Bell mixture from the projectors directly.
  const std::array<double, 4> b{0.4, 0.1, 0.3, 0.2};
  Matrix4cd sum = Matrix4cd::Zero();
  for (int k = 1; k <= 4; ++k) sum += b[k - 1] * make_bell(k).matrix();
  CHECK((make_bell_mixture(b).matrix() - sum).cwiseAbs().maxCoeff() <= 1e-15);

  // Werner from its definition q P_k + (1 - q) I / 4.
  for (int k = 1; k <= 4; ++k)
    for (double q : {-1.0 / 3.0, 0.2, 1.0}) {
      const Matrix4cd direct = q * make_bell(k).matrix() + (1 - q) / 4 * Matrix4cd::Identity();
      CHECK((make_werner(k, q).matrix() - direct).cwiseAbs().maxCoeff() <= 1e-15);
    }
  CHECK_THROWS_AS(make_werner(1, -0.5), ParameterError);
  CHECK_THROWS_AS(make_werner(1, 1.01), ParameterError);

  // Generalized Werner from its definition.
  const std::array<double, 4> qv{0.5, 0.1, 0.05, 0.1};
  const double s = 0.75;
  Matrix4cd direct = (1 - s) / 4 * Matrix4cd::Identity();
  for (int k = 1; k <= 4; ++k) direct += qv[k - 1] * make_bell(k).matrix();
  CHECK((make_generalized_werner(qv, s).matrix() - direct).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_NOTHROW(validate_density(direct));
  CHECK_THROWS_WITH(make_generalized_werner({0.5, 0.1, 0.05, 0.1}, 0.8), Catch::Matchers::ContainsSubstring("differs"));
  CHECK_THROWS_WITH(make_generalized_werner({0.6, 0.4, -0.1, 0.1}, 1.0), Catch::Matchers::ContainsSubstring("lower bound"));

  // Closed boundary s = 1 + q_min stays PSD.
  const auto edge = make_generalized_werner({13.0 / 16, -1.0 / 16, 0, 0}, 0.75);
  CHECK_NOTHROW(validate_density(edge.matrix()));
}
