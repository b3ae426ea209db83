#include "levikit/good_gamma.hpp"

#include "levikit/jet_normal.hpp"
#include "support.hpp"

using namespace levikit;
using levikit::test::error_code_of;

namespace {

bool mat_near(const Mat2& a, const Mat2& b, double tol) { return max_abs_diff(a, b) <= tol; }

// Independent angle oracle: the fixed lines of tau1 and tau2 as eigenvectors
// for eigenvalue +1, compared in the Euclidean metric of the coordinates in
// which tau2 becomes orthogonal. Uses the explicit line directions instead
// of the closed-form slope.
double oracle_angle(double gamma) {
  const auto pair = build_reflections(gamma);
  const auto ct = conjugate_reflection(pair);
  const Mat2& m = ct.tau2_tilde;
  // Fixed vector of m: (m - I) v = 0.
  const bool first = std::hypot(m[0] - 1.0, m[1]) >= std::hypot(m[2], m[3] - 1.0);
  const double vx = first ? -m[1] : -(m[3] - 1.0);
  const double vy = first ? m[0] - 1.0 : m[2];
  const double line = std::atan2(vy, vx);
  // tau1 fixes the diagonal.
  double d = std::fmod(std::abs(line - kPi / 4.0), kPi);
  if (d > kPi / 2.0) d = kPi - d;
  return d;
}

}  // namespace

TEST_SUITE("good_gamma") {
  TEST_CASE("reflection matrices") {
    const auto p2 = build_reflections(2.0);
    CHECK(mat_near(p2.tau2, {-1.0, -1.0, 0.0, 1.0}, 1e-15));
    CHECK(mat_near(mul(p2.tau1, p2.tau1), kIdentity2, 0.0));
    const auto p4 = build_reflections(4.0);
    CHECK(mat_near(p4.tau2, {-0.5, -1.0, -0.75, 0.5}, 1e-15));
    CHECK(det(p4.tau2) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(error_code_of([] { build_reflections(1.0); }) == ErrorCode::OutOfRange);
    CHECK(error_code_of([] { build_reflections(0.5); }) == ErrorCode::OutOfRange);
  }

  TEST_CASE("property: conjugation root and involutions") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
      const double gamma = rng.uniform(1.0001, 50.0);
      const auto pair = build_reflections(gamma);
      CHECK(mat_near(mul(pair.tau2, pair.tau2), kIdentity2, 1e-12));
      const auto conj = conjugation_for(pair.a);
      CHECK(conj.x_root > -1.0);
      CHECK(conj.x_root < 0.0);
      CHECK(std::abs(pair.a * conj.x_root * conj.x_root + 4.0 * conj.x_root + pair.a) < 1e-12);
      CHECK(mat_near(mul(conj.c, pair.tau1), mul(pair.tau1, conj.c), 1e-15));
      const auto ct = conjugate_reflection(pair);
      CHECK(ct.orthogonality_defect < 1e-10);
      CHECK(ct.diagonal_scale == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("angle pi/4 gives the dihedral group of order 8") {
    const auto g = find_gamma_for_angle(kPi / 4.0);
    REQUIRE(g.has_value());
    CHECK(*g == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    const auto r = analyze_gamma(*g);
    CHECK(r.in_lambda);
    REQUIRE(r.rational.has_value());
    CHECK(*r.rational == std::pair{1L, 4L});
    CHECK(r.dihedral_order == 8);
    CHECK(group_closure(build_reflections(*g)) == 8);
  }

  TEST_CASE("irrational angle is not in Lambda") {
    const auto g = find_gamma_for_angle(1.0);  // angle / pi = 1 / pi
    REQUIRE(g.has_value());
    const auto r = analyze_gamma(*g, 1e-9, 50);
    CHECK_FALSE(r.in_lambda);
    CHECK_FALSE(r.rational.has_value());
    CHECK_FALSE(group_closure(build_reflections(*g), 200).has_value());
  }

  TEST_CASE("property: every gamma interval of width 0.1 meets Lambda") {
    for (int i = 0; i < 90; ++i) {
      const double lo = 1.0 + 0.1 * i, hi = lo + 0.1;
      const auto hits = rational_angle_gammas(lo, hi, 200);
      REQUIRE_FALSE(hits.empty());
      CHECK(analyze_gamma(hits.front(), 1e-9, 200).in_lambda);
    }
  }

  TEST_CASE("single reflection generates a group of order 2") {
    const Mat2 t{0.0, 1.0, 1.0, 0.0};
    CHECK(group_closure(t, t) == 2);
  }

  TEST_CASE("property: analyze_gamma agrees with the closure oracle") {
    Rng rng(2026);
    std::vector<double> gammas;
    for (int i = 0; i < 60; ++i) gammas.push_back(rng.uniform(1.001, 10.0));
    for (double g : rational_angle_gammas(1.001, 10.0, 12)) gammas.push_back(g);
    for (double g : gammas) {
      const auto r = analyze_gamma(g);
      CHECK(r.fixed_vector_residual < 1e-9);
      CHECK(r.angle == doctest::Approx(oracle_angle(g)).epsilon(1e-9));
      const auto order = group_closure(build_reflections(g), 100);
      CHECK(r.in_lambda == order.has_value());
      if (r.in_lambda) {
        CHECK(r.dihedral_order == order);
        CHECK(*order == 2 * r.rational->second);
      }
    }
  }

  TEST_CASE("rational angle roots") {
    const auto gs = rational_angle_gammas(1.0001, 10.0, 6);
    for (double g : gs) {
      const auto r = analyze_gamma(g);
      REQUIRE(r.rational.has_value());
      CHECK(std::cos(kPi * r.rational->first / r.rational->second) == doctest::Approx(1.0 / g).epsilon(1e-9));
    }
    CHECK(std::find_if(gs.begin(), gs.end(), [](double g) { return std::abs(g - 2.0) < 1e-12; }) != gs.end());
  }

  TEST_CASE("continued fractions") {
    CHECK(rational_approximation(0.25, 1e-12, 50) == std::pair{1L, 4L});
    CHECK(rational_approximation(2.0 / 7.0, 1e-12, 50) == std::pair{2L, 7L});
    CHECK_FALSE(rational_approximation(1.0 / kPi, 1e-9, 50).has_value());
    CHECK(rational_approximation(1.0 / kPi, 1e-3, 50) == std::pair{7L, 22L});
  }

  TEST_CASE("analyze_gamma input checks") {
    CHECK(error_code_of([] { analyze_gamma(1.0); }) == ErrorCode::OutOfRange);
    CHECK(error_code_of([] { analyze_gamma(2.0, 0.0); }) == ErrorCode::InvalidInput);
    CHECK(error_code_of([] { analyze_gamma(2.0, 1e-9, 1); }) == ErrorCode::InvalidInput);
  }

  TEST_CASE("covering identity") {
    const CoveringModel m{2.0};
    const auto e2 = covering_image(m, 1.0, Plane::E2);
    CHECK(std::abs(e2.second - Complex(3.0, 0.0)) < 1e-15);
    CHECK(std::abs(covering_image(m, 0.0, Plane::E1).second) == 0.0);
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
      const CoveringModel mm{rng.uniform(1.01, 10.0)};
      const Complex z = test::random_complex(rng, 3.0);
      for (Plane p : {Plane::E1, Plane::E2}) {
        const auto [z1, w1] = covering_image(mm, z, p);
        CHECK(z1 == z);
        CHECK(std::abs(w1 - model_psi(mm.gamma, z)) < 1e-10 * (1.0 + std::norm(z) * mm.gamma));
      }
    }
  }
}
