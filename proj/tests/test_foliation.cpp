#include "levikit/foliation.hpp"

#include "levikit/jet_normal.hpp"
#include "support.hpp"

using namespace levikit;
using levikit::test::error_code_of;

namespace {

Curve circle(double r, int n = 360, Complex centre = 0.0) {
  Curve c;
  for (int j = 0; j < n; ++j) c.points.push_back(centre + std::polar(r, 2.0 * kPi * j / n));
  return c;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

TEST_SUITE("foliation") {
  TEST_CASE("diagonal cases") {
    const auto a1 = linear_analysis({1.0, 0.0, {}});
    CHECK(a1.lambda_unstable == doctest::Approx(3.0));
    CHECK(a1.lambda_stable == doctest::Approx(-1.0));
    CHECK(std::abs(std::abs(a1.v_unstable.real()) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(a1.v_stable.imag()) - 1.0) < 1e-12);
    const auto a2 = linear_analysis({2.0, 0.0, {}});
    CHECK(a2.lambda_unstable == doctest::Approx(5.0));
    CHECK(a2.lambda_stable == doctest::Approx(-3.0));
  }

  TEST_CASE("property: saddle certificate against the quadratic formula") {
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
      const FoliationField f{rng.uniform(1.0001, 10.0), rng.uniform(-5.0, 5.0), {}};
      const auto m = f.matrix();
      const double tr = m[0] + m[3], dt = m[0] * m[3] - m[1] * m[2];
      CHECK(dt == doctest::Approx(-(4.0 * f.gamma * f.gamma - 1.0) * (1.0 + f.alpha1 * f.alpha1)).epsilon(1e-12));
      const double disc = std::sqrt(tr * tr - 4.0 * dt);
      const auto la = linear_analysis(f);
      CHECK(la.lambda_unstable == doctest::Approx((tr + disc) / 2.0).epsilon(1e-10));
      CHECK(la.lambda_stable == doctest::Approx((tr - disc) / 2.0).epsilon(1e-10));
      CHECK(la.lambda_unstable * la.lambda_stable < 0.0);
      CHECK(cross(la.v_unstable, la.v_stable) > 0.0);
      for (auto [lam, v] : {std::pair{la.lambda_unstable, la.v_unstable}, std::pair{la.lambda_stable, la.v_stable}}) {
        CHECK(std::abs(f(v) - lam * v) < 1e-10 * std::abs(lam));
      }
    }
  }

  TEST_CASE("gamma 2, alpha1 1 eigenvalue product") {
    const auto la = linear_analysis({2.0, 1.0, {}});
    CHECK(la.lambda_unstable * la.lambda_stable == doctest::Approx(-30.0));
  }

  TEST_CASE("integrator against the closed form") {
    const FoliationField f{2.0, 0.0, {}};
    const Complex z0 = 1e-3 * Complex(1.0, 1.0) / std::sqrt(2.0);
    const auto tr = integrate_leaf(f, z0, 0.0, 1.0, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      const Complex exact(std::exp(5.0 * tr.t[i]) * z0.real(), std::exp(-3.0 * tr.t[i]) * z0.imag());
      worst = std::max(worst, std::abs(tr.z[i] - exact));
    }
    CHECK(worst < 1e-8);
    CHECK(tr.t.back() == doctest::Approx(1.0));
  }

  TEST_CASE("invariant lines, fixed point and backwards time") {
    const FoliationField f{2.0, 0.0, {}};
    const auto on_axis = integrate_leaf(f, Complex(0.0, 0.5), 0.0, 1.0, 1e-3);
    for (const auto& z : on_axis.z) CHECK(std::abs(z.real()) < 1e-9);
    const auto fixed = integrate_leaf(f, 0.0, 0.0, 1.0, 1e-2);
    for (const auto& z : fixed.z) CHECK(z == Complex(0.0, 0.0));
    const auto back = integrate_leaf(f, Complex(1.0, 1.0), 0.0, -0.5, 1e-3);
    CHECK(back.z.back().real() == doctest::Approx(std::exp(-2.5)).epsilon(1e-9));
    CHECK(back.z.back().imag() == doctest::Approx(std::exp(1.5)).epsilon(1e-9));
  }

  TEST_CASE("step size guard") {
    CHECK(error_code_of([] { integrate_leaf({2.0, 0.0, {}}, 1.0, 0.0, 1.0, 1.0); }) == ErrorCode::StepTooLarge);
    CHECK(error_code_of([] { integrate_leaf({2.0, 0.0, {}}, 1.0, 0.0, 1.0, 0.0); }) == ErrorCode::InvalidInput);
  }

  TEST_CASE("regions") {
    const FoliationField f{2.0, 0.0, {}};
    CHECK(region_of(f, Complex(1.0, 1e-6)) == Region::Omega1);
    CHECK(region_of(f, Complex(1.0, 0.0)) == Region::Separatrix);
    CHECK(region_of(f, Complex(0.0, -2.0)) == Region::Separatrix);
    CHECK(region_of(f, Complex(-1.0, 1.0)) == Region::Omega2);
    CHECK(region_of(f, Complex(-1.0, -1.0)) == Region::Omega3);
    CHECK(region_of(f, Complex(1.0, -1.0)) == Region::Omega4);
    CHECK(error_code_of([&] { region_of(f, 0.0); }) == ErrorCode::OriginQuery);
  }

  TEST_CASE("property: regions are invariant under the flow") {
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
      const FoliationField f{rng.uniform(1.1, 6.0), rng.uniform(-3.0, 3.0), {}};
      const Complex z0 = test::random_complex(rng, 1.0);
      if (std::abs(z0) < 1e-2) continue;
      const Region r0 = region_of(f, z0, 1e-6);
      if (r0 == Region::Separatrix) continue;
      const auto tr = integrate_leaf(f, z0, 0.0, 0.1, 1e-3);
      for (const auto& z : tr.z) CHECK(region_of(f, z, 1e-6) == r0);
    }
  }

  TEST_CASE("tangency detection") {
    const FoliationField f{2.0, 0.0, {}};
    const auto c = circle(0.5);
    const auto t = detect_tangency(f, c);
    REQUIRE(t.has_value());
    // Oracle: dense sign changes of the cross product along the circle.
    int changes = 0;
    double prev = cross(f(c.points.back()), c.points.front() - c.points.back());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const double s = cross(f(c.points[i]), c.points[(i + 1) % c.points.size()] - c.points[i]);
      if ((s > 0) != (prev > 0)) ++changes;
      prev = s;
    }
    CHECK(changes == 4);
    CHECK(std::abs(std::abs(*t) - 0.5) < 1e-2);

    Curve arc;
    arc.closed = false;
    for (int j = 0; j <= 40; ++j) arc.points.push_back(Complex(1.0, -0.2 + 0.4 * j / 40.0));
    CHECK_FALSE(detect_tangency(f, arc).has_value());

    Curve sep;
    sep.closed = false;
    for (int j = 0; j <= 40; ++j) sep.points.push_back(Complex(0.1 + 0.9 * j / 40.0, 0.0));
    const auto s = detect_tangency(f, sep);
    REQUIRE(s.has_value());
    CHECK(*s == sep.points.front());

    Curve coarse;
    coarse.points = {1.0, Complex(0.0, 1.0), -1.0, Complex(0.0, -1.0)};
    CHECK(error_code_of([&] { detect_tangency(f, coarse); }) == ErrorCode::UndersampledCurve);
  }

  TEST_CASE("nested domain classification") {
    const std::vector<Curve> inc{circle(1.0), circle(1.1), circle(1.2)};
    const std::vector<Curve> dec{circle(1.2), circle(1.1), circle(1.0)};
    const std::vector<Curve> mixed{circle(1.0), circle(1.2), circle(1.1)};
    CHECK(classify_approach(inc) == Approach::Inside);
    CHECK(classify_approach(dec) == Approach::Outside);
    CHECK(classify_approach(mixed) == Approach::NotMonotone);
    const std::vector<Curve> shifted{circle(1.0), circle(1.0, 360, Complex(0.3, 0.0))};
    CHECK(classify_approach(shifted) == Approach::NotMonotone);
  }

  TEST_CASE("admissible angle") {
    CHECK(admissible_mu(2.0) == doctest::Approx(kPi / 6.0).epsilon(1e-15));
    CHECK(admissible_mu(1.0 + 1e-12) < 1e-5);
    CHECK(admissible_mu(1e12) == doctest::Approx(kPi / 4.0).epsilon(1e-9));
    CHECK(error_code_of([] { admissible_mu(1.0); }) == ErrorCode::OutOfRange);
    for (int i = 101; i <= 1000; ++i) {
      const double g = i / 100.0, mu = admissible_mu(g);
      CHECK(mu > 0.0);
      CHECK(mu < kPi / 4.0);
      CHECK(std::abs(model_chi(g, kPi / 2.0 + mu)) < 1e-12);
      CHECK(std::abs(model_chi(g, kPi / 2.0 - mu)) < 1e-12);
    }
  }

  TEST_CASE("property: admissible regions are the negative set of psi") {
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
      const double g = rng.uniform(1.05, 8.0);
      const AdmissibleRegions d(g);
      const Complex z = test::random_complex(rng, 2.0);
      const double psi = model_psi(g, z);
      if (std::abs(psi) < 1e-9 * std::norm(z)) continue;
      CHECK((psi < 0.0) == (d.in_d_plus(z) || d.in_d_minus(z)));
      CHECK_FALSE((d.in_d_plus(z) && d.in_d_minus(z)));
      if (d.in_d_plus(z)) CHECK(z.imag() > 0.0);
    }
  }
}
