#include "levikit/asymptotics.hpp"

#include "levikit/foliation.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace levikit;
using levikit::test::error_code_of;
using levikit::test::sector_samples;

namespace {

Curve ray(double angle, double r0 = 1e-3, double r1 = 1.0, int n = 64) {
  Curve c;
  c.closed = false;
  for (int i = 0; i < n; ++i) c.points.push_back(std::polar(r0 * std::pow(r1 / r0, double(i) / (n - 1)), angle));
  return c;
}

PuiseuxSeries series(int m, std::map<int, Complex> coeffs) {
  PuiseuxSeries s;
  s.m = m;
  s.coeffs = std::move(coeffs);
  return s;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("fit of z^(5/2) on a narrow sector") {
    std::vector<std::pair<Complex, Complex>> samples;
    for (int i = 0; i < 24; ++i) {
      const double r = std::pow(10.0, -3.0 + 2.0 * i / 23.0);
      for (int j = 0; j < 24; ++j) {
        const Complex z = std::polar(r, kPi / 3.0 + (kPi / 3.0) * (j + 0.5) / 24.0);
        samples.emplace_back(z, branch_pow(z, 5, 2));
      }
    }
    const auto s = fit_puiseux(samples, 4, 12);
    CHECK(s.m == 2);
    CHECK(s.leading_k() == 5);
    CHECK(std::abs(s.coeffs.at(5) - Complex(1.0, 0.0)) < 1e-6);
    CHECK(validate_leading_term(s));
  }

  TEST_CASE("integer powers and the excluded z^2 term") {
    const auto cube = fit_puiseux(sector_samples([](Complex z) { return z * z * z; }), 4, 16);
    CHECK(cube.m == 1);
    CHECK(cube.leading_k() == 3);
    const auto sq = fit_puiseux(sector_samples([](Complex z) { return z * z; }), 4, 16);
    CHECK(sq.leading_k() == 2 * sq.m);
    CHECK_FALSE(validate_leading_term(sq));
    CHECK_FALSE(validate_leading_term(series(1, {{2, 1.0}, {3, 1.0}})));
    CHECK(validate_leading_term(series(2, {{5, 1.0}})));
  }

  TEST_CASE("property: synthetic round trip") {
    Rng rng(53);
    for (int i = 0; i < 60; ++i) {
      const auto truth = test::random_series(rng, 4, 16);
      const auto fit = fit_puiseux(sector_samples([&](Complex z) { return truth(z); }), 4, 16);
      CHECK(fit.m == truth.m);
      CHECK(test::coeff_distance(fit, truth) < 1e-6);
      CHECK(validate_leading_term(fit));
    }
  }

  TEST_CASE("property: a planted z^2 term is rejected") {
    Rng rng(59);
    for (int i = 0; i < 30; ++i) {
      const auto truth = test::random_series(rng, 4, 16);
      const double size = 1e-2 * truth.max_coeff();
      const auto fit = fit_puiseux(sector_samples([&](Complex z) { return truth(z) + size * z * z; }), 4, 16);
      CHECK_FALSE(validate_leading_term(fit));
    }
  }

  TEST_CASE("fit errors") {
    const std::vector<std::pair<Complex, Complex>> few{{1.0, 1.0}, {2.0, 8.0}};
    CHECK(error_code_of([&] { fit_puiseux(few, 4, 16); }) == ErrorCode::InsufficientSamples);
    CHECK(error_code_of([&] { fit_puiseux(few, 0, 16); }) == ErrorCode::InvalidInput);
    // Every sample on one ray makes the powers collinear up to scale.
    std::vector<std::pair<Complex, Complex>> same;
    for (int i = 0; i < 64; ++i) same.emplace_back(Complex(1.0, 0.0), Complex(1.0, 0.0));
    CHECK(error_code_of([&] { fit_puiseux(same, 2, 8); }) == ErrorCode::IllConditioned);
    CHECK(fit_puiseux(sector_samples([](Complex) { return Complex(0.0, 0.0); }), 4, 16).coeffs.empty());
  }

  TEST_CASE("good approach on the model sector") {
    const double gamma = 2.0, mu = admissible_mu(gamma);
    const Curve sides[] = {ray(kPi / 2.0 - mu), ray(kPi / 2.0 + mu)};
    // k/m = pi / (2 mu) = 3 for gamma = 2.
    const auto g = sector_samples([](Complex z) { return z * z * z + 0.3 * z * z * z * z; });
    CHECK(good_approach_check(sides, g, gamma));
    const Curve half_plane[] = {ray(0.0), ray(kPi)};
    CHECK_FALSE(good_approach_check(half_plane, g, gamma));
    const auto with_square = sector_samples([](Complex z) { return 0.5 * z * z + z * z * z; });
    CHECK_FALSE(good_approach_check(sides, with_square, gamma));
    const Curve lower[] = {ray(3.0 * kPi / 2.0 - mu), ray(3.0 * kPi / 2.0 + mu)};
    CHECK(good_approach_check(lower, g, gamma));
    const Curve far[] = {ray(kPi / 2.0 - mu, 0.5), ray(kPi / 2.0 + mu, 0.5)};
    CHECK(error_code_of([&] { good_approach_check(far, g, gamma); }) == ErrorCode::UndersampledCurve);
  }

  TEST_CASE("boundary angle fit") {
    Curve c;
    c.closed = false;
    for (int i = 1; i <= 200; ++i) {
      const double r = i / 200.0;
      c.points.push_back(std::polar(r, 1.0 - 0.4 * r * r));
    }
    const auto f = fit_boundary_angle(c);
    CHECK(f.theta0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.s == doctest::Approx(2.0));
    CHECK(f.c == doctest::Approx(-0.4).epsilon(1e-9));
  }

  TEST_CASE("asymptotic profile") {
    const auto flat = AsymptoticProfile::from_gamma(2.0, Branch::Plus, 0.0, 1.0);
    CHECK(flat.k_over_m == doctest::Approx(3.0));
    for (double r : {1e-3, 0.1, 1.0}) CHECK(theta_asymptote(flat, r) == doctest::Approx(kPi / 2.0 + kPi / 6.0));
    const auto bent = AsymptoticProfile::from_gamma(2.0, Branch::Minus, 0.7, -1.0);
    CHECK(theta_asymptote(bent, 1e-8) == doctest::Approx(kPi / 2.0 - kPi / 6.0 + 0.7e-8).epsilon(1e-12));
  }

  TEST_CASE("property: fitted profile error has the correction order") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
      const double gamma = 2.0;
      const int m = static_cast<int>(rng.uniform_int(1, 2));
      const auto side = rng.coin() ? Branch::Plus : Branch::Minus;
      const double a = rng.uniform(0.2, 2.0), b = rng.uniform(-1.0, 1.0), nu = rng.coin() ? 1.0 : -1.0;
      const auto truth = AsymptoticProfile::from_gamma(gamma, side, a, nu);
      const double k = std::round(truth.k_over_m * m);
      const double p2 = (k + 1.0) / m - 2.0;
      std::vector<double> r, th;
      for (int i = 0; i < 40; ++i) {
        r.push_back(std::pow(10.0, -3.0 + 2.5 * i / 39.0));
        th.push_back(theta_asymptote(truth, r.back()) + b * std::pow(r.back(), p2));
      }
      const auto fit = fit_profile(gamma, side, m, r, th);
      CHECK(fit.abs_a == doctest::Approx(a).epsilon(1e-8));
      CHECK(fit.nu_const == nu);
      // Log-log slope of the pointwise error of the leading profile.
      if (std::abs(b) < 0.05) continue;
      const double e1 = std::abs(th[5] - theta_asymptote(fit, r[5]));
      const double e2 = std::abs(th[25] - theta_asymptote(fit, r[25]));
      const double slope = std::log(e2 / e1) / std::log(r[25] / r[5]);
      CHECK(slope >= p2 - 0.1);
    }
  }

  TEST_CASE("sector positivity widths") {
    CHECK(sector_positivity_width(2, 1) == doctest::Approx(kPi / 2.0));
    CHECK(sector_positivity_width(5, 2) == doctest::Approx(2.0 * kPi / 5.0));
    CHECK(std::abs(measured_positive_arc(1.0, 5, 2) - 2.0 * kPi / 5.0) <= 2.0 * kPi / 360.0);
    for (auto [q, m] : {std::pair{3, 1}, std::pair{7, 2}, std::pair{9, 4}, std::pair{5, 3}, std::pair{4, 1}}) {
      CHECK(std::abs(measured_positive_arc(Complex(0.3, -0.8), q, m) - sector_positivity_width(q, m)) <=
            2.0 * kPi / 3600.0 * 2.0);
    }
    CHECK(error_code_of([] { sector_positivity_width(0, 1); }) == ErrorCode::InvalidInput);
  }

  TEST_CASE("uniqueness verdicts") {
    const auto a = series(1, {{3, 1.0}, {4, 0.5}});
    CHECK(uniqueness_hypotheses(a, a, Relation::Equal).kind == VerdictKind::ForcedEqual);
    CHECK(uniqueness_hypotheses(a, a, Relation::FirstInsideSecond).kind == VerdictKind::ForcedEqual);
    const auto b = series(1, {{3, 1.0}, {4, 0.7}});
    CHECK(uniqueness_hypotheses(a, b, Relation::Equal).kind == VerdictKind::HypothesesExcluded);
    const auto v = uniqueness_hypotheses(a, b, Relation::FirstInsideSecond);
    CHECK(v.kind == VerdictKind::ContradictionWitness);
    CHECK(v.q == 4);
    CHECK(v.positivity_width == doctest::Approx(kPi / 4.0));
    CHECK(v.domain_angle == doctest::Approx(kPi / 3.0));
    CHECK(v.positivity_width < v.domain_angle);
    const auto c = series(1, {{3, 2.0}});
    CHECK(uniqueness_hypotheses(a, c, Relation::FirstInsideSecond).kind == VerdictKind::HypothesesExcluded);
    const auto d = series(2, {{7, 1.0}});
    CHECK(uniqueness_hypotheses(a, d, Relation::FirstInsideSecond).kind == VerdictKind::HypothesesExcluded);
    const auto half = series(2, {{6, 1.0}, {7, 0.2}});
    const auto w = uniqueness_hypotheses(a, half, Relation::FirstInsideSecond);
    CHECK(w.kind == VerdictKind::ContradictionWitness);
    CHECK(w.m == 2);
    CHECK(w.q == 7);
    CHECK(error_code_of([&] { uniqueness_hypotheses(series(1, {{2, 1.0}}), a, Relation::Equal); }) ==
          ErrorCode::InvalidSeries);
  }

  TEST_CASE("branch of the fractional powers") {
    CHECK(std::abs(branch_pow(Complex(0.0, -1.0), 1, 2) - std::polar(1.0, 3.0 * kPi / 4.0)) < 1e-15);
    CHECK(std::abs(branch_pow(Complex(4.0, 0.0), 1, 2) - Complex(2.0, 0.0)) < 1e-15);
    CHECK(branch_pow(0.0, 3, 2) == Complex(0.0, 0.0));
  }
}
