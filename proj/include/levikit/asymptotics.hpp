#pragma once

#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "levikit/geometry.hpp"

namespace levikit {

// g(z) = sum_k g_k z^(k/m), evaluated on the branch with arg z in
// (-pi/2, 3pi/2]. Every stored k is >= 2m.
struct PuiseuxSeries {
  int m = 1;
  std::map<int, Complex> coeffs;
  double residual = 0.0;  // relative least-squares residual of the fit

  Complex operator()(Complex z) const;
  // Smallest k with a stored coefficient, or 0 for the zero series.
  int leading_k() const;
  double max_coeff() const;
};

// z^(k/m) on the branch described above.
Complex branch_pow(Complex z, int k, int m);

struct PuiseuxFitOptions {
  double max_condition = 1e12;
  double prune_tol = 1e-8;  // relative to the largest coefficient
};

// Least squares over candidate ramifications m = 1..m_max using the terms
// k = 2m..k_max, picking the smallest m whose residual is within a factor
// of ten of the best. Throws InsufficientSamples and IllConditioned.
PuiseuxSeries fit_puiseux(std::span<const std::pair<Complex, Complex>> samples, int m_max, int k_max,
                          PuiseuxFitOptions opts = {});

// True iff |g_{2m}| <= tol * max |g_k|.
bool validate_leading_term(const PuiseuxSeries& series, double tol = 1e-6);

struct GoodApproachOptions {
  double angle_tol = 1e-3;
  double leading_tol = 1e-6;
  double residual_tol = 1e-6;
  int m_max = 4;
  int k_max = 12;
};

// Both boundary curves must approach 0 tangent to theta = pi/2 +- mu (or
// 3pi/2 +- mu), and the fitted expansion of g must start beyond z^2.
// Throws UndersampledCurve when a curve has fewer than 8 points or stays
// away from the origin.
bool good_approach_check(std::span<const Curve> boundary, std::span<const std::pair<Complex, Complex>> g_data,
                         double gamma, GoodApproachOptions opts = {});

// Best fit theta(r) = theta0 + c r^s over a grid of exponents s.
struct AngleFit {
  double theta0 = 0.0;
  double c = 0.0;
  double s = 1.0;
  double residual = 0.0;
};

AngleFit fit_boundary_angle(const Curve& curve);

enum class Branch { Plus, Minus };

// theta(r) = pi/2 +- mu - (abs_a / nu_const) r^(k/m - 2).
struct AsymptoticProfile {
  double mu = 0.0;
  double k_over_m = 0.0;
  double abs_a = 0.0;
  double nu_const = 1.0;
  Branch side = Branch::Plus;

  // mu from gamma and k/m = pi / (2 mu).
  static AsymptoticProfile from_gamma(double gamma, Branch side, double abs_a, double nu_const);
};

double theta_asymptote(const AsymptoticProfile& profile, double r);

// Fits abs_a / nu_const from samples (r, theta) with mu and k/m fixed by
// gamma, including a correction term r^((k+1)/m - 2) so that the leading
// coefficient is not polluted. nu_const is returned as +-1.
AsymptoticProfile fit_profile(double gamma, Branch side, int m, std::span<const double> r,
                              std::span<const double> theta);

// pi m / q.
double sector_positivity_width(int q, int m);

// Widest contiguous arc of the unit circle (angles in the branch range)
// on which Re(c z^(q/m)) > 0, sampled at n points.
double measured_positive_arc(Complex c, int q, int m, int n_samples = 3600);

enum class Relation { Equal, FirstInsideSecond };

enum class VerdictKind { ForcedEqual, HypothesesExcluded, ContradictionWitness };

std::string_view to_string(VerdictKind v);

struct UniquenessVerdict {
  VerdictKind kind = VerdictKind::ForcedEqual;
  int q = 0;  // exponent numerator of the first differing coefficient
  int m = 1;  // common ramification
  double positivity_width = 0.0;  // pi m / q
  double domain_angle = 0.0;  // pi m / k = 2 mu
};

// Throws InvalidSeries when either series fails validate_leading_term.
UniquenessVerdict uniqueness_hypotheses(const PuiseuxSeries& s1, const PuiseuxSeries& s2, Relation relation,
                                        double tol = 1e-9);

}  // namespace levikit
