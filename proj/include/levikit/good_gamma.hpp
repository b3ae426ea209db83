#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "levikit/geometry.hpp"

namespace levikit {

// Row-major real 2x2 matrix.
using Mat2 = std::array<double, 4>;

Mat2 mul(const Mat2& x, const Mat2& y);
Mat2 inverse(const Mat2& x);
double det(const Mat2& x);
double max_abs_diff(const Mat2& x, const Mat2& y);
inline constexpr Mat2 kIdentity2{1.0, 0.0, 0.0, 1.0};

struct ReflectionPair {
  Mat2 tau1{0.0, 1.0, 1.0, 0.0};
  Mat2 tau2{};
  double a = 0.0;  // 2 / gamma
};

// Throws OutOfRange for gamma <= 1.
ReflectionPair build_reflections(double gamma);

// The conjugating matrix C = [[x, 1], [1, x]] with x the root of
// a x^2 + 4 x + a = 0 in (-1, 0). C commutes with tau1.
struct Conjugation {
  double x_root = 0.0;
  double other_root = 0.0;
  Mat2 c{};
};

Conjugation conjugation_for(double a);

// C^{-1} tau2 C. With the root above this is already a symmetric orthogonal
// reflection; `diagonal_scale` is the factor sqrt(m21 / m12) that the
// diagonal normalization would apply (1 up to rounding).
struct ConjugatedReflection {
  Mat2 tau2_tilde{};
  double diagonal_scale = 1.0;
  double orthogonality_defect = 0.0;  // max |M^T M - I|
};

ConjugatedReflection conjugate_reflection(const ReflectionPair& pair);

struct GammaReport {
  double gamma = 0.0;
  double a = 0.0;
  double x_root = 0.0;
  double other_root = 0.0;
  double nu = 0.0;  // slope of the fixed line of the conjugated tau2; may be +-inf
  double angle = 0.0;  // angle between the two reflection lines, in [0, pi/2]
  double fixed_vector_residual = 0.0;
  double diagonal_scale = 1.0;
  std::optional<std::pair<long, long>> rational;  // (n, m) with angle ~ n pi / m
  std::optional<long> dihedral_order;
  bool in_lambda = false;
};

// Throws OutOfRange for gamma <= 1 and InvalidInput for max_denominator < 2
// or a non-positive tolerance.
GammaReport analyze_gamma(double gamma, double angle_tol = 1e-9, long max_denominator = 50);

// Best continued-fraction convergent p/q of v with q <= max_denominator
// and |v - p/q| <= tol, if any.
std::optional<std::pair<long, long>> rational_approximation(double v, double tol, long max_denominator);

// Order of the group generated by g1 and g2 (closed under products up to
// tol), or nullopt once more than max_elements distinct elements appear.
std::optional<long> group_closure(const Mat2& g1, const Mat2& g2, long max_elements = 100, double tol = 1e-7);
std::optional<long> group_closure(const ReflectionPair& pair, long max_elements = 100, double tol = 1e-7);

// gamma in (lo, hi) whose reflection angle equals target (radians), located
// by scanning and bisecting the angle function. Returns nullopt when the
// angle does not cross target on the interval.
std::optional<double> find_gamma_for_angle(double target, double lo = 1.0 + 1e-9, double hi = 20.0);

// All gamma in (lo, hi) of the form 1 / cos(n pi / m) with m <= max_denominator.
std::vector<double> rational_angle_gammas(double lo, double hi, long max_denominator);

enum class Plane { E1, E2 };

struct CoveringModel {
  double gamma = 2.0;
};

// H(z, w(z)) = (z, z w + (gamma / 2)(z^2 + w^2)) with w on E1 (w = conj z)
// or E2 (w = -conj z - (2/gamma) z).
std::pair<Complex, Complex> covering_image(const CoveringModel& model, Complex z, Plane which);

}  // namespace levikit
