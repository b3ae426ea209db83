#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "levikit/geometry.hpp"

namespace levikit {

// Linear part of the characteristic foliation near a hyperbolic point in
// normal form:
//   Re z' = (2g + 1) Re z + a1 (2g - 1) Im z
//   Im z' = a1 (2g + 1) Re z - (2g - 1) Im z
// The determinant -(4g^2 - 1)(1 + a1^2) is negative, so the origin is a saddle.
struct FoliationField {
  double gamma = 2.0;
  double alpha1 = 0.0;
  // Optional higher-order correction added to the linear field.
  std::function<Complex(Complex)> correction;

  std::array<double, 4> matrix() const;
  Complex operator()(Complex z) const;
};

struct LinearAnalysis {
  double lambda_unstable = 0.0;
  double lambda_stable = 0.0;
  // Unit eigenvectors, oriented so that det[v_u, v_s] > 0.
  Complex v_unstable;
  Complex v_stable;
};

LinearAnalysis linear_analysis(const FoliationField& field);

struct Trajectory {
  std::vector<double> t;
  std::vector<Complex> z;
};

// Fixed-step classical RK4 from t0 to t1, backwards when t1 < t0. Throws
// StepTooLarge when step * max|lambda| leaves the stability region or the
// state blows up.
Trajectory integrate_leaf(const FoliationField& field, Complex z0, double t0, double t1, double step);

// Regions are numbered counterclockwise starting from the unstable
// direction: Omega1 = (+,+), Omega2 = (-,+), Omega3 = (-,-), Omega4 = (+,-)
// in (unstable, stable) eigen-coordinates.
enum class Region { Omega1, Omega2, Omega3, Omega4, Separatrix };

std::string_view to_string(Region r);

// Throws OriginQuery for z = 0.
Region region_of(const FoliationField& field, Complex z, double tol = 1e-9);

// A point where the field is parallel to the curve within angle_tol
// (in sine), or else the interpolated crossing of the first sign change of
// the normalized cross product. Throws UndersampledCurve when the longest
// segment exceeds 1/16 of the bounding-box diagonal.
std::optional<Complex> detect_tangency(const FoliationField& field, const Curve& curve, double angle_tol = 1e-9);

enum class Approach { Inside, Outside, NotMonotone };

std::string_view to_string(Approach a);

struct ApproachGrid {
  int angular = 360;
  int radial = 100;
};

// Compares consecutive enclosed regions on a polar grid around the origin.
Approach classify_approach(std::span<const Curve> domains, ApproachGrid grid = {});

// mu = arccos(1/gamma) / 2. Throws OutOfRange for gamma <= 1.
double admissible_mu(double gamma);

// The two components of {psi < 0}: sectors of half-width mu around
// theta = pi/2 (D+) and theta = 3 pi/2 (D-).
struct AdmissibleRegions {
  double gamma = 2.0;
  double mu = 0.0;

  explicit AdmissibleRegions(double gamma);
  bool in_d_plus(Complex z) const;
  bool in_d_minus(Complex z) const;
};

}  // namespace levikit
