#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace levikit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// A polyline in the z-plane. When closed, the last point connects back to
// the first and no point is repeated.
struct Curve {
  std::vector<Complex> points;
  bool closed = true;
};

// Angle of z mapped into (-pi/2, 3pi/2], i.e. the branch cut sits on the
// negative imaginary axis.
double branch_arg(Complex z);

// Shortest distance from p to the segment [a, b].
double segment_distance(Complex p, Complex a, Complex b);

// Shortest distance from p to any segment of the curve.
double curve_distance(Complex p, const Curve& curve);

// Symmetric Hausdorff distance between two finite unions of curves, measured
// from the vertices of each side to the polylines of the other.
double hausdorff_distance(std::span<const Curve> lhs, std::span<const Curve> rhs);

// Even-odd point-in-polygon test. The curve is treated as closed.
bool contains(const Curve& polygon, Complex p);

// True when no two non-adjacent segments of the closed curve intersect.
bool is_simple(const Curve& curve);

// Longest segment divided by the bounding-box diagonal.
double relative_max_spacing(const Curve& curve);

}  // namespace levikit
