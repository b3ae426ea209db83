#include "levikit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levikit/error.hpp"

namespace levikit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateJet: return "DegenerateJet";
    case ErrorCode::ZeroSample: return "ZeroSample";
    case ErrorCode::UndersampledLoop: return "UndersampledLoop";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::OriginQuery: return "OriginQuery";
    case ErrorCode::UndersampledCurve: return "UndersampledCurve";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InvalidSeries: return "InvalidSeries";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnsaturatedPoint: return "UnsaturatedPoint";
    case ErrorCode::SelfLoopGluing: return "SelfLoopGluing";
    case ErrorCode::NegativePointGluing: return "NegativePointGluing";
    case ErrorCode::InconsistentInventory: return "InconsistentInventory";
    case ErrorCode::StuckState: return "StuckState";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::NotSecondOrderSmall: return "NotSecondOrderSmall";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

double branch_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi / 2) a += 2 * kPi;
  return a;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double s = ((p - a) * std::conj(ab)).real() / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

double curve_distance(Complex p, const Curve& curve) {
  const auto& pts = curve.points;
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  if (pts.size() == 1) return std::abs(p - pts.front());
  double best = std::numeric_limits<double>::infinity();
  const std::size_t segments = curve.closed ? pts.size() : pts.size() - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    best = std::min(best, segment_distance(p, pts[i], pts[(i + 1) % pts.size()]));
  }
  return best;
}

namespace {

double directed_hausdorff(std::span<const Curve> from, std::span<const Curve> to) {
  double worst = 0.0;
  for (const auto& c : from) {
    for (const auto& p : c.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& target : to) best = std::min(best, curve_distance(p, target));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  // Disjoint bounding boxes rule out near-collinear rounding false positives.
  if (std::max(p1.real(), p2.real()) < std::min(q1.real(), q2.real()) ||
      std::max(q1.real(), q2.real()) < std::min(p1.real(), p2.real()) ||
      std::max(p1.imag(), p2.imag()) < std::min(q1.imag(), q2.imag()) ||
      std::max(q1.imag(), q2.imag()) < std::min(p1.imag(), p2.imag())) {
    return false;
  }
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  // Collinear overlaps count as intersections.
  auto on_segment = [](Complex a, Complex b, Complex p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

double hausdorff_distance(std::span<const Curve> lhs, std::span<const Curve> rhs) {
  return std::max(directed_hausdorff(lhs, rhs), directed_hausdorff(rhs, lhs));
}

bool contains(const Curve& polygon, Complex p) {
  const auto& v = polygon.points;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const double yi = v[i].imag(), yj = v[j].imag();
    if ((yi > p.imag()) != (yj > p.imag())) {
      const double x = v[j].real() + (p.imag() - yj) * (v[i].real() - v[j].real()) / (yi - yj);
      if (p.real() < x) inside = !inside;
    }
  }
  return inside;
}

bool is_simple(const Curve& curve) {
  const auto& v = curve.points;
  const std::size_t n = v.size();
  if (n < 3) return true;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a1 = v[i], a2 = v[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_intersect(a1, a2, v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

double relative_max_spacing(const Curve& curve) {
  const auto& v = curve.points;
  if (v.size() < 2) return std::numeric_limits<double>::infinity();
  double xmin = v[0].real(), xmax = xmin, ymin = v[0].imag(), ymax = ymin;
  for (const auto& p : v) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double diag = std::hypot(xmax - xmin, ymax - ymin);
  if (diag == 0.0) return std::numeric_limits<double>::infinity();
  double longest = 0.0;
  const std::size_t segments = curve.closed ? v.size() : v.size() - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    longest = std::max(longest, std::abs(v[(i + 1) % v.size()] - v[i]));
  }
  return longest / diag;
}

}  // namespace levikit
