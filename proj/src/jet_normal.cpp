#include "levikit/jet_normal.hpp"

#include <cmath>
#include <sstream>

#include "levikit/error.hpp"

namespace levikit {

std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Elliptic: return "elliptic";
    case PointKind::Hyperbolic: return "hyperbolic";
    case PointKind::Degenerate: return "degenerate";
  }
  return "degenerate";
}

double LocalDefiningFunction::operator()(Complex z, Complex w) const {
  return -w.real() + alpha1 * w.imag() + std::norm(z) + alpha2 * std::norm(w) +
         gamma * (z * z).real() + (Complex(alpha3, alpha4) * z * std::conj(w)).real();
}

bool is_degenerate(const LocalJet& jet, double tol) {
  const double b = std::abs(jet.B);
  const double c = std::abs(jet.C);
  return b == 0.0 || std::abs(b - 2.0 * c) <= tol * b;
}

CanonicalJet normalize_jet(const LocalJet& jet, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidInput, "degeneracy tolerance must be positive");
  if (is_degenerate(jet, tol)) {
    std::ostringstream ctx;
    ctx << "|B|=" << std::abs(jet.B) << " |C|=" << std::abs(jet.C);
    throw Error(ErrorCode::DegenerateJet, "jet is degenerate (|B| = 0 or |B| = 2|C|)", ctx.str());
  }
  // w -> (conj(B)/|B|^2) w makes B = 1; z -> e^{i phi} z with
  // phi = arg(C')/2 makes the conj(z)^2 coefficient C' real and non-negative.
  const Complex scale = std::conj(jet.B) / std::norm(jet.B);
  const Complex c_scaled = scale * jet.C;
  const double phi = std::arg(c_scaled) / 2.0;
  const LocalJet reduced = reparametrize(jet, phi, scale);

  CanonicalJet out;
  out.gamma = 2.0 * std::abs(reduced.C) / std::abs(reduced.B);
  out.kind = out.gamma < 1.0 ? PointKind::Elliptic : PointKind::Hyperbolic;
  return out;
}

Complex dbar_field(const LocalJet& jet, Complex z) {
  return jet.B * z + 2.0 * jet.C * std::conj(z);
}

double model_psi(double gamma, Complex z) { return std::norm(z) + gamma * (z * z).real(); }

double model_chi(double gamma, double theta) { return 1.0 + gamma * std::cos(2.0 * theta); }

LocalJet normal_form_jet(double gamma) {
  return LocalJet{Complex(gamma / 2.0, 0.0), Complex(1.0, 0.0), Complex(gamma / 2.0, 0.0)};
}

LocalJet reparametrize(const LocalJet& jet, double theta, Complex scale) {
  const Complex rot = std::polar(1.0, theta);
  // g(e^{i theta} z) = A e^{2 i theta} z^2 + B |z|^2 + C e^{-2 i theta} conj(z)^2
  return LocalJet{scale * jet.A * rot * rot, scale * jet.B, scale * jet.C * std::conj(rot * rot)};
}

}  // namespace levikit
