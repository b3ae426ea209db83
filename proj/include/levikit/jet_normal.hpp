#pragma once

#include <string_view>

#include "levikit/geometry.hpp"

namespace levikit {

// Second-order graph data w = A z^2 + B z conj(z) + C conj(z)^2 + o(|z|^2)
// of a surface at a complex point (no linear part by construction).
struct LocalJet {
  Complex A{0.0, 0.0};
  Complex B{0.0, 0.0};
  Complex C{0.0, 0.0};
};

enum class PointKind { Elliptic, Hyperbolic, Degenerate };

std::string_view to_string(PointKind kind);

struct CanonicalJet {
  double gamma = 0.0;  // Bishop invariant
  PointKind kind = PointKind::Degenerate;
};

// Coefficients of the local defining function
//   rho = -Re w + a1 Im w + |z|^2 + a2 |w|^2 + gamma Re z^2 + Re[(a3 + i a4) z conj(w)]
// near a hyperbolic point in normal form.
struct LocalDefiningFunction {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double alpha4 = 0.0;
  double gamma = 0.0;

  double operator()(Complex z, Complex w) const;
};

inline constexpr double kDefaultDegeneracyTol = 1e-9;

// Reduces a jet to w = z conj(z) + gamma Re z^2 and reports gamma = 2|C|/|B|.
//
// The reduction drops A (absorbed by the holomorphic change w -> w - A z^2),
// rotates z so that C becomes real, and rescales w by conj(B)/|B|^2. Both
// operations preserve the winding sign of dbar_field, which is how the
// result is cross-checked in the tests.
//
// Throws DegenerateJet when |B| = 0 or ||B| - 2|C|| <= tol |B|.
CanonicalJet normalize_jet(const LocalJet& jet, double tol = kDefaultDegeneracyTol);

bool is_degenerate(const LocalJet& jet, double tol = kDefaultDegeneracyTol);

// d g / d conj(z) = B z + 2 C conj(z) for the quadratic jet.
Complex dbar_field(const LocalJet& jet, Complex z);

// The model function psi(z) = |z|^2 + gamma Re z^2.
double model_psi(double gamma, Complex z);

// chi(theta) = 1 + gamma cos(2 theta), so that psi(r e^{i theta}) = r^2 chi(theta).
double model_chi(double gamma, double theta);

// Jet of the normal form itself: A = gamma/2, B = 1, C = gamma/2.
LocalJet normal_form_jet(double gamma);

// The jet after z -> e^{i theta} z and w -> scale w.
LocalJet reparametrize(const LocalJet& jet, double theta, Complex scale);

}  // namespace levikit
