#pragma once

#include <cstdint>
#include <vector>

#include "levikit/geometry.hpp"
#include "levikit/index_calculus.hpp"
#include "levikit/jet_normal.hpp"

namespace levikit {

struct ModelQuadric {
  double gamma = 0.0;

  PointKind kind() const;
};

// Boundary of the Bishop disc {psi(z) < t} of an elliptic model, i.e. the
// ellipse (1 + g) x^2 + (1 - g) y^2 = t, sampled counterclockwise at
// theta_j = 2 pi j / n. Throws WrongKind unless 0 <= gamma < 1.
Curve elliptic_disc_family(const ModelQuadric& q, double t, int n_samples);

// Image of the unit-disc point zeta under the affine parametrization of the
// same disc (boundary circle to the ellipse, counterclockwise).
Complex elliptic_disc_point(const ModelQuadric& q, double t, Complex zeta);

enum class Side { Plus, Minus };

// Level set psi = t of a hyperbolic model inside |z| <= cap_radius, as open
// curves. t < 0: one branch in each of D+ and D-. t = 0: the two lines
// theta = pi/2 +- mu through the origin. t > 0: the two branches crossing
// the real axis. Throws WrongKind unless gamma > 1.
std::vector<Curve> hyperbolic_section_family(const ModelQuadric& q, double t, int n_samples,
                                             double cap_radius = 1.0);

// Closed boundary of {psi < t} cut to |z| < cap_radius on one side, for
// t <= 0 (t = 0 gives the sector outline). The angular grid is global so
// that boundaries for different t share sample angles.
Curve section_domain(const ModelQuadric& q, double t, Side side, double cap_radius = 1.0, int n_samples = 720);

// Radial bump (1 - (r/R)^2)^3 on r < R.
struct GluingPerturbation {
  double delta = 1e-2;
  double support_radius = 0.3;

  double bump(double r) const;
};

// Boundary of {|z| < cap_radius, psi(z) < delta * bump(|z|)}: the two
// sectors D+ and D- joined through the bump near the origin. Traversed
// counterclockwise. Throws DeltaTooLarge when the result is not simple or
// the bump support reaches the cap.
Curve glued_boundary_curve(const ModelQuadric& q, const GluingPerturbation& pert, int n_samples = 720,
                           double cap_radius = 1.0);

// The delta -> 0 limit: the two sector outlines of D+ and D-.
std::vector<Curve> glued_limit(const ModelQuadric& q, int n_samples = 720, double cap_radius = 1.0);

// Exact smallest radius of the glued curve: the root of
// (1 + gamma) r^2 = delta * bump(r).
double glued_min_radius(const ModelQuadric& q, const GluingPerturbation& pert);

// Loop index of the graph frame of w = psi - delta * bump along the glued
// curve, as traversed.
int glued_curve_loop_index(const ModelQuadric& q, const GluingPerturbation& pert, int n_samples = 720);

// Complex-valued samples on the square [-half_width, half_width]^2.
struct GridFunction {
  int n = 0;  // points per side
  double half_width = 0.0;
  std::vector<Complex> values;  // row-major, row index = y

  double spacing() const { return 2.0 * half_width / (n - 1); }
  Complex point(int i, int j) const;  // i = column (x), j = row (y)
  Complex& at(int i, int j) { return values[static_cast<std::size_t>(j) * n + i]; }
  Complex at(int i, int j) const { return values[static_cast<std::size_t>(j) * n + i]; }
};

template <class F>
GridFunction sample_grid(F&& f, int n, double half_width) {
  GridFunction g{n, half_width, std::vector<Complex>(static_cast<std::size_t>(n) * n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g.at(i, j) = f(g.point(i, j));
  return g;
}

// Smooth step: 0 for s <= 1, 1 for s >= 2.
double cutoff(double s);

// Replaces phi by cutoff(|z| / eps) phi. Throws NotSecondOrderSmall when
// max |phi| / |z|^2 over shrinking discs does not decay.
GridFunction truncate_tail(const GridFunction& phi, double epsilon);

// Max over the grid of the function and its first and second divided
// differences.
double c2_norm(const GridFunction& f);

// Componentwise a - b on identical grids.
GridFunction difference(const GridFunction& a, const GridFunction& b);

// h_plus + h_minus uniform in [0, h_total_max], each sign a fair coin,
// e_plus = h_plus + 1 and e_minus = h_minus + 1.
SphereInventory random_inventory(std::uint64_t seed, int h_total_max);

}  // namespace levikit
