#include "levikit/model_surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levikit/error.hpp"
#include "levikit/foliation.hpp"
#include "levikit/random.hpp"

namespace levikit {

PointKind ModelQuadric::kind() const {
  if (std::abs(gamma - 1.0) <= kDefaultDegeneracyTol) return PointKind::Degenerate;
  return gamma < 1.0 ? PointKind::Elliptic : PointKind::Hyperbolic;
}

namespace {

void require_kind(const ModelQuadric& q, PointKind want) {
  if (q.gamma < 0.0 || q.kind() != want) {
    throw Error(ErrorCode::WrongKind, std::string("model is not ") + std::string(to_string(want)),
                "gamma=" + std::to_string(q.gamma));
  }
}

void require_samples(int n) {
  if (n < 16) throw Error(ErrorCode::InvalidInput, "sample count must be >= 16", "n=" + std::to_string(n));
}

// Evenly spaced values on [a, b], endpoints included.
std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

// Grid angles 2 pi j / n strictly between a and b (a < b, may exceed 2 pi).
std::vector<double> grid_angles_between(double a, double b, int n) {
  std::vector<double> out;
  const double step = 2.0 * kPi / n;
  for (long j = static_cast<long>(std::floor(a / step)) + 1; j * step < b; ++j) {
    const double th = j * step;
    if (th > a + 1e-12 && th < b - 1e-12) out.push_back(th);
  }
  return out;
}

}  // namespace

Curve elliptic_disc_family(const ModelQuadric& q, double t, int n_samples) {
  require_kind(q, PointKind::Elliptic);
  require_samples(n_samples);
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidInput, "level t must be positive");
  Curve c;
  c.points.reserve(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const double th = 2.0 * kPi * j / n_samples;
    c.points.push_back(std::polar(std::sqrt(t / model_chi(q.gamma, th)), th));
  }
  return c;
}

Complex elliptic_disc_point(const ModelQuadric& q, double t, Complex zeta) {
  require_kind(q, PointKind::Elliptic);
  return {std::sqrt(t / (1.0 + q.gamma)) * zeta.real(), std::sqrt(t / (1.0 - q.gamma)) * zeta.imag()};
}

std::vector<Curve> hyperbolic_section_family(const ModelQuadric& q, double t, int n_samples, double cap_radius) {
  require_kind(q, PointKind::Hyperbolic);
  require_samples(n_samples);
  const double g = q.gamma;
  std::vector<Curve> out;
  if (t == 0.0) {
    const double mu = admissible_mu(g);
    for (double th : {kPi / 2.0 - mu, kPi / 2.0 + mu}) {
      Curve line{{}, false};
      for (double s : linspace(cap_radius, -cap_radius, n_samples)) line.points.push_back(std::polar(s, th));
      out.push_back(std::move(line));
    }
    return out;
  }
  const double c = t / (cap_radius * cap_radius);
  // t < 0: chi <= c around theta = pi/2; t > 0: chi >= c around theta = 0.
  const double v = t < 0.0 ? (1.0 - c) / g : (c - 1.0) / g;
  if (v > 1.0) return out;  // the level set misses the cap disc
  const double half = 0.5 * std::acos(v);
  const double centre = t < 0.0 ? kPi / 2.0 : 0.0;
  Curve branch{{}, false};
  for (double phi : linspace(-half, half, n_samples)) {
    const double th = centre + phi;
    const double chi = model_chi(g, th);
    branch.points.push_back(std::polar(std::min(std::sqrt(t / chi), cap_radius), th));
  }
  Curve mirror{{}, false};
  for (const auto& p : branch.points) mirror.points.push_back(-p);
  out.push_back(std::move(branch));
  out.push_back(std::move(mirror));
  return out;
}

Curve section_domain(const ModelQuadric& q, double t, Side side, double cap_radius, int n_samples) {
  require_kind(q, PointKind::Hyperbolic);
  require_samples(n_samples);
  if (t > 0.0) throw Error(ErrorCode::InvalidInput, "section domains are defined for t <= 0");
  const double g = q.gamma;
  const double c = t / (cap_radius * cap_radius);
  const double v = (1.0 - c) / g;
  Curve out;
  if (v > 1.0) throw Error(ErrorCode::InvalidInput, "level set misses the cap disc", "t=" + std::to_string(t));
  const double half = 0.5 * std::acos(v);
  const double a = kPi / 2.0 - half, b = kPi / 2.0 + half;
  const auto inner = grid_angles_between(a, b, n_samples);
  // Counterclockwise: along the cap with theta increasing, then back along
  // the level curve (or through the origin when t = 0).
  out.points.push_back(std::polar(cap_radius, a));
  for (double th : inner) out.points.push_back(std::polar(cap_radius, th));
  out.points.push_back(std::polar(cap_radius, b));
  if (t == 0.0) {
    out.points.emplace_back(0.0, 0.0);
  } else {
    for (auto it = inner.rbegin(); it != inner.rend(); ++it) {
      out.points.push_back(std::polar(std::sqrt(t / model_chi(g, *it)), *it));
    }
  }
  if (side == Side::Minus)
    for (auto& p : out.points) p = -p;
  return out;
}

double GluingPerturbation::bump(double r) const {
  if (r >= support_radius) return 0.0;
  const double s = 1.0 - (r / support_radius) * (r / support_radius);
  return s * s * s;
}

namespace {

// Root of r^2 chi = delta * bump(r) on [0, R] for chi > 0.
double inner_radius(double chi, const GluingPerturbation& pert) {
  double lo = 0.0, hi = pert.support_radius;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid * mid * chi < pert.delta * pert.bump(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Curve glued_boundary_curve(const ModelQuadric& q, const GluingPerturbation& pert, int n_samples, double cap_radius) {
  require_kind(q, PointKind::Hyperbolic);
  require_samples(n_samples);
  if (!(pert.delta > 0.0)) throw Error(ErrorCode::InvalidInput, "delta must be positive");
  const double big_r = pert.support_radius;
  if (!(big_r > 0.0) || big_r >= cap_radius) {
    throw Error(ErrorCode::DeltaTooLarge, "bump support must lie inside the cap disc",
                "R=" + std::to_string(big_r));
  }
  const double mu = admissible_mu(q.gamma);
  const int n_arc = std::max(4, (3 * n_samples) / 10);
  const int n_seg = std::max(3, n_samples / 20);
  const int n_cap = std::max(3, n_samples / 10);

  Curve c;
  // Inner arc over chi > 0 around theta = 0; its end points sit at r = R on
  // the zero lines of chi.
  const double edge = kPi / 2.0 - mu;
  const auto thetas = linspace(-edge, edge, n_arc);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const bool end = k == 0 || k + 1 == thetas.size();
    const double r = end ? big_r : inner_radius(model_chi(q.gamma, thetas[k]), pert);
    c.points.push_back(std::polar(r, thetas[k]));
  }
  for (int k = 1; k < n_seg; ++k) c.points.push_back(std::polar(big_r + (cap_radius - big_r) * k / n_seg, edge));
  for (double th : linspace(edge, kPi / 2.0 + mu, n_cap)) c.points.push_back(std::polar(cap_radius, th));
  for (int k = n_seg - 1; k >= 1; --k) {
    c.points.push_back(std::polar(big_r + (cap_radius - big_r) * k / n_seg, kPi / 2.0 + mu));
  }
  // The domain is symmetric under z -> -z.
  const std::size_t half = c.points.size();
  for (std::size_t k = 0; k < half; ++k) c.points.push_back(-c.points[k]);

  if (!is_simple(c)) {
    throw Error(ErrorCode::DeltaTooLarge, "glued boundary is not a simple curve",
                "delta=" + std::to_string(pert.delta));
  }
  return c;
}

std::vector<Curve> glued_limit(const ModelQuadric& q, int n_samples, double cap_radius) {
  return {section_domain(q, 0.0, Side::Plus, cap_radius, n_samples),
          section_domain(q, 0.0, Side::Minus, cap_radius, n_samples)};
}

double glued_min_radius(const ModelQuadric& q, const GluingPerturbation& pert) {
  require_kind(q, PointKind::Hyperbolic);
  return inner_radius(1.0 + q.gamma, pert);
}

int glued_curve_loop_index(const ModelQuadric& q, const GluingPerturbation& pert, int n_samples) {
  const Curve c = glued_boundary_curve(q, pert, n_samples);
  const double g = q.gamma, big_r = pert.support_radius;
  std::vector<Complex> gz, gzbar;
  for (const auto& z : c.points) {
    // bump as a function of s = z conj(z): d/ds = -3 (1 - s/R^2)^2 / R^2.
    const double s = std::norm(z);
    const double ds = s < big_r * big_r ? -3.0 * std::pow(1.0 - s / (big_r * big_r), 2) / (big_r * big_r) : 0.0;
    gz.push_back(std::conj(z) + g * z - pert.delta * ds * std::conj(z));
    gzbar.push_back(z + g * std::conj(z) - pert.delta * ds * z);
  }
  const auto [x1, x2] = graph_frame(gz, gzbar);
  return loop_index_on_surface(x1, x2);
}

Complex GridFunction::point(int i, int j) const {
  const double h = spacing();
  return {-half_width + i * h, -half_width + j * h};
}

double cutoff(double s) {
  auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = f(s - 1.0), b = f(2.0 - s);
  return a / (a + b);
}

GridFunction truncate_tail(const GridFunction& phi, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
  if (phi.n < 16) throw Error(ErrorCode::InvalidInput, "grid must have at least 16 points per side");
  // Decay test: the max of |phi| / |z|^2 over an outer and an inner annulus.
  const double h = phi.spacing();
  const double rho_outer = phi.half_width / 2.0;
  const double rho_inner = std::max(rho_outer / 8.0, 4.0 * h);
  double m_outer = 0.0, m_inner = 0.0;
  for (int j = 0; j < phi.n; ++j) {
    for (int i = 0; i < phi.n; ++i) {
      const double r = std::abs(phi.point(i, j));
      if (r < 0.5 * h) {
        if (std::abs(phi.at(i, j)) > 1e-14) {
          throw Error(ErrorCode::NotSecondOrderSmall, "tail does not vanish at the origin");
        }
        continue;
      }
      const double ratio = std::abs(phi.at(i, j)) / (r * r);
      if (r > rho_outer / 2.0 && r <= rho_outer) m_outer = std::max(m_outer, ratio);
      if (r > rho_inner / 2.0 && r <= rho_inner) m_inner = std::max(m_inner, ratio);
    }
  }
  if (m_outer > 1e-14 && m_inner > 0.5 * m_outer) {
    throw Error(ErrorCode::NotSecondOrderSmall, "tail is not o(|z|^2) on the sample grid",
                "outer=" + std::to_string(m_outer) + " inner=" + std::to_string(m_inner));
  }
  GridFunction out = phi;
  for (int j = 0; j < phi.n; ++j)
    for (int i = 0; i < phi.n; ++i) out.at(i, j) *= cutoff(std::abs(phi.point(i, j)) / epsilon);
  return out;
}

double c2_norm(const GridFunction& f) {
  const double h = f.spacing();
  double m = 0.0;
  for (int j = 0; j < f.n; ++j) {
    for (int i = 0; i < f.n; ++i) {
      m = std::max(m, std::abs(f.at(i, j)));
      if (i + 1 < f.n) m = std::max(m, std::abs(f.at(i + 1, j) - f.at(i, j)) / h);
      if (j + 1 < f.n) m = std::max(m, std::abs(f.at(i, j + 1) - f.at(i, j)) / h);
      if (i > 0 && i + 1 < f.n) m = std::max(m, std::abs(f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) / (h * h));
      if (j > 0 && j + 1 < f.n) m = std::max(m, std::abs(f.at(i, j + 1) - 2.0 * f.at(i, j) + f.at(i, j - 1)) / (h * h));
      if (i + 1 < f.n && j + 1 < f.n) {
        m = std::max(m, std::abs(f.at(i + 1, j + 1) - f.at(i + 1, j) - f.at(i, j + 1) + f.at(i, j)) / (h * h));
      }
    }
  }
  return m;
}

GridFunction difference(const GridFunction& a, const GridFunction& b) {
  if (a.n != b.n || a.half_width != b.half_width) throw Error(ErrorCode::InvalidInput, "grids differ");
  GridFunction d = a;
  for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] -= b.values[k];
  return d;
}

SphereInventory random_inventory(std::uint64_t seed, int h_total_max) {
  if (h_total_max < 0) throw Error(ErrorCode::InvalidInput, "h_total_max must be >= 0");
  Rng rng(seed);
  const auto total = rng.uniform_int(0, h_total_max);
  SphereInventory inv;
  for (std::int64_t k = 0; k < total; ++k) {
    if (rng.coin()) {
      ++inv.h_plus;
    } else {
      ++inv.h_minus;
    }
  }
  inv.e_plus = inv.h_plus + 1;
  inv.e_minus = inv.h_minus + 1;
  return inv;
}

}  // namespace levikit
