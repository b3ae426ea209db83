#include "levikit/good_gamma.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "levikit/error.hpp"

namespace levikit {

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

double det(const Mat2& x) { return x[0] * x[3] - x[1] * x[2]; }

Mat2 inverse(const Mat2& x) {
  const double d = det(x);
  if (d == 0.0) throw Error(ErrorCode::InvalidInput, "singular 2x2 matrix");
  return {x[3] / d, -x[1] / d, -x[2] / d, x[0] / d};
}

double max_abs_diff(const Mat2& x, const Mat2& y) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

namespace {

void require_hyperbolic(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::OutOfRange, "gamma must be a finite number > 1", "gamma=" + std::to_string(gamma));
  }
}

}  // namespace

ReflectionPair build_reflections(double gamma) {
  require_hyperbolic(gamma);
  ReflectionPair p;
  p.a = 2.0 / gamma;
  p.tau2 = {-p.a, -1.0, p.a * p.a - 1.0, p.a};
  return p;
}

Conjugation conjugation_for(double a) {
  // Roots of a x^2 + 4 x + a: real and negative with product 1 for 0 < a < 2.
  const double disc = std::sqrt(4.0 - a * a);
  Conjugation c;
  c.x_root = (-2.0 + disc) / a;
  c.other_root = (-2.0 - disc) / a;
  c.c = {c.x_root, 1.0, 1.0, c.x_root};
  return c;
}

ConjugatedReflection conjugate_reflection(const ReflectionPair& pair) {
  const Conjugation conj = conjugation_for(pair.a);
  ConjugatedReflection out;
  out.tau2_tilde = mul(inverse(conj.c), mul(pair.tau2, conj.c));
  const Mat2& m = out.tau2_tilde;
  // Off-diagonal entries at rounding level mean tau2~ is already diagonal.
  if (std::abs(m[1]) < 1e-12 && std::abs(m[2]) < 1e-12) {
    out.diagonal_scale = 1.0;
  } else if (m[1] != 0.0 && m[2] / m[1] > 0.0) {
    out.diagonal_scale = std::sqrt(m[2] / m[1]);
  }
  const Mat2 mt{m[0], m[2], m[1], m[3]};
  out.orthogonality_defect = max_abs_diff(mul(mt, m), kIdentity2);
  return out;
}

std::optional<std::pair<long, long>> rational_approximation(double v, double tol, long max_denominator) {
  // Convergents h_k / k_k of the continued fraction of v.
  long h_prev = 1, h = static_cast<long>(std::floor(v));
  long k_prev = 0, k = 1;
  double frac = v - std::floor(v);
  for (int iter = 0; iter < 64; ++iter) {
    if (k > max_denominator) break;
    if (std::abs(v - static_cast<double>(h) / static_cast<double>(k)) <= tol) return std::make_pair(h, k);
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const long q = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long h_next = q * h + h_prev;
    const long k_next = q * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

GammaReport analyze_gamma(double gamma, double angle_tol, long max_denominator) {
  require_hyperbolic(gamma);
  if (max_denominator < 2) throw Error(ErrorCode::InvalidInput, "max_denominator must be >= 2");
  if (!(angle_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "angle tolerance must be positive");

  const ReflectionPair pair = build_reflections(gamma);
  const Conjugation conj = conjugation_for(pair.a);
  const ConjugatedReflection ct = conjugate_reflection(pair);
  if (ct.orthogonality_defect > 1e-10) {
    throw Error(ErrorCode::OutOfRange, "conjugated reflection is not orthogonal",
                "defect=" + std::to_string(ct.orthogonality_defect));
  }

  GammaReport r;
  r.gamma = gamma;
  r.a = pair.a;
  r.x_root = conj.x_root;
  r.other_root = conj.other_root;
  r.diagonal_scale = ct.diagonal_scale;

  const double a = pair.a, c1 = conj.x_root;
  const double num = -c1 * c1 - 2.0 * a * c1 + 1.0 - a * a;
  const double den = (1.0 + a) * c1 * c1 + a * a * c1 + a - 1.0;

  // A symmetric orthogonal reflection is [[cos 2p, sin 2p], [sin 2p, -cos 2p]]
  // with fixed line at angle p. Compare lines, not vectors: (nu, 1) flips
  // direction when nu passes through infinity.
  const Mat2& m = ct.tau2_tilde;
  const double phi = 0.5 * std::atan2(0.5 * (m[1] + m[2]), m[0]);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (std::abs(num) < 1e-12 && std::abs(den) < 1e-12) {
    // Both vanish at gamma = sqrt 2; read the slope off the fixed line.
    r.nu = std::abs(std::sin(phi)) < 1e-12 ? kInf : std::cos(phi) / std::sin(phi);
  } else {
    r.nu = den == 0.0 ? std::copysign(kInf, num) : num / den;
  }
  double diff = std::fmod(std::abs(phi - kPi / 4.0), kPi);
  if (diff > kPi / 2.0) diff = kPi - diff;
  r.angle = diff;

  const Complex dir = std::isfinite(r.nu) ? Complex(r.nu, 1.0) / std::hypot(r.nu, 1.0) : std::polar(1.0, phi);
  const Complex image(m[0] * dir.real() + m[1] * dir.imag(), m[2] * dir.real() + m[3] * dir.imag());
  r.fixed_vector_residual = std::abs(image - dir);

  r.rational = rational_approximation(r.angle / kPi, angle_tol, max_denominator);
  if (r.rational && r.rational->first > 0) {
    r.dihedral_order = 2 * r.rational->second;
    r.in_lambda = true;
  } else {
    r.rational.reset();
  }
  return r;
}

std::optional<long> group_closure(const Mat2& g1, const Mat2& g2, long max_elements, double tol) {
  std::vector<Mat2> seen{kIdentity2};
  std::deque<Mat2> frontier{kIdentity2};
  auto known = [&](const Mat2& x) {
    return std::any_of(seen.begin(), seen.end(), [&](const Mat2& s) { return max_abs_diff(s, x) <= tol; });
  };
  while (!frontier.empty()) {
    const Mat2 cur = frontier.front();
    frontier.pop_front();
    for (const Mat2* g : {&g1, &g2}) {
      const Mat2 next = mul(cur, *g);
      if (known(next)) continue;
      seen.push_back(next);
      if (static_cast<long>(seen.size()) > max_elements) return std::nullopt;
      frontier.push_back(next);
    }
  }
  return static_cast<long>(seen.size());
}

std::optional<long> group_closure(const ReflectionPair& pair, long max_elements, double tol) {
  return group_closure(pair.tau1, conjugate_reflection(pair).tau2_tilde, max_elements, tol);
}

std::optional<double> find_gamma_for_angle(double target, double lo, double hi) {
  auto f = [&](double g) { return analyze_gamma(g, 1e-9, 2).angle - target; };
  constexpr int kScan = 2000;
  double prev_g = lo, prev_f = f(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double g = lo + (hi - lo) * i / kScan;
    const double fg = f(g);
    if (prev_f == 0.0) return prev_g;
    if ((prev_f < 0.0) != (fg < 0.0)) {
      double a = prev_g, b = g, fa = prev_f;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_g = g;
    prev_f = fg;
  }
  return std::nullopt;
}

std::vector<double> rational_angle_gammas(double lo, double hi, long max_denominator) {
  std::vector<double> out;
  for (long m = 3; m <= max_denominator; ++m) {
    for (long n = 1; 2 * n < m; ++n) {
      if (std::gcd(n, m) != 1) continue;
      const double g = 1.0 / std::cos(kPi * static_cast<double>(n) / static_cast<double>(m));
      if (g > lo && g < hi) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Complex, Complex> covering_image(const CoveringModel& model, Complex z, Plane which) {
  const double g = model.gamma;
  const Complex w = which == Plane::E1 ? std::conj(z) : -std::conj(z) - (2.0 / g) * z;
  return {z, z * w + (g / 2.0) * (z * z + w * w)};
}

}  // namespace levikit
