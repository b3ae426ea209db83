#include "levikit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "levikit/error.hpp"
#include "levikit/foliation.hpp"

namespace levikit {

Complex branch_pow(Complex z, int k, int m) {
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  const double e = static_cast<double>(k) / m;
  return std::polar(std::pow(std::abs(z), e), e * branch_arg(z));
}

Complex PuiseuxSeries::operator()(Complex z) const {
  Complex s{0.0, 0.0};
  for (const auto& [k, c] : coeffs) s += c * branch_pow(z, k, m);
  return s;
}

int PuiseuxSeries::leading_k() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }

double PuiseuxSeries::max_coeff() const {
  double mx = 0.0;
  for (const auto& [k, c] : coeffs) mx = std::max(mx, std::abs(c));
  return mx;
}

PuiseuxSeries fit_puiseux(std::span<const std::pair<Complex, Complex>> samples, int m_max, int k_max,
                          PuiseuxFitOptions opts) {
  if (m_max < 1 || k_max < 2) throw Error(ErrorCode::InvalidInput, "need m_max >= 1 and k_max >= 2");
  const auto n = static_cast<Eigen::Index>(samples.size());
  int max_terms = 0;
  for (int m = 1; m <= m_max; ++m) max_terms = std::max(max_terms, k_max - 2 * m + 1);
  if (n < 2 * max_terms) {
    throw Error(ErrorCode::InsufficientSamples, "too few samples for the candidate terms",
                "samples=" + std::to_string(n) + " terms=" + std::to_string(max_terms));
  }
  Eigen::VectorXcd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (samples[static_cast<std::size_t>(i)].first == Complex(0.0, 0.0)) {
      throw Error(ErrorCode::InvalidInput, "sample at z = 0");
    }
    w(i) = samples[static_cast<std::size_t>(i)].second;
  }
  const double wnorm = w.norm();
  if (wnorm == 0.0) return PuiseuxSeries{};

  struct Candidate {
    int m;
    Eigen::VectorXcd x;
    double residual;
  };
  std::vector<Candidate> cands;
  bool any_terms = false;
  for (int m = 1; m <= m_max; ++m) {
    const int terms = k_max - 2 * m + 1;
    if (terms < 1) continue;
    any_terms = true;
    Eigen::MatrixXcd a(n, terms);
    for (Eigen::Index i = 0; i < n; ++i)
      for (int j = 0; j < terms; ++j) a(i, j) = branch_pow(samples[static_cast<std::size_t>(i)].first, 2 * m + j, m);
    // Column equilibration keeps the condition number meaningful when the
    // powers span many orders of magnitude.
    Eigen::VectorXd scale = a.colwise().norm().transpose();
    for (int j = 0; j < terms; ++j) {
      if (scale(j) == 0.0) scale(j) = 1.0;
      a.col(j) /= scale(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (cond > opts.max_condition) continue;
    Eigen::VectorXcd x = svd.solve(w);
    const double res = (a * x - w).norm() / wnorm;
    for (int j = 0; j < terms; ++j) x(j) /= scale(j);
    cands.push_back({m, std::move(x), res});
  }
  if (!any_terms || cands.empty()) {
    throw Error(ErrorCode::IllConditioned, "every candidate least-squares system is ill-conditioned");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::min(best, c.residual);
  const double accept = std::max(10.0 * best, 1e-12);
  const Candidate* chosen = &cands.front();
  for (const auto& c : cands) {
    if (c.residual <= accept) {
      chosen = &c;
      break;
    }
  }

  PuiseuxSeries out;
  out.m = chosen->m;
  out.residual = chosen->residual;
  double mx = 0.0;
  for (Eigen::Index j = 0; j < chosen->x.size(); ++j) mx = std::max(mx, std::abs(chosen->x(j)));
  for (Eigen::Index j = 0; j < chosen->x.size(); ++j) {
    if (std::abs(chosen->x(j)) > opts.prune_tol * mx) out.coeffs[2 * out.m + static_cast<int>(j)] = chosen->x(j);
  }
  // Reduce k/m when every surviving exponent shares a factor with m.
  int d = out.m;
  for (const auto& [k, c] : out.coeffs) d = std::gcd(d, k);
  if (d > 1) {
    std::map<int, Complex> reduced;
    for (const auto& [k, c] : out.coeffs) reduced[k / d] = c;
    out.coeffs = std::move(reduced);
    out.m /= d;
  }
  return out;
}

bool validate_leading_term(const PuiseuxSeries& series, double tol) {
  const auto it = series.coeffs.find(2 * series.m);
  if (it == series.coeffs.end()) return true;
  return std::abs(it->second) <= tol * series.max_coeff();
}

AngleFit fit_boundary_angle(const Curve& curve) {
  std::vector<double> r, th;
  double prev = 0.0;
  bool first = true;
  for (const auto& p : curve.points) {
    if (p == Complex(0.0, 0.0)) continue;
    double a = std::arg(p);
    if (!first) a = prev + std::remainder(a - prev, 2.0 * kPi);
    first = false;
    prev = a;
    r.push_back(std::abs(p));
    th.push_back(a);
  }
  AngleFit best;
  best.residual = std::numeric_limits<double>::infinity();
  const std::size_t n = r.size();
  for (int step = 1; step <= 60; ++step) {
    const double s = 0.05 * step;
    // Normal equations for theta = theta0 + c r^s.
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::pow(r[i], s);
      sx += x;
      sxx += x * x;
      sy += th[i];
      sxy += x * th[i];
    }
    const double det = static_cast<double>(n) * sxx - sx * sx;
    if (det == 0.0) continue;
    const double c = (static_cast<double>(n) * sxy - sx * sy) / det;
    const double t0 = (sy - c * sx) / static_cast<double>(n);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::pow(th[i] - t0 - c * std::pow(r[i], s), 2);
    res = std::sqrt(res / static_cast<double>(n));
    if (res < best.residual) best = AngleFit{t0, c, s, res};
  }
  return best;
}

bool good_approach_check(std::span<const Curve> boundary, std::span<const std::pair<Complex, Complex>> g_data,
                         double gamma, GoodApproachOptions opts) {
  if (boundary.size() != 2) throw Error(ErrorCode::InvalidInput, "expected exactly two boundary curves");
  for (const auto& c : boundary) {
    if (c.points.size() < 8) {
      throw Error(ErrorCode::UndersampledCurve, "boundary curve has fewer than 8 points");
    }
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& p : c.points) {
      rmin = std::min(rmin, std::abs(p));
      rmax = std::max(rmax, std::abs(p));
    }
    if (!(rmin <= 0.05 * rmax)) {
      throw Error(ErrorCode::UndersampledCurve, "boundary curve does not approach the origin",
                  "rmin=" + std::to_string(rmin) + " rmax=" + std::to_string(rmax));
    }
  }
  if (g_data.empty()) throw Error(ErrorCode::UndersampledCurve, "no samples of g");

  const double mu = admissible_mu(gamma);
  const double a0 = fit_boundary_angle(boundary[0]).theta0;
  const double a1 = fit_boundary_angle(boundary[1]).theta0;
  auto close = [&](double x, double y) { return std::abs(std::remainder(x - y, 2.0 * kPi)) <= opts.angle_tol; };
  bool angles_ok = false;
  for (double centre : {kPi / 2.0, 3.0 * kPi / 2.0}) {
    const double lo = centre - mu, hi = centre + mu;
    if ((close(a0, lo) && close(a1, hi)) || (close(a0, hi) && close(a1, lo))) angles_ok = true;
  }
  if (!angles_ok) return false;

  const PuiseuxSeries g = fit_puiseux(g_data, opts.m_max, opts.k_max);
  if (g.coeffs.empty()) return true;
  if (g.residual > opts.residual_tol) return false;
  return validate_leading_term(g, opts.leading_tol);
}

AsymptoticProfile AsymptoticProfile::from_gamma(double gamma, Branch side, double abs_a, double nu_const) {
  AsymptoticProfile p;
  p.mu = admissible_mu(gamma);
  p.k_over_m = kPi / (2.0 * p.mu);
  p.abs_a = abs_a;
  p.nu_const = nu_const;
  p.side = side;
  return p;
}

double theta_asymptote(const AsymptoticProfile& p, double r) {
  const double base = kPi / 2.0 + (p.side == Branch::Plus ? p.mu : -p.mu);
  if (p.abs_a == 0.0) return base;
  return base - (p.abs_a / p.nu_const) * std::pow(r, p.k_over_m - 2.0);
}

AsymptoticProfile fit_profile(double gamma, Branch side, int m, std::span<const double> r,
                              std::span<const double> theta) {
  if (r.size() != theta.size() || r.size() < 4) throw Error(ErrorCode::InsufficientSamples, "need >= 4 samples");
  if (m < 1) throw Error(ErrorCode::InvalidInput, "m must be positive");
  AsymptoticProfile p = AsymptoticProfile::from_gamma(gamma, side, 0.0, 1.0);
  const double k = std::round(p.k_over_m * m);
  const double p1 = k / m - 2.0, p2 = (k + 1.0) / m - 2.0;
  const double base = theta_asymptote(p, 1.0);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(r.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    a(row, 0) = -std::pow(r[i], p1);
    a(row, 1) = std::pow(r[i], p2);
    y(row) = theta[i] - base;
  }
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(y);
  p.abs_a = std::abs(x(0));
  p.nu_const = x(0) < 0.0 ? -1.0 : 1.0;
  return p;
}

double sector_positivity_width(int q, int m) {
  if (q <= 0 || m <= 0) throw Error(ErrorCode::InvalidInput, "q and m must be positive");
  return kPi * m / q;
}

double measured_positive_arc(Complex c, int q, int m, int n_samples) {
  if (n_samples < 16) throw Error(ErrorCode::InvalidInput, "sample count must be >= 16");
  std::vector<bool> pos(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const double th = -kPi / 2.0 + 2.0 * kPi * (j + 0.5) / n_samples;
    pos[static_cast<std::size_t>(j)] = (c * branch_pow(std::polar(1.0, th), q, m)).real() > 0.0;
  }
  // z^(q/m) is continuous across the cut only when m divides q.
  const bool wrap = q % m == 0;
  int best = 0, run = 0;
  const int passes = wrap ? 2 * n_samples : n_samples;
  for (int j = 0; j < passes; ++j) {
    run = pos[static_cast<std::size_t>(j % n_samples)] ? run + 1 : 0;
    best = std::max(best, std::min(run, n_samples));
  }
  return 2.0 * kPi * best / n_samples;
}

std::string_view to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::ForcedEqual: return "ForcedEqual";
    case VerdictKind::HypothesesExcluded: return "HypothesesExcluded";
    case VerdictKind::ContradictionWitness: return "ContradictionWitness";
  }
  return "HypothesesExcluded";
}

UniquenessVerdict uniqueness_hypotheses(const PuiseuxSeries& s1, const PuiseuxSeries& s2, Relation relation,
                                        double tol) {
  if (!validate_leading_term(s1) || !validate_leading_term(s2)) {
    throw Error(ErrorCode::InvalidSeries, "series has a z^2 leading term");
  }
  const int lcm = std::lcm(s1.m, s2.m);
  auto lift = [&](const PuiseuxSeries& s) {
    std::map<int, Complex> out;
    for (const auto& [k, c] : s.coeffs) out[k * (lcm / s.m)] = c;
    return out;
  };
  const auto c1 = lift(s1), c2 = lift(s2);
  const double scale = std::max({s1.max_coeff(), s2.max_coeff(), 1e-300});
  auto coeff = [](const std::map<int, Complex>& c, int k) {
    const auto it = c.find(k);
    return it == c.end() ? Complex(0.0, 0.0) : it->second;
  };
  std::vector<int> keys;
  for (const auto& [k, c] : c1) keys.push_back(k);
  for (const auto& [k, c] : c2) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  UniquenessVerdict v;
  v.m = lcm;
  int first_diff = 0;
  for (int k : keys) {
    if (std::abs(coeff(c1, k) - coeff(c2, k)) > tol * scale) {
      first_diff = k;
      break;
    }
  }
  if (first_diff == 0) return v;
  if (relation == Relation::Equal) {
    // Equal domains already force g1 = g2 on a boundary arc.
    v.kind = VerdictKind::HypothesesExcluded;
    return v;
  }
  auto leading = [&](const std::map<int, Complex>& c) {
    for (const auto& [k, x] : c)
      if (std::abs(x) > tol * scale) return k;
    return 0;
  };
  const int k1 = leading(c1), k2 = leading(c2);
  if (k1 != k2 || k1 == 0 || first_diff == k1) {
    v.kind = VerdictKind::HypothesesExcluded;
    return v;
  }
  v.kind = VerdictKind::ContradictionWitness;
  v.q = first_diff;
  v.positivity_width = sector_positivity_width(first_diff, lcm);
  v.domain_angle = kPi * lcm / k1;
  return v;
}

}  // namespace levikit
