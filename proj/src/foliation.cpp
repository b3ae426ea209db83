#include "levikit/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "levikit/error.hpp"

namespace levikit {

std::array<double, 4> FoliationField::matrix() const {
  const double p = 2.0 * gamma + 1.0, q = 2.0 * gamma - 1.0;
  return {p, alpha1 * q, alpha1 * p, -q};
}

Complex FoliationField::operator()(Complex z) const {
  const auto m = matrix();
  Complex v(m[0] * z.real() + m[1] * z.imag(), m[2] * z.real() + m[3] * z.imag());
  if (correction) v += correction(z);
  return v;
}

LinearAnalysis linear_analysis(const FoliationField& field) {
  const auto m = field.matrix();
  Eigen::Matrix2d a;
  a << m[0], m[1], m[2], m[3];
  Eigen::EigenSolver<Eigen::Matrix2d> es(a);
  const auto vals = es.eigenvalues();
  const auto vecs = es.eigenvectors();
  // det < 0 guarantees two real eigenvalues of opposite sign.
  const int iu = vals(0).real() > vals(1).real() ? 0 : 1;
  const int is = 1 - iu;
  LinearAnalysis out;
  out.lambda_unstable = vals(iu).real();
  out.lambda_stable = vals(is).real();
  Complex vu(vecs(0, iu).real(), vecs(1, iu).real());
  Complex vs(vecs(0, is).real(), vecs(1, is).real());
  vu /= std::abs(vu);
  vs /= std::abs(vs);
  // Fix signs deterministically: v_u in the closed right half-plane, then
  // v_s on the counterclockwise side of v_u.
  if (vu.real() < 0.0 || (vu.real() == 0.0 && vu.imag() < 0.0)) vu = -vu;
  if (vu.real() * vs.imag() - vu.imag() * vs.real() < 0.0) vs = -vs;
  out.v_unstable = vu;
  out.v_stable = vs;
  return out;
}

Trajectory integrate_leaf(const FoliationField& field, Complex z0, double t0, double t1, double step) {
  if (!(step > 0.0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw Error(ErrorCode::InvalidInput, "need step > 0 and a finite time span");
  }
  const LinearAnalysis la = linear_analysis(field);
  const double stiffness = step * std::max(std::abs(la.lambda_unstable), std::abs(la.lambda_stable));
  if (stiffness > 2.5) {
    throw Error(ErrorCode::StepTooLarge, "step outside the RK4 stability region",
                "step*max|lambda|=" + std::to_string(stiffness));
  }
  using State = std::array<double, 2>;
  boost::numeric::odeint::runge_kutta4<State> stepper;
  auto rhs = [&](const State& x, State& dxdt, double) {
    const Complex v = field(Complex(x[0], x[1]));
    dxdt = {v.real(), v.imag()};
  };
  // t1 < t0 integrates backwards in time.
  const double dt = t1 >= t0 ? step : -step;
  const auto n = static_cast<std::size_t>(std::llround(std::abs(t1 - t0) / step));
  Trajectory tr;
  tr.t.reserve(n + 1);
  tr.z.reserve(n + 1);
  State x{z0.real(), z0.imag()};
  tr.t.push_back(t0);
  tr.z.push_back(z0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    stepper.do_step(rhs, x, t, dt);
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
      throw Error(ErrorCode::StepTooLarge, "trajectory diverged", "t=" + std::to_string(t + dt));
    }
    tr.t.push_back(t0 + static_cast<double>(i + 1) * dt);
    tr.z.emplace_back(x[0], x[1]);
  }
  return tr;
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Omega1: return "Omega1";
    case Region::Omega2: return "Omega2";
    case Region::Omega3: return "Omega3";
    case Region::Omega4: return "Omega4";
    case Region::Separatrix: return "Separatrix";
  }
  return "Separatrix";
}

Region region_of(const FoliationField& field, Complex z, double tol) {
  if (z == Complex(0.0, 0.0)) throw Error(ErrorCode::OriginQuery, "region of the origin is undefined");
  const LinearAnalysis la = linear_analysis(field);
  // Solve z = cu v_u + cs v_s.
  const Complex u = la.v_unstable, s = la.v_stable;
  const double d = u.real() * s.imag() - u.imag() * s.real();
  const double cu = (z.real() * s.imag() - z.imag() * s.real()) / d;
  const double cs = (u.real() * z.imag() - u.imag() * z.real()) / d;
  const double scale = tol * std::abs(z);
  if (std::abs(cu) <= scale || std::abs(cs) <= scale) return Region::Separatrix;
  if (cu > 0) return cs > 0 ? Region::Omega1 : Region::Omega4;
  return cs > 0 ? Region::Omega2 : Region::Omega3;
}

std::optional<Complex> detect_tangency(const FoliationField& field, const Curve& curve, double angle_tol) {
  const auto& p = curve.points;
  if (p.size() < 3 || relative_max_spacing(curve) > 1.0 / 16.0) {
    throw Error(ErrorCode::UndersampledCurve, "curve too coarse for tangency detection",
                "points=" + std::to_string(p.size()));
  }
  const std::size_t n = p.size();
  std::vector<double> s(n, 0.0);
  std::vector<bool> valid(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    Complex tangent;
    if (curve.closed) {
      tangent = p[(k + 1) % n] - p[(k + n - 1) % n];
    } else {
      tangent = p[std::min(k + 1, n - 1)] - p[k == 0 ? 0 : k - 1];
    }
    const Complex f = field(p[k]);
    const double norm = std::abs(f) * std::abs(tangent);
    if (norm == 0.0) continue;
    s[k] = (f.real() * tangent.imag() - f.imag() * tangent.real()) / norm;
    valid[k] = true;
    if (std::abs(s[k]) <= angle_tol) return p[k];
  }
  const std::size_t segments = curve.closed ? n : n - 1;
  for (std::size_t k = 0; k < segments; ++k) {
    const std::size_t j = (k + 1) % n;
    if (!valid[k] || !valid[j]) continue;
    if ((s[k] < 0.0) != (s[j] < 0.0)) {
      const double w = s[k] / (s[k] - s[j]);
      return p[k] + w * (p[j] - p[k]);
    }
  }
  return std::nullopt;
}

std::string_view to_string(Approach a) {
  switch (a) {
    case Approach::Inside: return "Inside";
    case Approach::Outside: return "Outside";
    case Approach::NotMonotone: return "NotMonotone";
  }
  return "NotMonotone";
}

Approach classify_approach(std::span<const Curve> domains, ApproachGrid grid) {
  if (domains.size() < 2) throw Error(ErrorCode::InvalidInput, "need at least two domains");
  if (grid.angular < 16 || grid.radial < 16) throw Error(ErrorCode::InvalidInput, "grid too coarse");
  double r_max = 0.0;
  for (const auto& c : domains) {
    if (!c.closed || c.points.size() < 3) throw Error(ErrorCode::InvalidInput, "domains must be closed curves");
    for (const auto& q : c.points) r_max = std::max(r_max, std::abs(q));
  }
  r_max *= 1.05;
  std::vector<Complex> samples;
  samples.reserve(static_cast<std::size_t>(grid.angular) * grid.radial);
  for (int i = 0; i < grid.radial; ++i) {
    const double r = r_max * (i + 0.5) / grid.radial;
    for (int j = 0; j < grid.angular; ++j) samples.push_back(std::polar(r, 2.0 * kPi * (j + 0.5) / grid.angular));
  }
  std::vector<std::vector<bool>> inside(domains.size());
  for (std::size_t d = 0; d < domains.size(); ++d) {
    inside[d].reserve(samples.size());
    for (const auto& q : samples) inside[d].push_back(contains(domains[d], q));
  }
  bool increasing = true, decreasing = true, inc_strict = false, dec_strict = false;
  for (std::size_t d = 0; d + 1 < domains.size(); ++d) {
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const bool a = inside[d][k], b = inside[d + 1][k];
      if (a && !b) {
        increasing = false;
        dec_strict = true;
      }
      if (b && !a) {
        decreasing = false;
        inc_strict = true;
      }
    }
  }
  if (increasing && inc_strict) return Approach::Inside;
  if (decreasing && dec_strict) return Approach::Outside;
  return Approach::NotMonotone;
}

double admissible_mu(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::OutOfRange, "gamma must be a finite number > 1", "gamma=" + std::to_string(gamma));
  }
  return 0.5 * std::acos(1.0 / gamma);
}

AdmissibleRegions::AdmissibleRegions(double g) : gamma(g), mu(admissible_mu(g)) {}

namespace {

// Angular distance from arg z to the direction `centre`, in [0, pi].
double angle_from(Complex z, double centre) { return std::abs(std::arg(z * std::polar(1.0, -centre))); }

}  // namespace

bool AdmissibleRegions::in_d_plus(Complex z) const {
  return z != Complex(0.0, 0.0) && angle_from(z, kPi / 2.0) < mu;
}

bool AdmissibleRegions::in_d_minus(Complex z) const {
  return z != Complex(0.0, 0.0) && angle_from(z, -kPi / 2.0) < mu;
}

}  // namespace levikit
