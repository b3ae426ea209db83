#include "levikit/index_calculus.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "levikit/error.hpp"

namespace levikit {

namespace {

int winding_of(std::span<const Complex> s, double tol) {
  if (s.empty()) throw Error(ErrorCode::ZeroSample, "empty loop");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == Complex(0.0, 0.0) || !std::isfinite(s[i].real()) || !std::isfinite(s[i].imag())) {
      throw Error(ErrorCode::ZeroSample, "loop sample is zero or non-finite", "index=" + std::to_string(i));
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double step = std::arg(s[(i + 1) % s.size()] / s[i]);
    if (std::abs(step) >= kPi - tol) {
      throw Error(ErrorCode::UndersampledLoop, "angle step too large for a well-defined winding",
                  "index=" + std::to_string(i) + " step=" + std::to_string(step));
    }
    total += step;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

Complex det(const Frame& f) {
  if (f.n == 1) return f.m[0];
  return f.m[0] * f.m[3] - f.m[1] * f.m[2];
}

}  // namespace

int winding(const SampledLoop& loop, double tol) { return winding_of(loop.samples, tol); }

Complex kappa(const Frame& f) {
  const Complex d = det(f);
  if (std::abs(d) == 0.0) throw Error(ErrorCode::SingularFrame, "frame is singular");
  // det(B^2) = det(B)^2 and det(B^* B) = |det B|^2.
  return d * d / std::norm(d);
}

int maslov_of_frames(const FrameLoop& loop, double tol) {
  if (loop.frames.empty()) throw Error(ErrorCode::ZeroSample, "empty frame loop");
  std::vector<Complex> k;
  k.reserve(loop.frames.size());
  for (std::size_t i = 0; i < loop.frames.size(); ++i) {
    const Frame& f = loop.frames[i];
    if (f.n != 1 && f.n != 2) throw Error(ErrorCode::InvalidInput, "only n = 1 or n = 2 frames are supported");
    if (std::abs(det(f)) == 0.0) {
      throw Error(ErrorCode::SingularFrame, "frame is singular", "index=" + std::to_string(i));
    }
    k.push_back(kappa(f));
  }
  return winding_of(k, tol);
}

int loop_index_on_surface(std::span<const std::array<Complex, 2>> x1,
                          std::span<const std::array<Complex, 2>> x2, double tol) {
  if (x1.size() != x2.size()) throw Error(ErrorCode::InvalidInput, "frame loops differ in length");
  std::vector<Complex> d(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) {
    d[i] = x1[i][0] * x2[i][1] - x1[i][1] * x2[i][0];
    if (std::abs(d[i]) == 0.0) {
      throw Error(ErrorCode::DegenerateFrame, "vectors are complex-linearly dependent", "index=" + std::to_string(i));
    }
  }
  return winding_of(d, tol);
}

std::pair<int, int> lai_split(int total_index, int chern_value) {
  if ((total_index + chern_value) % 2 != 0) {
    throw Error(ErrorCode::ParityError, "index and Chern value have different parity",
                "I=" + std::to_string(total_index) + " c=" + std::to_string(chern_value));
  }
  return {(total_index + chern_value) / 2, (total_index - chern_value) / 2};
}

void check_inventory(const SphereInventory& inv) {
  if (inv.e_plus < 0 || inv.e_minus < 0 || inv.h_plus < 0 || inv.h_minus < 0) {
    throw Error(ErrorCode::InconsistentInventory, "negative point count");
  }
  if (inv.total_index() != 2) {
    throw Error(ErrorCode::InconsistentInventory, "index sum of a sphere must be 2",
                "I=" + std::to_string(inv.total_index()));
  }
  const auto [ip, im] = lai_split(inv.total_index(), inv.chern_value);
  if (ip != inv.index_plus() || im != inv.index_minus()) {
    throw Error(ErrorCode::InconsistentInventory, "signed indices disagree with the Chern split",
                "I+=" + std::to_string(inv.index_plus()) + " I-=" + std::to_string(inv.index_minus()));
  }
}

bool boundary_index_balance(int index_plus, int index_minus, std::span<const int> boundary_loop_indices) {
  return index_plus - index_minus == std::accumulate(boundary_loop_indices.begin(), boundary_loop_indices.end(), 0);
}

int glued_disc_loop_index(int index_plus, int index_minus, std::span<const int> existing_loop_indices) {
  return (index_plus - index_minus) -
         std::accumulate(existing_loop_indices.begin(), existing_loop_indices.end(), 0);
}

std::pair<std::vector<std::array<Complex, 2>>, std::vector<std::array<Complex, 2>>> graph_frame(
    std::span<const Complex> gz, std::span<const Complex> gzbar) {
  if (gz.size() != gzbar.size()) throw Error(ErrorCode::InvalidInput, "derivative samples differ in length");
  const Complex i(0.0, 1.0);
  std::vector<std::array<Complex, 2>> x1(gz.size()), x2(gz.size());
  for (std::size_t k = 0; k < gz.size(); ++k) {
    x1[k] = {1.0, gz[k] + gzbar[k]};
    x2[k] = {i, i * (gz[k] - gzbar[k])};
  }
  return {std::move(x1), std::move(x2)};
}

}  // namespace levikit
