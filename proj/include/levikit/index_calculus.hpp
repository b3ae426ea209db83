#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "levikit/geometry.hpp"

namespace levikit {

// Closed discrete loop of nonzero complex numbers; the last sample connects
// back to the first.
struct SampledLoop {
  std::vector<Complex> samples;
};

// 2x2 complex matrix in row-major order. A 1x1 frame is stored in m[0] with
// n = 1 and the remaining entries ignored.
struct Frame {
  int n = 1;
  std::array<Complex, 4> m{};

  static Frame scalar(Complex b) { return Frame{1, {b, 0.0, 0.0, 0.0}}; }
  static Frame matrix(Complex a, Complex b, Complex c, Complex d) { return Frame{2, {a, b, c, d}}; }
};

struct FrameLoop {
  std::vector<Frame> frames;
};

struct SphereInventory {
  int e_plus = 0;
  int e_minus = 0;
  int h_plus = 0;
  int h_minus = 0;
  int chern_value = 0;

  int index_plus() const { return e_plus - h_plus; }
  int index_minus() const { return e_minus - h_minus; }
  int total_index() const { return index_plus() + index_minus(); }
  int hyperbolic_count() const { return h_plus + h_minus; }
};

inline constexpr double kDefaultStepTol = 1e-9;

// Sum of principal-branch angle increments divided by 2 pi. Throws
// ZeroSample for a vanishing sample and UndersampledLoop when any single
// step turns by pi - tol or more.
int winding(const SampledLoop& loop, double tol = kDefaultStepTol);

// kappa(B) = det(B^2) / det(B^* B), a point of the unit circle.
Complex kappa(const Frame& frame);

// Degree of kappa along the loop. Throws SingularFrame when det B = 0.
int maslov_of_frames(const FrameLoop& loop, double tol = kDefaultStepTol);

// Winding of det(X1, X2) for loops of vectors in C^2. Throws
// DegenerateFrame when a determinant vanishes.
int loop_index_on_surface(std::span<const std::array<Complex, 2>> x1,
                          std::span<const std::array<Complex, 2>> x2, double tol = kDefaultStepTol);

// (I + c)/2 and (I - c)/2. Throws ParityError when I + c is odd.
std::pair<int, int> lai_split(int total_index, int chern_value);

// Throws InconsistentInventory when I = e - h is not 2 or the signed counts
// disagree with the split of I by the Chern value.
void check_inventory(const SphereInventory& inv);

bool boundary_index_balance(int index_plus, int index_minus, std::span<const int> boundary_loop_indices);

// Solves the balance law for a single unknown boundary loop index.
int glued_disc_loop_index(int index_plus, int index_minus, std::span<const int> existing_loop_indices);

// Tangent frame of the graph w = g(z) over the loop z(theta): X1 = (1, g_x),
// X2 = (i, g_y). The determinant equals -2i dg/dconj(z).
std::pair<std::vector<std::array<Complex, 2>>, std::vector<std::array<Complex, 2>>> graph_frame(
    std::span<const Complex> gz, std::span<const Complex> gzbar);

}  // namespace levikit
