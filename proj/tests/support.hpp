#pragma once

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "levikit/error.hpp"
#include "levikit/geometry.hpp"
#include "levikit/random.hpp"

namespace levikit::test {

inline std::string fixture(const std::string& name) { return std::string(LEVIKIT_FIXTURES) + "/" + name; }

// Samples f on the unit circle at theta_j = 2 pi j / n.
template <class F>
std::vector<Complex> circle_samples(F&& f, int n) {
  std::vector<Complex> out;
  for (int j = 0; j < n; ++j) out.push_back(f(2.0 * kPi * j / n));
  return out;
}

inline Complex random_complex(Rng& rng, double radius) {
  return {rng.uniform(-radius, radius), rng.uniform(-radius, radius)};
}

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a levikit::Error");
  return ErrorCode::InvalidInput;
}

}  // namespace levikit::test
