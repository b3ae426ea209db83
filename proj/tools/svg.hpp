#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "levikit/geometry.hpp"

namespace levikit::tools {

// Minimal SVG writer over a square world window [-extent, extent]^2 with the
// y axis pointing up.
class Svg {
 public:
  Svg(double extent, int pixels = 600);

  void polyline(const Curve& c, const std::string& stroke, double width = 1.0);
  void polygon(const std::vector<Complex>& pts, const std::string& fill, double opacity);
  void line(Complex a, Complex b, const std::string& stroke, double width = 1.0, bool dashed = false);
  void text(Complex at, const std::string& s, int size = 14);

  std::string str() const;

 private:
  std::string point(Complex z) const;

  double extent_;
  int pixels_;
  std::ostringstream body_;
};

}  // namespace levikit::tools
