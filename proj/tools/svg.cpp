#include "svg.hpp"

#include <iomanip>

namespace levikit::tools {

Svg::Svg(double extent, int pixels) : extent_(extent), pixels_(pixels) {
  body_ << std::fixed << std::setprecision(2);
}

std::string Svg::point(Complex z) const {
  const double s = pixels_ / (2.0 * extent_);
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << (z.real() + extent_) * s << ',' << (extent_ - z.imag()) * s;
  return o.str();
}

void Svg::polyline(const Curve& c, const std::string& stroke, double width) {
  body_ << "<" << (c.closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"" << width << "\" points=\"";
  for (const auto& p : c.points) body_ << point(p) << ' ';
  body_ << "\"/>\n";
}

void Svg::polygon(const std::vector<Complex>& pts, const std::string& fill, double opacity) {
  body_ << "<polygon stroke=\"none\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\" points=\"";
  for (const auto& p : pts) body_ << point(p) << ' ';
  body_ << "\"/>\n";
}

void Svg::line(Complex a, Complex b, const std::string& stroke, double width, bool dashed) {
  const std::string pa = point(a), pb = point(b);
  body_ << "<line x1=\"" << pa.substr(0, pa.find(',')) << "\" y1=\"" << pa.substr(pa.find(',') + 1) << "\" x2=\""
        << pb.substr(0, pb.find(',')) << "\" y2=\"" << pb.substr(pb.find(',') + 1) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << width << "\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
}

void Svg::text(Complex at, const std::string& s, int size) {
  const std::string p = point(at);
  body_ << "<text x=\"" << p.substr(0, p.find(',')) << "\" y=\"" << p.substr(p.find(',') + 1) << "\" font-size=\""
        << size << "\" font-family=\"sans-serif\">" << s << "</text>\n";
}

std::string Svg::str() const {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels_ << "\" height=\"" << pixels_
    << "\" viewBox=\"0 0 " << pixels_ << ' ' << pixels_ << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << body_.str() << "</svg>\n";
  return o.str();
}

}  // namespace levikit::tools
