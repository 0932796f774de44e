#include "polytess/svg.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace polytess {

namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 10.0;

std::string fixed3(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x,
                                 std::chars_format::fixed, 3);
  std::string s(buf, res.ptr);
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::string render_svg(std::span<const Line> lines,
                       std::span<const ConvexPolygon> triangles,
                       double radius) {
  const double scale = (0.5 * kCanvas - kMargin) / radius;
  auto sx = [&](double x) { return fixed3(0.5 * kCanvas + scale * x); };
  auto sy = [&](double y) { return fixed3(0.5 * kCanvas - scale * y); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" "
         "height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
      << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

  svg << "<g fill=\"#e4572e\" fill-opacity=\"0.75\" stroke=\"none\">\n";
  for (const auto& tri : triangles) {
    svg << "<polygon points=\"";
    for (std::size_t i = 0; i < tri.size(); ++i) {
      svg << (i ? " " : "") << sx(tri[i].x) << ',' << sy(tri[i].y);
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g stroke=\"#1d3557\" stroke-width=\"1\">\n";
  for (const Line& l : lines) {
    if (std::abs(l.d) >= radius) continue;
    const double h = std::sqrt(radius * radius - l.d * l.d);
    const Point base = l.d * l.normal();
    const Point a = base + (-h) * l.direction();
    const Point b = base + h * l.direction();
    svg << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\""
        << sx(b.x) << "\" y2=\"" << sy(b.y) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<circle cx=\"" << sx(0.0) << "\" cy=\"" << sy(0.0) << "\" r=\""
      << fixed3(scale * radius)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace polytess
