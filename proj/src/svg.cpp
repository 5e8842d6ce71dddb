#include "blockade/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace blockade {

namespace {

constexpr double kWidth = 960;
constexpr double kMargin = 24;

struct Frame {
  double x0, y0, scale, height;

  double sx(double x) const { return kMargin + (x - x0) * scale; }
  double sy(double y) const { return height - kMargin - (y - y0) * scale; }
};

class Num {
 public:
  explicit Num(double v) : v_(v) {}
  friend std::ostream& operator<<(std::ostream& os, const Num& n) {
    // avoid "-0" so identical scenes render identically
    return os << (n.v_ == 0 ? 0.0 : n.v_);
  }

 private:
  double v_;
};

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

Frame frame_for(const Scene& scene) {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  auto grow = [&](double x, double y, double r) {
    xmin = std::min(xmin, x - r);
    xmax = std::max(xmax, x + r);
    ymin = std::min(ymin, y - r);
    ymax = std::max(ymax, y + r);
  };
  for (const auto& p : scene.P.points) grow(to_double(p.x), to_double(p.y), 0);
  if (scene.Q) {
    for (const auto& p : scene.Q->points) grow(to_double(p.x), to_double(p.y), 0);
  }
  for (const auto& c : scene.circles.circles) {
    grow(to_double(c.circle.center().x), to_double(c.circle.center().y), std::sqrt(to_double(c.circle.radius_sq())));
  }
  if (xmin > xmax) xmin = ymin = -1, xmax = ymax = 1;
  double span = std::max(xmax - xmin, ymax - ymin);
  if (span <= 0) span = 2, xmin -= 1, ymin -= 1;
  const double scale = (kWidth - 2 * kMargin) / span;
  const double height = std::ceil((ymax - ymin) * scale + 2 * kMargin);
  return {xmin, ymin, scale, height};
}

}  // namespace

std::string render_svg(const Scene& scene) {
  const Frame f = frame_for(scene);
  std::ostringstream out;
  out.precision(12);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << f.height
      << "\" viewBox=\"0 0 " << kWidth << ' ' << f.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (scene.hull && scene.P.size() >= 2) {
    const auto hull = convex_hull(scene.P.points);
    out << "<polygon class=\"hull\" fill=\"#eef3fb\" stroke=\"#7a8fb0\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
      const auto& v = hull.vertices[i];
      out << (i ? " " : "") << Num(f.sx(to_double(v.x))) << ',' << Num(f.sy(to_double(v.y)));
    }
    out << "\"/>\n";
  }

  if (scene.edges && scene.P.size() >= 2) {
    for (const auto& [i, j] : delaunay_edges(scene.P)) {
      const auto& a = scene.P.points[i];
      const auto& b = scene.P.points[j];
      out << "<line class=\"edge\" stroke=\"#999\" stroke-width=\"0.75\" x1=\"" << Num(f.sx(to_double(a.x)))
          << "\" y1=\"" << Num(f.sy(to_double(a.y))) << "\" x2=\"" << Num(f.sx(to_double(b.x))) << "\" y2=\""
          << Num(f.sy(to_double(b.y))) << "\"/>\n";
    }
  }

  for (const auto& c : scene.circles.circles) {
    const bool g = to_string(c.role).front() == 'G';
    out << "<circle class=\"witness\" data-name=\"" << c.name() << "\" fill=\"none\" stroke=\""
        << (g ? "#c0392b" : "#2c6fbb") << "\" stroke-width=\"1\" cx=\"" << Num(f.sx(to_double(c.circle.center().x)))
        << "\" cy=\"" << Num(f.sy(to_double(c.circle.center().y))) << "\" r=\""
        << Num(std::sqrt(to_double(c.circle.radius_sq())) * f.scale) << "\"/>\n";
  }

  for (std::size_t i = 0; i < scene.P.size(); ++i) {
    const auto& p = scene.P.points[i];
    out << "<circle class=\"P\" fill=\"black\" r=\"3\" cx=\"" << Num(f.sx(to_double(p.x))) << "\" cy=\""
        << Num(f.sy(to_double(p.y))) << "\"/>\n";
    const std::string label = scene.P.label(i);
    if (!label.empty()) {
      out << "<text font-size=\"10\" font-family=\"sans-serif\" x=\"" << Num(f.sx(to_double(p.x)) + 4) << "\" y=\""
          << Num(f.sy(to_double(p.y)) - 4) << "\">" << escape(label) << "</text>\n";
    }
  }
  if (scene.Q) {
    for (const auto& p : scene.Q->points) {
      out << "<rect class=\"Q\" fill=\"#e67e22\" width=\"6\" height=\"6\" x=\"" << Num(f.sx(to_double(p.x)) - 3)
          << "\" y=\"" << Num(f.sy(to_double(p.y)) - 3) << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace blockade
