#include "multitile/render.hpp"

#include <sstream>

#include "multitile/geometry2d.hpp"

namespace multitile {

namespace {

std::string num(const Scalar& x) { return to_decimal(x, 12); }

bool meets_window(const Polytope& p, const Vec& lambda, const Vec& lo, const Vec& hi) {
  for (std::size_t k = 0; k < 2; ++k) {
    if (!(p.box_lo()[k] + lambda[k] < hi[k]) || !(lo[k] < p.box_hi()[k] + lambda[k])) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string render_tiling(const Polytope& p, const QuasiPeriodicSet& q, const Vec& lo,
                          const Vec& hi, const RenderStyle& style) {
  if (p.dimension() != 2 || q.dimension() != 2 || lo.size() != 2 || hi.size() != 2) {
    throw DimensionUnsupported("rendering needs d = 2");
  }
  if (!(lo[0] < hi[0]) || !(lo[1] < hi[1])) throw InvalidInput("render window is empty");
  const Scalar w = hi[0] - lo[0];
  const Scalar h = hi[1] - lo[1];
  const Scalar stroke_width = (w < h ? w : h) * Scalar(Rational(1, 250));
  const Scalar dot_radius = stroke_width * Scalar(2);
  const std::vector<Point2> shape = polygon_vertices(p);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""
      << " width=\"" << num(w * Scalar(style.pixels_per_unit)) << "\""
      << " height=\"" << num(h * Scalar(style.pixels_per_unit)) << "\""
      << " viewBox=\"" << num(lo[0]) << " " << num(-hi[1]) << " " << num(w) << " " << num(h)
      << "\">\n";
  svg << "<defs><clipPath id=\"window\"><rect x=\"" << num(lo[0]) << "\" y=\"" << num(-hi[1])
      << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\"/></clipPath></defs>\n";
  svg << "<rect x=\"" << num(lo[0]) << "\" y=\"" << num(-hi[1]) << "\" width=\"" << num(w)
      << "\" height=\"" << num(h) << "\" fill=\"" << style.background << "\"/>\n";
  svg << "<g clip-path=\"url(#window)\" stroke=\"" << style.stroke << "\" stroke-width=\""
      << num(stroke_width) << "\" fill-opacity=\"0.55\">\n";

  const Vec search_lo = lo - p.box_hi();
  const Vec search_hi = hi - p.box_lo();
  for (std::size_t i = 0; i < q.cosets.size(); ++i) {
    const std::string& fill = style.fills[i % style.fills.size()];
    svg << "<g id=\"coset-" << i + 1 << "\" fill=\"" << fill << "\">\n";
    for_each_candidate(q.cosets[i], search_lo, search_hi, [&](const Vec& lambda) {
      if (!meets_window(p, lambda, lo, hi)) return;
      svg << "<polygon points=\"";
      for (std::size_t k = 0; k < shape.size(); ++k) {
        svg << (k ? " " : "") << num(shape[k].x + lambda[0]) << ","
            << num(-(shape[k].y + lambda[1]));
      }
      svg << "\"/>\n";
    });
    svg << "</g>\n";
  }
  svg << "</g>\n";

  svg << "<g stroke=\"none\">\n";
  for (std::size_t i = 0; i < q.cosets.size(); ++i) {
    const std::string& fill = style.fills[i % style.fills.size()];
    for (const WindowPoint& pt : enumerate_in_box(q.cosets[i], lo, hi).points) {
      svg << "<circle cx=\"" << num(pt.point[0]) << "\" cy=\"" << num(-pt.point[1]) << "\" r=\""
          << num(dot_radius) << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace multitile
