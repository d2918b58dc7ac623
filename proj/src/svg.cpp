#include "mplan/svg.hpp"

#include <iomanip>

namespace mplan {

SvgWriter::SvgWriter(double min_x, double min_y, double max_x, double max_y, double pixels_wide)
    : min_x_(min_x), min_y_(min_y), max_x_(max_x), max_y_(max_y) {
  scale_ = pixels_wide / (max_x - min_x);
  body_ << std::fixed << std::setprecision(3);
}

void SvgWriter::begin_group(const std::string& id) { body_ << "  <g id=\"" << id << "\">\n"; }
void SvgWriter::end_group() { body_ << "  </g>\n"; }

void SvgWriter::rect(double min_x, double min_y, double max_x, double max_y,
                     const std::string& fill, const std::string& stroke, double stroke_width) {
  body_ << "    <rect x=\"" << min_x << "\" y=\"" << ty(max_y) << "\" width=\"" << max_x - min_x
        << "\" height=\"" << max_y - min_y << "\" fill=\"" << fill << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << stroke_width << "\"/>\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                     double width) {
  body_ << "    <line x1=\"" << x1 << "\" y1=\"" << ty(y1) << "\" x2=\"" << x2 << "\" y2=\""
        << ty(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
}

void SvgWriter::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke, double width) {
  body_ << "    <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
        << "\" points=\"";
  for (const auto& [x, y] : pts) body_ << x << ',' << ty(y) << ' ';
  body_ << "\"/>\n";
}

void SvgWriter::polygon(const std::vector<std::pair<double, double>>& pts,
                        const std::string& fill, const std::string& stroke, double width) {
  body_ << "    <polygon fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
        << width << "\" points=\"";
  for (const auto& [x, y] : pts) body_ << x << ',' << ty(y) << ' ';
  body_ << "\"/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, const std::string& fill) {
  body_ << "    <circle cx=\"" << cx << "\" cy=\"" << ty(cy) << "\" r=\"" << r << "\" fill=\""
        << fill << "\"/>\n";
}

std::string SvgWriter::str() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  const double w = max_x_ - min_x_;
  const double h = max_y_ - min_y_;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << min_x_ << ' ' << min_y_ << ' '
      << w << ' ' << h << "\" width=\"" << w * scale_ << "\" height=\"" << h * scale_ << "\">\n"
      << body_.str() << "</svg>\n";
}

}  // namespace mplan
