#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace mplan {

/// Minimal SVG document builder for 2D workspace figures. The y axis is
/// flipped so workspace coordinates render with y up.
class SvgWriter {
 public:
  SvgWriter(double min_x, double min_y, double max_x, double max_y, double pixels_wide = 800.0);

  void begin_group(const std::string& id);
  void end_group();

  void rect(double min_x, double min_y, double max_x, double max_y, const std::string& fill,
            const std::string& stroke = "none", double stroke_width = 0.0);
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double width);
  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
               const std::string& stroke, double width);
  void circle(double cx, double cy, double r, const std::string& fill);

  std::string str() const;

 private:
  double ty(double y) const { return min_y_ + max_y_ - y; }  // flip

  double min_x_, min_y_, max_x_, max_y_;
  double scale_;
  std::ostringstream body_;
};

}  // namespace mplan
