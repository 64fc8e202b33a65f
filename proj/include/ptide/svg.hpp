#pragma once

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace ptide {

// Hand-emitted SVG line plots; no plotting dependency. Coordinates are
// mapped from data space to a fixed viewport with optional log-scale y.
class SvgPlot {
 public:
  SvgPlot(int width, int height, double x_min, double x_max, double y_min, double y_max,
          bool log_y = false);

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& color, double stroke_width = 1.0,
                bool dashed = false);
  void circle(double x, double y, double radius, const std::string& fill,
              const std::string& stroke = "none");
  void axes(const std::string& x_label, const std::string& y_label, int n_ticks = 5);
  void title(const std::string& text);
  void legend(const std::vector<std::pair<std::string, std::string>>& entries);

  void save(const std::filesystem::path& path) const;

  // Inner <svg> fragment positioned at (x, y); lets callers tile plots
  // into a mosaic.
  std::string fragment(double x, double y) const;

 private:
  std::string document() const;
  double px(double x) const;
  double py(double y) const;

  int width_, height_;
  double x_min_, x_max_, y_min_, y_max_;
  bool log_y_;
  std::ostringstream body_;
};

}  // namespace ptide
