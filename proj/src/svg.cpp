#include "ptide/svg.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace ptide {

namespace {
constexpr double kMarginLeft = 56;
constexpr double kMarginRight = 14;
constexpr double kMarginTop = 26;
constexpr double kMarginBottom = 40;

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}
}  // namespace

SvgPlot::SvgPlot(int width, int height, double x_min, double x_max, double y_min,
                 double y_max, bool log_y)
    : width_(width), height_(height), x_min_(x_min), x_max_(x_max), y_min_(y_min),
      y_max_(y_max), log_y_(log_y) {
  if (log_y_ && (y_min_ <= 0.0 || y_max_ <= 0.0))
    throw std::invalid_argument("SvgPlot: log scale needs positive y range");
}

double SvgPlot::px(double x) const {
  return kMarginLeft + (x - x_min_) / (x_max_ - x_min_) * (width_ - kMarginLeft - kMarginRight);
}

double SvgPlot::py(double y) const {
  double f;
  if (log_y_)
    f = (std::log(y) - std::log(y_min_)) / (std::log(y_max_) - std::log(y_min_));
  else
    f = (y - y_min_) / (y_max_ - y_min_);
  return height_ - kMarginBottom - f * (height_ - kMarginTop - kMarginBottom);
}

void SvgPlot::polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, double stroke_width, bool dashed) {
  body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << stroke_width << "\"";
  if (dashed) body_ << " stroke-dasharray=\"5,4\"";
  body_ << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double y = ys[i];
    if (log_y_ && y <= 0.0) continue;  // unplottable on a log axis
    body_ << num(px(xs[i])) << "," << num(py(y)) << " ";
  }
  body_ << "\"/>\n";
}

void SvgPlot::circle(double x, double y, double radius, const std::string& fill,
                     const std::string& stroke) {
  body_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"" << radius
        << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
}

void SvgPlot::axes(const std::string& x_label, const std::string& y_label, int n_ticks) {
  const double x0 = kMarginLeft, x1 = width_ - kMarginRight;
  const double y0 = height_ - kMarginBottom, y1 = kMarginTop;
  body_ << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
  body_ << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= n_ticks; ++i) {
    const double xv = x_min_ + (x_max_ - x_min_) * i / n_ticks;
    body_ << "<text x=\"" << num(px(xv)) << "\" y=\"" << y0 + 16
          << "\" font-size=\"10\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    double yv;
    if (log_y_)
      yv = std::exp(std::log(y_min_) + (std::log(y_max_) - std::log(y_min_)) * i / n_ticks);
    else
      yv = y_min_ + (y_max_ - y_min_) * i / n_ticks;
    std::ostringstream lbl;
    lbl << std::setprecision(3) << yv;
    body_ << "<text x=\"" << x0 - 6 << "\" y=\"" << num(py(yv) + 3)
          << "\" font-size=\"10\" text-anchor=\"end\">" << lbl.str() << "</text>\n";
  }
  body_ << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << height_ - 8
        << "\" font-size=\"11\" text-anchor=\"middle\">" << x_label << "</text>\n";
  body_ << "<text x=\"14\" y=\"" << (y0 + y1) / 2
        << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
}

void SvgPlot::title(const std::string& text) {
  body_ << "<text x=\"" << width_ / 2
        << "\" y=\"16\" font-size=\"12\" text-anchor=\"middle\">" << text << "</text>\n";
}

void SvgPlot::legend(const std::vector<std::pair<std::string, std::string>>& entries) {
  double y = kMarginTop + 12;
  for (const auto& [label, color] : entries) {
    const double x = width_ - kMarginRight - 120;
    body_ << "<line x1=\"" << x << "\" y1=\"" << y - 4 << "\" x2=\"" << x + 18 << "\" y2=\""
          << y - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    body_ << "<text x=\"" << x + 24 << "\" y=\"" << y << "\" font-size=\"10\">" << label
          << "</text>\n";
    y += 14;
  }
}

std::string SvgPlot::document() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

std::string SvgPlot::fragment(double x, double y) const {
  std::ostringstream out;
  out << "<svg x=\"" << x << "\" y=\"" << y << "\" width=\"" << width_ << "\" height=\""
      << height_ << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

void SvgPlot::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("SvgPlot: cannot open " + path.string());
  out << document();
  if (!out) throw std::runtime_error("SvgPlot: write failed for " + path.string());
}

}  // namespace ptide
