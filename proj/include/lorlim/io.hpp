#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lorlim/curve.hpp"
#include "lorlim/time_field.hpp"

namespace lorlim::io {

/// Shortest round-trip decimal form; locale independent. inf/nan spelled out.
std::string format(double v);
std::string format(std::size_t v);

/// Comma separated rows with '\n' endings.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header, std::string comment_prefix = {});
  Csv& row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::string text_;
  std::size_t columns_;
};

std::string curve_csv(const CausalCurve& c);
std::string curve_meta(const CausalCurve& c);
std::string length_csv(const LengthReport& r);
std::string time_field_csv(const ScalarTimeField& f);
std::string gradient_csv(const GradientReport& r);
/// gnuplot data: '# x y value' header, blank line between grid rows.
std::string time_field_plot(const ScalarTimeField& f);

/// Writes `text`, creating parent directories.
void write_file(const std::string& path, std::string_view text);
std::string read_file(const std::string& path);

/// Writes `<path>` (t,x,y) and `<path>.meta`.
void write_curve(const std::string& path, const CausalCurve& c);
/// Reads a curve CSV (and its sidecar when present) and certifies it.
CausalCurve read_curve(const std::string& path, const MetricField& field);

}  // namespace lorlim::io
