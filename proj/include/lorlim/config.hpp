#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lorlim/expression.hpp"
#include "lorlim/spacetime.hpp"

namespace lorlim {

struct LatticeSpec {
  double spacing = 0.01;
  int stencil_radius = 4;
  std::optional<double> causal_tol;  // default depends on the metric
};

struct TimeFunctionSpec {
  enum class Kind { Coordinate, Expression, Surface, Cosmological };

  Kind kind = Kind::Coordinate;
  Expression expression = Expression::parse("y");
  std::vector<Point> surface;          // Surface: polyline of S
  std::optional<double> past_boundary;  // Cosmological: y value of the past boundary
};

/// Curve family consumed by the `extract` command.
struct SequenceSpec {
  std::string family;  // kinked | vertical | mixed
  int first = 2;
  int last = 64;
  std::vector<std::string> curve_files;  // alternative to `family`
  std::optional<Point> start;
  double eps0 = 1e-2;
  int max_stages = 16;
};

/// Parsed spacetime config file (YAML).
struct SpacetimeConfig {
  std::string source = "<string>";
  std::string preset = "minkowski";  // minkowski | minkowski_punctured | conformal | expression
  Rect domain{-1.0, 1.0, -1.0, 1.0};
  std::vector<ExcludedRegion> excluded;
  Point puncture_center{0.0, 0.0};
  double puncture_radius = 1e-3;
  std::optional<presets::ComponentExpressions> components;
  std::string conformal_base = "minkowski";
  Expression conformal_factor = Expression::constant(1.0);
  presets::ConformalTarget conformal_target = presets::ConformalTarget::H;
  double future_sign = 1.0;
  LatticeSpec lattice;
  TimeFunctionSpec time_function;
  std::optional<SequenceSpec> sequence;
};

/// Parses config text. Errors are ConfigError with "source:line: message".
SpacetimeConfig parse_config(std::string_view text, const std::string& source = "<string>");
SpacetimeConfig load_config(const std::filesystem::path& path);

/// Builds and verifies the metric named by `cfg` (SignatureError on failure).
MetricField build_metric_field(const SpacetimeConfig& cfg);

}  // namespace lorlim
