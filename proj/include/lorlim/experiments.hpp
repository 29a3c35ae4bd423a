#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lorlim/config.hpp"
#include "lorlim/limit_extractor.hpp"

namespace lorlim::experiments {

/// gamma_i: (1,1) -> (1/i,0) -> (0,-1) in punctured Minkowski.
CausalCurve kinked_curve(const MetricField& field, int i);
/// sqrt(1 - 1/i^2) + sqrt(1 - (1 - 1/i)^2).
double kinked_length(int i);
MetricField punctured_plane();
/// dx^2 - dy^2 with h = (dx^2 + dy^2) / (x^2 + y^2)^2 on the punctured plane.
MetricField inverted_plane();

struct Family {
  std::vector<double> indices;
  std::vector<CausalCurve> curves;
  Point start;
};

/// Named families: kinked ((1,1) -> (1/i,0) -> (0,-1)), vertical ((1/i,1) -> (1/i,0)), mixed
/// ((1/i,1) -> (1/i,3/4) -> (1/i-1/4,1/2) -> (-1/4,0)).
Family make_family(const std::string& name, const MetricField& field, int first, int last);
/// Past-directed curves read from CSV files, indexed 1..n.
Family family_from_files(const std::vector<std::string>& paths, const MetricField& field, Point start);

/// Time field named by the config (coordinate, expression, surface, cosmological).
ScalarTimeField build_time_field(const SpacetimeConfig& cfg, std::shared_ptr<const CausalLattice> lat);
std::shared_ptr<const CausalLattice> build_config_lattice(const SpacetimeConfig& cfg, const MetricField& field);

struct Check {
  std::string name;
  double value = 0.0;
  std::string threshold;
  bool pass = false;
};

/// Artifacts of one command: files (relative name, contents) plus checks.
struct Result {
  std::string name;
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<Check> checks;

  bool pass() const;
  void check_le(const std::string& name, double value, double limit);
  void check_ge(const std::string& name, double value, double limit);
  void check_in(const std::string& name, double value, double lo, double hi);
  void check_true(const std::string& name, bool ok, double value = 0.0, const std::string& threshold = "true");
  /// summary.csv: check,value,threshold,pass
  std::string summary_csv() const;
};

struct Options {
  std::uint64_t seed = 7;
  std::vector<double> ladder;   // empty: 0.04, 0.02, 0.01
  double tol = 0.02;            // relative tolerance of lattice approximations
  std::optional<SpacetimeConfig> config;
};

Result reproduce_ex31(const Options& opt = {});
Result reproduce_ex32(const Options& opt = {});

const std::vector<std::string>& suite_names();
/// Throws ConfigError for an unknown suite; "all" runs every suite.
std::vector<Result> run_suite(const std::string& name, const Options& opt = {});

/// extract command: family and time function from the config.
Result run_extract(const SpacetimeConfig& cfg);

/// Writes files under out_dir/<result name>/ plus its summary.csv.
void write_result(const Result& r, const std::string& out_dir);

}  // namespace lorlim::experiments
