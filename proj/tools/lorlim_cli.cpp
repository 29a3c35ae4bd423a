// Command-line front end over the C API.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lorlim/lorlim.h"

namespace {

int report_error(lorlim_status s) {
  std::fprintf(stderr, "error (%s): %s\n", lorlim_status_name(s), lorlim_last_error());
  return 2;
}

/// Prints one line per check, writes artifacts, returns the exit code.
int finish(lorlim_result* r, const std::string& out_dir) {
  const size_t n = lorlim_result_check_count(r);
  for (size_t k = 0; k < n; ++k) {
    const char* name = nullptr;
    const char* threshold = nullptr;
    double value = 0;
    int pass = 0;
    lorlim_result_check(r, k, &name, &value, &threshold, &pass);
    std::printf("%s %s value=%.12g threshold=%s\n", pass ? "PASS" : "FAIL", name, value, threshold);
  }
  const lorlim_status s = lorlim_result_write(r, out_dir.c_str());
  const int pass = lorlim_result_pass(r);
  lorlim_result_free(r);
  if (s != LORLIM_OK) return report_error(s);
  std::printf("%s (artifacts in %s)\n", pass ? "all checks passed" : "some checks failed", out_dir.c_str());
  return pass ? 0 : 1;
}

struct Spacetime {
  lorlim_spacetime* st = nullptr;
  ~Spacetime() { lorlim_spacetime_free(st); }
  lorlim_status load(const std::string& path) {
    return path.empty() ? lorlim_spacetime_parse("{}", &st) : lorlim_spacetime_load(path.c_str(), &st);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Null distance and limit curve toolkit for 1+1 Lorentzian charts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lorlim_version());

  std::string out_dir = "out";
  std::string config_path;
  std::uint64_t seed = 7;
  std::vector<double> ladder;
  double tol = 0.02;

  auto* repro = app.add_subcommand("reproduce-example", "Reproduce a worked example (ex31: kinked curves, ex32: inverted arc length)");
  std::string which;
  repro->add_option("which", which, "ex31 or ex32")->required()->check(CLI::IsMember({"ex31", "ex32"}));
  repro->add_option("--out", out_dir, "Output directory");

  auto add_suite_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Spacetime config (YAML)");
    sub->add_option("--seed", seed, "Seed for sampled suites");
    sub->add_option("--ladder", ladder, "Resolution ladder, e.g. 0.04,0.02,0.01")->delimiter(',');
    sub->add_option("--tol", tol, "Relative tolerance of lattice approximations");
    sub->add_option("--out", out_dir, "Output directory");
  };
  std::string suite;
  auto* run = app.add_subcommand("run", "Run a property suite");
  run->add_option("--suite", suite, "Suite name or 'all'")->required();
  add_suite_options(run);

  auto* suite_cmd = app.add_subcommand("suite", "Run a property suite (positional form)");
  bool list = false;
  suite_cmd->add_option("name", suite, "Suite name or 'all'");
  suite_cmd->add_flag("--list", list, "List suites");
  add_suite_options(suite_cmd);

  auto* nd = app.add_subcommand("null-distance", "Null distance between two points");
  std::vector<double> from, to;
  nd->add_option("--config", config_path, "Spacetime config (YAML); default Minkowski with tau=y");
  nd->add_option("--from", from, "x,y")->delimiter(',')->expected(2)->required();
  nd->add_option("--to", to, "x,y")->delimiter(',')->expected(2)->required();
  nd->add_option("--out", out_dir, "Output directory");

  auto* tf = app.add_subcommand("time-field", "Build the configured time function and its gradient report");
  std::vector<double> region;
  tf->add_option("--config", config_path, "Spacetime config (YAML)");
  tf->add_option("--region", region, "x_min,x_max,y_min,y_max (default: domain less two cells)")
      ->delimiter(',')
      ->expected(4);
  tf->add_option("--out", out_dir, "Output directory");

  auto* ex = app.add_subcommand("extract", "Limit-curve extraction for the configured sequence");
  ex->add_option("--config", config_path, "Spacetime config (YAML) with a sequence section")->required();
  ex->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; usage errors share the error status.
    return app.exit(e) == 0 ? 0 : 2;
  }

  lorlim_result* result = nullptr;
  lorlim_status s = LORLIM_OK;

  if (*repro) {
    s = lorlim_reproduce_example(which.c_str(), &result);
    return s == LORLIM_OK ? finish(result, out_dir) : report_error(s);
  }

  if (*run || *suite_cmd) {
    if (list || suite.empty()) {
      std::puts("metric-axioms\ncausal-identity\nsurface-function\ncosmological\ngradient-bound\nconvergence\ntopology\nall");
      return list ? 0 : 2;
    }
    Spacetime cfg;
    if (!config_path.empty() && (s = cfg.load(config_path)) != LORLIM_OK) return report_error(s);
    lorlim_run_options opt{seed, ladder.empty() ? nullptr : ladder.data(), ladder.size(), tol, cfg.st};
    s = lorlim_run_suite(suite.c_str(), &opt, &result);
    return s == LORLIM_OK ? finish(result, out_dir) : report_error(s);
  }

  if (*ex) {
    Spacetime cfg;
    if ((s = cfg.load(config_path)) != LORLIM_OK) return report_error(s);
    s = lorlim_extract(cfg.st, &result);
    return s == LORLIM_OK ? finish(result, out_dir) : report_error(s);
  }

  Spacetime cfg;
  if ((s = cfg.load(config_path)) != LORLIM_OK) return report_error(s);
  lorlim_time_field* field = nullptr;
  if ((s = lorlim_time_field_build(cfg.st, &field)) != LORLIM_OK) return report_error(s);

  if (*nd) {
    lorlim_zigzag* zz = nullptr;
    if ((s = lorlim_zigzag_build(field, &zz)) != LORLIM_OK) {
      lorlim_time_field_free(field);
      return report_error(s);
    }
    double value = 0;
    size_t len = 0;
    s = lorlim_null_distance(zz, from[0], from[1], to[0], to[1], &value, nullptr, 0, &len);
    std::vector<double> path(2 * len);
    if (s == LORLIM_OK) s = lorlim_null_distance(zz, from[0], from[1], to[0], to[1], &value, path.data(), len, &len);
    lorlim_zigzag_free(zz);
    lorlim_time_field_free(field);
    if (s != LORLIM_OK) return report_error(s);
    std::string csv = "x,y\n";
    char buf[64];
    for (size_t k = 0; k < len; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", path[2 * k], path[2 * k + 1]);
      csv += buf;
    }
    std::printf("null_distance %.17g\n%s", value, csv.c_str());
    if (app.get_subcommand("null-distance")->count("--out")) {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      const std::string path_csv = out_dir + "/witness.csv";
      if (FILE* f = std::fopen(path_csv.c_str(), "wb")) {
        std::fputs(csv.c_str(), f);
        std::fclose(f);
      } else {
        std::fprintf(stderr, "error: cannot write %s\n", path_csv.c_str());
        return 2;
      }
    }
    return 0;
  }

  // time-field
  const std::string dir = out_dir + "/time-field/";
  s = lorlim_time_field_write(field, (dir + "time_field.csv").c_str(), (dir + "time_field.dat").c_str());
  size_t violations = 0, warnings = 0;
  lorlim_time_field_violations(field, &violations);
  lorlim_time_field_warnings(field, &warnings);
  double worst = 0, b = 0;
  if (region.empty()) {
    double d[4];
    size_t nodes = 0, edges = 0;
    double h = 0;
    lorlim_spacetime_domain(cfg.st, d);
    lorlim_spacetime_info(cfg.st, &nodes, &edges, &h);
    region = {d[0] + 2 * h, d[1] - 2 * h, d[2] + 2 * h, d[3] - 2 * h};
  }
  if (s == LORLIM_OK) {
    s = lorlim_gradient_report(field, region[0], region[1], region[2], region[3], &worst, &b,
                               (dir + "gradient.csv").c_str());
  }
  lorlim_time_field_free(field);
  if (s != LORLIM_OK) return report_error(s);
  std::printf("%s monotonicity_violations value=%zu threshold=0\n", violations == 0 ? "PASS" : "FAIL", violations);
  std::printf("INFO unrelated_nodes value=%zu\n", warnings);
  std::printf("INFO worst_gnorm value=%.12g b=%.12g\n", worst, b);
  return violations == 0 ? 0 : 1;
}
