#include <doctest.h>

#include "lorlim/errors.hpp"
#include "lorlim/experiments.hpp"

using namespace lorlim;
using namespace lorlim::experiments;

namespace {

std::string failing(const Result& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.pass) out += c.name + "=" + std::to_string(c.value) + " ";
  return out;
}

}  // namespace

TEST_CASE("every suite passes with default options") {
  for (const auto& name : suite_names()) {
    for (const auto& r : run_suite(name)) {
      INFO(r.name << ": " << failing(r));
      CHECK(r.pass());
      CHECK_FALSE(r.files.empty());
    }
  }
}

TEST_CASE("worked examples pass") {
  auto a = reproduce_ex31();
  INFO(failing(a));
  CHECK(a.pass());
  auto b = reproduce_ex32();
  INFO(failing(b));
  CHECK(b.pass());
}

TEST_CASE("seeded suites are reproducible and seed dependent") {
  Options o;
  o.seed = 7;
  auto a = run_suite("gradient-bound", o), b = run_suite("gradient-bound", o);
  CHECK(a[0].files == b[0].files);
  o.seed = 8;
  auto c = run_suite("gradient-bound", o);
  CHECK(a[0].files != c[0].files);
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(run_suite("no-such-suite"), ConfigError);
  Options o;
  o.ladder = {0.02, 0.04};
  CHECK_THROWS_AS(run_suite("convergence", o), ConfigError);
  auto field = punctured_plane();
  CHECK_THROWS_AS(make_family("spiral", field, 2, 4), ConfigError);
  CHECK_THROWS_AS(make_family("kinked", field, 1, 4), ConfigError);
}

TEST_CASE("summary csv") {
  Result r;
  r.check_le("x", 1, 2);
  r.check_in("y", 3, 0, 1);
  CHECK(r.summary_csv() == "check,value,threshold,pass\nx,1,<=2,1\ny,3,[0;1],0\n");
  CHECK_FALSE(r.pass());
}

TEST_CASE("config-driven time fields") {
  auto cfg = parse_config(R"(
domain: {x_min: -0.5, x_max: 0.5, y_min: 0, y_max: 1}
lattice: {spacing: 0.0625, stencil_radius: 2}
time_function: {kind: cosmological, past_boundary: {y: 0}}
)");
  auto field = build_metric_field(cfg);
  auto tau = build_time_field(cfg, build_config_lattice(cfg, field));
  CHECK(tau.kind() == TimeFieldKind::Cosmological);
  CHECK(tau({0, 0.5}) == doctest::Approx(0.5).epsilon(0.02));

  cfg.time_function.kind = TimeFunctionSpec::Kind::Expression;
  cfg.time_function.expression = Expression::parse("2*y");
  CHECK(build_time_field(cfg, build_config_lattice(cfg, field))({0, 0.5}) == doctest::Approx(1));
}

TEST_CASE("extract command on the strip") {
  auto cfg = parse_config(R"(
domain: {x_min: -0.5, x_max: 0.75, y_min: 0, y_max: 1}
lattice: {spacing: 0.0078125, stencil_radius: 2}
time_function: {kind: coordinate}
sequence: {family: vertical, first: 2, last: 128}
)");
  auto r = run_extract(cfg);
  INFO(failing(r));
  CHECK(r.pass());
  cfg.sequence.reset();
  CHECK_THROWS_AS(run_extract(cfg), ConfigError);
}
