// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "lorlim/lorlim.h"

namespace {

const char* kSmall = "domain: {x_min: -1, x_max: 1, y_min: -1, y_max: 1}\nlattice: {spacing: 0.02, stencil_radius: 4}\n";

struct Spacetime {
  lorlim_spacetime* st = nullptr;
  explicit Spacetime(const char* text) { REQUIRE(lorlim_spacetime_parse(text, &st) == LORLIM_OK); }
  ~Spacetime() { lorlim_spacetime_free(st); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(lorlim_version()) == "0.1.0");
  CHECK(std::string(lorlim_status_name(LORLIM_OK)) == "ok");
  CHECK(std::string(lorlim_status_name(LORLIM_ERR_CONFIG)) == "config_error");
}

TEST_CASE("argument and config errors") {
  lorlim_spacetime* st = nullptr;
  CHECK(lorlim_spacetime_parse(nullptr, &st) == LORLIM_ERR_INVALID_ARGUMENT);
  CHECK(lorlim_spacetime_parse("lattice: {spacing: -1}", &st) == LORLIM_ERR_CONFIG);
  CHECK(std::string(lorlim_last_error()).find("spacing") != std::string::npos);
  CHECK(st == nullptr);
  CHECK(lorlim_spacetime_load("/nonexistent/x.yaml", &st) == LORLIM_ERR_CONFIG);
  CHECK(lorlim_spacetime_parse("preset: expression\nmetric: {g_xx: 1, g_yy: 1}", &st) == LORLIM_ERR_SIGNATURE);
  lorlim_spacetime_free(nullptr);
}

TEST_CASE("spacetime queries") {
  Spacetime s(kSmall);
  size_t nodes = 0, edges = 0;
  double spacing = 0;
  REQUIRE(lorlim_spacetime_info(s.st, &nodes, &edges, &spacing) == LORLIM_OK);
  CHECK(nodes == 101 * 101);
  CHECK(edges > nodes);
  CHECK(spacing == 0.02);
  double dom[4];
  REQUIRE(lorlim_spacetime_domain(s.st, dom) == LORLIM_OK);
  CHECK(dom[0] == -1);
  CHECK(dom[3] == 1);
  int kind = -1, dir = -1;
  REQUIRE(lorlim_classify_vector(s.st, 0, 0, 1, 1, 0, &kind, &dir) == LORLIM_OK);
  CHECK(kind == LORLIM_NULL);
  CHECK(dir == LORLIM_FUTURE);
  REQUIRE(lorlim_classify_vector(s.st, 0, 0, 1, 0.5, 0, &kind, &dir) == LORLIM_OK);
  CHECK(kind == LORLIM_SPACELIKE);
  const double xy[] = {1, 1, 0.5, 0, 0, -1};
  double L = 0;
  REQUIRE(lorlim_lorentzian_length(s.st, xy, 3, &L) == LORLIM_OK);
  CHECK(L == doctest::Approx(std::sqrt(3.0)));
  const double bad[] = {0, 0, 1, 0.5};
  CHECK(lorlim_lorentzian_length(s.st, bad, 2, &L) == LORLIM_ERR_CAUSALITY);
}

TEST_CASE("time field and null distance") {
  Spacetime s(kSmall);
  lorlim_time_field* tf = nullptr;
  REQUIRE(lorlim_time_field_build(s.st, &tf) == LORLIM_OK);
  double v = 0;
  REQUIRE(lorlim_time_field_eval(tf, 0.1, 0.3, &v) == LORLIM_OK);
  CHECK(v == doctest::Approx(0.3));
  CHECK(lorlim_time_field_eval(tf, 5, 0, &v) == LORLIM_ERR_DOMAIN);
  size_t count = 99;
  REQUIRE(lorlim_time_field_violations(tf, &count) == LORLIM_OK);
  CHECK(count == 0);
  double g = 0, b = 0;
  REQUIRE(lorlim_gradient_report(tf, -0.9, 0.9, -0.9, 0.9, &g, &b, nullptr) == LORLIM_OK);
  CHECK(g == doctest::Approx(-1));
  CHECK(b == doctest::Approx(1));
  CHECK(lorlim_gradient_report(tf, -1, 1, -1, 1, &g, &b, nullptr) == LORLIM_ERR_MARGIN);

  lorlim_zigzag* zz = nullptr;
  REQUIRE(lorlim_zigzag_build(tf, &zz) == LORLIM_OK);
  size_t len = 0;
  REQUIRE(lorlim_null_distance(zz, 0, 0, 1, 0, &v, nullptr, 0, &len) == LORLIM_OK);
  CHECK(v == doctest::Approx(1).epsilon(0.02));
  CHECK(len >= 3);
  std::vector<double> path(2 * len);
  double small[2];
  CHECK(lorlim_null_distance(zz, 0, 0, 1, 0, &v, small, 1, &len) == LORLIM_ERR_BUFFER_TOO_SMALL);
  REQUIRE(lorlim_null_distance(zz, 0, 0, 1, 0, &v, path.data(), len, &len) == LORLIM_OK);
  CHECK(path[0] == doctest::Approx(0));
  CHECK(path[2 * len - 2] == doctest::Approx(1));
  REQUIRE(lorlim_null_distance(zz, 0, 0, 0.5, 0.5, &v, nullptr, 0, &len) == LORLIM_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  lorlim_zigzag_free(zz);
  lorlim_time_field_free(tf);
}

TEST_CASE("commands and results") {
  lorlim_result* r = nullptr;
  CHECK(lorlim_reproduce_example("ex99", &r) == LORLIM_ERR_INVALID_ARGUMENT);
  REQUIRE(lorlim_reproduce_example("ex32", &r) == LORLIM_OK);
  CHECK(lorlim_result_pass(r) == 1);
  REQUIRE(lorlim_result_check_count(r) > 0);
  const char* name = nullptr;
  const char* threshold = nullptr;
  double value = 0;
  int pass = 0;
  REQUIRE(lorlim_result_check(r, 0, &name, &value, &threshold, &pass) == LORLIM_OK);
  CHECK(std::strlen(name) > 0);
  CHECK(pass == 1);
  CHECK(lorlim_result_check(r, 1000, &name, &value, &threshold, &pass) == LORLIM_ERR_INVALID_ARGUMENT);
  const auto dir = std::filesystem::temp_directory_path() / "lorlim_capi_test";
  REQUIRE(lorlim_result_write(r, dir.string().c_str()) == LORLIM_OK);
  CHECK(std::filesystem::exists(dir / "ex32" / "summary.csv"));
  std::filesystem::remove_all(dir);
  lorlim_result_free(r);

  CHECK(lorlim_run_suite("bogus", nullptr, &r) == LORLIM_ERR_CONFIG);
  const double ladder[] = {0.04, 0.02};
  lorlim_run_options opt{7, ladder, 2, 0, nullptr};
  REQUIRE(lorlim_run_suite("convergence", &opt, &r) == LORLIM_OK);
  CHECK(lorlim_result_pass(r) == 1);
  lorlim_result_free(r);

  Spacetime s(kSmall);
  CHECK(lorlim_extract(s.st, &r) == LORLIM_ERR_CONFIG);  // no sequence section
}
