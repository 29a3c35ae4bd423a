#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "lorlim/io.hpp"
#include "lorlim/limit_extractor.hpp"

using namespace lorlim;

TEST_CASE("number formatting round-trips") {
  CHECK(io::format(0.1) == "0.1");
  CHECK(io::format(0.0) == "0");
  CHECK(io::format(-0.0) == "0");
  CHECK(io::format(1e-300) == "1e-300");
  CHECK(io::format(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(io::format(std::nan("")) == "nan");
  CHECK(io::format(std::size_t{42}) == "42");
  for (double v : {1.0 / 3, 2.0 / 7, 1e17 + 8, 6.02214076e23}) CHECK(std::stod(io::format(v)) == v);
}

TEST_CASE("csv rows") {
  io::Csv csv({"a", "b"});
  csv.row({"1", "2"}).row({"3", "4"});
  CHECK(csv.str() == "a,b\n1,2\n3,4\n");
  // A comment prefix turns the header into a gnuplot-style comment.
  CHECK(io::Csv({"x", "y"}, "# ").str() == "# x y\n");
  CHECK_THROWS(io::Csv({"a", "b"}).row({"1"}));
}

TEST_CASE("curve files round-trip") {
  auto m = presets::minkowski({-1, 1, -1, 1});
  auto c = make_curve(m, {0, 0.25, 1}, {{0, 1}, {0.1, 0.5}, {1.0 / 3, -0.5}}, true);
  const auto path = (std::filesystem::temp_directory_path() / "lorlim_io_test" / "c.csv").string();
  io::write_curve(path, c);
  auto back = io::read_curve(path, m);
  CHECK(back.params == c.params);
  CHECK(back.points == c.points);
  CHECK(back.open_end);
  CHECK(back.causal_class == c.causal_class);
  std::filesystem::remove_all(std::filesystem::path(path).parent_path());
}

TEST_CASE("plot data has a comment header and blank lines between rows") {
  auto lat = build_lattice(presets::minkowski({0, 1, 0, 1}), 0.5, 1);
  auto f = ScalarTimeField::sample(lat, [](Point p) { return p.y; });
  const std::string plot = io::time_field_plot(f);
  CHECK(plot.rfind("# x y value\n", 0) == 0);
  CHECK(plot.find("\n\n") != std::string::npos);
  const std::string csv = io::time_field_csv(f);
  CHECK(csv.rfind("x,y,value\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 1 + 9);
}

TEST_CASE("extraction report is valid YAML") {
  auto m = presets::minkowski({-1, 1, -1, 1});
  auto lat = build_lattice(m, 1.0 / 32, 2);
  auto zz = std::make_shared<const ZigzagGraph>(ScalarTimeField::sample(lat, [](Point p) { return p.y; }));
  std::vector<CausalCurve> curves(4, make_polyline(m, {{0, 0.5}, {0, -0.5}}));
  auto seq = time_parametrized_sequence([](Point p) { return p.y; }, {1, 2, 3, 4}, curves);
  LatticeNullDistance d(zz);
  auto rep = extract_limit_curve(seq, d, {0, 0.5}, m);
  auto v = length_control_check(rep, seq, m, 1.0);
  YAML::Node doc = YAML::Load(report_yaml(rep, &v));
  CHECK(doc["a"].as<double>() == doctest::Approx(1));
  CHECK(doc["verdict"]);
  CHECK(doc["stages"].IsSequence());
}
