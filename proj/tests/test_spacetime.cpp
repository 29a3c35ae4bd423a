#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>

#include "lorlim/config.hpp"
#include "lorlim/errors.hpp"
#include "lorlim/expression.hpp"
#include "lorlim/lattice.hpp"
#include "lorlim/spacetime.hpp"
#include "oracles.hpp"

using namespace lorlim;

TEST_CASE("expression parser") {
  CHECK(Expression::parse("2^3^2")({0, 0}) == doctest::Approx(512));
  CHECK(Expression::parse("-x^2 + y")({3, 1}) == doctest::Approx(-8));
  CHECK(Expression::parse("1/(x^2+y^2)^2")({1, 0}) == doctest::Approx(1));
  CHECK(Expression::parse("sqrt(abs(x)) * cos(pi)")({4, 0}) == doctest::Approx(-2));
  CHECK(Expression::parse("3").is_constant());
  CHECK_FALSE(Expression::parse("x").is_constant());
  CHECK_THROWS_AS(Expression::parse("x +"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("foo(x)"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("(x"), ConfigError);
}

TEST_CASE("minkowski preset components") {
  auto m = presets::minkowski({-1, 1, -1, 1});
  const Sym2 g = m.g({0.3, 0.7});
  CHECK(g.xx == 1.0);
  CHECK(g.yy == -1.0);
  CHECK(g.xy == 0.0);
  CHECK(m.h({0.3, 0.7}) == Sym2::diag(1, 1));
  CHECK_NOTHROW(m.verify());
}

TEST_CASE("punctured preset removes the origin only") {
  auto m = presets::minkowski_punctured({-2, 2, -2, 2}, {0, 0}, 1e-3);
  CHECK(m.excluded({0, 0}));
  CHECK_FALSE(m.excluded({1, 1}));
  CHECK_FALSE(m.in_manifold({3, 0}));
  CHECK_THROWS_AS(classify_vector(m, {0, 0}, {0, 1}, 0), ExcludedPointError);
}

TEST_CASE("conformal preset scales h") {
  auto base = presets::minkowski({-0.5, 1.5, -0.5, 1.5});
  auto m = presets::conformal(base, Expression::parse("1/(x^2+y^2)^2"), presets::ConformalTarget::H);
  CHECK(m.h({1, 0}).xx == doctest::Approx(1));
  CHECK(m.h({1, 0}).yy == doctest::Approx(1));
  CHECK(m.h({1, 1}).xx == doctest::Approx(0.25));
  CHECK(m.g({1, 1}).yy == -1.0);
}

TEST_CASE("signature verification rejects Riemannian g") {
  presets::ComponentExpressions c{Expression::parse("1"), Expression::parse("0"), Expression::parse("1"),
                                  Expression::parse("1"), Expression::parse("0"), Expression::parse("1")};
  CHECK_THROWS_AS(presets::from_expressions({-1, 1, -1, 1}, c, {}, 1.0).verify(), SignatureError);
}

TEST_CASE("vector classification") {
  auto m = presets::minkowski({-1, 1, -1, 1});
  auto a = classify_vector(m, {0, 0}, {0, 1}, 0);
  CHECK(a.kind == CausalKind::Timelike);
  CHECK(a.future_causal());
  auto b = classify_vector(m, {0, 0}, {1, 1}, 0);
  CHECK(b.kind == CausalKind::Null);
  CHECK(b.future_causal());
  CHECK(classify_vector(m, {0, 0}, {1, 0.5}, 0).kind == CausalKind::Spacelike);
  CHECK(classify_vector(m, {0, 0}, {0.2, -1}, 0).past_causal());
}

TEST_CASE("unit lattice stencil") {
  auto m = presets::minkowski({-2, 2, -2, 2});
  auto lat = build_lattice(m, LatticeParams{1.0, 1, 0.0});
  const NodeId o = lat->nearest_node({0, 0});
  REQUIRE(o != kNoNode);
  std::set<std::pair<double, double>> targets;
  for (const auto& e : lat->future_edges(o)) {
    const Point p = lat->position(e.to);
    targets.insert({p.x, p.y});
    if (p.x == 0.0) CHECK(e.length == doctest::Approx(1));
    else CHECK(e.length == doctest::Approx(0));
  }
  CHECK(targets == std::set<std::pair<double, double>>{{-1, 1}, {0, 1}, {1, 1}});
}

TEST_CASE("punctured lattice has no node at the puncture") {
  auto m = presets::minkowski_punctured({-1, 1, -1, 1}, {0, 0}, 1e-3);
  auto lat = build_lattice(m, 1.0 / 64, 2);
  int i = 0, j = 0;
  REQUIRE(lat->nearest_cell({0, 0}, i, j));
  CHECK(lat->node_at(i, j) == kNoNode);
  CHECK(lat->nearest_node({0, 0}) != kNoNode);  // skips to a neighbour
}

TEST_CASE("lattice rejects bad parameters") {
  auto m = presets::minkowski({-1, 1, -1, 1});
  CHECK_THROWS_AS(build_lattice(m, LatticeParams{0.0, 1, 0.0}), DomainError);
  CHECK_THROWS_AS(build_lattice(m, LatticeParams{0.1, 0, 0.0}), DomainError);
}

TEST_CASE("property: every lattice edge is future causal at its midpoint") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const double r0 = rng.uniform(0.05, 0.3);
    auto m = presets::minkowski_punctured({-1, 1, -1, 1}, {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}, r0);
    auto lat = build_lattice(m, 0.1, rng.integer(1, 4));
    for (const auto& e : lat->edges()) {
      const Point a = lat->position(e.from), b = lat->position(e.to);
      auto cls = classify_vector(m, (a + b) * 0.5, b - a, lat->causal_tol());
      REQUIRE(cls.future_causal());
      CHECK(lat->row(e.from) < lat->row(e.to));
      CHECK(e.from < e.to);
    }
  }
}

TEST_CASE("property: doubling the stencil radius keeps every chord") {
  auto m = presets::minkowski_punctured({-1, 1, -1, 1}, {0.1, 0.2}, 0.2);
  for (int R : {1, 2, 3}) {
    auto small = build_lattice(m, 0.1, R);
    auto big = build_lattice(m, 0.1, 2 * R);
    REQUIRE(small->node_count() == big->node_count());
    for (NodeId n = 0; n < static_cast<NodeId>(small->node_count()); ++n) {
      std::set<NodeId> wide;
      for (const auto& e : big->future_edges(n)) wide.insert(e.to);
      for (const auto& e : small->future_edges(n)) CHECK(wide.count(e.to) == 1);
    }
  }
}

TEST_CASE("config parsing") {
  auto def = parse_config("{}");
  CHECK(def.preset == "minkowski");
  CHECK(def.lattice.spacing == 0.01);
  CHECK(def.lattice.stencil_radius == 4);

  auto cfg = parse_config(R"(
preset: minkowski_punctured
domain: {x_min: -0.25, x_max: 1.25, y_min: -1.25, y_max: 1.25}
puncture: {center: [0, 0], radius: 0.001}
lattice: {spacing: 0.0078125, stencil_radius: 2}
time_function: {kind: expression, expression: "2*y"}
sequence: {family: kinked, first: 2, last: 64, start: [1, 1]}
)");
  CHECK(cfg.preset == "minkowski_punctured");
  CHECK(cfg.domain.x_min == -0.25);
  CHECK(cfg.lattice.stencil_radius == 2);
  CHECK(cfg.time_function.expression({0, 1.5}) == doctest::Approx(3));
  REQUIRE(cfg.sequence);
  CHECK(cfg.sequence->family == "kinked");
  CHECK(cfg.sequence->start->x == 1.0);
  auto field = build_metric_field(cfg);
  CHECK(field.excluded({0, 0}));
}

TEST_CASE("config errors carry a line number") {
  try {
    parse_config("preset: minkowski\nlattice:\n  spacing: -1\n", "bad.yaml");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("bad.yaml:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_config("preset: nope"), ConfigError);
  CHECK_THROWS_AS(parse_config("domain: {x_min: 1, x_max: 0, y_min: 0, y_max: 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("lattice: {spacing: 0.1, bogus: 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("metric: {g_xx: 'x +'}\npreset: expression"), ConfigError);
  CHECK_THROWS_AS(parse_config("a: [1, 2"), ConfigError);
}

TEST_CASE("expression preset signature error surfaces from build_metric_field") {
  auto cfg = parse_config("preset: expression\nmetric: {g_xx: 1, g_xy: 0, g_yy: 1, h_xx: 1, h_xy: 0, h_yy: 1}\n");
  CHECK_THROWS_AS(build_metric_field(cfg), SignatureError);
}
