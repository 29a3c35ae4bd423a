#include <doctest.h>

#include <cmath>
#include <limits>

#include "lorlim/errors.hpp"
#include "lorlim/time_field.hpp"
#include "oracles.hpp"

using namespace lorlim;

namespace {

std::shared_ptr<const CausalLattice> square(double spacing = 0.01, int R = 4) {
  return build_lattice(presets::minkowski({-1, 1, -1, 1}), spacing, R);
}

double d_L(const CausalLattice& lat, Point a, Point b) {
  const NodeId src = lat.nearest_node(a);
  return lattice_d_L(lat, std::span<const NodeId>(&src, 1), lat.nearest_node(b));
}

const std::vector<Point> kSurface{{-1, 0}, {1, 0}};

}  // namespace

TEST_CASE("lattice Lorentzian distance") {
  auto lat = square();
  CHECK(d_L(*lat, {0, 0}, {0, 1}) == doctest::Approx(1).epsilon(0.02));
  CHECK(d_L(*lat, {0, 0}, {0.6, 1}) == doctest::Approx(0.8).epsilon(0.02));
  CHECK(d_L(*lat, {0, 0}, {0.5, 0.1}) == -std::numeric_limits<double>::infinity());
  CHECK(d_L(*lat, {0, 0}, {0, -0.5}) == -std::numeric_limits<double>::infinity());
  // Never longer than the continuum maximiser.
  CHECK(d_L(*lat, {0, 0}, {0.3, 0.9}) <= oracle::minkowski_d_L({0, 0}, {0.3, 0.9}) + 1e-12);
}

TEST_CASE("sampled field interpolation") {
  auto lat = square(0.1, 2);
  auto f = ScalarTimeField::sample(lat, [](Point p) { return 2 * p.y + p.x; });
  CHECK(f({0.25, 0.33}) == doctest::Approx(0.91));
  CHECK_THROWS_AS(f({2, 0}), DomainError);
}

TEST_CASE("surface function of y = 0") {
  auto tau = surface_function(square(), kSurface);
  CHECK(tau({0.2, 0.5}) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(tau({0.0, -0.5}) == doctest::Approx(-0.5).epsilon(0.02));
  CHECK(tau({0.3, 0.0}) == 0.0);
  CHECK(tau.kind() == TimeFieldKind::SurfaceFunction);
  CHECK(tau.warnings().empty());
  CHECK_THROWS_AS(surface_function(square(0.05, 2), std::vector<Point>{{0, -0.5}, {0, 0.5}}), AcausalityError);
}

TEST_CASE("surface function flags nodes unrelated to a short surface") {
  auto tau = surface_function(square(0.05, 2), std::vector<Point>{{-0.2, 0}, {0.2, 0}});
  CHECK_FALSE(tau.warnings().empty());
  for (NodeId n : tau.warnings()) CHECK(tau.value(n) == 0.0);
}

TEST_CASE("cosmological time of a strip") {
  auto lat = build_lattice(presets::minkowski({-0.5, 0.5, 0, 1}), 1.0 / 64, 2);
  auto tau = cosmological_time(lat, {0.0});
  CHECK(tau.kind() == TimeFieldKind::Cosmological);
  for (double t : {0.25, 0.5, 1.0}) CHECK(tau({0.1, t}) == doctest::Approx(t).epsilon(0.02));
  CHECK(tau({0, 1.0 / 64}) <= 1.0 / 64 * 1.02);
  CHECK(tau({-0.3, 0.5}) == doctest::Approx(tau({0.3, 0.5})).epsilon(0.02));
  CHECK(monotonicity_violations(tau, true) == 0);
}

TEST_CASE("cosmological time regularity") {
  // Chart reaching below the boundary.
  auto low = build_lattice(presets::minkowski({-0.5, 0.5, -0.5, 1}), 1.0 / 32, 2);
  CHECK_THROWS_AS(cosmological_time(low, {0.0}), RegularityError);
  // Puncture in the middle of the strip: past-inextendible paths end there at positive time.
  auto holed = build_lattice(presets::minkowski_punctured({-0.5, 0.5, 0, 1}, {0, 0.5}, 0.1), 1.0 / 32, 2);
  CHECK_THROWS_AS(cosmological_time(holed, {0.0}), RegularityError);
}

TEST_CASE("gradient report") {
  auto lat = square(0.02, 2);
  const Rect inner{-0.9, 0.9, -0.9, 0.9};
  auto g = gradient_report(ScalarTimeField::sample(lat, [](Point p) { return p.y; }), inner);
  CHECK(g.worst_gnorm == doctest::Approx(-1));
  CHECK(g.b == doctest::Approx(1));
  CHECK(g.valid);
  auto tilted = gradient_report(ScalarTimeField::sample(lat, [](Point p) { return p.y + 0.5 * p.x; }), inner);
  CHECK(tilted.worst_gnorm == doctest::Approx(-0.75));
  CHECK(tilted.b == doctest::Approx(std::sqrt(0.75)));
  auto flat = gradient_report(ScalarTimeField::sample(lat, [](Point) { return 1.0; }), inner);
  CHECK_FALSE(flat.valid);
  CHECK(flat.b == 0);
  CHECK_THROWS_AS(gradient_report(ScalarTimeField::sample(lat, [](Point p) { return p.y; }), {-1, 1, -0.5, 0.5}),
                  MarginError);
}

TEST_CASE("surface function gradient is unit timelike") {
  auto tau = surface_function(square(), kSurface);
  auto g = gradient_report(tau, {-0.98, 0.98, -0.98, 0.98});
  CHECK(g.worst_gnorm_trimmed == doctest::Approx(-1).epsilon(0.05));
}

TEST_CASE("anti-Lipschitz check") {
  auto m = presets::minkowski({-2, 2, -2, 2});
  TimeFunction y = [](Point p) { return p.y; };
  std::vector<CausalCurve> timelike{make_polyline(m, {{0, 0}, {0, 1}})};
  auto a = anti_lipschitz_check(y, m, timelike, 0.5);
  CHECK(a.pass);
  CHECK(a.worst_ratio == doctest::Approx(2));
  std::vector<CausalCurve> null{make_polyline(m, {{0, 0}, {1, 1}})};
  auto b = anti_lipschitz_check(y, m, null, 0.5);
  CHECK(b.pass);
  CHECK(b.worst_ratio == doctest::Approx(1 / (0.5 * std::sqrt(2.0))));
  auto c = anti_lipschitz_check([](Point) { return 3.0; }, m, null, 0.5);
  CHECK_FALSE(c.pass);
  CHECK(c.worst_ratio == 0);
}

TEST_CASE("property: surface and cosmological times increase along edges") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const double spacing = 1.0 / rng.integer(16, 40);
    const int R = rng.integer(1, 4);
    // A gently tilted acausal surface.
    const double s = rng.uniform(-0.5, 0.5);
    auto tau = surface_function(square(spacing, R), std::vector<Point>{{-1, -s * 0.5}, {1, s * 0.5}});
    // Nodes on S share the value 0, so only the non-strict form holds exactly.
    CHECK(monotonicity_violations(tau, false) == 0);
    auto strip = build_lattice(presets::minkowski({-0.5, 0.5, 0, 1}), spacing, R);
    CHECK(monotonicity_violations(cosmological_time(strip, {0.0}), true) == 0);
  }
}

TEST_CASE("property: level sets of the surface function are acausal") {
  auto field = presets::minkowski({-1, 1, -1, 1});
  for (double s : {0.0, 0.3, -0.4}) {
    auto tau = surface_function(square(0.02, 4), std::vector<Point>{{-1, -s * 0.5}, {1, s * 0.5}});
    for (double level : {-0.5, -0.25, 0.25, 0.5}) {
      auto sets = level_set(tau, level);
      REQUIRE_FALSE(sets.empty());
      CHECK(causal_chords(field, sets, 1e-9) == 0);
    }
  }
}

TEST_CASE("property: reverse triangle inequality for the surface function") {
  auto lat = square(0.02, 4);
  auto tau = surface_function(lat, kSurface);
  const double grid_tol = lat->spacing();
  oracle::Rng rng(33);
  int related = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const NodeId x = static_cast<NodeId>(rng.next() % lat->node_count());
    const NodeId y = static_cast<NodeId>(rng.next() % lat->node_count());
    const double d = lattice_d_L(*lat, std::span<const NodeId>(&x, 1), y);
    if (!std::isfinite(d)) continue;
    ++related;
    CHECK(tau.value(y) >= tau.value(x) + d - 2 * grid_tol);
  }
  CHECK(related > 20);
}

TEST_CASE("property: surface function converges under refinement") {
  const std::vector<Point> probes{{0.1, 0.5}, {-0.3, -0.4}, {0.45, 0.7}, {0.0, -0.8}};
  auto a = surface_function(square(0.04, 4), kSurface);
  auto b = surface_function(square(0.02, 4), kSurface);
  // Fitted constant: the change from 0.04 to 0.02 bounds C * 0.02.
  for (auto p : probes) CHECK(std::abs(a(p) - b(p)) <= 2.0 * 0.02 + 1e-12);
}
