#include <doctest.h>

#include <cmath>
#include <limits>

#include "lorlim/curve.hpp"
#include "lorlim/errors.hpp"
#include "lorlim/experiments.hpp"
#include "lorlim/quadrature.hpp"
#include "lorlim/sequence.hpp"
#include "oracles.hpp"

using namespace lorlim;

namespace {

MetricField flat() { return presets::minkowski({-3, 3, -3, 3}); }

std::vector<oracle::P> to_oracle(const std::vector<Point>& v) {
  std::vector<oracle::P> out;
  for (auto p : v) out.push_back({p.x, p.y});
  return out;
}

}  // namespace

TEST_CASE("quadrature against closed forms") {
  CHECK(integrate([](double x) { return x * x; }, 0, 3).value == doctest::Approx(9).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI).value == doctest::Approx(2).epsilon(1e-10));
  // Integrable endpoint singularity: integral of 1/sqrt(x) on [0,1] is 2.
  auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, {1e-9, 200000, 1e12});
  CHECK(r.value == doctest::Approx(2).epsilon(1e-6));
  CHECK_FALSE(r.diverged);
  auto d = integrate([](double x) { return 1.0 / ((1 - x) * (1 - x)); }, 0, 1);
  CHECK(d.diverged);
  CHECK(std::isinf(d.value));
}

TEST_CASE("kinked curve length at i = 2") {
  auto c = make_polyline(flat(), {{1, 1}, {0.5, 0}, {0, -1}});
  CHECK(c.causal_class == CurveClass::Timelike);
  CHECK(lorentzian_length(flat(), c).value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("kinked family lengths match the closed form and Simpson") {
  auto field = experiments::punctured_plane();
  for (int i = 2; i <= 100; ++i) {
    auto c = experiments::kinked_curve(field, i);
    const double L = lorentzian_length(field, c).value;
    CHECK(std::abs(L - oracle::kinked_length(i)) < 1e-9);
    const double s = oracle::polyline_length(
        to_oracle(c.points), [](oracle::P) { return 1.0; }, [](oracle::P) { return -1.0; });
    CHECK(std::abs(L - s) < 1e-9);
  }
}

TEST_CASE("null and limit curves have zero length") {
  auto m = flat();
  CHECK(lorentzian_length(m, make_polyline(m, {{0, 0}, {1, 1}})).value == doctest::Approx(0));
  auto field = experiments::punctured_plane();
  auto lim = make_polyline(field, {{1, 1}, {0, 0}}, true);
  CHECK(lim.causal_class == CurveClass::Null);
  CHECK(lorentzian_length(field, lim).value == doctest::Approx(0));
}

TEST_CASE("non-causal curves are rejected") {
  auto m = flat();
  auto c = make_polyline(m, {{0, 0}, {1, 0.5}});
  CHECK(c.causal_class == CurveClass::NonCausal);
  CHECK_THROWS_AS(lorentzian_length(m, c), CausalityError);
  CHECK_THROWS_AS(make_curve(m, {0, 0}, {{0, 0}, {0, 1}}), DomainError);
  auto p = presets::minkowski_punctured({-1, 1, -1, 1}, {0, 0}, 0.1);
  CHECK_THROWS_AS(make_polyline(p, {{0, 0.5}, {0, 0}}), ExcludedPointError);
}

TEST_CASE("curve classes") {
  auto m = flat();
  CHECK(make_polyline(m, {{0, 0}, {0, 1}}).causal_class == CurveClass::Timelike);
  CHECK(make_polyline(m, {{0, 0}, {1, 1}, {2, 2}}).causal_class == CurveClass::Null);
  CHECK(make_polyline(m, {{0, 0}, {1, 1}, {2, 0}}).causal_class == CurveClass::Alternating);
  CHECK(make_polyline(m, {{0, 1}, {0, 0}}).orientation == TimeDirection::Past);
}

TEST_CASE("Riemannian length") {
  auto m = flat();
  CHECK(riemannian_length(m, make_polyline(m, {{0, 0}, {3, 0}, {3, 4}})) == doctest::Approx(7));
  CHECK(riemannian_length(m, make_polyline(m, {{0, 0}, {3, 4}})) == doctest::Approx(5));
}

TEST_CASE("inverted h arc length") {
  auto field = experiments::inverted_plane();
  auto full = make_curve(field, {0, 1}, {{1, 1}, {0, 0}}, true);
  for (int k = 1; k <= 9; ++k) {
    const double t = 0.1 * k;
    const double s = riemannian_length(field, restrict_curve(full, 0, t));
    CHECK(std::abs(s - oracle::inverted_arclength(t)) < 1e-6);
  }
  CHECK(std::isinf(riemannian_length(field, full)));
  CHECK_THROWS_AS(h_arclength_reparam(field, full), DivergenceError);
  auto half = h_arclength_reparam(field, restrict_curve(full, 0, 0.5));
  CHECK(half.t_end() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("h arc-length reparametrisation") {
  auto m = flat();
  auto c = h_arclength_reparam(m, make_curve(m, {0, 1}, {{0, 0}, {0, 2}}));
  CHECK(c.params == std::vector<double>{0, 2});
  auto d = h_arclength_reparam(m, make_polyline(m, {{0, 0}, {0, 1}, {0.5, 1.5}}));
  CHECK(d.params[1] == doctest::Approx(1));
  CHECK(d.params[2] == doctest::Approx(1 + std::sqrt(0.5)));
  auto e = h_arclength_reparam(m, make_curve(m, {0, 5, 6}, {{0, 0}, {0, 1}, {0, 2}}));
  CHECK(e.params[1] == doctest::Approx(1));
  CHECK(e.params[2] == doctest::Approx(2));
}

TEST_CASE("domain maps") {
  auto lin = DomainMap::make(2, 4);
  CHECK(lin.kind() == DomainMap::Kind::Linear);
  CHECK(lin(1) == doctest::Approx(0.5));
  const double inf = std::numeric_limits<double>::infinity();
  auto at = DomainMap::make(1, inf);
  CHECK(at.kind() == DomainMap::Kind::Arctan);
  CHECK(at(0) == 0);
  CHECK(at.derivative(0) == doctest::Approx(1));
  CHECK(at(1e9) < 1.0);
  auto id = DomainMap::make(inf, inf);
  CHECK(id.kind() == DomainMap::Kind::Identity);
  CHECK(id(3.5) == 3.5);
  CHECK_THROWS_AS(DomainMap::make(1, 0), DomainError);
  CHECK_THROWS_AS(DomainMap::make(inf, 1), DomainError);

  std::vector<double> ends{1, 5, 4.1, 4.3, 4};
  auto fam = domain_map_family(ends, 4);
  auto sub = fam.subsequence(0.05);
  CHECK(sub == std::vector<std::size_t>{0, 2, 4});
}

TEST_CASE("time reparametrisation") {
  auto m = flat();
  TimeFunction f = [](Point p) { return p.y; };
  auto c = time_reparam(f, make_curve(m, {0, 5}, {{0, 1}, {0, 0}}), 0);
  CHECK(c.t_begin() == 0);
  CHECK(c.t_end() == doctest::Approx(1));
  auto field = experiments::punctured_plane();
  for (int i : {2, 7, 64}) CHECK(time_reparam(f, experiments::kinked_curve(field, i)).t_end() == doctest::Approx(2));
  auto lim = time_reparam(f, make_polyline(field, {{1, 1}, {0, 0}}, true));
  CHECK(lim.t_end() == doctest::Approx(1));
  CHECK(lim.open_end);
  CHECK_THROWS_AS(time_reparam(f, make_polyline(m, {{0, 0}, {1, 0}})), MonotonicityError);
}

TEST_CASE("finite limsup and extrapolation") {
  std::vector<double> v{5, 1, 2, 3, 2};
  CHECK(finite_limsup(v) == 3);
  std::vector<double> idx, val;
  for (int k = 4; k <= 256; k *= 2) {
    idx.push_back(k);
    val.push_back(1.0 + 3.0 / std::sqrt(static_cast<double>(k)));
  }
  CHECK(extrapolate_limit(idx, val) == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("property: length is invariant under monotone reparametrisation") {
  oracle::Rng rng(3);
  auto m = flat();
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = oracle::random_past_polyline(rng, {0, 2}, rng.integer(1, 6), 0.5, 0.95);
    std::vector<Point> knots;
    std::vector<double> params{0};
    for (auto p : pts) knots.push_back({p.x, p.y});
    for (std::size_t k = 1; k < knots.size(); ++k) params.push_back(params.back() + rng.uniform(0.01, 3));
    auto a = make_polyline(m, knots);
    auto b = make_curve(m, params, knots);
    const double La = lorentzian_length(m, a).value, Lb = lorentzian_length(m, b).value;
    CHECK(std::abs(La - Lb) < 1e-8);
    CHECK(std::abs(lorentzian_length(m, refine(b, 7)).value - La) < 1e-8);
  }
}

TEST_CASE("property: length is additive under restriction") {
  oracle::Rng rng(5);
  auto m = flat();
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = oracle::random_past_polyline(rng, {0, 2}, rng.integer(2, 6), 0.5, 0.9);
    std::vector<Point> knots;
    for (auto p : pts) knots.push_back({p.x, p.y});
    auto c = make_polyline(m, knots);
    const double t = rng.uniform(c.t_begin(), c.t_end());
    const double whole = lorentzian_length(m, c).value;
    const double parts = lorentzian_length(m, restrict_curve(c, c.t_begin(), t)).value +
                         lorentzian_length(m, restrict_curve(c, t, c.t_end())).value;
    CHECK(std::abs(whole - parts) < 1e-9);
  }
}

TEST_CASE("property: limits of causal knots are causal") {
  // Causal curves converging at the knots to a polyline: the limit classifies causal.
  oracle::Rng rng(9);
  auto m = flat();
  for (int trial = 0; trial < 50; ++trial) {
    auto pts = oracle::random_past_polyline(rng, {0, 2}, 4, 0.5, 0.8);
    std::vector<Point> limit;
    for (auto p : pts) limit.push_back({p.x, p.y});
    for (int i = 1; i <= 64; i *= 4) {
      std::vector<Point> approx = limit;
      for (std::size_t k = 1; k < approx.size(); ++k) approx[k].x += 0.01 / i * (k % 2 ? 1 : -1);
      CHECK(make_polyline(m, approx).causal_class != CurveClass::NonCausal);
    }
    CHECK(make_polyline(m, limit).causal_class != CurveClass::NonCausal);
  }
}
