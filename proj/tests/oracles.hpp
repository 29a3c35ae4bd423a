// Independent reference computations for the tests. Nothing here calls into
// the library, so a bug there cannot hide behind a matching bug here.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

struct P {
  double x, y;
};

// Minkowski dx^2 - dy^2, time axis y.
inline double minkowski_interval(P a, P b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  return dx * dx - dy * dy;
}
inline bool causal(P a, P b, double tol = 1e-12) { return minkowski_interval(a, b) <= tol; }
inline bool future_causal(P a, P b, double tol = 1e-12) { return causal(a, b, tol) && b.y > a.y; }

// Lorentzian distance in Minkowski: sqrt(t^2 - x^2) on the causal future, -inf otherwise.
inline double minkowski_d_L(P a, P b) {
  if (!future_causal(a, b) && !(a.x == b.x && a.y == b.y)) return -std::numeric_limits<double>::infinity();
  return std::sqrt(std::max(0.0, -minkowski_interval(a, b)));
}

// Kinked curve (1,1) -> (1/i,0) -> (0,-1).
inline double kinked_length(int i) {
  const double k = 1.0 / i;
  return std::sqrt(1.0 - k * k) + std::sqrt(1.0 - (1.0 - k) * (1.0 - k));
}

// h arc length of t -> (1,1) - t(1,1) for h = (dx^2 + dy^2) / (x^2 + y^2)^2.
inline double inverted_arclength(double t) { return t / (std::sqrt(2.0) * (1.0 - t)); }

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Lorentzian length of a polyline under a position dependent g = diag(gxx, gyy)
// with gyy < 0, by Simpson on every segment.
inline double polyline_length(const std::vector<P>& pts, const std::function<double(P)>& gxx,
                              const std::function<double(P)>& gyy) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const P a = pts[k], b = pts[k + 1];
    const double vx = b.x - a.x, vy = b.y - a.y;
    total += simpson(
        [&](double s) {
          const P p{a.x + s * vx, a.y + s * vy};
          return std::sqrt(std::max(0.0, -(gxx(p) * vx * vx + gyy(p) * vy * vy)));
        },
        0.0, 1.0);
  }
  return total;
}

// Brute force null distance over zigzags with one switch: x -> z -> y where
// both pieces are causal (either orientation) in the continuum cone, z on a
// grid of the box. tau is any time function.
inline double two_piece_zigzag(P x, P y, const std::function<double(P)>& tau, double x_lo, double x_hi,
                               double y_lo, double y_hi, double step) {
  double best = std::numeric_limits<double>::infinity();
  if (causal(x, y)) best = std::abs(tau(y) - tau(x));
  const int nx = static_cast<int>(std::lround((x_hi - x_lo) / step));
  const int ny = static_cast<int>(std::lround((y_hi - y_lo) / step));
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const P z{x_lo + i * step, y_lo + j * step};
      if (!causal(x, z) || !causal(z, y)) continue;
      best = std::min(best, std::abs(tau(z) - tau(x)) + std::abs(tau(y) - tau(z)));
    }
  return best;
}

// splitmix64, used by the hand-rolled property generators.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t s_;
};

// Random past-directed causal polyline: every step drops y by dy and moves x
// by at most |dy| * slope (slope <= 1 keeps steps causal).
inline std::vector<P> random_past_polyline(Rng& rng, P start, int steps, double dy_max, double slope) {
  std::vector<P> pts{start};
  for (int k = 0; k < steps; ++k) {
    const double dy = rng.uniform(0.2, 1.0) * dy_max;
    const double dx = rng.uniform(-slope, slope) * dy;
    pts.push_back({pts.back().x + dx, pts.back().y - dy});
  }
  return pts;
}

}  // namespace oracle
