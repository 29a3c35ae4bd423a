#include "lorlim/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace lorlim {
namespace {

constexpr double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                              0.9061798459386640};
constexpr double kWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                0.4786286704993665, 0.2369268850561891};

struct Piece {
  double a;
  double b;
  double coarse;  // rule on [a, b]
  double fine;    // rule on both halves
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

}  // namespace

double gauss_legendre5(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < 5; ++k) s += kWeights[k] * f(c + h * kNodes[k]);
  return s * h;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg) {
  QuadratureResult out;
  if (!(b > a)) return out;

  auto make_piece = [&](double lo, double hi, double coarse) {
    const double mid = 0.5 * (lo + hi);
    const double fine = gauss_legendre5(f, lo, mid) + gauss_legendre5(f, mid, hi);
    return Piece{lo, hi, coarse, fine, std::abs(fine - coarse)};
  };

  std::priority_queue<Piece> heap;
  heap.push(make_piece(a, b, gauss_legendre5(f, a, b)));
  double total = heap.top().fine;
  double total_error = heap.top().error;
  std::size_t count = 1;

  while (true) {
    if (!std::isfinite(total) || std::abs(total) > cfg.divergence_value || count > cfg.max_subintervals) {
      out.value = std::numeric_limits<double>::infinity();
      out.error_estimate = std::numeric_limits<double>::infinity();
      out.subintervals = count;
      out.diverged = true;
      return out;
    }
    if (total_error <= cfg.rel_tol * (1.0 + std::abs(total))) break;
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval can no longer be split in floating point: accept what we have.
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const double left_coarse = gauss_legendre5(f, worst.a, mid);
    const double right_coarse = gauss_legendre5(f, mid, worst.b);
    Piece left = make_piece(worst.a, mid, left_coarse);
    Piece right = make_piece(mid, worst.b, right_coarse);
    total += left.fine + right.fine - worst.fine;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum to shed drift from the running updates.
  double sum = 0.0, err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().fine;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error_estimate = err;
  out.subintervals = count;
  return out;
}

}  // namespace lorlim
