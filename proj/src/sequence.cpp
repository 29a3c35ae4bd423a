#include "lorlim/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lorlim {

double finite_limsup(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const std::size_t start = values.size() / 2;
  return *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());
}

namespace {

std::size_t nearest_index(std::span<const double> k, double target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < k.size(); ++i)
    if (std::abs(k[i] - target) < std::abs(k[best] - target)) best = i;
  return best;
}

double detect_order(std::span<const double> k, std::span<const double> v) {
  const std::size_t i3 = k.size() - 1;
  const std::size_t i2 = nearest_index(k, k[i3] / 2);
  const std::size_t i1 = nearest_index(k, k[i3] / 4);
  if (!(i1 < i2 && i2 < i3)) return 1.0;
  const double d12 = v[i1] - v[i2];
  const double d23 = v[i2] - v[i3];
  if (d23 == 0.0 || d12 == 0.0 || (d12 > 0) != (d23 > 0)) return 1.0;
  const double observed = d12 / d23;
  auto model = [&](double p) {
    const double a = std::pow(k[i1], -p), b = std::pow(k[i2], -p), c = std::pow(k[i3], -p);
    return (a - b) / (b - c) - observed;
  };
  double lo = 0.05, hi = 6.0;
  double flo = model(lo), fhi = model(hi);
  if (!(flo * fhi < 0)) return 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = model(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double extrapolate_limit(std::span<const double> indices, std::span<const double> values) {
  const std::size_t n = std::min(indices.size(), values.size());
  if (n == 0) return 0.0;
  const double last = values[n - 1];
  if (n == 1) return last;
  indices = indices.first(n);
  values = values.first(n);

  const std::size_t tail_start = n / 2;
  double spread = 0.0;
  for (std::size_t i = tail_start; i < n; ++i) spread = std::max(spread, std::abs(values[i] - last));
  if (spread <= 1e-14 * (1.0 + std::abs(last))) return last;

  const double p = std::max(0.5, std::round(2.0 * detect_order(indices, values)) / 2.0);

  // Up to six evenly spaced points from the half of the index range ending at the last term.
  std::vector<std::size_t> pick;
  std::size_t first = nearest_index(indices, indices[n - 1] / 2);
  if (first >= n - 1) first = n - 2;
  const std::size_t available = n - first;
  const std::size_t m = std::min<std::size_t>(6, available);
  for (std::size_t q = 0; q < m; ++q) {
    const std::size_t idx = first + (m == 1 ? 0 : q * (available - 1) / (m - 1));
    if (pick.empty() || pick.back() != idx) pick.push_back(idx);
  }

  std::vector<double> h, table;
  for (auto idx : pick) {
    h.push_back(std::pow(indices[idx], -p));
    table.push_back(values[idx]);
  }
  const std::size_t len = table.size();
  for (std::size_t level = 1; level < len; ++level)
    for (std::size_t j = 0; j + level < len; ++j)
      table[j] = (h[j] * table[j + 1] - h[j + level] * table[j]) / (h[j] - h[j + level]);
  return std::isfinite(table[0]) ? table[0] : last;
}

}  // namespace lorlim
