#include "ebsw/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "ebsw/error.hpp"

namespace ebsw {

double pow_abs(double t, double p) {
  if (p == 2.0) return t * t;
  const double a = std::abs(t);
  if (p == 1.0) return a;
  return std::pow(a, p);
}

namespace {

// p * |t|^{p-1} * sign(t)
double pow_abs_derivative(double t, double p) {
  if (t == 0.0) return 0.0;
  if (p == 2.0) return 2.0 * t;
  const double s = t > 0.0 ? 1.0 : -1.0;
  if (p == 1.0) return s;
  return p * std::pow(std::abs(t), p - 1.0) * s;
}

void validate(std::span<const double> xs, std::span<const double> ys, double p) {
  if (xs.empty() || ys.empty()) throw ArgumentError("1D Wasserstein needs nonempty inputs");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("p must be finite and >= 1");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(xs.begin(), xs.end(), finite) || !std::all_of(ys.begin(), ys.end(), finite)) {
    throw ArgumentError("1D Wasserstein inputs must be finite");
  }
}

// Walks the union of quantile breakpoints i/n and j/m, calling
// visit(i, j, segment_length) for every segment of positive length.
template <class Visit>
void quantile_walk(std::size_t n, std::size_t m, Visit&& visit) {
  std::size_t i = 0;
  std::size_t j = 0;
  double prev = 0.0;
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  while (i < n && j < m) {
    // Compare (i+1)/n with (j+1)/m exactly in integers.
    const std::size_t lhs = (i + 1) * m;
    const std::size_t rhs = (j + 1) * n;
    const double next = lhs <= rhs ? static_cast<double>(i + 1) / dn : static_cast<double>(j + 1) / dm;
    visit(i, j, next - prev);
    prev = next;
    if (lhs <= rhs) ++i;
    if (rhs <= lhs) ++j;
  }
}

}  // namespace

double wasserstein_1d_pp_sorted(std::span<const double> xs, std::span<const double> ys, double p) {
  const std::size_t n = xs.size();
  const std::size_t m = ys.size();
  double acc = 0.0;
  if (n == m) {
    if (p == 2.0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double t = xs[i] - ys[i];
        acc += t * t;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) acc += pow_abs(xs[i] - ys[i], p);
    }
    return acc / static_cast<double>(n);
  }
  quantile_walk(n, m, [&](std::size_t i, std::size_t j, double w) { acc += w * pow_abs(xs[i] - ys[j], p); });
  return acc;
}

double wasserstein_1d_pp(std::span<const double> xs, std::span<const double> ys, double p) {
  validate(xs, ys, p);
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return wasserstein_1d_pp_sorted(a, b, p);
}

double wasserstein_1d(std::span<const double> xs, std::span<const double> ys, double p) {
  const double pp = wasserstein_1d_pp(xs, ys, p);
  if (p == 1.0) return pp;
  if (p == 2.0) return std::sqrt(pp);
  return std::pow(pp, 1.0 / p);
}

std::vector<std::size_t> stable_argsort(std::span<const double> values) {
  // Sorting (value, index) pairs orders ties by index, which is the stable order.
  std::vector<std::pair<double, std::size_t>> keyed(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) keyed[i] = {values[i], i};
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> idx(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = keyed[i].second;
  return idx;
}

double wasserstein_1d_pp_with_derivative(std::span<const double> xs, std::span<const double> ys, double p,
                                         std::span<double> dxs) {
  validate(xs, ys, p);
  const std::size_t n = xs.size();
  const std::size_t m = ys.size();
  const auto ix = stable_argsort(xs);
  const auto iy = stable_argsort(ys);
  std::fill(dxs.begin(), dxs.end(), 0.0);
  double acc = 0.0;
  if (n == m) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
      const double t = xs[ix[r]] - ys[iy[r]];
      acc += pow_abs(t, p);
      dxs[ix[r]] = inv_n * pow_abs_derivative(t, p);
    }
    return acc / static_cast<double>(n);
  }
  quantile_walk(n, m, [&](std::size_t i, std::size_t j, double w) {
    const double t = xs[ix[i]] - ys[iy[j]];
    acc += w * pow_abs(t, p);
    dxs[ix[i]] += w * pow_abs_derivative(t, p);
  });
  return acc;
}

std::vector<double> wasserstein_1d_pp_derivative(std::span<const double> xs, std::span<const double> ys,
                                                 double p) {
  std::vector<double> grad(xs.size());
  wasserstein_1d_pp_with_derivative(xs, ys, p, grad);
  return grad;
}

}  // namespace ebsw
