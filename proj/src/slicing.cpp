#include "ebsw/slicing.hpp"

#include <cmath>
#include <string>

#include "ebsw/error.hpp"

namespace ebsw {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {
double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }
}  // namespace

Direction Direction::normalized(std::vector<double> v) {
  if (v.empty()) throw ArgumentError("direction must have dimension >= 1");
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) throw ArgumentError("cannot normalize a zero or non-finite vector");
  for (double& x : v) x /= len;
  return Direction(std::move(v));
}

Direction Direction::checked_unit(std::vector<double> v, double tol) {
  if (v.empty()) throw ArgumentError("direction must have dimension >= 1");
  const double len = norm(v);
  if (!(std::abs(len - 1.0) <= tol)) {
    throw ArgumentError("expected a unit vector, got norm " + std::to_string(len));
  }
  return normalized(std::move(v));
}

Direction Direction::operator-() const {
  auto v = components_;
  for (double& x : v) x = -x;
  return Direction(std::move(v));
}

Direction sample_uniform_direction(std::size_t d, Rng& rng) {
  if (d == 0) throw ArgumentError("dimension must be >= 1");
  std::normal_distribution<double> normal;
  std::vector<double> v(d);
  // A zero draw has probability zero but is cheap to rule out.
  double len2 = 0.0;
  do {
    len2 = 0.0;
    for (double& x : v) {
      x = normal(rng);
      len2 += x * x;
    }
  } while (!(len2 > 0.0));
  return Direction::normalized(std::move(v));
}

std::vector<Direction> sample_uniform_sphere(std::size_t d, std::size_t count, Rng& rng) {
  if (d == 0) throw ArgumentError("dimension must be >= 1");
  if (count == 0) throw ArgumentError("number of directions must be >= 1");
  std::vector<Direction> out;
  out.reserve(count);
  for (std::size_t l = 0; l < count; ++l) out.push_back(sample_uniform_direction(d, rng));
  return out;
}

namespace {

double sample_beta(double a, double b, Rng& rng) {
  const double x = std::gamma_distribution<double>(a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(b, 1.0)(rng);
  return x / (x + y);
}

// Cosine w = <sample, location> of a vMF draw on S^{d-1}, d >= 2.
double sample_vmf_cosine(std::size_t d, double kappa, Rng& rng) {
  const double m = static_cast<double>(d - 1);
  // b = (-2k + sqrt(4k^2 + m^2)) / m, rewritten to avoid cancellation for large k.
  const double b = m / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + m * m));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + m * std::log1p(-x0 * x0);
  while (true) {
    const double z = sample_beta(0.5 * m, 0.5 * m, rng);
    const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = uniform01(rng);
    if (kappa * w + m * std::log1p(-x0 * w) - c >= std::log(u)) return w;
  }
}

}  // namespace

Direction sample_vmf(const VmfParams& params, Rng& rng) {
  const auto& mu = params.location;
  const std::size_t d = mu.dim();
  if (d == 0) throw ArgumentError("vMF location must have dimension >= 1");
  if (std::abs(norm(mu.components()) - 1.0) > 1e-9) throw ArgumentError("vMF location must be a unit vector");
  if (!(params.kappa >= 0.0) || !std::isfinite(params.kappa)) {
    throw ArgumentError("vMF concentration must be finite and >= 0");
  }
  if (params.kappa == 0.0) return sample_uniform_direction(d, rng);

  if (d == 1) {
    // S^0 = {+mu, -mu} with P(+mu) = e^k / (e^k + e^-k).
    const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * params.kappa));
    return uniform01(rng) < p_plus ? mu : -mu;
  }

  const double w = sample_vmf_cosine(d, params.kappa, rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - w * w));

  // Sample about e1: (w, s * v) with v uniform on S^{d-2}.
  std::vector<double> x(d);
  x[0] = w;
  if (d == 2) {
    x[1] = uniform01(rng) < 0.5 ? s : -s;
  } else {
    const auto v = sample_uniform_direction(d - 1, rng);
    for (std::size_t i = 1; i < d; ++i) x[i] = s * v[i - 1];
  }

  // Householder reflection H = I - 2 u u^T / |u|^2 with u = e1 - mu maps e1 to mu.
  std::vector<double> u(mu.components().begin(), mu.components().end());
  for (double& ui : u) ui = -ui;
  u[0] += 1.0;
  const double uu = dot(u, u);
  if (uu > 1e-300) {
    const double scale = 2.0 * dot(u, x) / uu;
    for (std::size_t i = 0; i < d; ++i) x[i] -= scale * u[i];
  }
  return Direction::normalized(std::move(x));
}

void project_into(const EmpiricalMeasure& m, std::span<const double> theta, std::span<double> out) {
  const std::size_t d = m.dim();
  const auto data = m.points().data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double* x = data.data() + i * d;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += theta[j] * x[j];
    out[i] = s;
  }
}

std::vector<double> project(const EmpiricalMeasure& m, const Direction& theta) {
  if (theta.dim() != m.dim()) {
    throw ArgumentError("direction has dimension " + std::to_string(theta.dim()) + " but measure has " +
                        std::to_string(m.dim()));
  }
  std::vector<double> out(m.size());
  project_into(m, theta.components(), out);
  return out;
}

}  // namespace ebsw
