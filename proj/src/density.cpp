#include "causaltrust/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "causaltrust/error.hpp"

namespace causaltrust {

namespace {

void require_same_resolution(const DensityGrid& a, const DensityGrid& b) {
  if (a.resolution() != b.resolution()) {
    throw DomainError("grid resolution mismatch: " + std::to_string(a.resolution()) + " vs " +
                      std::to_string(b.resolution()));
  }
}

DensityGrid scaled(std::span<const double> values, double factor) {
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v *= factor;
  return DensityGrid(std::move(out));
}

}  // namespace

DensityGrid::DensityGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("density grid needs at least 2 cells");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("density heights must be finite and >= 0");
  }
}

DensityGrid DensityGrid::uniform(std::size_t resolution) {
  return DensityGrid(std::vector<double>(resolution, 1.0));
}

double DensityGrid::mass() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * cell_width();
}

double DensityGrid::mean() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) sum += midpoint(i) * values_[i];
  return sum * cell_width();
}

DensityGrid normalize(const DensityGrid& g) {
  const double m = g.mass();
  if (!(m > 0.0)) throw DomainError("degenerate density");
  return scaled(g.values(), 1.0 / m);
}

DensityGrid smooth(const DensityGrid& g, double eps) {
  if (!(eps > 0.0)) throw DomainError("smoothing quantity must be positive");
  const DensityGrid unit = normalize(g);
  std::vector<double> v(unit.values().begin(), unit.values().end());
  bool touched = false;
  for (double& x : v) {
    if (x < eps) {
      x = eps;
      touched = true;
    }
  }
  if (!touched) return unit;
  DensityGrid out = normalize(DensityGrid(std::move(v)));
  // Renormalizing can pull floored cells a hair below eps; the mass error of
  // restoring them is O(eps^2).
  std::vector<double> floored(out.values().begin(), out.values().end());
  for (double& x : floored) x = std::max(x, eps);
  return DensityGrid(std::move(floored));
}

double entropy(const DensityGrid& g) {
  double sum = 0.0;
  for (double v : g.values()) {
    if (v > 0.0) sum -= v * std::log(v);
  }
  return sum * g.cell_width();
}

double kl(const DensityGrid& p, const DensityGrid& q, double eps) {
  require_same_resolution(p, q);
  const DensityGrid qs = smooth(q, eps);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.resolution(); ++i) {
    const double pi = p[i];
    if (pi > 0.0) sum += pi * std::log(pi / qs[i]);
  }
  return sum * p.cell_width();
}

double squash_kl(double d) {
  if (!(d >= 0.0)) throw DomainError("divergence must be nonnegative");
  return -std::expm1(-d);
}

double normalize_entropy(double h, double h_min, double h_max) {
  if (!(h_max > h_min)) throw DomainError("degenerate lexicon entropy range");
  return std::clamp((h - h_min) / (h_max - h_min), 0.0, 1.0);
}

DensityGrid beta_pdf_grid(double a, double b, std::size_t resolution) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta shape parameters must be positive");
  if (resolution < 2) throw DomainError("density grid needs at least 2 cells");
  // Work in log space and subtract the peak so large shapes do not overflow.
  std::vector<double> logv(resolution);
  const double dx = 1.0 / static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    logv[i] = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
  }
  const double peak = *std::max_element(logv.begin(), logv.end());
  for (double& v : logv) v = std::exp(v - peak);
  return normalize(DensityGrid(std::move(logv)));
}

double sup_distance(const DensityGrid& a, const DensityGrid& b) {
  require_same_resolution(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.resolution(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace causaltrust
