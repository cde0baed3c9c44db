#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace causaltrust {

inline constexpr std::size_t kDefaultResolution = 1000;
inline constexpr double kDefaultSmoothing = 1e-9;

/// Piecewise-constant density on [0,1] sampled at the midpoints of M uniform
/// cells. Heights are nonnegative; unit mass is only guaranteed after
/// normalize().
class DensityGrid {
 public:
  /// Throws DomainError if fewer than two cells or any height is negative or
  /// not finite.
  explicit DensityGrid(std::vector<double> values);

  /// Uniform density with the given resolution.
  static DensityGrid uniform(std::size_t resolution);

  std::size_t resolution() const noexcept { return values_.size(); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(values_.size()); }
  double midpoint(std::size_t i) const noexcept {
    return (static_cast<double>(i) + 0.5) * cell_width();
  }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Riemann sum of the heights.
  double mass() const noexcept;

  /// First moment of the grid.
  double mean() const noexcept;

  friend bool operator==(const DensityGrid&, const DensityGrid&) = default;

 private:
  std::vector<double> values_;
};

DensityGrid normalize(const DensityGrid& g);

/// Raises every cell to at least `eps` and renormalizes.
DensityGrid smooth(const DensityGrid& g, double eps = kDefaultSmoothing);

/// Differential entropy in nats (midpoint rule). 0 ln 0 is taken as 0, and
/// the result may be negative.
double entropy(const DensityGrid& g);

/// KL(p || q) in nats. q is smoothed with `eps` before the division and cells
/// where p vanishes are skipped. Throws DomainError on mismatched resolution.
double kl(const DensityGrid& p, const DensityGrid& q, double eps = kDefaultSmoothing);

/// Maps a divergence onto [0,1): d -> 1 - exp(-d).
double squash_kl(double d);

/// (h - h_min) / (h_max - h_min), clamped to [0,1].
double normalize_entropy(double h, double h_min, double h_max);

/// Beta(a, b) density sampled at cell midpoints and renormalized.
DensityGrid beta_pdf_grid(double a, double b, std::size_t resolution = kDefaultResolution);

/// max_i |a_i - b_i|. Throws DomainError on mismatched resolution.
double sup_distance(const DensityGrid& a, const DensityGrid& b);

}  // namespace causaltrust
