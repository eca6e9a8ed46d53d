#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwdk/kernels.hpp"

namespace gwdk {

/// Strictly increasing set of angular frequencies (rad/s). Copies share the
/// underlying storage; a grid is immutable once built.
class FrequencyGrid {
 public:
  /// Validates ordering and finiteness and detects closure under negation.
  static FrequencyGrid from_points(std::vector<double> omegas);

  /// Uniform grid of 2*n_per_side points (i + 1/2) * omega_max / n_per_side,
  /// mirrored about zero. Zero itself is never a node.
  static FrequencyGrid symmetric_uniform(double omega_max, std::size_t n_per_side);

  /// Dense band center +/- half_width on the positive axis plus its mirror.
  /// An odd n_per_side puts a node exactly at +/-center.
  static FrequencyGrid symmetric_band(double center, double half_width,
                                      std::size_t n_per_side);

  /// Nodes center + half_width * sinh(u) with u uniform, which concentrates
  /// points inside a Lorentzian of half-width `half_width` and spaces the
  /// tails geometrically. An odd n_per_side puts a node at +/-center.
  /// The positive side stays within (0, 2 center); the grid is mirrored.
  static FrequencyGrid symmetric_lorentzian(double center, double half_width,
                                            std::size_t n_per_side);

  std::span<const double> omegas() const { return *omegas_; }
  std::size_t size() const { return omegas_->size(); }
  double operator[](std::size_t i) const { return (*omegas_)[i]; }
  bool symmetric() const { return symmetric_; }

  /// Index of -omega_i; only meaningful on symmetric grids.
  std::size_t mirror_index(std::size_t i) const { return size() - 1 - i; }

  /// Index of the node equal to omega within a relative tolerance, if any.
  std::optional<std::size_t> find(double omega, double rel_tol = 1e-12) const;

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.omegas_ == b.omegas_ || *a.omegas_ == *b.omegas_;
  }

 private:
  FrequencyGrid(std::shared_ptr<const std::vector<double>> omegas, bool symmetric)
      : omegas_(std::move(omegas)), symmetric_(symmetric) {}

  std::shared_ptr<const std::vector<double>> omegas_;
  bool symmetric_ = false;
};

enum class SpectrumKind { single_sided_raw, double_sided_symmetrized };

std::string_view to_string(SpectrumKind kind);

/// Non-negative real spectral density sampled on a FrequencyGrid.
class Spectrum {
 public:
  Spectrum(FrequencyGrid grid, std::vector<double> values, SpectrumKind kind,
           std::string units);

  static Spectrum zeros(FrequencyGrid grid, SpectrumKind kind, std::string units);

  const FrequencyGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  SpectrumKind kind() const { return kind_; }
  const std::string& units() const { return units_; }

  Spectrum scaled(double factor) const;
  /// Pointwise sum; grids, kinds and units must agree.
  Spectrum plus(const Spectrum& other) const;

 private:
  FrequencyGrid grid_;
  std::vector<double> values_;
  SpectrumKind kind_;
  std::string units_;
};

/// Complex function sampled on a grid (mean strain, mean detector output).
struct FrequencySeries {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;
};

/// (S(w) + S(-w)) / 2 on a grid closed under negation.
Spectrum symmetrize(const Spectrum& spectrum);

/// Trapezoid estimate of the integral of S(w) dw / 2 pi over the grid.
double integrate_spectrum(const Spectrum& spectrum,
                          Execution exec = Execution::parallel);

/// Throws unless the spectrum is a symmetrized density in `units`.
void require_symmetrized(const Spectrum& spectrum, std::string_view units,
                         std::string_view what);

}  // namespace gwdk
