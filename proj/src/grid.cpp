#include "gwdk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk {
namespace {

constexpr double kSymmetryTolerance = 1e-12;

bool closed_under_negation(const std::vector<double>& w) {
  if (w.empty()) return false;
  const double scale = std::max(std::abs(w.front()), std::abs(w.back()));
  for (std::size_t i = 0, j = w.size() - 1; i <= j; ++i, --j) {
    if (std::abs(w[i] + w[j]) > kSymmetryTolerance * scale) return false;
    if (j == 0) break;
  }
  return true;
}

std::vector<double> mirrored(const std::vector<double>& positive) {
  std::vector<double> all;
  all.reserve(2 * positive.size());
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) all.push_back(-*it);
  all.insert(all.end(), positive.begin(), positive.end());
  return all;
}

}  // namespace

FrequencyGrid FrequencyGrid::from_points(std::vector<double> omegas) {
  require(!omegas.empty(), "frequency grid is empty");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    require(std::isfinite(omegas[i]), "frequency grid contains NaN or infinity");
    if (i > 0) {
      require(omegas[i] > omegas[i - 1], "frequency grid is not strictly increasing");
    }
  }
  const bool symmetric = closed_under_negation(omegas);
  if (symmetric) {
    // Snap mirror pairs to exact negatives so S(-w) lookups are exact.
    for (std::size_t i = 0, j = omegas.size() - 1; i < j; ++i, --j) {
      const double m = 0.5 * (omegas[j] - omegas[i]);
      omegas[i] = -m;
      omegas[j] = m;
    }
    if (omegas.size() % 2 == 1) omegas[omegas.size() / 2] = 0.0;
  }
  return FrequencyGrid(std::make_shared<const std::vector<double>>(std::move(omegas)),
                       symmetric);
}

FrequencyGrid FrequencyGrid::symmetric_uniform(double omega_max, std::size_t n_per_side) {
  require(omega_max > 0.0 && std::isfinite(omega_max), "omega_max must be positive");
  require(n_per_side >= 1, "need at least one point per side");
  const double step = omega_max / static_cast<double>(n_per_side);
  std::vector<double> positive(n_per_side);
  for (std::size_t i = 0; i < n_per_side; ++i) {
    positive[i] = (static_cast<double>(i) + 0.5) * step;
  }
  return from_points(mirrored(positive));
}

FrequencyGrid FrequencyGrid::symmetric_band(double center, double half_width,
                                            std::size_t n_per_side) {
  require(half_width > 0.0 && center > half_width,
          "band must satisfy 0 < half_width < center");
  require(n_per_side >= 2, "need at least two points per side");
  std::vector<double> positive(n_per_side);
  const double step = 2.0 * half_width / static_cast<double>(n_per_side - 1);
  const double mid = 0.5 * static_cast<double>(n_per_side - 1);
  for (std::size_t i = 0; i < n_per_side; ++i) {
    // Offsets measured from the middle so an odd count hits `center` exactly.
    positive[i] = center + (static_cast<double>(i) - mid) * step;
  }
  return from_points(mirrored(positive));
}

FrequencyGrid FrequencyGrid::symmetric_lorentzian(double center, double half_width,
                                                  std::size_t n_per_side) {
  require(half_width > 0.0 && center > 0.0, "center and half_width must be positive");
  require(n_per_side >= 3, "need at least three points per side");
  // sinh spacing: dense inside the line, geometric in the tails, so the
  // trapezoid rule stays accurate even when half_width << center.
  const double u_max = std::asinh(0.999 * center / half_width);
  std::vector<double> positive(n_per_side);
  for (std::size_t i = 0; i < n_per_side; ++i) {
    const double u = -u_max + 2.0 * u_max * static_cast<double>(i) /
                                  static_cast<double>(n_per_side - 1);
    positive[i] = center + half_width * std::sinh(u);
  }
  // Guard against rounding collapsing neighbours next to a large center.
  std::vector<double> unique;
  unique.reserve(positive.size());
  for (double w : positive) {
    if (unique.empty() || w > unique.back()) unique.push_back(w);
  }
  return from_points(mirrored(unique));
}

std::optional<std::size_t> FrequencyGrid::find(double omega, double rel_tol) const {
  const auto& w = *omegas_;
  auto it = std::lower_bound(w.begin(), w.end(), omega);
  const double tol = rel_tol * std::max(std::abs(omega), 1.0);
  for (auto cand : {it, it == w.begin() ? it : std::prev(it)}) {
    if (cand != w.end() && std::abs(*cand - omega) <= tol) {
      return static_cast<std::size_t>(cand - w.begin());
    }
  }
  return std::nullopt;
}

std::string_view to_string(SpectrumKind kind) {
  return kind == SpectrumKind::single_sided_raw ? "single-sided-raw"
                                                : "double-sided-symmetrized";
}

Spectrum::Spectrum(FrequencyGrid grid, std::vector<double> values, SpectrumKind kind,
                   std::string units)
    : grid_(std::move(grid)), values_(std::move(values)), kind_(kind),
      units_(std::move(units)) {
  require(values_.size() == grid_.size(), "spectrum size does not match its grid");
  for (double v : values_) {
    require(std::isfinite(v) && v >= 0.0, "spectrum values must be finite and >= 0");
  }
  if (kind_ == SpectrumKind::double_sided_symmetrized) {
    require(grid_.symmetric(), "symmetrized spectrum needs a grid closed under negation");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double a = values_[i];
      const double b = values_[grid_.mirror_index(i)];
      require(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)),
              "symmetrized spectrum is not even in frequency");
    }
  }
}

Spectrum Spectrum::zeros(FrequencyGrid grid, SpectrumKind kind, std::string units) {
  std::vector<double> values(grid.size(), 0.0);
  return Spectrum(std::move(grid), std::move(values), kind, std::move(units));
}

Spectrum Spectrum::scaled(double factor) const {
  require(factor >= 0.0, "spectra can only be scaled by non-negative factors");
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Spectrum(grid_, std::move(out), kind_, units_);
}

Spectrum Spectrum::plus(const Spectrum& other) const {
  require(grid_ == other.grid_, "spectra live on different grids");
  require(kind_ == other.kind_ && units_ == other.units_,
          "spectra differ in kind or units");
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
  return Spectrum(grid_, std::move(out), kind_, units_);
}

Spectrum symmetrize(const Spectrum& spectrum) {
  const auto& grid = spectrum.grid();
  if (!grid.symmetric()) throw PreconditionError("grid not closed under negation");
  std::vector<double> out(spectrum.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.5 * (spectrum[i] + spectrum[grid.mirror_index(i)]);
  }
  return Spectrum(grid, std::move(out), SpectrumKind::double_sided_symmetrized,
                  spectrum.units());
}

double integrate_spectrum(const Spectrum& spectrum, Execution exec) {
  require(spectrum.size() >= 2, "integration needs at least two grid points");
  return kernels::trapezoid(exec, spectrum.grid().omegas(), spectrum.values()) /
         units::two_pi;
}

void require_symmetrized(const Spectrum& spectrum, std::string_view units,
                         std::string_view what) {
  require(spectrum.kind() == SpectrumKind::double_sided_symmetrized,
          std::string(what) + " must be a symmetrized spectrum");
  require(spectrum.units() == units, std::string(what) + " must carry units '" +
                                         std::string(units) + "', got '" +
                                         spectrum.units() + "'");
}

}  // namespace gwdk
