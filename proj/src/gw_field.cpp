#include "gwdk/gw_field.hpp"

#include <algorithm>
#include <cmath>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk {

Envelope::Envelope(std::vector<double> omegas, std::vector<std::complex<double>> values)
    : omegas_(std::move(omegas)), values_(std::move(values)) {
  require(omegas_.size() >= 2, "an envelope needs at least two nodes");
  require(omegas_.size() == values_.size(), "envelope nodes and values differ in length");
  for (std::size_t i = 0; i < omegas_.size(); ++i) {
    require(std::isfinite(omegas_[i]) && std::isfinite(values_[i].real()) &&
                std::isfinite(values_[i].imag()),
            "envelope contains NaN or infinity");
    if (i > 0) require(omegas_[i] > omegas_[i - 1], "envelope nodes must increase");
  }
}

Envelope Envelope::monochromatic(double omega, double bin_width,
                                 std::complex<double> weight) {
  require(bin_width > 0.0, "bin width must be positive");
  return Envelope({omega - bin_width, omega, omega + bin_width},
                  {0.0, weight / std::sqrt(bin_width), 0.0});
}

Envelope Envelope::gaussian(double omega, double sigma, double power, std::size_t nodes) {
  require(sigma > 0.0 && power >= 0.0, "gaussian envelope needs sigma > 0, power >= 0");
  require(nodes >= 3, "gaussian envelope needs at least three nodes");
  std::vector<double> w(nodes);
  std::vector<std::complex<double>> v(nodes);
  const double span = 6.0 * sigma;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = -span + 2.0 * span * static_cast<double>(i) /
                                 static_cast<double>(nodes - 1);
    w[i] = omega + x;
    v[i] = std::exp(-0.25 * x * x / (sigma * sigma));
  }
  Envelope e(std::move(w), std::move(v));
  return power == 0.0 ? e.scaled(0.0) : e.normalized().scaled(std::sqrt(power));
}

std::complex<double> Envelope::operator()(double omega) const {
  if (omega < omegas_.front() || omega > omegas_.back()) return {0.0, 0.0};
  auto it = std::upper_bound(omegas_.begin(), omegas_.end(), omega);
  if (it == omegas_.end()) return values_.back();
  const std::size_t hi = static_cast<std::size_t>(it - omegas_.begin());
  const std::size_t lo = hi - 1;
  const double t = (omega - omegas_[lo]) / (omegas_[hi] - omegas_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

double Envelope::power() const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < omegas_.size(); ++i) {
    sum += 0.5 * (std::norm(values_[i]) + std::norm(values_[i + 1])) *
           (omegas_[i + 1] - omegas_[i]);
  }
  return sum;
}

Envelope Envelope::normalized() const {
  const double p = power();
  require(p > 0.0, "cannot normalize an all-zero envelope");
  return scaled(1.0 / std::sqrt(p));
}

Envelope Envelope::scaled(std::complex<double> factor) const {
  std::vector<std::complex<double>> v(values_);
  for (auto& x : v) x *= factor;
  return Envelope(omegas_, std::move(v));
}

CoherentState::CoherentState(double carrier, Envelope amplitude, double area)
    : carrier_(carrier), amplitude_(std::move(amplitude)), area_(area) {
  require(carrier_ > 0.0, "coherent state carrier must be positive");
  require(area_ > 0.0, "quantization area must be positive");
}

FockState::FockState(std::uint64_t n, double carrier, Envelope envelope, double area)
    : n_(n), carrier_(carrier), envelope_(std::move(envelope)), area_(area) {
  require(carrier_ > 0.0, "Fock state carrier must be positive");
  require(area_ > 0.0, "quantization area must be positive");
  require(std::abs(envelope_.power() - 1.0) <= kNormTolerance,
          "Fock envelope must satisfy integral |xi|^2 dOmega = 1");
}

double strain_normalization(double carrier, double area) {
  require(carrier > 0.0 && area > 0.0, "strain normalization needs Omega0 > 0 and A > 0");
  const auto& k = kCodata;
  return std::sqrt(16.0 * k.hbar * k.G / (k.c * k.c * k.c * units::pi * carrier * area));
}

FrequencySeries mean_strain(const GwState& state, const FrequencyGrid& grid) {
  FrequencySeries out{grid, std::vector<std::complex<double>>(grid.size())};
  if (const auto* coherent = std::get_if<CoherentState>(&state)) {
    const double prefactor =
        4.0 * units::pi * strain_normalization(coherent->carrier(), coherent->area());
    const auto& a = coherent->amplitude();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = grid[i];
      out.values[i] = prefactor * (a(w) + std::conj(a(-w)));
    }
  }
  return out;
}

namespace {

// S_hh(w) = pi^3 h^2 (|e(w)|^2 + |e(-w)|^2) * weight integrates (times the
// narrowband flux prefactor) to weight * integral |e|^2 dOmega.
Spectrum psd_from_envelope(const Envelope& e, double weight, double carrier, double area,
                           const FrequencyGrid& grid) {
  const double h = strain_normalization(carrier, area);
  const double scale = weight * units::pi * units::pi * units::pi * h * h;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = scale * (std::norm(e(grid[i])) + std::norm(e(-grid[i])));
  }
  return Spectrum(grid, std::move(values), SpectrumKind::double_sided_symmetrized,
                  units::kStrainPsd);
}

double flux_prefactor(double carrier, double area) {
  const auto& k = kCodata;
  return k.c * k.c * k.c * carrier * area / (16.0 * units::pi * k.hbar * k.G);
}

}  // namespace

Spectrum strain_psd(const GwState& state, const FrequencyGrid& grid) {
  if (!grid.symmetric()) throw PreconditionError("grid not closed under negation");
  if (const auto* coherent = std::get_if<CoherentState>(&state)) {
    return psd_from_envelope(coherent->amplitude(), 1.0, coherent->carrier(),
                             coherent->area(), grid);
  }
  if (const auto* fock = std::get_if<FockState>(&state)) {
    return psd_from_envelope(fock->envelope(), static_cast<double>(fock->n()),
                             fock->carrier(), fock->area(), grid);
  }
  return Spectrum::zeros(grid, SpectrumKind::double_sided_symmetrized, units::kStrainPsd);
}

double graviton_flux_narrowband(const Spectrum& psd, double carrier, double area,
                                Execution exec) {
  require_symmetrized(psd, units::kStrainPsd, "strain PSD");
  require(carrier > 0.0 && area > 0.0, "graviton flux needs Omega0 > 0 and A > 0");
  return flux_prefactor(carrier, area) * integrate_spectrum(psd, exec);
}

double graviton_flux_broadband(const Spectrum& psd, double area, Execution exec) {
  require_symmetrized(psd, units::kStrainPsd, "strain PSD");
  require(area > 0.0, "graviton flux needs A > 0");
  const auto w = psd.grid().omegas();
  std::vector<double> weighted(psd.size());
  kernels::for_each_index(exec, weighted.size(), [&](std::size_t i) {
    weighted[i] = std::abs(w[i]) * psd[i];
  });
  return flux_prefactor(1.0, area) * kernels::trapezoid(exec, w, weighted) / units::two_pi;
}

double graviton_flux_source(const Spectrum& psd, double carrier, double distance,
                            double antenna_factor, Execution exec) {
  require_symmetrized(psd, units::kStrainPsd, "strain PSD");
  require(carrier > 0.0 && distance > 0.0 && antenna_factor > 0.0,
          "source flux needs Omega0, R, F > 0");
  const auto& k = kCodata;
  const double prefactor = k.c * k.c * k.c * distance * distance * carrier /
                           (5.0 * k.hbar * k.G * antenna_factor);
  return prefactor * integrate_spectrum(psd, exec);
}

}  // namespace gwdk
