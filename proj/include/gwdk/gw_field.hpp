#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "gwdk/grid.hpp"

namespace gwdk {

/// Complex frequency envelope sampled on absolute angular frequencies
/// (rad/s), linearly interpolated between nodes and zero outside them.
class Envelope {
 public:
  Envelope(std::vector<double> omegas, std::vector<std::complex<double>> values);

  /// Single-bin envelope: a triangle of base 2*bin_width with peak
  /// weight / sqrt(bin_width), so power() is |weight|^2. On a grid of spacing
  /// bin_width with a node at `omega` the sampled spectrum integrates to the
  /// same value.
  static Envelope monochromatic(double omega, double bin_width, std::complex<double> weight);

  /// Real Gaussian of standard deviation `sigma` centred on `omega`,
  /// scaled so that the integral of |value|^2 dOmega equals `power`.
  static Envelope gaussian(double omega, double sigma, double power, std::size_t nodes = 401);

  std::complex<double> operator()(double omega) const;

  /// Trapezoid of |value|^2 over the envelope's own nodes.
  double power() const;

  /// Copy rescaled so that power() == 1.
  Envelope normalized() const;
  Envelope scaled(std::complex<double> factor) const;

  const std::vector<double>& omegas() const { return omegas_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

 private:
  std::vector<double> omegas_;
  std::vector<std::complex<double>> values_;
};

struct VacuumState {};

/// Coherent state |a> with amplitude envelope a[Omega].
class CoherentState {
 public:
  CoherentState(double carrier, Envelope amplitude, double area);

  double carrier() const { return carrier_; }
  const Envelope& amplitude() const { return amplitude_; }
  double area() const { return area_; }

 private:
  double carrier_;
  Envelope amplitude_;
  double area_;
};

/// Fock state |n, xi> with unit-normalized envelope xi[Omega].
class FockState {
 public:
  static constexpr double kNormTolerance = 1e-6;

  FockState(std::uint64_t n, double carrier, Envelope envelope, double area);

  std::uint64_t n() const { return n_; }
  double carrier() const { return carrier_; }
  const Envelope& envelope() const { return envelope_; }
  double area() const { return area_; }

 private:
  std::uint64_t n_;
  double carrier_;
  Envelope envelope_;
  double area_;
};

using GwState = std::variant<VacuumState, CoherentState, FockState>;

/// h_Omega0 = sqrt(16 hbar G / (c^3 pi Omega0 A)).
double strain_normalization(double carrier, double area);

/// <h[Omega]>: 4 pi h_Omega0 a[Omega] for coherent states (with the
/// reality condition <h[-Omega]> = conj <h[Omega]>), zero otherwise.
FrequencySeries mean_strain(const GwState& state, const FrequencyGrid& grid);

/// Symmetrized strain PSD of the state. Coherent and Fock spectra are fixed
/// by flux consistency: graviton_flux_narrowband of the result equals the
/// integral of |a|^2 dOmega, respectively n. The vacuum floor is zero.
Spectrum strain_psd(const GwState& state, const FrequencyGrid& grid);

/// (c^3 Omega0 A / 16 pi hbar G) * integral S_hh dOmega / 2 pi.
double graviton_flux_narrowband(const Spectrum& psd, double carrier, double area,
                                Execution exec = Execution::parallel);

/// Integral of (c^3 |Omega| A / 16 pi hbar G) S_hh dOmega / 2 pi.
double graviton_flux_broadband(const Spectrum& psd, double area,
                               Execution exec = Execution::parallel);

/// (c^3 R^2 Omega0 / 5 hbar G F) * integral S_hh dOmega / 2 pi, i.e. the
/// narrowband flux through A = 16 pi R^2 / (5 F).
double graviton_flux_source(const Spectrum& psd, double carrier, double distance,
                            double antenna_factor, Execution exec = Execution::parallel);

}  // namespace gwdk
