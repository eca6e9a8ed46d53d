#pragma once

#include <complex>
#include <optional>

#include "gwdk/grid.hpp"
#include "gwdk/ifo.hpp"
#include "gwdk/source_model.hpp"

namespace gwdk {

/// Resonant bar read out parametrically through an optical cavity.
struct BarParams {
  double mass;               ///< M (kg)
  double length;             ///< L (m)
  double sound_speed;        ///< v_s (m/s)
  double omega_m;            ///< readout mode frequency (rad/s)
  double gamma_m;            ///< mechanical damping (rad/s)
  double g;                  ///< optomechanical coupling (rad/s)
  double kappa;              ///< readout cavity decay (rad/s)
  double thermal_occupancy;  ///< n of the readout mode
  int mode = 0;

  /// Derives whichever of (v_s, omega_m) is missing from the other via
  /// omega_m = v_s pi (2 mode + 1) / L, and checks them when both are given.
  static BarParams make(double mass, double length, std::optional<double> sound_speed,
                        std::optional<double> omega_m, double gamma_m, double g, double kappa,
                        double thermal_occupancy = 0.0, int mode = 0);

  void validate() const;

  bool operator==(const BarParams&) const = default;
};

double bar_mode_frequency(const BarParams& p, int n);

/// M (-1)^n (2L / pi^2) / (2n + 1)^2: multiplies hddot to give the force on mode n.
double bar_gw_force_coefficient(const BarParams& p, int n);

/// chi_M at detuning (Omega - omega_m): 1 / (-i detuning + gamma_m / 2).
std::complex<double> mech_susceptibility(const BarParams& p, double detuning);

/// Zero-point amplitude sqrt(hbar / (M omega_m)).
double bar_x_zpm(const BarParams& p);

/// True when |omega_m - Omega0| > gamma_m, outside the resonant regime.
bool bar_off_resonance(const BarParams& p, double omega0);

struct BarHomodyne {
  FrequencySeries mean;
  bool off_resonance;
};

/// -i (4g / sqrt(kappa)) sqrt(M / hbar omega_m) (2 L Omega0^2 / gamma_m pi^2) <h>.
BarHomodyne bar_homodyne_mean(const BarParams& p, const FrequencySeries& mean_h, double omega0,
                              Execution exec = Execution::parallel);

struct BarResponse {
  Spectrum s_zz;
  Spectrum mechanical_vacuum;
  Spectrum backaction;
  Spectrum gw_drive;
  bool off_resonance;
};

BarResponse bar_position_spectrum(const BarParams& p, const Spectrum& s_hh, double omega0,
                                  Execution exec = Execution::parallel);

/// Clicks per unit integral of S_hh dOmega / 2 pi in the in-band limit:
/// 16 g^2 M L^2 Omega0^4 / (pi^4 hbar kappa omega_m gamma_m^2).
double bar_gw_click_coefficient(const BarParams& p, double omega0);

/// Same coefficient written for a drive exactly on resonance (Omega0^3, no omega_m).
double bar_gw_click_coefficient_resonant(const BarParams& p, double omega0);

/// total integrates (4 g^2 / kappa) S_zz over the grid; gw_part uses the
/// in-band coefficient; dark_part integrates the non-GW components.
ClickRate bar_click_rate(const BarParams& p, const Spectrum& s_hh, double omega0,
                         Execution exec = Execution::parallel);

/// (80 F / pi^3) g^2 M L^2 Omega0^3 G / (kappa c^3 omega_m gamma_m^2 R^2).
double eta_bar(const BarParams& p, const SourceGeom& geom);

double bar_incident_efficiency(const BarParams& p, double omega0, double area);

}  // namespace gwdk
