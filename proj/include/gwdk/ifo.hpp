#pragma once

#include <optional>

#include "gwdk/grid.hpp"
#include "gwdk/source_model.hpp"

namespace gwdk {

/// Fabry-Perot arm cavity with suspended test masses, operated on resonance.
/// All rates are angular (rad/s).
struct IfoParams {
  double kappa;       ///< cavity amplitude decay rate
  double omega_opt;   ///< optical carrier omega_0
  double length;      ///< arm length L (m)
  double mass;        ///< test mass m (kg)
  double omega_m;     ///< suspension resonance
  double gamma_m;     ///< suspension damping
  double alpha_sq;    ///< intracavity coherent amplitude squared
  double detuning = 0.0;

  /// Fills alpha_sq from whichever of (power, alpha_sq) is given; when both
  /// are given they must agree to 1e-12 relative.
  static IfoParams make(double kappa, double omega_opt, double length, double mass,
                        double omega_m, double gamma_m, std::optional<double> power_w,
                        std::optional<double> alpha_sq, double detuning = 0.0);

  double cavity_power() const;
  void validate() const;

  bool operator==(const IfoParams&) const = default;
};

/// alpha^2 = (4 L / c) P / (hbar omega_0).
double alpha_sq_from_power(double length, double power_w, double omega_opt);

/// Input noise seen by the antenna. Vacuum optical quadratures are 1/2;
/// suspension inputs default to a symmetric thermal state n + 1/2.
struct IfoInputNoise {
  double s1_in = 0.5;
  double s2_in = 0.5;
  double s_qq = 0.5;
  double s_pp = 0.5;

  static IfoInputNoise thermal(double occupancy);

  bool operator==(const IfoInputNoise&) const = default;
};

double kimble_K(const IfoParams& p, double omega);
double h_sql(const IfoParams& p, double omega);
double cavity_phase_beta(const IfoParams& p, double omega);
double mech_correction_X(const IfoParams& p, double omega);

/// Phase of the suspended mirror relative to a free mass. Continuous in
/// omega away from zero, vanishing in the free-mass limit omega >> omega_m.
double phase_Xi(const IfoParams& p, double omega);

/// Weight of the suspension thermal inputs in the output phase quadrature.
double suspension_Y(const IfoParams& p, double omega);

/// |K| / h_SQL^2, the strain-to-output gain of the phase quadrature.
double ifo_strain_gain(const IfoParams& p, double omega);

/// e^{i beta} sqrt(2K) <h> / h_SQL on the series' grid.
FrequencySeries ifo_homodyne_mean(const IfoParams& p, const FrequencySeries& mean_h,
                                  Execution exec = Execution::parallel);

struct IfoNoiseBudget {
  Spectrum s1_out;
  Spectrum s2_out;
  Spectrum radiation_pressure;
  Spectrum shot;
  Spectrum suspension_thermal;
  Spectrum gw_signal;
};

IfoNoiseBudget ifo_output_spectra(const IfoParams& p, const Spectrum& s_hh,
                                  const IfoInputNoise& noise = {},
                                  Execution exec = Execution::parallel);

struct ClickRate {
  double total;
  double gw_part;
  double dark_part;
};

ClickRate ifo_click_rate(const IfoParams& p, const Spectrum& s_hh,
                         const IfoInputNoise& noise = {},
                         Execution exec = Execution::parallel);

/// Source-referenced efficiency 5 hbar G F kappa alpha^2 omega_0^2 /
/// (2 c^3 R^2 Omega0 (kappa^2 + Omega0^2)).
double eta_ifo(const IfoParams& p, const SourceGeom& geom);

/// gw click coefficient over the narrowband flux coefficient through area A:
/// the fraction of incident gravitons that produce clicks.
double ifo_incident_efficiency(const IfoParams& p, double omega0, double area);

}  // namespace gwdk
