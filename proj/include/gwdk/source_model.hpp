#pragma once

namespace gwdk {

/// Circular binary: reduced mass mu (kg), orbital radius a (m), GW angular
/// frequency Omega0 = 2 x orbital (rad/s), distance R (m), inclination (rad).
struct BinarySource {
  double reduced_mass;
  double orbital_radius;
  double omega0;
  double distance;
  double inclination;

  /// Throws unless all fields are positive and inclination lies in [0, pi].
  void validate() const;

  bool operator==(const BinarySource&) const = default;
};

/// Reduced description of a source as seen by one detector.
struct SourceGeom {
  double distance;         ///< R (m)
  double antenna_factor;   ///< F, order unity
  double omega0;           ///< carrier (rad/s)
  double strain_amplitude; ///< h0, detector-frame scalar strain

  void validate() const;
};

struct StrainAmplitudes {
  double plus;
  double cross;
};

StrainAmplitudes binary_strain_amplitudes(const BinarySource& src);

/// Cycle-averaged dP/dA at inclination theta and distance R (W / m^2).
double quadrupole_intensity(const BinarySource& src, double theta);

/// P = G mu^2 Omega0^6 a^4 / (10 c^5).
double quadrupole_total_power(const BinarySource& src);

/// Same quantity by integrating quadrupole_intensity over the sphere with a
/// product rule: Gauss-Legendre in cos(theta) times uniform in phi.
double quadrupole_total_power_numeric(const BinarySource& src, int n_theta = 64,
                                      int n_phi = 64);

/// A = 16 pi R^2 / (5 F).
double area_factor(double distance, double antenna_factor);

/// Cycle average of (c^3 / 32 pi G) hdot^2 for h = h0 cos(Omega0 t).
double plane_wave_power_flux(double strain_amplitude, double omega0);

/// |a|^2 = Omega0 c^3 pi A h0^2 / (32 G hbar).
double coherent_amplitude_from_strain(double strain_amplitude, double omega0, double area);

}  // namespace gwdk
