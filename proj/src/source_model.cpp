#include "gwdk/source_model.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk {
namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(units::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

double amplitude_scale(const BinarySource& s) {
  const auto& k = kCodata;
  return k.G * s.reduced_mass * s.omega0 * s.omega0 * s.orbital_radius *
         s.orbital_radius / (k.c * k.c * k.c * k.c * s.distance);
}

}  // namespace

void BinarySource::validate() const {
  require(reduced_mass > 0.0 && orbital_radius > 0.0 && omega0 > 0.0 && distance > 0.0,
          "binary source parameters must be positive");
  require(inclination >= 0.0 && inclination <= units::pi,
          "inclination must lie in [0, pi]");
}

void SourceGeom::validate() const {
  require(distance > 0.0, "source distance must be positive");
  require(antenna_factor > 0.0, "antenna factor must be positive");
  require(omega0 > 0.0, "carrier frequency must be positive");
  require(strain_amplitude >= 0.0, "strain amplitude must be non-negative");
}

StrainAmplitudes binary_strain_amplitudes(const BinarySource& src) {
  src.validate();
  const double h = amplitude_scale(src);
  const double c = std::cos(src.inclination);
  return {h * 0.5 * (1.0 + c * c), h * c};
}

double quadrupole_intensity(const BinarySource& src, double theta) {
  // (c^3 / 16 pi G) <hdot_+^2 + hdot_x^2> with the amplitudes above.
  const auto& k = kCodata;
  const double c = std::cos(theta);
  const double plus = 0.5 * (1.0 + c * c);
  const double h = amplitude_scale(src);
  return k.c * k.c * k.c * src.omega0 * src.omega0 * h * h * (plus * plus + c * c) /
         (32.0 * units::pi * k.G);
}

double quadrupole_total_power(const BinarySource& src) {
  src.validate();
  const auto& k = kCodata;
  const double mu = src.reduced_mass;
  return k.G * mu * mu * std::pow(src.omega0, 6) * std::pow(src.orbital_radius, 4) /
         (10.0 * std::pow(k.c, 5));
}

double quadrupole_total_power_numeric(const BinarySource& src, int n_theta, int n_phi) {
  src.validate();
  require(n_theta >= 1 && n_phi >= 1, "quadrature orders must be positive");
  const auto [x, w] = gauss_legendre(n_theta);
  const double dphi = units::two_pi / n_phi;
  const double r2 = src.distance * src.distance;
  double total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(x[i]);
    const double ring = w[i] * r2 * quadrupole_intensity(src, theta);
    // The intensity does not depend on phi; the loop keeps the rule explicit.
    for (int j = 0; j < n_phi; ++j) total += ring * dphi;
  }
  return total;
}

double area_factor(double distance, double antenna_factor) {
  require(distance > 0.0 && antenna_factor > 0.0, "area factor needs R > 0 and F > 0");
  return 16.0 * units::pi * distance * distance / (5.0 * antenna_factor);
}

double plane_wave_power_flux(double strain_amplitude, double omega0) {
  require(strain_amplitude >= 0.0, "strain amplitude must be non-negative");
  const auto& k = kCodata;
  return k.c * k.c * k.c * omega0 * omega0 * strain_amplitude * strain_amplitude /
         (64.0 * units::pi * k.G);
}

double coherent_amplitude_from_strain(double strain_amplitude, double omega0, double area) {
  require(strain_amplitude >= 0.0 && omega0 > 0.0 && area > 0.0,
          "coherent amplitude needs h0 >= 0, Omega0 > 0, A > 0");
  const auto& k = kCodata;
  return omega0 * k.c * k.c * k.c * units::pi * area * strain_amplitude * strain_amplitude /
         (32.0 * k.G * k.hbar);
}

}  // namespace gwdk
