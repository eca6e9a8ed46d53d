#include "gwdk/bar.hpp"

#include <cmath>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk {
namespace {

constexpr double kPi2 = units::pi * units::pi;
constexpr double kPi4 = kPi2 * kPi2;

Spectrum zpm_spectrum(const FrequencyGrid& grid, std::vector<double> values) {
  return Spectrum(grid, std::move(values), SpectrumKind::double_sided_symmetrized,
                  units::kZeroPointPsd);
}

}  // namespace

BarParams BarParams::make(double mass, double length, std::optional<double> sound_speed,
                          std::optional<double> omega_m, double gamma_m, double g, double kappa,
                          double thermal_occupancy, int mode) {
  require(sound_speed.has_value() || omega_m.has_value(),
          "bar needs the sound speed or the mode frequency");
  require(length > 0.0 && mode >= 0, "bar needs L > 0 and mode >= 0");
  const double factor = units::pi * (2.0 * mode + 1.0) / length;
  BarParams p{mass, length, 0.0, 0.0, gamma_m, g, kappa, thermal_occupancy, mode};
  if (sound_speed) {
    p.sound_speed = *sound_speed;
    p.omega_m = *sound_speed * factor;
    if (omega_m) {
      require(std::abs(*omega_m - p.omega_m) <= 1e-12 * p.omega_m,
              "bar sound speed and mode frequency are inconsistent");
      p.omega_m = *omega_m;
    }
  } else {
    p.omega_m = *omega_m;
    p.sound_speed = *omega_m / factor;
  }
  p.validate();
  return p;
}

void BarParams::validate() const {
  require(mass > 0.0 && length > 0.0 && sound_speed > 0.0 && omega_m > 0.0,
          "bar M, L, v_s, omega_m must be positive");
  require(gamma_m > 0.0 && g > 0.0 && kappa > 0.0, "bar gamma_m, g, kappa must be positive");
  require(thermal_occupancy >= 0.0 && mode >= 0, "bar occupancy and mode must be >= 0");
}

double bar_mode_frequency(const BarParams& p, int n) {
  require(n >= 0, "mode index must be >= 0");
  return p.sound_speed * units::pi * (2.0 * n + 1.0) / p.length;
}

double bar_gw_force_coefficient(const BarParams& p, int n) {
  require(n >= 0, "mode index must be >= 0");
  const double odd = 2.0 * n + 1.0;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign * p.mass * 2.0 * p.length / kPi2 / (odd * odd);
}

std::complex<double> mech_susceptibility(const BarParams& p, double detuning) {
  return 1.0 / std::complex<double>(0.5 * p.gamma_m, -detuning);
}

double bar_x_zpm(const BarParams& p) {
  return std::sqrt(kCodata.hbar / (p.mass * p.omega_m));
}

bool bar_off_resonance(const BarParams& p, double omega0) {
  return std::abs(p.omega_m - omega0) > p.gamma_m;
}

BarHomodyne bar_homodyne_mean(const BarParams& p, const FrequencySeries& mean_h, double omega0,
                              Execution exec) {
  p.validate();
  require(omega0 > 0.0, "carrier frequency must be positive");
  require(mean_h.values.size() == mean_h.grid.size(), "mean strain does not match its grid");
  const double gain = 4.0 * p.g / std::sqrt(p.kappa) *
                      std::sqrt(p.mass / (kCodata.hbar * p.omega_m)) *
                      (2.0 * p.length * omega0 * omega0 / (p.gamma_m * kPi2));
  const std::complex<double> factor(0.0, -gain);
  BarHomodyne out{{mean_h.grid, std::vector<std::complex<double>>(mean_h.values.size())},
                  bar_off_resonance(p, omega0)};
  kernels::for_each_index(exec, mean_h.values.size(),
                          [&](std::size_t i) { out.mean.values[i] = factor * mean_h.values[i]; });
  return out;
}

BarResponse bar_position_spectrum(const BarParams& p, const Spectrum& s_hh, double omega0,
                                  Execution exec) {
  p.validate();
  require(omega0 > 0.0, "carrier frequency must be positive");
  require_symmetrized(s_hh, units::kStrainPsd, "strain PSD");
  const auto& grid = s_hh.grid();
  const std::size_t n = grid.size();
  const double occupancy = 0.5 + p.thermal_occupancy;
  const double x2_over_hbar2 = bar_x_zpm(p) * bar_x_zpm(p) / (kCodata.hbar * kCodata.hbar);
  // Optical vacuum back-action as a white force conjugate to z = x / x_zpm.
  const double backaction_force = 2.0 * p.g * p.g / p.kappa;
  const double drive = p.mass * p.mass * p.length * p.length * std::pow(omega0, 4) / kPi4;

  std::vector<double> mech(n), back(n), gw(n), total(n);
  kernels::for_each_index(exec, n, [&](std::size_t i) {
    const double w = grid[i];
    const auto lo = mech_susceptibility(p, w - p.omega_m);
    const auto hi = mech_susceptibility(p, w + p.omega_m);
    const double diff = std::norm(lo - hi);
    mech[i] = p.gamma_m * (std::norm(lo) + std::norm(hi)) * occupancy;
    back[i] = diff * backaction_force;
    gw[i] = x2_over_hbar2 * diff * drive * s_hh[i];
    total[i] = mech[i] + back[i] + gw[i];
  });
  return {zpm_spectrum(grid, std::move(total)), zpm_spectrum(grid, std::move(mech)),
          zpm_spectrum(grid, std::move(back)), zpm_spectrum(grid, std::move(gw)),
          bar_off_resonance(p, omega0)};
}

double bar_gw_click_coefficient_resonant(const BarParams& p, double omega0) {
  return 16.0 * p.g * p.g * p.mass * p.length * p.length * omega0 * omega0 * omega0 /
         (kPi4 * kCodata.hbar * p.kappa * p.gamma_m * p.gamma_m);
}

double bar_gw_click_coefficient(const BarParams& p, double omega0) {
  return bar_gw_click_coefficient_resonant(p, omega0) * (omega0 / p.omega_m);
}

ClickRate bar_click_rate(const BarParams& p, const Spectrum& s_hh, double omega0,
                         Execution exec) {
  const auto response = bar_position_spectrum(p, s_hh, omega0, exec);
  const auto w = s_hh.grid().omegas();
  const double readout = 4.0 * p.g * p.g / p.kappa;
  std::vector<double> dark(w.size());
  kernels::for_each_index(exec, w.size(), [&](std::size_t i) {
    dark[i] = response.mechanical_vacuum[i] + response.backaction[i];
  });
  const double total = readout * integrate_spectrum(response.s_zz, exec);
  const double dark_rate = readout * kernels::trapezoid(exec, w, dark) / units::two_pi;
  const double gw_rate = bar_gw_click_coefficient(p, omega0) * integrate_spectrum(s_hh, exec);
  return {total, gw_rate, dark_rate};
}

double eta_bar(const BarParams& p, const SourceGeom& geom) {
  p.validate();
  geom.validate();
  const auto& k = kCodata;
  const double w0 = geom.omega0;
  return 80.0 * geom.antenna_factor / (kPi2 * units::pi) * p.g * p.g * p.mass * p.length *
         p.length * w0 * w0 * w0 * k.G /
         (p.kappa * k.c * k.c * k.c * p.omega_m * p.gamma_m * p.gamma_m * geom.distance *
          geom.distance);
}

double bar_incident_efficiency(const BarParams& p, double omega0, double area) {
  p.validate();
  require(omega0 > 0.0 && area > 0.0, "incident efficiency needs Omega0 > 0 and A > 0");
  const auto& k = kCodata;
  return 16.0 * units::pi * k.hbar * k.G * bar_gw_click_coefficient(p, omega0) /
         (k.c * k.c * k.c * omega0 * area);
}

}  // namespace gwdk
