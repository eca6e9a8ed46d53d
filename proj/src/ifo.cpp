#include "gwdk/ifo.hpp"

#include <cmath>
#include <complex>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk {
namespace {

void require_nonzero(double omega) {
  if (omega == 0.0) throw SingularityError("transfer function is singular at Omega = 0");
}

// |(gamma - i Omega)^2 + omega_m^2|^2
double suspension_denominator(const IfoParams& p, double omega) {
  const double re = p.gamma_m * p.gamma_m + p.omega_m * p.omega_m - omega * omega;
  const double im = 2.0 * p.gamma_m * omega;
  return re * re + im * im;
}

Spectrum quadrature(const FrequencyGrid& grid, std::vector<double> values) {
  return Spectrum(grid, std::move(values), SpectrumKind::double_sided_symmetrized,
                  units::kQuadraturePsd);
}

void check_strain_grid(const Spectrum& s_hh) {
  require_symmetrized(s_hh, units::kStrainPsd, "strain PSD");
  if (s_hh.grid().find(0.0).has_value()) {
    throw SingularityError("frequency grid contains Omega = 0");
  }
}

}  // namespace

double alpha_sq_from_power(double length, double power_w, double omega_opt) {
  require(length > 0.0 && power_w >= 0.0 && omega_opt > 0.0,
          "cavity power conversion needs L > 0, P >= 0, omega_0 > 0");
  const auto& k = kCodata;
  return 4.0 * length * power_w / (k.c * k.hbar * omega_opt);
}

IfoParams IfoParams::make(double kappa, double omega_opt, double length, double mass,
                          double omega_m, double gamma_m, std::optional<double> power_w,
                          std::optional<double> alpha_sq, double detuning) {
  require(power_w.has_value() || alpha_sq.has_value(),
          "interferometer needs the cavity power or alpha^2");
  IfoParams p{kappa, omega_opt, length, mass, omega_m, gamma_m, 0.0, detuning};
  if (power_w) {
    p.alpha_sq = alpha_sq_from_power(length, *power_w, omega_opt);
    if (alpha_sq) {
      require(std::abs(*alpha_sq - p.alpha_sq) <= 1e-12 * p.alpha_sq,
              "cavity power and alpha^2 are inconsistent");
    }
  } else {
    p.alpha_sq = *alpha_sq;
  }
  p.validate();
  return p;
}

double IfoParams::cavity_power() const {
  const auto& k = kCodata;
  return alpha_sq * k.c * k.hbar * omega_opt / (4.0 * length);
}

void IfoParams::validate() const {
  require(kappa > 0.0 && omega_opt > 0.0 && length > 0.0 && mass > 0.0,
          "interferometer kappa, omega_0, L, m must be positive");
  require(omega_m > 0.0 && gamma_m > 0.0, "suspension omega_m and gamma_m must be positive");
  require(alpha_sq > 0.0 && std::isfinite(alpha_sq), "alpha^2 must be positive");
  require(detuning == 0.0, "detuned operation is not supported; detuning must be 0");
}

IfoInputNoise IfoInputNoise::thermal(double occupancy) {
  require(occupancy >= 0.0, "thermal occupancy must be non-negative");
  return {0.5, 0.5, occupancy + 0.5, occupancy + 0.5};
}

double kimble_K(const IfoParams& p, double omega) {
  require_nonzero(omega);
  const double w2 = omega * omega;
  return 2.0 * kCodata.hbar * p.kappa * p.alpha_sq * p.omega_opt * p.omega_opt /
         (p.length * p.length * p.mass * w2 * (p.kappa * p.kappa + w2));
}

double h_sql(const IfoParams& p, double omega) {
  require_nonzero(omega);
  return std::sqrt(8.0 * kCodata.hbar / (p.mass * omega * omega * p.length * p.length));
}

double cavity_phase_beta(const IfoParams& p, double omega) {
  return std::atan(omega / p.kappa);
}

double mech_correction_X(const IfoParams& p, double omega) {
  return omega * omega / std::sqrt(suspension_denominator(p, omega));
}

double phase_Xi(const IfoParams& p, double omega) {
  require_nonzero(omega);
  const double y = 2.0 * p.gamma_m * omega;
  const double x = p.gamma_m * p.gamma_m + p.omega_m * p.omega_m - omega * omega;
  // atan2 is continuous except on its branch cut y = 0, x < 0, which only
  // Omega = 0 reaches. The offset pins the free-mass limit to zero.
  return 0.5 * std::atan2(y, x) - 0.5 * units::pi * (omega > 0.0 ? 1.0 : -1.0);
}

double suspension_Y(const IfoParams& p, double omega) {
  const double w2 = omega * omega;
  return 2.0 * kCodata.hbar * p.kappa * p.gamma_m * p.alpha_sq * p.omega_opt * p.omega_opt /
         (p.mass * p.length * p.length * (p.kappa * p.kappa + w2) *
          suspension_denominator(p, omega));
}

double ifo_strain_gain(const IfoParams& p, double omega) {
  // |K| / h_SQL^2 simplified so that it stays finite at Omega = 0.
  return p.kappa * p.alpha_sq * p.omega_opt * p.omega_opt /
         (4.0 * (p.kappa * p.kappa + omega * omega));
}

FrequencySeries ifo_homodyne_mean(const IfoParams& p, const FrequencySeries& mean_h,
                                  Execution exec) {
  p.validate();
  const auto& grid = mean_h.grid;
  require(mean_h.values.size() == grid.size(), "mean strain does not match its grid");
  if (grid.find(0.0).has_value()) throw SingularityError("frequency grid contains Omega = 0");
  FrequencySeries out{grid, std::vector<std::complex<double>>(grid.size())};
  kernels::for_each_index(exec, grid.size(), [&](std::size_t i) {
    const double w = grid[i];
    const double gain = std::sqrt(2.0 * kimble_K(p, w)) / h_sql(p, w);
    out.values[i] = std::polar(gain, cavity_phase_beta(p, w)) * mean_h.values[i];
  });
  return out;
}

IfoNoiseBudget ifo_output_spectra(const IfoParams& p, const Spectrum& s_hh,
                                  const IfoInputNoise& noise, Execution exec) {
  p.validate();
  check_strain_grid(s_hh);
  require(noise.s1_in >= 0.0 && noise.s2_in >= 0.0 && noise.s_qq >= 0.0 && noise.s_pp >= 0.0,
          "input noise spectra must be non-negative");
  const auto& grid = s_hh.grid();
  const std::size_t n = grid.size();
  std::vector<double> rp(n), shot(n, noise.s2_in), thermal(n), gw(n), total(n);
  kernels::for_each_index(exec, n, [&](std::size_t i) {
    const double w = grid[i];
    const double kx = kimble_K(p, w) * mech_correction_X(p, w);
    rp[i] = kx * kx * noise.s1_in;
    thermal[i] = suspension_Y(p, w) *
                 ((p.gamma_m * p.gamma_m + w * w) / p.omega_m * noise.s_qq +
                  p.omega_m * noise.s_pp);
    gw[i] = 2.0 * ifo_strain_gain(p, w) * s_hh[i];
    total[i] = rp[i] + shot[i] + gw[i] + thermal[i];
  });
  return {quadrature(grid, std::vector<double>(n, noise.s1_in)),
          quadrature(grid, std::move(total)),
          quadrature(grid, std::move(rp)),
          quadrature(grid, std::move(shot)),
          quadrature(grid, std::move(thermal)),
          quadrature(grid, std::move(gw))};
}

ClickRate ifo_click_rate(const IfoParams& p, const Spectrum& s_hh, const IfoInputNoise& noise,
                         Execution exec) {
  const auto budget = ifo_output_spectra(p, s_hh, noise, exec);
  const auto& grid = s_hh.grid();
  const std::size_t n = grid.size();
  // Photon number of the output field: (S1 + S2 - 1) / 2 per unit bandwidth.
  std::vector<double> dark(n), gw(n);
  kernels::for_each_index(exec, n, [&](std::size_t i) {
    dark[i] = 0.5 * (budget.s1_out[i] + budget.radiation_pressure[i] + budget.shot[i] +
                     budget.suspension_thermal[i] - 1.0);
    gw[i] = 0.5 * budget.gw_signal[i];
  });
  const auto w = grid.omegas();
  const double dark_rate = kernels::trapezoid(exec, w, dark) / units::two_pi;
  const double gw_rate = kernels::trapezoid(exec, w, gw) / units::two_pi;
  return {dark_rate + gw_rate, gw_rate, dark_rate};
}

double eta_ifo(const IfoParams& p, const SourceGeom& geom) {
  p.validate();
  geom.validate();
  const auto& k = kCodata;
  const double w0 = geom.omega0;
  return 5.0 * k.hbar * k.G * geom.antenna_factor * p.kappa * p.alpha_sq * p.omega_opt *
         p.omega_opt /
         (2.0 * k.c * k.c * k.c * geom.distance * geom.distance * w0 *
          (p.kappa * p.kappa + w0 * w0));
}

double ifo_incident_efficiency(const IfoParams& p, double omega0, double area) {
  p.validate();
  require(omega0 > 0.0 && area > 0.0, "incident efficiency needs Omega0 > 0 and A > 0");
  const auto& k = kCodata;
  return 16.0 * units::pi * k.hbar * k.G * ifo_strain_gain(p, omega0) /
         (k.c * k.c * k.c * omega0 * area);
}

}  // namespace gwdk
