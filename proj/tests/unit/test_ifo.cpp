#include <doctest.h>

#include <cmath>
#include <random>

#include "gwdk/error.hpp"
#include "gwdk/gw_field.hpp"
#include "gwdk/ifo.hpp"
#include "support/oracles.hpp"

using namespace gwdk;
using namespace gwdk::test;

namespace {

IfoParams aligo() {
  return IfoParams::make(hz(400.0), hz(282e12), 4000.0, 40.0, hz(1.0), hz(1e-6), 1.0e6,
                         std::nullopt);
}

SourceGeom fiducial_source(double f = 1.0) { return {100.0 * kMpc, f, hz(60.0), 1e-22}; }

IfoParams random_ifo(std::mt19937_64& rng) {
  const double wm = log_uniform(rng, 0.1, 100.0);
  return IfoParams::make(log_uniform(rng, 10.0, 1e4), log_uniform(rng, 1e14, 3e15),
                         log_uniform(rng, 1.0, 1e4), log_uniform(rng, 0.01, 100.0), wm,
                         wm * log_uniform(rng, 1e-8, 1e-1), log_uniform(rng, 1.0, 1e7),
                         std::nullopt);
}

// Coherent state centred on w0 and its strain PSD on a band grid.
Spectrum coherent_psd(double w0, double area, double power, const FrequencyGrid& grid) {
  return strain_psd(CoherentState(w0, Envelope::gaussian(w0, 1e-3 * w0, power), area), grid);
}

constexpr double kArea = 1.0e49;

}  // namespace

TEST_CASE("parameter construction") {
  const auto p = aligo();
  const double alpha_sq = 4.0 * 4000.0 * 1.0e6 / (kC * kHbar * hz(282e12));
  CHECK(rel_err(p.alpha_sq, alpha_sq) < 1e-14);
  CHECK(rel_err(p.cavity_power(), 1.0e6) < 1e-14);
  CHECK_NOTHROW(IfoParams::make(hz(400.0), hz(282e12), 4000.0, 40.0, hz(1.0), hz(1e-6), 1.0e6,
                                alpha_sq));
  CHECK_THROWS_AS(IfoParams::make(hz(400.0), hz(282e12), 4000.0, 40.0, hz(1.0), hz(1e-6), 1.0e6,
                                  alpha_sq * 1.001),
                  PreconditionError);
  CHECK_THROWS_AS(IfoParams::make(hz(400.0), hz(282e12), 4000.0, 40.0, hz(1.0), hz(1e-6), 1.0e6,
                                  std::nullopt, 5.0),
                  PreconditionError);
  CHECK_THROWS_AS(IfoParams::make(-1.0, hz(282e12), 4000.0, 40.0, hz(1.0), hz(1e-6), 1.0e6,
                                  std::nullopt),
                  PreconditionError);
}

TEST_CASE("K and h_SQL") {
  const auto p = aligo();
  const double w = hz(60.0);
  const double oracle = 2.0 * kHbar * p.kappa * p.alpha_sq * p.omega_opt * p.omega_opt /
                        (4000.0 * 4000.0 * 40.0 * w * w * (p.kappa * p.kappa + w * w));
  CHECK(rel_err(kimble_K(p, w), oracle) < 1e-14);
  CHECK(kimble_K(p, w) > 0.0);

  auto heavy = p;
  heavy.mass *= 2.0;
  CHECK(rel_err(kimble_K(heavy, w), 0.5 * kimble_K(p, w)) < 1e-15);

  // Log-slope over a decade well above kappa.
  const double w1 = 100.0 * p.kappa, w2 = 1000.0 * p.kappa;
  const double slope = std::log(kimble_K(p, w2) / kimble_K(p, w1)) / std::log(10.0);
  CHECK(std::abs(slope + 4.0) < 0.05);

  // m = 40 kg, L = 4 km, Omega = 2 pi 100 Hz.
  CHECK(h_sql(p, hz(100.0)) == doctest::Approx(1.8e-24).epsilon(0.03));
  heavy.mass = 4.0 * p.mass;
  CHECK(rel_err(h_sql(heavy, w), 0.5 * h_sql(p, w)) < 1e-15);
  CHECK(rel_err(h_sql(p, w) * w, h_sql(p, 3.0 * w) * 3.0 * w) < 1e-14);

  CHECK_THROWS_AS(kimble_K(p, 0.0), SingularityError);
  CHECK_THROWS_AS(h_sql(p, 0.0), SingularityError);
  CHECK(rel_err(ifo_strain_gain(p, w), kimble_K(p, w) / std::pow(h_sql(p, w), 2)) < 1e-14);
}

TEST_CASE("phases and the suspension correction") {
  auto p = aligo();
  CHECK(cavity_phase_beta(p, p.kappa) == doctest::Approx(kPi / 4).epsilon(1e-15));

  p.gamma_m = 1e-6 * p.omega_m;
  for (double k : {100.0, 300.0, 1e3, 1e4}) {
    const double w = k * p.omega_m;
    CHECK(std::abs(mech_correction_X(p, w) - 1.0) < 1e-3);
    CHECK(std::abs(phase_Xi(p, w)) < 1e-3);
    CHECK(std::abs(phase_Xi(p, -w)) < 1e-3);
  }

  // On resonance X = omega_m^2 / sqrt(gamma^4 + 4 gamma^2 omega_m^2) ~ omega_m / (2 gamma).
  for (double g : {1e-3, 1e-4, 1e-5}) {
    p.gamma_m = g * p.omega_m;
    const double expected =
        p.omega_m * p.omega_m /
        std::sqrt(std::pow(p.gamma_m, 4) + 4.0 * p.gamma_m * p.gamma_m * p.omega_m * p.omega_m);
    CHECK(rel_err(mech_correction_X(p, p.omega_m), expected) < 1e-12);
    CHECK(mech_correction_X(p, p.omega_m) * g == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("Xi is continuous through the resonance") {
  auto p = aligo();
  p.gamma_m = 0.05 * p.omega_m;
  const double crossing = std::sqrt(p.gamma_m * p.gamma_m + p.omega_m * p.omega_m);
  double prev = phase_Xi(p, 0.2 * crossing);
  for (int i = 1; i <= 20000; ++i) {
    const double w = crossing * (0.2 + 4.8 * i / 20000.0);
    const double xi = phase_Xi(p, w);
    CHECK(std::abs(xi - prev) < 1e-2);
    prev = xi;
  }
  // Oracle: half the phase of -Omega^2 / ((gamma - i Omega)^2 + omega_m^2),
  // unwrapped to vanish as Omega grows.
  for (double w : {0.5 * crossing, crossing, 2.0 * crossing, 50.0 * crossing}) {
    const std::complex<double> d = std::pow(std::complex<double>(p.gamma_m, -w), 2) +
                                   p.omega_m * p.omega_m;
    double arg = std::arg(-w * w / d);
    if (arg > 0.0) arg -= 2.0 * kPi;  // branch with arg -> 0^- at large Omega
    CHECK(phase_Xi(p, w) == doctest::Approx(0.5 * arg).epsilon(1e-12));
  }
  CHECK_THROWS_AS(phase_Xi(p, 0.0), SingularityError);
}

TEST_CASE("homodyne mean response") {
  const auto p = aligo();
  const double w0 = p.kappa / 100.0;
  const auto grid = FrequencyGrid::symmetric_band(w0, 0.01 * w0, 201);
  const CoherentState coh(w0, Envelope::gaussian(w0, 1e-3 * w0, 1.0e20), kArea);
  const auto h = mean_strain(coh, grid);
  const auto out = ifo_homodyne_mean(p, h);
  const auto serial = ifo_homodyne_mean(p, h, Execution::serial);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(out.values[i] == serial.values[i]);
    if (std::abs(h.values[i]) == 0.0) continue;
    // Low-frequency form alpha omega_0 / sqrt(2 kappa) <h>.
    const double reduced = std::sqrt(p.alpha_sq) * p.omega_opt / std::sqrt(2.0 * p.kappa);
    CHECK(std::abs(std::abs(out.values[i]) / (reduced * std::abs(h.values[i])) - 1.0) < 2e-2);
  }

  FrequencySeries doubled = h;
  for (auto& v : doubled.values) v *= 2.0;
  const auto out2 = ifo_homodyne_mean(p, doubled);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(out2.values[i] - 2.0 * out.values[i]) <= 1e-15 * std::abs(out2.values[i]));
  }

  const FockState fock(4, w0, Envelope::gaussian(w0, 1e-3 * w0, 1.0), kArea);
  for (const auto& v : ifo_homodyne_mean(p, mean_strain(fock, grid)).values) {
    CHECK(v == std::complex<double>(0.0));
  }

  const auto with_zero = FrequencyGrid::from_points({-1.0, 0.0, 1.0});
  CHECK_THROWS_AS(ifo_homodyne_mean(p, mean_strain(VacuumState{}, with_zero)), SingularityError);
}

TEST_CASE("output spectra and noise budget") {
  const auto p = aligo();
  const auto grid = FrequencyGrid::symmetric_uniform(hz(2000.0), 2000);
  const auto zero = strain_psd(VacuumState{}, grid);

  SUBCASE("pure quantum noise with no suspension input") {
    IfoInputNoise cold;
    cold.s_qq = cold.s_pp = 0.0;
    const auto b = ifo_output_spectra(p, zero, cold);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double kx = kimble_K(p, grid[i]) * mech_correction_X(p, grid[i]);
      CHECK(rel_err(b.s2_out[i], 0.5 * kx * kx + 0.5) < 1e-12);
      CHECK(b.gw_signal[i] == 0.0);
      CHECK(b.s1_out[i] == 0.5);
    }
  }
  SUBCASE("zero-temperature suspension adds a separate thermal term") {
    const auto b = ifo_output_spectra(p, zero, IfoInputNoise::thermal(0.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = grid[i];
      const double kx = kimble_K(p, w) * mech_correction_X(p, w);
      CHECK(rel_err(b.radiation_pressure[i] + b.shot[i], 0.5 * kx * kx + 0.5) < 1e-12);
      const double thermal = suspension_Y(p, w) * 0.5 *
                             ((p.gamma_m * p.gamma_m + w * w) / p.omega_m + p.omega_m);
      CHECK(rel_err(b.suspension_thermal[i], thermal) < 1e-12);
    }
  }
  SUBCASE("gw component and budget sum") {
    const double w0 = hz(60.0);
    const auto band = FrequencyGrid::symmetric_band(w0, 1.0, 401);
    const auto s_hh = coherent_psd(w0, kArea, 1e30, band);
    const auto b = ifo_output_spectra(p, s_hh, IfoInputNoise::thermal(6.2e12));
    for (std::size_t i = 0; i < band.size(); ++i) {
      const double w = band[i];
      CHECK(b.gw_signal[i] == doctest::Approx(2.0 * kimble_K(p, w) / std::pow(h_sql(p, w), 2) *
                                              s_hh[i]).epsilon(1e-12));
      const double sum = b.radiation_pressure[i] + b.shot[i] + b.suspension_thermal[i] + b.gw_signal[i];
      CHECK(rel_err(sum, b.s2_out[i]) < 1e-9);
    }
  }
  SUBCASE("grids containing zero are rejected") {
    const auto with_zero = FrequencyGrid::from_points({-1.0, 0.0, 1.0});
    CHECK_THROWS_AS(ifo_output_spectra(p, strain_psd(VacuumState{}, with_zero)), SingularityError);
  }
}

TEST_CASE("randomized spectral sanity") {
  std::mt19937_64 rng(99);
  const auto grid = FrequencyGrid::symmetric_uniform(hz(3000.0), 300);
  for (int k = 0; k < 100; ++k) {
    const auto p = random_ifo(rng);
    const double w0 = log_uniform(rng, hz(10.0), hz(2000.0));
    const auto s_hh = coherent_psd(w0, kArea, log_uniform(rng, 1.0, 1e40), grid);
    const auto b = ifo_output_spectra(p, s_hh, IfoInputNoise::thermal(log_uniform(rng, 1e-3, 1e13)));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      REQUIRE(b.s2_out[i] >= 0.0);
      REQUIRE(b.radiation_pressure[i] >= 0.0);
      REQUIRE(b.suspension_thermal[i] >= 0.0);
      REQUIRE(b.gw_signal[i] >= 0.0);
      const double sum = b.radiation_pressure[i] + b.shot[i] + b.suspension_thermal[i] + b.gw_signal[i];
      REQUIRE(rel_err(sum, b.s2_out[i]) < 1e-9);
    }
  }
}

TEST_CASE("photon-counting click rate") {
  const auto p = aligo();
  SUBCASE("vacuum has no GW clicks") {
    const auto grid = FrequencyGrid::symmetric_uniform(hz(1000.0), 500);
    const auto r = ifo_click_rate(p, strain_psd(VacuumState{}, grid));
    CHECK(r.gw_part == 0.0);
    CHECK(r.dark_part > 0.0);
    CHECK(r.total == r.dark_part);
  }
  SUBCASE("reduces to the low-frequency form at Omega0 = kappa / 100") {
    const double w0 = p.kappa / 100.0;
    const auto grid = FrequencyGrid::symmetric_band(w0, 0.01 * w0, 2001);
    const auto s_hh = coherent_psd(w0, kArea, 1e35, grid);
    const auto r = ifo_click_rate(p, s_hh);
    const double reduced = p.alpha_sq * p.omega_opt * p.omega_opt / (4.0 * p.kappa) *
                           integrate_spectrum(s_hh);
    CHECK(std::abs(r.gw_part / reduced - 1.0) < 2e-2);
    CHECK(rel_err(r.total, r.gw_part + r.dark_part) < 1e-12);
  }
  SUBCASE("Fock states click in proportion to n") {
    const double w0 = hz(60.0);
    const auto grid = FrequencyGrid::symmetric_band(w0, 0.5, 801);
    auto rate = [&](std::uint64_t n) {
      const FockState f(n, w0, Envelope::gaussian(w0, 0.05, 1.0), kArea);
      return ifo_click_rate(p, strain_psd(f, grid)).gw_part;
    };
    const double one = rate(1);
    CHECK(one > 0.0);
    for (std::uint64_t n : {2u, 5u, 10u}) CHECK(rel_err(rate(n), n * one) < 1e-12);
  }
  SUBCASE("gw_part is linear in S_hh and matches the serial path") {
    const double w0 = hz(60.0);
    const auto grid = FrequencyGrid::symmetric_band(w0, 0.5, 801);
    const auto a = coherent_psd(w0, kArea, 1e30, grid);
    const auto b = coherent_psd(w0 + 0.1, kArea, 3e30, grid);
    const double lhs = ifo_click_rate(p, a.scaled(2.0).plus(b)).gw_part;
    const double rhs = 2.0 * ifo_click_rate(p, a).gw_part + ifo_click_rate(p, b).gw_part;
    CHECK(rel_err(lhs, rhs) < 1e-12);
    const auto par = ifo_click_rate(p, a, {}, Execution::parallel);
    const auto ser = ifo_click_rate(p, a, {}, Execution::serial);
    CHECK(rel_err(par.total, ser.total) < 1e-13);
    CHECK(rel_err(par.gw_part, ser.gw_part) < 1e-13);
  }
}

TEST_CASE("source-referenced efficiency") {
  const auto p = aligo();
  const double eta = eta_ifo(p, fiducial_source());
  CHECK(eta >= 5e-74);
  CHECK(eta <= 9e-74);
  SourceGeom half = fiducial_source();
  half.distance *= 0.5;
  CHECK(rel_err(eta_ifo(p, half), 4.0 * eta) < 1e-14);

  // Prefactor-3, F-free form at F = 6/5.
  const double w0 = hz(60.0), r = 100.0 * kMpc;
  const double main_text = 3.0 * kHbar * kG * p.kappa * p.alpha_sq * p.omega_opt * p.omega_opt /
                           (kC * kC * kC * r * r * w0 * (p.kappa * p.kappa + w0 * w0));
  CHECK(rel_err(eta_ifo(p, fiducial_source(1.2)), main_text) < 1e-14);

  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const auto q = random_ifo(rng);
    const double e = eta_ifo(q, {log_uniform(rng, kMpc, 1e3 * kMpc), 1.0,
                                 log_uniform(rng, hz(1.0), hz(1e4)), 1e-22});
    CHECK(e > 0.0);
    CHECK(e < 1.0);
  }

  // Incident efficiency: click coefficient over flux coefficient.
  const double area = 16.0 * kPi * r * r / 5.0;
  const double inc = ifo_incident_efficiency(p, w0, area);
  CHECK(rel_err(inc, 16.0 * kPi * kHbar * kG / (kC * kC * kC * w0 * area) *
                         ifo_strain_gain(p, w0)) < 1e-14);
}
