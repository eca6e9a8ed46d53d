#pragma once

#include <numbers>

namespace gwdk {

/// Physical constants (SI, CODATA 2018). One immutable shared instance,
/// `kCodata`, is used by every operation in the library.
struct Constants {
  double G;     ///< m^3 kg^-1 s^-2
  double c;     ///< m / s
  double hbar;  ///< J s
};

inline constexpr Constants kCodata{6.67430e-11, 299792458.0, 1.054571817e-34};

namespace units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double parsec_m = 3.0856775814913673e16;
inline constexpr double megaparsec_m = 1.0e6 * parsec_m;
inline constexpr double solar_mass_kg = 1.98847e30;

// Angular frequency (rad/s) is the internal unit everywhere. Hz only
// appears at the configuration boundary.
constexpr double hz_to_rad_per_s(double hz) { return two_pi * hz; }
constexpr double rad_per_s_to_hz(double omega) { return omega / two_pi; }

// Unit labels carried by Spectrum values.
inline constexpr const char* kStrainPsd = "strain^2 s";
inline constexpr const char* kQuadraturePsd = "quanta";
inline constexpr const char* kZeroPointPsd = "zpm^2 s";

}  // namespace units
}  // namespace gwdk
