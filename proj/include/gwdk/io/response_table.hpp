#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwdk/bar.hpp"
#include "gwdk/ifo.hpp"

namespace gwdk::io {

enum class Readout { homodyne, absorptive };
enum class FieldState { coherent, fock };

struct ResponseRow {
  std::string detector;  ///< "interferometer" or "bar"
  Readout readout;
  FieldState state;
  double chain_response;  ///< |mean output| at the carrier, or the GW click rate
  double scaling_value;   ///< sqrt(eta) |a|, eta |a|^2, eta n, or 0
  double ratio;           ///< response / scaling (0 when both vanish)
};

struct ResponseInputs {
  IfoParams ifo;
  BarParams bar;
  double ifo_carrier;  ///< rad/s
  double bar_carrier;  ///< rad/s
  double area;         ///< m^2
  double coherent_amplitude;
  std::uint64_t fock_n;
  double bin_width;  ///< rad/s
};

/// Eight rows: {coherent, Fock} x {homodyne, absorptive} x {interferometer,
/// bar}, ordered coherent-homodyne, coherent-absorptive, Fock-homodyne,
/// Fock-absorptive with the interferometer first in each pair. States are
/// single-bin envelopes at the carrier; eta is the incident efficiency.
std::vector<ResponseRow> build_response_table(const ResponseInputs& in,
                                              Execution exec = Execution::parallel);

std::string to_string(Readout r);
std::string to_string(FieldState s);

}  // namespace gwdk::io
