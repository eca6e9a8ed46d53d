#include "gwdk/io/response_table.hpp"

#include <cmath>
#include <functional>

#include "gwdk/error.hpp"
#include "gwdk/gw_field.hpp"

namespace gwdk::io {
namespace {

struct Chain {
  std::string name;
  double carrier;
  double eta;
  // |mean output| at the carrier node and GW click rate for a given state.
  std::function<double(const GwState&, const FrequencyGrid&)> homodyne;
  std::function<double(const GwState&, const FrequencyGrid&)> absorptive;
};

double at_carrier(const FrequencySeries& s, double carrier) {
  const auto i = s.grid.find(carrier);
  require(i.has_value(), "response grid has no node at the carrier");
  return std::abs(s.values[*i]);
}

double ratio(double response, double scaling) {
  if (scaling == 0.0 && response == 0.0) return 0.0;
  return response / scaling;
}

}  // namespace

std::string to_string(Readout r) { return r == Readout::homodyne ? "homodyne" : "absorptive"; }
std::string to_string(FieldState s) { return s == FieldState::coherent ? "coherent" : "fock"; }

std::vector<ResponseRow> build_response_table(const ResponseInputs& in, Execution exec) {
  require(in.coherent_amplitude >= 0.0, "coherent amplitude must be >= 0");
  require(in.bin_width > 0.0, "bin width must be positive");

  std::vector<Chain> chains;
  chains.push_back(
      {"interferometer", in.ifo_carrier, ifo_incident_efficiency(in.ifo, in.ifo_carrier, in.area),
       [&](const GwState& s, const FrequencyGrid& g) {
         return at_carrier(ifo_homodyne_mean(in.ifo, mean_strain(s, g), exec), in.ifo_carrier);
       },
       [&](const GwState& s, const FrequencyGrid& g) {
         return ifo_click_rate(in.ifo, strain_psd(s, g), {}, exec).gw_part;
       }});
  chains.push_back(
      {"bar", in.bar_carrier, bar_incident_efficiency(in.bar, in.bar_carrier, in.area),
       [&](const GwState& s, const FrequencyGrid& g) {
         return at_carrier(bar_homodyne_mean(in.bar, mean_strain(s, g), in.bar_carrier, exec).mean,
                           in.bar_carrier);
       },
       [&](const GwState& s, const FrequencyGrid& g) {
         return bar_click_rate(in.bar, strain_psd(s, g), in.bar_carrier, exec).gw_part;
       }});

  std::vector<ResponseRow> rows;
  for (FieldState fs : {FieldState::coherent, FieldState::fock}) {
    for (Readout ro : {Readout::homodyne, Readout::absorptive}) {
      for (const auto& chain : chains) {
        // Five nodes per side spaced by one bin, centred on the carrier.
        const auto grid = FrequencyGrid::symmetric_band(chain.carrier, 2.0 * in.bin_width, 5);
        const GwState state =
            fs == FieldState::coherent
                ? GwState(CoherentState(chain.carrier,
                                        Envelope::monochromatic(chain.carrier, in.bin_width,
                                                                in.coherent_amplitude),
                                        in.area))
                : GwState(FockState(in.fock_n, chain.carrier,
                                    Envelope::monochromatic(chain.carrier, in.bin_width, 1.0),
                                    in.area));
        const double response =
            ro == Readout::homodyne ? chain.homodyne(state, grid) : chain.absorptive(state, grid);
        double scaling = 0.0;
        if (fs == FieldState::coherent) {
          scaling = ro == Readout::homodyne
                        ? std::sqrt(chain.eta) * in.coherent_amplitude
                        : chain.eta * in.coherent_amplitude * in.coherent_amplitude;
        } else if (ro == Readout::absorptive) {
          scaling = chain.eta * static_cast<double>(in.fock_n);
        }
        rows.push_back({chain.name, ro, fs, response, scaling, ratio(response, scaling)});
      }
    }
  }
  return rows;
}

}  // namespace gwdk::io
