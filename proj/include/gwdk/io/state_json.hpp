#pragma once

#include <optional>

#include <json.hpp>

#include "gwdk/gw_field.hpp"

namespace gwdk::io {

/// Values used when a state spec leaves them out.
struct StateDefaults {
  double carrier;                            ///< rad/s
  std::optional<double> area;                ///< m^2, from the source
  std::optional<double> source_amplitude_sq; ///< |a|^2 implied by the source strain
};

/// Builds a GwState from its JSON description:
///   {"type": "vacuum"}
///   {"type": "coherent", "amplitude_sq": x | "from_source": true,
///    "phase_rad": p, "envelope": {...}}
///   {"type": "fock", "n": k, "envelope": {...}}
/// with optional "carrier_hz"/"carrier_rad_s" and "area_m2". Envelopes are
///   {"kind": "monochromatic", "bin_width_hz": w}
///   {"kind": "gaussian", "sigma_hz": s, "nodes": k}
///   {"kind": "samples", "frequencies_hz": [...], "real": [...], "imag": [...]}
/// centred on the carrier (samples use absolute frequencies). Shaped envelopes
/// are rescaled to the requested power; samples are used as given unless
/// amplitude_sq is set.
GwState state_from_json(const nlohmann::json& spec, const StateDefaults& defaults);

/// Sampled form of a state, readable by state_from_json.
nlohmann::json state_to_json(const GwState& state);

}  // namespace gwdk::io
