// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "irsopt/model.hpp"

namespace irsopt {

/// Parses "cp" or "dp:L". Throws std::invalid_argument on anything else.
PhaseAlphabet parse_alphabet(const std::string& spec);
std::string alphabet_name(const PhaseAlphabet& alphabet);

/// Loads a flat JSON config. Unknown keys are rejected. Powers are given in
/// dBm (sigma2_dbm, p_max_dbm) and path-loss gains in dB; conversion to watts
/// and linear gains happens here, once. The preset name "reference_default" is
/// accepted in place of a file path.
SystemConfig load_config(const std::string& path_or_preset);

/// Serializes a config back to the same JSON schema (powers in dBm, gains in dB).
std::string config_to_json(const SystemConfig& config);

}  // namespace irsopt
