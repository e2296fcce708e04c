#pragma once

// Flat `key = value` configuration covering every TrackConfig / SbParams / KalmanNoise
// field. Blank lines and `#` comments are ignored; unknown keys are errors.

#include <iosfwd>
#include <string>
#include <vector>

#include "fxmot/track.hpp"

namespace fxmot::cli {

const std::vector<std::string>& config_keys();

// Applies one key. Throws ParseError (line 0) for unknown keys or bad values.
void apply_config_value(TrackConfig& cfg, const std::string& key, const std::string& value);

// Starts from the defaults in TrackConfig. Throws ParseError with line numbers.
TrackConfig read_config(std::istream& in);

void write_config(std::ostream& out, const TrackConfig& cfg);

}  // namespace fxmot::cli
