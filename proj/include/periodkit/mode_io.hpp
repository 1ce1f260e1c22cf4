#pragma once

#include <stdexcept>
#include <string>

#include "periodkit/spectral.hpp"

// JSON input for mode systems: {"alpha": <number>, "lambdas": [<numbers>]}.
// Structural problems (unreadable file, malformed JSON, wrong field types)
// raise mode_io_error; semantic problems (nonpositive alpha, unsorted
// eigenvalues) surface as std::invalid_argument from validation.
namespace periodkit::mode_io {

struct mode_io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

spectral::ModeSystem parse_mode_system(const std::string& json_text);
spectral::ModeSystem load_mode_system(const std::string& path);

}  // namespace periodkit::mode_io
