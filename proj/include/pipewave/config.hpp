#pragma once

#include <istream>
#include <string>
#include <vector>

#include "pipewave/scenario.hpp"

namespace pipewave {

/// Keys accepted in a scenario config file.
const std::vector<std::string>& config_keys();

/// Parses flat `key = value` text. '#' starts a comment. A `scenario` key
/// picks a preset to start from; otherwise `profile` and the pulse keys are
/// required. Unknown or repeated keys are errors.
Scenario parse_config(std::istream& in);
Scenario load_config(const std::string& path);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace pipewave
