#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fopim/harness/experiment_spec.hpp"

namespace fopim::harness {

std::vector<std::string> preset_names();
/// INI text of a preset; throws ConfigError for unknown names.
std::string preset_text(std::string_view name);
ExperimentSpec preset(std::string_view name);

}  // namespace fopim::harness
