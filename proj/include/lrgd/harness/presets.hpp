#ifndef LRGD_HARNESS_PRESETS_HPP
#define LRGD_HARNESS_PRESETS_HPP

#include "lrgd/harness/config.hpp"

namespace lrgd::harness {

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

}  // namespace lrgd::harness

#endif
