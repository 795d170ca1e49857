#pragma once

#include <string>

#include "ppe/harness/config.hpp"

namespace ppe::harness {

/// Collects the persisted run records, sweep and check results under
/// output_dir/experiment_id into report.txt and returns its text. Throws
/// ConfigError when nothing has been written there yet.
std::string cmd_report(const RunConfig& c);

}  // namespace ppe::harness
