#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ppe/harness/config.hpp"

namespace ppe::harness {

/// Registered property suites, in a fixed order.
const std::vector<std::string>& check_suites();

/// Runs one suite and returns {"suite", "pass", "checks": [{name, pass, value, limit}]}.
/// Suites that integrate in time use the config's grid, parameters, source,
/// dt and t_end. Throws ConfigError for an unknown suite name.
nlohmann::json cmd_check(const std::string& suite, const RunConfig& c);

}  // namespace ppe::harness
