#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace pointnls::io {

/// Closed-form reference values. Parameters: p (default 5), A (default 1), t (default 1).
/// Throws std::invalid_argument for unknown names.
nlohmann::json oracle(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> oracle_names();

}  // namespace pointnls::io
