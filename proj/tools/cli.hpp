#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace stiefel::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 2 on invalid input, 1 on internal or verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rechecks any JSON document the tool emits. Throws InputError when the
/// document is not one of the known shapes.
bool verify_document(const nlohmann::json& doc);

}  // namespace stiefel::cli
