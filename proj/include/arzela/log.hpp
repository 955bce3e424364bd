#pragma once

#include <string>

namespace arzela {

/// Verbosity from the ARZELA_LOG environment variable: unset/0 silent,
/// 1 info, 2 debug. Messages go to stderr.
int log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace arzela
