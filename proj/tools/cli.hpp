#pragma once

#include <filesystem>
#include <ostream>

namespace regaudit::cli {

/// Exit codes: 0 clean, 1 input error, 2 audit flags raised.
inline constexpr int kExitClean = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFlagged = 2;

/// Bundled data directory: $REGAUDIT_ASSETS if set, else the compiled-in default.
std::filesystem::path assets_dir();

/// Whole command line in, rendered report out. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace regaudit::cli
