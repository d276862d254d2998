#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "l1sec/threshold_curves.hpp"

namespace l1sec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point shared by the executable and the tests. Subcommands: curves,
/// tau, simulate, certify.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string curves_csv(const CurveSet& curves);
std::string curves_svg(const CurveSet& curves);

}  // namespace l1sec::cli
