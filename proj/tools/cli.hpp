#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clarklab::cli {

/// Exit codes: 0 pass, 1 numeric verdict failed, 2 usage or input error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitUsage = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV cell: scientific notation for 0 < |x| < 1e-4, plain otherwise.
std::string csv_number(double x);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace clarklab::cli
