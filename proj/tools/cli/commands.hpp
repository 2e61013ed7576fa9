#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mlthresh/thresholder.hpp"

namespace mlthresh::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int {
    kSuccess = 0,
    kIoFailure = 1,
    kUsageError = 2,
};

/// Runs one CLI invocation; `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Parses "k1:k2,k1:k2,..."; a bare "k" means k:k. Throws
/// std::invalid_argument on malformed input.
std::vector<KappaPair> parse_kappa_schedule(const std::string& text);

/// "77, 128, 172"
std::string join_thresholds(std::span<const Intensity> thresholds, const char* separator = ", ");

}  // namespace mlthresh::cli
