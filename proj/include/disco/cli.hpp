#pragma once

#include <cstdint>
#include <iosfwd>

namespace disco::cli {

/// Process exit statuses of disco_rmt.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  ///< a theorem-backed check did not hold
  kUsage = 2,        ///< bad flags or configuration
  kIo = 3,           ///< output could not be written
};

/// Seed used when neither --seed nor DISCO_RMT_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Runs one disco_rmt command. Data goes to the -o file (or `out` when no file
/// is given); progress and summaries go to `log`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace disco::cli
