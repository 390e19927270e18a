#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcone::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kVerified = 0,   ///< verified / feasible / positive
  kRefuted = 1,    ///< refuted / infeasible / not positive / lemma mismatch
  kUndecided = 2,  ///< all tests pass but the ampleness criterion is not known to apply
  kUsage = 3,      ///< bad flags, malformed input files or rationals
};

/// Runs the fcone command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcone::cli
