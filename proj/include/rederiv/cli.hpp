#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rederiv {

/// Command-line front end. `args` excludes the program name.
///
/// Exit codes: 0 accept/equivalent/success, 1 reject/counterexample/closure
/// failure, 2 usage errors and exceeded caps, 3 capability errors (an
/// operator lacks the rule or empty-word decision the command needs).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rederiv
