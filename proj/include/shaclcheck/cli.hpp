#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shaclcheck {

// Runs one CLI invocation; `args` excludes the program name. Returns the
// process exit code: 0 positive answer or plain success, 1 negative answer
// with evidence printed, 2 unknown at the refutation bound, 3 usage or
// input error. The `SHACLCHECK_BOUND` environment variable overrides the
// default refutation bound; an explicit --bound flag overrides both.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace shaclcheck
