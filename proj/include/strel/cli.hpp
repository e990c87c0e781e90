#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strel {

// Parses the argument list and runs one CLI verb (construct, op, verify,
// support, primes).  Returns the process exit code: 0 for success / all
// checks passing, 1 for a failed or undecided predicate or check, 2 for
// malformed input or usage errors, 3 for lawful input that violates a
// constraint.  Output and diagnostics go to the supplied streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Convenience overload for main(): forwards argv to the stream variant with
// std::cout / std::cerr.
int run_cli(int argc, char** argv);

}  // namespace strel
