#pragma once

#include <iosfwd>
#include <string>

#include "strel/grouprep.hpp"

namespace strel {

// Module files are JSON objects:
//
//   {
//     "ring":   {"p": 2, "n": 3},
//     "level":  2,
//     "group":  "cyclic:2"  or  {"order": k, "table": [k*k indices]},
//     "shape":  [2, 1],
//     "action": {"<generator index>": [rank*rank row-major entries], ...}
//   }
//
// The action keys name the generating set; entries may be any nonnegative
// representatives.  Malformed documents raise ParseError, well-formed ones
// that violate a module law raise ConstraintError.  Writing is byte
// deterministic: keys are sorted and generators written in stored order.
GModule read_module(std::istream& in);
GModule read_module_file(const std::string& path);

std::string write_module(const GModule& M);
void write_module_file(const GModule& M, const std::string& path);

}  // namespace strel
