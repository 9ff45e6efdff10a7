#pragma once

#include <string>

#include "autalg/algebra.hpp"

namespace autalg {

// Text format:
//   states q r s
//   letters a b c
//   trans q a r
// '#' starts a comment. Throws ParseError (with line), ConflictingTransition,
// ReservedName.
AutomaticAlgebra parse_algebra_file(const std::string& text);
std::string emit_algebra_file(const AutomaticAlgebra& m);

}  // namespace autalg
