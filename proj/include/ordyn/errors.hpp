#pragma once

#include <stdexcept>
#include <string>

namespace ordyn {

// Error taxonomy shared by the library and the CLI exit-code mapping.
// domain_error:       an input value is outside the operation's domain
// precondition_error: a stated operation precondition failed
// capacity_error:     input exceeds a configured size limit
// divergence_error:   an iterative search detected an unbounded objective
// parse_error:        malformed config / serialized object
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ordyn
