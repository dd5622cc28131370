#pragma once

#include <stdexcept>

namespace trusskit {

// Malformed or inconsistent input. CLI exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input with no mathematical answer (flexible truss, degenerate
// triangle, incompatible data). CLI exit code 2.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trusskit
