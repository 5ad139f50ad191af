#pragma once

#include <stdexcept>

namespace pcs {

// Malformed input document (bad JSON shape, wrong types, unknown keys).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates a domain invariant or an operation precondition.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded (hypergraph expansion, oracle size).
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iteration cap was hit; signals numerical trouble, not a user error.
struct IterationLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal contract. Must never fire on valid input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pcs
