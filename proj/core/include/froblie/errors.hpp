#pragma once

#include <stdexcept>
#include <string>

namespace froblie {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: out-of-range indices, ragged tables, bad parameters.
struct StructuralError : Error {
  using Error::Error;
};

// A documented precondition was violated by the caller.
struct ContractError : Error {
  using Error::Error;
};

// A computation would exceed the configured caps. Carries the counts that
// blew the budget so callers can report them.
struct ResourceError : Error {
  ResourceError(const std::string& what, std::uint64_t would_be, std::uint64_t cap)
      : Error(what + " (required " + std::to_string(would_be) + ", cap " +
              std::to_string(cap) + ")"),
        required(would_be),
        cap(cap) {}
  std::uint64_t required;
  std::uint64_t cap;
};

// Inputs outside the implemented fragment (e.g. a group whose lower central
// factors are not elementary abelian).
struct UnsupportedInstanceError : Error {
  using Error::Error;
};

}  // namespace froblie
