#pragma once

#include <stdexcept>
#include <string>

namespace tritcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A table, instance or enumeration would exceed the desk-scale caps.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Arity / block / size disagreement between inputs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input violates an operation's precondition (unfolded table, wrong
// predicate kind, non d-to-1 map, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tritcert
