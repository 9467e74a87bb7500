#pragma once

#include <stdexcept>
#include <string>

namespace osm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem failed validation. The full violation list travels with
// ValidationFailed (see model.hpp); this base carries the summary.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A utility transformation that is not strictly increasing, negative at
// rank 1, malformed, or evaluated outside its domain.
class TransformError : public Error {
 public:
  using Error::Error;
};

// A brute-force or size guard refused to run.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// A matching that violates capacities or does not fit the instance.
class InvalidMatching : public Error {
 public:
  using Error::Error;
};

// Lookup of a student or school id that does not exist.
class UnknownId : public Error {
 public:
  using Error::Error;
};

// The assignment kernel exceeded its iteration cap.
class KernelError : public Error {
 public:
  using Error::Error;
};

}  // namespace osm
