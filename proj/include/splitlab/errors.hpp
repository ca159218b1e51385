#pragma once

#include <stdexcept>
#include <string>

namespace splitlab {

// Bad input or violated precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured ceiling or scan budget was exhausted, or an intermediate
// value left the representable range.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction produced something that failed its own post-check.
// Always a bug; never returned silently.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace splitlab
