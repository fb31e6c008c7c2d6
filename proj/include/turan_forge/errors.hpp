#pragma once

#include <stdexcept>
#include <string>

namespace tf {

// Bad parameters or malformed input. The CLI maps this to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal guarantee failed (a certificate did not verify, a builder's
// output is not rich/good). Exit status 2.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed its cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tf
