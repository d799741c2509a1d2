#pragma once

#include <stdexcept>
#include <string>

namespace hypvoro {

// Bad parameters or malformed inputs. Messages start with the offending
// parameter name. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive algorithm was asked to exceed its hard size cap. The CLI maps
// this to exit code 3.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline void guard(bool cond, const std::string& msg) {
  if (!cond) throw GuardError(msg);
}

}  // namespace hypvoro
