#pragma once

#include <stdexcept>
#include <string>

namespace dhl {

/// Raised when an operation's documented precondition does not hold.
/// The CLI maps it to exit status 1.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File-system and format failures (exit status 2).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw precondition_error(what);
}

}  // namespace dhl
