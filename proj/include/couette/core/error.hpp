#pragma once

#include <stdexcept>
#include <string>

namespace couette {

// Bad input: wrong dimensions, out-of-range parameters, malformed config.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The computation itself went wrong: NaN, CFL breakdown, remap loss, boundary leak.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace couette
