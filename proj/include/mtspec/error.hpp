#pragma once

#include <stdexcept>
#include <string>

namespace mtspec {

/// Invalid argument value (bad length, halfwidth out of range, dimension mismatch).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index outside its admissible range, e.g. taper index k > N.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A numerical routine failed to meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtspec
