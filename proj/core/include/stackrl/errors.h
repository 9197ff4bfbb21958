#ifndef STACKRL_ERRORS_H_
#define STACKRL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stackrl {

// Malformed or unusable input data: unreadable files, bad checkpoints,
// sequences outside a vocabulary, invalid configuration values.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation produced NaN/Inf or otherwise diverged.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent tensor shapes while building or evaluating a graph.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace stackrl

#endif  // STACKRL_ERRORS_H_
