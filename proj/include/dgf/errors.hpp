#pragma once

#include <stdexcept>

namespace dgf {

/// Input data is malformed: wrong shape, negative/NaN entries, unparsable files.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for otherwise
/// well-formed input.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative or generative procedure failed to meet its numeric contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dgf
