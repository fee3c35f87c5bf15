#pragma once

#include <stdexcept>
#include <string>

namespace cha {

/// A precondition on an argument was violated.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method failed to converge, or an accuracy target was missed.
class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A root bracket did not contain a sign change.
class BracketFailure : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

/// Results disagree with an invariant that must hold for valid input
/// (wrong node count, negative Fisher information, ...).
class ConsistencyFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace cha
