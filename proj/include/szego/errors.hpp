#pragma once

#include <stdexcept>
#include <string>

namespace szego {

/// A caller broke an operation's precondition (bad level, same-orbit points, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed manifold description or configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankDeficiencyError : public NumericalError {
 public:
  RankDeficiencyError(const std::string& what, int pivot) : NumericalError(what), pivot_(pivot) {}
  int pivot() const { return pivot_; }

 private:
  int pivot_;
};

}  // namespace szego
