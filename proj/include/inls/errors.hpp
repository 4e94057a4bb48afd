#pragma once

#include <stdexcept>
#include <string>

namespace inls {

/// Malformed user input: unparsable numbers, unknown config keys, bad grids.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem's hypotheses (or an operation's exponent preconditions) fail.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& condition, const std::string& detail)
      : std::runtime_error("hypothesis violated: " + condition +
                           (detail.empty() ? "" : " (" + detail + ")")),
        condition_(condition) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or a singular linear solve during time stepping.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace inls
