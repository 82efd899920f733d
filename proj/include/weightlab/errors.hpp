#pragma once

#include <stdexcept>
#include <string>

namespace weightlab {

// A weight has a zero cell where the requested operation needs a positive
// one (dual weights, A_p products, BMO integrands with negative powers).
// The epsilon-regularized dual path is the supported workaround.
class DegenerateWeightError : public std::runtime_error {
 public:
  explicit DegenerateWeightError(const std::string& what)
      : std::runtime_error(what) {}
};

// A hypothesis of the inequality being exercised does not hold for the
// supplied inputs (e.g. a divergent target integral for a scaling average).
class HypothesisViolationError : public std::runtime_error {
 public:
  explicit HypothesisViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

// DSL / file parsing failure; the message names the offending token.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace weightlab
