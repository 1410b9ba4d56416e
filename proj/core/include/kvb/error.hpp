#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kvb {

enum class ErrorKind {
  Bracket,            // endpoints of a bracket do not straddle a sign change
  Evaluation,         // a function returned a non-finite value
  Domain,             // argument outside the domain of the operation
  Factorization,      // matrix not positive definite / singular
  Convergence,        // iteration or truncation tolerance not met
  Pole,               // evaluation too close to a singularity
  Search,             // bracket scan exhausted its budget
  CriterionViolated,  // ran(S_F - m)^{1/2} ∩ ker S* is trivial on the requested subspace
  Model,              // inconsistent dimensions or bases
  Hypothesis,         // theorem hypothesis not satisfied
  Precondition,       // caller-supplied data violates a documented precondition
  Unsupported,        // combination not representable by the implementation
};

std::string_view to_string(ErrorKind kind) noexcept;

/// %.6g, for numbers in diagnostics.
std::string to_text(double x);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kvb
