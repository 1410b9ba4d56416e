#include "kvb/error.hpp"

#include <cstdio>

namespace kvb {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Factorization: return "factorization";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Search: return "search";
    case ErrorKind::CriterionViolated: return "criterion-violated";
    case ErrorKind::Model: return "model";
    case ErrorKind::Hypothesis: return "hypothesis-violated";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

std::string to_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace kvb
