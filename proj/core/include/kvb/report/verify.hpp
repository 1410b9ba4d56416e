#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "kvb/report/report.hpp"

namespace kvb::report {

struct VerifyOptions {
  std::size_t grid = 2000;
  std::set<Example> only;  // empty: every example
};

struct CaseResult {
  std::string id;
  Report report;
  bool passed;
  std::string diagnostic;  // empty when passed
};

/// Runs the verification matrix: least-top parameters, the secular equation,
/// the interval classification against the finite-element oracle, named
/// spectra, FEM convergence, ordering and monotonicity properties, point
/// interaction spectra, Coulomb roots and the variational identity.
/// Results are sorted by case id. A case that throws is reported as failed.
std::vector<CaseResult> run_verification(const VerifyOptions& options);

}  // namespace kvb::report
