#pragma once

// Conforming piecewise-linear finite elements for −d²/dx² on (0,1), built
// from the quadratic form of each boundary-condition class:
//   (bc2)  ∫|g′|² + b1 g(0)² + b2 g(1)² + 2c g(0)g(1)   on H¹
//   (bc1a) ∫|g′|² + b1 g(0)²                           on {g(1) = c g(0)}
//   (bc1b) ∫|g′|² + b1 g(1)²                           on {g(0) = 0}
//   (bc0)  ∫|g′|²                                      on H¹₀
// Only real c is supported.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "kvb/interval/laplacian.hpp"
#include "kvb/numerics/eigen.hpp"

namespace kvb::fem {

struct Periodic {};
/// g(1) = −g(0), g′(0) + g′(1) = b g(0).
struct AntiPeriodicRobin {
  double b;
};

using OracleBc = std::variant<interval::TwoDim, interval::OneDimA, interval::OneDimB,
                              interval::Dirichlet, Periodic, AntiPeriodicRobin>;

inline constexpr std::size_t kMinGrid = 8;
inline constexpr std::size_t kDefaultGrid = 2000;

/// Where grid node i lives after the boundary constraints: degree of freedom
/// `dof` times `scale`, or pinned to zero.
struct NodeMap {
  static constexpr std::size_t kPinned = static_cast<std::size_t>(-1);
  std::size_t dof;
  double scale;
};

/// Boundary part of the form: b0 g(0)² + b1 g(1)² + 2 c g(0) g(1).
struct BoundaryForm {
  double b0 = 0.0;
  double b1 = 0.0;
  double c = 0.0;
};

struct DiscreteOperator {
  std::size_t n;  // grid intervals, h = 1/n
  OracleBc bc;
  std::vector<NodeMap> nodes;  // size n + 1
  BoundaryForm boundary;
  num::CyclicTridiagonal stiffness;
  num::CyclicTridiagonal mass;

  std::size_t dim() const noexcept { return stiffness.dim(); }
  /// Nodal values g(x_i) of the finite-element function with these coefficients.
  std::vector<double> nodal_values(std::span<const double> dofs) const;
};

/// Throws ErrorKind::Precondition for n < 8 and ErrorKind::Unsupported for
/// complex c.
DiscreteOperator assemble(std::size_t n, const OracleBc& bc);

/// The k smallest generalized eigenvalues of (stiffness, mass), ascending.
std::vector<double> lowest_eigenvalues(const DiscreteOperator& op, std::size_t k);

/// ∫|g_h′|² + boundary terms for the finite-element function g_h, evaluated by
/// element-wise quadrature of the nodal interpolant (not through the matrices).
double form_by_quadrature(const DiscreteOperator& op, std::span<const double> dofs);

struct OracleReport {
  double analytic_bottom;
  double discrete_bottom;
  double abs_error;
  std::size_t grid;
  double convergence_order;  // log2 of the error ratio between grids n and 2n
  std::vector<double> discrete_lowest;
};

/// AntiPeriodicRobin(b) against the secular bottom of t = 3b + 12.
OracleReport verify_interval(double b, std::size_t n = kDefaultGrid, std::size_t k = 6);

/// Periodic, AntiPeriodicRobin(0) or Dirichlet against the closed-form bottoms.
OracleReport verify_named(interval::NamedExtension name, std::size_t n = kDefaultGrid,
                          std::size_t k = 6);

}  // namespace kvb::fem
