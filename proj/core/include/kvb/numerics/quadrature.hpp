#pragma once

#include <cstddef>
#include <functional>

#include "kvb/numerics/matrix.hpp"

namespace kvb::num {

enum class QuadratureKind { GaussLegendre, Simpson };

/// Composite rule: `panels` equal sub-intervals, each integrated with the
/// same fixed-point rule.
class QuadratureRule {
 public:
  /// 2 ≤ nodes ≤ 16.
  static QuadratureRule gauss_legendre(std::size_t panels, std::size_t nodes = 5);
  static QuadratureRule simpson(std::size_t panels);

  QuadratureKind kind() const noexcept { return kind_; }
  std::size_t panels() const noexcept { return panels_; }
  std::size_t nodes_per_panel() const noexcept { return nodes_; }

 private:
  QuadratureRule(QuadratureKind kind, std::size_t panels, std::size_t nodes)
      : kind_(kind), panels_(panels), nodes_(nodes) {}

  QuadratureKind kind_;
  std::size_t panels_;
  std::size_t nodes_;
};

struct GaussLegendreNodes {
  Vector nodes;  // ascending, on [-1, 1]
  Vector weights;
};

/// Nodes and weights of the n-point Gauss–Legendre rule (Newton on P_n).
GaussLegendreNodes gauss_legendre_nodes(std::size_t n);

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule);

struct AdaptiveResult {
  double value;
  double error_estimate;
  std::size_t panels;
};

/// Globally adaptive bisection with a 10-point Gauss–Legendre panel rule.
/// Panels are split until |I(panel) − I(halves)| ≤ max(abs_tol, rel_tol·|I|)
/// scaled by the panel's share of [a, b]; throws ErrorKind::Convergence if
/// the panel budget runs out first.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol = 0.0,
                                  std::size_t max_panels = 1u << 16);

}  // namespace kvb::num
