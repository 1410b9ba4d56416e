#include "kvb/fem/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kvb/error.hpp"
#include "kvb/numerics/quadrature.hpp"

namespace kvb::fem {
namespace {

using interval::Complex;

double real_coupling(Complex c) {
  if (c.imag() != 0.0) {
    throw Error(ErrorKind::Unsupported, "complex coupling c has no real symmetric assembly");
  }
  return c.real();
}

struct Layout {
  std::size_t dim;
  std::vector<NodeMap> nodes;
  BoundaryForm boundary;
};

// Free nodes first..last map to consecutive dofs; the others are pinned.
std::vector<NodeMap> consecutive(std::size_t n, std::size_t first, std::size_t last) {
  std::vector<NodeMap> nodes(n + 1, NodeMap{NodeMap::kPinned, 0.0});
  for (std::size_t i = first; i <= last; ++i) nodes[i] = {i - first, 1.0};
  return nodes;
}

// g(1) = c g(0): node n becomes c times dof 0.
Layout identified(std::size_t n, double c, double b0) {
  Layout l{n, consecutive(n, 0, n - 1), {b0, 0.0, 0.0}};
  l.nodes[n] = {0, c};
  return l;
}

Layout layout(std::size_t n, const OracleBc& bc) {
  struct Visitor {
    std::size_t n;
    Layout operator()(const interval::TwoDim& p) const {
      return {n + 1, consecutive(n, 0, n), {p.b1, p.b2, real_coupling(p.c)}};
    }
    Layout operator()(const interval::OneDimA& p) const {
      return identified(n, real_coupling(p.c), p.b1);
    }
    Layout operator()(const interval::OneDimB& p) const {
      return {n, consecutive(n, 1, n), {0.0, p.b1, 0.0}};
    }
    Layout operator()(const interval::Dirichlet&) const {
      return {n - 1, consecutive(n, 1, n - 1), {}};
    }
    Layout operator()(const Periodic&) const { return identified(n, 1.0, 0.0); }
    Layout operator()(const AntiPeriodicRobin& p) const { return identified(n, -1.0, p.b); }
  };
  return std::visit(Visitor{n}, bc);
}

}  // namespace

std::vector<double> DiscreteOperator::nodal_values(std::span<const double> dofs) const {
  if (dofs.size() != dim()) throw Error(ErrorKind::Model, "coefficient vector has wrong size");
  std::vector<double> g(nodes.size(), 0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].dof != NodeMap::kPinned) g[i] = nodes[i].scale * dofs[nodes[i].dof];
  }
  return g;
}

DiscreteOperator assemble(std::size_t n, const OracleBc& bc) {
  if (n < kMinGrid) {
    throw Error(ErrorKind::Precondition,
                "grid needs at least " + std::to_string(kMinGrid) + " intervals, got " +
                    std::to_string(n));
  }
  Layout l = layout(n, bc);
  const double h = 1.0 / static_cast<double>(n);
  const double k_loc[2][2] = {{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}};
  const double m_loc[2][2] = {{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}};

  num::CyclicTridiagonal stiffness(l.dim);
  num::CyclicTridiagonal mass(l.dim);
  for (std::size_t e = 0; e < n; ++e) {
    const NodeMap local[2] = {l.nodes[e], l.nodes[e + 1]};
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        if (local[a].dof == NodeMap::kPinned || local[b].dof == NodeMap::kPinned) continue;
        const double s = local[a].scale * local[b].scale;
        const std::size_t i = local[a].dof;
        const std::size_t j = local[b].dof;
        // add() writes (i,j) and (j,i) together; a diagonal entry reached by
        // both local nodes gets the cross term twice.
        const double twice = (a != b && i == j) ? 2.0 : 1.0;
        stiffness.add(i, j, twice * s * k_loc[a][b]);
        mass.add(i, j, twice * s * m_loc[a][b]);
      }
    }
  }

  // Boundary terms, mapped through the node constraints.
  const NodeMap left = l.nodes[0];
  const NodeMap right = l.nodes[n];
  const BoundaryForm& bf = l.boundary;
  if (left.dof != NodeMap::kPinned && bf.b0 != 0.0) {
    stiffness.add(left.dof, left.dof, bf.b0 * left.scale * left.scale);
  }
  if (right.dof != NodeMap::kPinned && bf.b1 != 0.0) {
    stiffness.add(right.dof, right.dof, bf.b1 * right.scale * right.scale);
  }
  if (left.dof != NodeMap::kPinned && right.dof != NodeMap::kPinned && bf.c != 0.0) {
    const double twice = left.dof == right.dof ? 2.0 : 1.0;
    stiffness.add(left.dof, right.dof, twice * bf.c * left.scale * right.scale);
  }
  return {n, bc, std::move(l.nodes), bf, std::move(stiffness), std::move(mass)};
}

std::vector<double> lowest_eigenvalues(const DiscreteOperator& op, std::size_t k) {
  if (k == 0 || k > op.dim()) {
    throw Error(ErrorKind::Domain, "requested " + std::to_string(k) + " eigenvalues of a " +
                                       std::to_string(op.dim()) + "-dimensional problem");
  }
  return num::lowest_pencil_eigenvalues(op.stiffness, op.mass, k);
}

double form_by_quadrature(const DiscreteOperator& op, std::span<const double> dofs) {
  const std::vector<double> g = op.nodal_values(dofs);
  const double h = 1.0 / static_cast<double>(op.n);
  auto slope_sq = [&g, h, n = op.n](double x) {
    const auto e = std::min(static_cast<std::size_t>(x / h), n - 1);
    const double d = (g[e + 1] - g[e]) / h;
    return d * d;
  };
  const double interior = num::integrate(slope_sq, 0.0, 1.0, num::QuadratureRule::gauss_legendre(op.n, 2));
  const BoundaryForm& bf = op.boundary;
  const double g0 = g.front();
  const double g1 = g.back();
  return interior + bf.b0 * g0 * g0 + bf.b1 * g1 * g1 + 2.0 * bf.c * g0 * g1;
}

namespace {

OracleReport compare(const OracleBc& bc, double analytic, std::size_t n, std::size_t k) {
  const DiscreteOperator coarse = assemble(n, bc);
  const DiscreteOperator fine = assemble(2 * n, bc);
  const std::size_t kk = std::min(k, coarse.dim());
  std::vector<double> lowest = lowest_eigenvalues(coarse, std::max<std::size_t>(kk, 1));
  const double fine_bottom = lowest_eigenvalues(fine, 1).front();
  const double err = std::abs(analytic - lowest.front());
  const double err_fine = std::abs(analytic - fine_bottom);
  const double order = (err > 0.0 && err_fine > 0.0) ? std::log2(err / err_fine)
                                                     : std::numeric_limits<double>::quiet_NaN();
  return {analytic, lowest.front(), err, n, order, std::move(lowest)};
}

}  // namespace

OracleReport verify_interval(double b, std::size_t n, std::size_t k) {
  const double analytic = interval::classify(b).bottom;
  return compare(AntiPeriodicRobin{b}, analytic, n, k);
}

OracleReport verify_named(interval::NamedExtension name, std::size_t n, std::size_t k) {
  const double analytic = interval::named_extension_spectrum(name, interval::kBottom).bottom;
  switch (name) {
    case interval::NamedExtension::Periodic: return compare(Periodic{}, analytic, n, k);
    case interval::NamedExtension::AntiPeriodic: return compare(AntiPeriodicRobin{0.0}, analytic, n, k);
    case interval::NamedExtension::Dirichlet: return compare(interval::Dirichlet{}, analytic, n, k);
  }
  throw Error(ErrorKind::Domain, "unknown named extension");
}

}  // namespace kvb::fem
