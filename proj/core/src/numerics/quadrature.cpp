#include "kvb/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "kvb/error.hpp"

namespace kvb::num {
namespace {

double sample(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y))
    throw Error(ErrorKind::Evaluation, "non-finite integrand at x = " + to_text(x));
  return y;
}

const GaussLegendreNodes& ten_point() {
  static const GaussLegendreNodes rule = gauss_legendre_nodes(10);
  return rule;
}

double gl_panel(const std::function<double(double)>& f, double a, double b,
                const GaussLegendreNodes& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    s += rule.weights[k] * sample(f, mid + half * rule.nodes[k]);
  return half * s;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(std::size_t panels, std::size_t nodes) {
  if (panels < 1) throw Error(ErrorKind::Domain, "quadrature rule needs at least one panel");
  if (nodes < 2 || nodes > 16) throw Error(ErrorKind::Domain, "Gauss-Legendre nodes must be in 2..16");
  return QuadratureRule(QuadratureKind::GaussLegendre, panels, nodes);
}

QuadratureRule QuadratureRule::simpson(std::size_t panels) {
  if (panels < 1) throw Error(ErrorKind::Domain, "quadrature rule needs at least one panel");
  return QuadratureRule(QuadratureKind::Simpson, panels, 3);
}

GaussLegendreNodes gauss_legendre_nodes(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::Domain, "Gauss-Legendre rule needs n >= 1");
  GaussLegendreNodes out{Vector(n), Vector(n)};
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.nodes[i] = -x;
    out.nodes[n - 1 - i] = x;
    out.weights[i] = w;
    out.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) out.nodes[n / 2] = 0.0;
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule) {
  if (!(a < b)) throw Error(ErrorKind::Domain, "integrate: requires a < b");
  const std::size_t panels = rule.panels();
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  if (rule.kind() == QuadratureKind::Simpson) {
    for (std::size_t p = 0; p < panels; ++p) {
      const double x0 = a + width * static_cast<double>(p);
      const double x2 = (p + 1 == panels) ? b : x0 + width;
      total += (x2 - x0) / 6.0 * (sample(f, x0) + 4.0 * sample(f, 0.5 * (x0 + x2)) + sample(f, x2));
    }
    return total;
  }
  const GaussLegendreNodes nodes = gauss_legendre_nodes(rule.nodes_per_panel());
  for (std::size_t p = 0; p < panels; ++p) {
    const double x0 = a + width * static_cast<double>(p);
    const double x1 = (p + 1 == panels) ? b : x0 + width;
    total += gl_panel(f, x0, x1, nodes);
  }
  return total;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, std::size_t max_panels) {
  if (!(a < b)) throw Error(ErrorKind::Domain, "integrate_adaptive: requires a < b");
  if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
    throw Error(ErrorKind::Domain, "integrate_adaptive: a positive tolerance is required");

  struct Panel {
    double a, b, left, right, error;
    double value() const { return left + right; }
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  const auto& rule = ten_point();
  auto make_panel = [&](double lo, double hi, double coarse) {
    const double mid = 0.5 * (lo + hi);
    Panel p{lo, hi, gl_panel(f, lo, mid, rule), gl_panel(f, mid, hi, rule), 0.0};
    p.error = std::abs(p.value() - coarse);
    return p;
  };

  std::priority_queue<Panel> heap;
  heap.push(make_panel(a, b, gl_panel(f, a, b, rule)));
  double total = heap.top().value();
  double error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (heap.size() >= max_panels)
      throw Error(ErrorKind::Convergence, "adaptive quadrature: panel budget exhausted (error estimate " +
                                              std::to_string(error) + ")");
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel l = make_panel(worst.a, mid, worst.left);
    const Panel r = make_panel(mid, worst.b, worst.right);
    heap.push(l);
    heap.push(r);
    total += l.value() + r.value() - worst.value();
    error += l.error + r.error - worst.error;
  }
  return AdaptiveResult{total, error, heap.size()};
}

}  // namespace kvb::num
