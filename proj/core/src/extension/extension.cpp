#include "kvb/extension/extension.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "kvb/error.hpp"
#include "kvb/numerics/eigen.hpp"

namespace kvb {
namespace {

num::Matrix hstack(const num::Matrix& a, const num::Matrix& b) {
  num::Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

// Coefficients C with inner = outer·C, or nullopt when span(inner) ⊄ span(outer).
std::optional<num::Matrix> express_in(const num::Matrix& outer, const num::Matrix& inner) {
  if (inner.cols() == 0) return num::Matrix(outer.cols(), 0);
  if (outer.cols() == 0) return std::nullopt;
  if (outer.rows() != inner.rows()) throw Error(ErrorKind::Model, "bases live in different spaces");
  if (num::column_rank(hstack(outer, inner), kSubspaceTol) != num::column_rank(outer, kSubspaceTol))
    return std::nullopt;
  return num::least_squares(outer, inner).coefficients;
}

}  // namespace

ExtensionParameter ExtensionParameter::friedrichs() { return ExtensionParameter(); }

ExtensionParameter ExtensionParameter::operator_on(num::Matrix domain_basis,
                                                   num::SymmetricMatrix form) {
  if (domain_basis.cols() == 0) return friedrichs();
  if (form.dim() != domain_basis.cols())
    throw Error(ErrorKind::Model, "form matrix does not match the domain basis");
  if (num::column_rank(domain_basis, kSubspaceTol) != domain_basis.cols())
    throw Error(ErrorKind::Model, "domain basis columns are linearly dependent");
  ExtensionParameter p;
  p.friedrichs_ = false;
  p.domain_basis_ = std::move(domain_basis);
  p.form_ = std::move(form);
  return p;
}

ExtensionParameter ExtensionParameter::multiplication(num::Matrix domain_basis, double t,
                                                      const num::SymmetricMatrix& gram) {
  num::SymmetricMatrix form = t * gram.congruence(domain_basis);
  return operator_on(std::move(domain_basis), std::move(form));
}

ExtensionParameter TqResult::as_parameter() const {
  return ExtensionParameter::operator_on(domain_basis, q_matrix);
}

TqResult build_q(const DeficiencyModel& model) {
  if (model.v_trivial())
    throw Error(ErrorKind::CriterionViolated,
                "ran(S_F - m)^{1/2} ∩ ker S* = {0}: only the Friedrichs extension is top");
  const double m = model.m_s();
  const num::SymmetricMatrix gram_v = model.gram_v();
  TqResult out{model.v_basis(), m * gram_v + (m * m) * model.weighted_gram(m), std::nullopt};
  if (model.v_dim() == 1) out.t_q_scalar = out.q_matrix(0, 0) / gram_v(0, 0);
  return out;
}

bool is_top_extension(const ExtensionParameter& t, const TqResult& tq, double tol) {
  if (t.is_friedrichs()) return true;
  if (t.domain_basis().rows() != tq.domain_basis.rows())
    throw Error(ErrorKind::Model, "T and q are expressed over different ker S* bases");
  const auto coeffs = express_in(tq.domain_basis, t.domain_basis());
  if (!coeffs) return false;
  const num::SymmetricMatrix q_on_d = tq.q_matrix.congruence(*coeffs);
  const double scale = std::max(t.form().frobenius_norm(), q_on_d.frobenius_norm());
  return num::is_psd(t.form() - q_on_d, tol, scale);
}

bool mu_criterion(const ExtensionParameter& t, const DeficiencyModel& model, double mu, double tol) {
  if (!(mu < model.m_s())) throw Error(ErrorKind::Domain, "mu criterion requires mu < m(S)");
  if (t.is_friedrichs()) return true;
  if (t.domain_basis().rows() != model.dim())
    throw Error(ErrorKind::Model, "T is expressed over a different ker S* basis");
  const auto coeffs = express_in(model.v_basis(), t.domain_basis());
  if (!coeffs)
    throw Error(ErrorKind::CriterionViolated, "D(T) is not contained in V; weighted Gram undefined there");
  const num::SymmetricMatrix norm_term = mu * model.gram_v().congruence(*coeffs);
  const num::SymmetricMatrix resolvent_term = (mu * mu) * model.weighted_gram(mu).congruence(*coeffs);
  const double scale = std::max({t.form().frobenius_norm(), norm_term.frobenius_norm(),
                                 resolvent_term.frobenius_norm()});
  return num::is_psd(t.form() - norm_term - resolvent_term, tol, scale);
}

double krein_bound(double m_s, double m_t) {
  if (!(m_t > -m_s)) throw Error(ErrorKind::Hypothesis, "krein bound requires m(T) > -m(S)");
  return m_s * m_t / (m_s + m_t);
}

VariationalCheck variational_sup_check(const num::SymmetricMatrix& a, std::span<const double> h,
                                       std::size_t samples, std::uint64_t seed) {
  if (h.size() != a.dim()) throw Error(ErrorKind::Model, "h does not match A");
  const num::Cholesky chol(a);
  const num::Vector a_inv_h = chol.solve(h);
  const double closed_form = num::dot(h, a_inv_h);

  auto ratio = [&](std::span<const double> f) {
    const double fh = num::dot(f, h);
    return fh * fh / a.quadratic_form(f);
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  num::Vector f(a.dim());
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& x : f) x = normal(rng);
    best = std::max(best, ratio(f));
  }
  const double at_maximizer = ratio(a_inv_h);
  return VariationalCheck{std::max(best, at_maximizer), closed_form, at_maximizer, best};
}

double form_decomposition_value(double sf_form_of_f, const ExtensionParameter& t,
                                std::span<const double> v) {
  const double v_norm = num::norm2(v);
  if (t.is_friedrichs()) {
    if (v_norm != 0.0) throw Error(ErrorKind::Domain, "Friedrichs form domain has no ker S* component");
    return sf_form_of_f;
  }
  if (v.size() != t.domain_basis().rows())
    throw Error(ErrorKind::Model, "v is expressed over a different ker S* basis");
  if (v_norm == 0.0) return sf_form_of_f;
  const auto fit = num::least_squares(t.domain_basis(), num::Matrix::column(v));
  if (fit.residuals[0] > kSubspaceTol * v_norm) throw Error(ErrorKind::Domain, "v is not in D(T)");
  const num::Vector c = fit.coefficients.col(0);
  return sf_form_of_f + t.form().quadratic_form(c);
}

}  // namespace kvb
