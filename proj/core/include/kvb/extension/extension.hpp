#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "kvb/extension/deficiency_model.hpp"
#include "kvb/numerics/matrix.hpp"

namespace kvb {

inline constexpr double kDefaultPsdTol = 1e-10;
inline constexpr double kSubspaceTol = 1e-10;

/// Label T of a self-adjoint extension S_T: a self-adjoint operator on a
/// subspace D(T) ⊆ ker S*, or the Friedrichs marker (D[T] = {0}, "T = ∞").
///
/// The operator is stored through its form matrix ⟨d_i, T d_j⟩ on the
/// columns d_i of `domain_basis` (coefficients in the ker S* basis), which is
/// symmetric for any basis, orthonormal or not.
class ExtensionParameter {
 public:
  static ExtensionParameter friedrichs();
  /// Throws ErrorKind::Model if the columns are dependent or sizes disagree.
  static ExtensionParameter operator_on(num::Matrix domain_basis, num::SymmetricMatrix form);
  /// T = t·𝟙 on span(domain_basis); `gram` is the ker S* Gram matrix.
  static ExtensionParameter multiplication(num::Matrix domain_basis, double t,
                                           const num::SymmetricMatrix& gram);

  bool is_friedrichs() const noexcept { return friedrichs_; }
  const num::Matrix& domain_basis() const noexcept { return domain_basis_; }
  const num::SymmetricMatrix& form() const noexcept { return form_; }
  std::size_t domain_dim() const noexcept { return domain_basis_.cols(); }

 private:
  ExtensionParameter() = default;

  bool friedrichs_ = true;
  num::Matrix domain_basis_;
  num::SymmetricMatrix form_;
};

/// The least-top form q[v] = m‖v‖² + m²‖(S_F − m)^{-1/2} v‖² on D[q] = V.
struct TqResult {
  num::Matrix domain_basis;          // V-basis, in ker S* coefficients
  num::SymmetricMatrix q_matrix;     // q in that basis
  std::optional<double> t_q_scalar;  // q[v]/‖v‖² when dim V = 1

  /// T_q itself as an extension parameter.
  ExtensionParameter as_parameter() const;
};

/// Throws ErrorKind::CriterionViolated when V is trivial: then the Friedrichs
/// extension is the only one with the Friedrichs lower bound.
TqResult build_q(const DeficiencyModel& model);

/// True iff T is the Friedrichs marker, or D(T) ⊆ D[q] and T − q is positive
/// semidefinite on D(T) up to tol relative to max(‖T‖, ‖q|_D(T)‖). The
/// boundary case T = T_q counts as top.
bool is_top_extension(const ExtensionParameter& t, const TqResult& tq, double tol = kDefaultPsdTol);

/// ⟨v,Tv⟩ ≥ μ‖v‖² + μ²⟨v,(S_F − μ)⁻¹v⟩ on D(T), which holds iff m(S_T) ≥ μ.
/// Requires mu < m(S) (ErrorKind::Domain) and D(T) ⊆ V
/// (ErrorKind::CriterionViolated).
bool mu_criterion(const ExtensionParameter& t, const DeficiencyModel& model, double mu,
                  double tol = kDefaultPsdTol);

/// m(S)·m(T)/(m(S) + m(T)), a lower bound for m(S_T) when m(T) > −m(S).
/// Throws ErrorKind::Hypothesis otherwise.
double krein_bound(double m_s, double m_t);

struct VariationalCheck {
  double sup_estimate;     // max over the random trials and the maximiser
  double closed_form;      // ⟨h, A⁻¹h⟩
  double maximizer_value;  // ratio at f = A⁻¹h
  double best_random;      // largest ratio among the random trials
};

/// Monte-Carlo check of sup_f |⟨f,h⟩|²/⟨f,Af⟩ = ⟨h,A⁻¹h⟩ for positive definite A.
/// Trial directions are standard normal vectors from a seeded mt19937_64.
VariationalCheck variational_sup_check(const num::SymmetricMatrix& a, std::span<const double> h,
                                       std::size_t samples, std::uint64_t seed);

/// S_T[f + v] = S_F[f] + ⟨v, T v⟩ for v ∈ D(T) given in ker S* coefficients.
/// Throws ErrorKind::Domain if v is not in span D(T).
double form_decomposition_value(double sf_form_of_f, const ExtensionParameter& t,
                                std::span<const double> v);

}  // namespace kvb
