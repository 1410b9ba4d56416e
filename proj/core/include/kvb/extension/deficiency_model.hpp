#pragma once

#include <cstddef>
#include <functional>

#include "kvb/numerics/matrix.hpp"

namespace kvb {

/// μ ↦ Gram matrix of the V-basis in the inner product ⟨v, (S_F − μ)⁻¹ w⟩
/// for μ < m(S), and ⟨(S_F − m)^{-1/2} v, (S_F − m)^{-1/2} w⟩ at μ = m(S).
/// Must be reentrant.
using WeightedGram = std::function<num::SymmetricMatrix(double mu)>;

/// Finite-dimensional data of a lower semi-bounded symmetric operator S that
/// the extension theory needs: the lower bound m(S) (> 0 after shifting),
/// a basis {u_i} of ker S* through its Gram matrix, the subspace
/// V = ran(S_F − m(S))^{1/2} ∩ ker S* as coefficient columns in that basis,
/// and the resolvent-weighted Gram data on V.
///
/// Immutable after construction.
class DeficiencyModel {
 public:
  /// Throws ErrorKind::Hypothesis when m_s ≤ 0, ErrorKind::Model on shape
  /// mismatch or a dependent V-basis, ErrorKind::Factorization when the Gram
  /// matrix is not positive definite.
  DeficiencyModel(double m_s, num::SymmetricMatrix gram, num::Matrix v_basis,
                  WeightedGram weighted_gram);

  double m_s() const noexcept { return m_s_; }
  std::size_t dim() const noexcept { return gram_.dim(); }
  const num::SymmetricMatrix& gram() const noexcept { return gram_; }
  const num::Matrix& v_basis() const noexcept { return v_basis_; }
  std::size_t v_dim() const noexcept { return v_basis_.cols(); }
  bool v_trivial() const noexcept { return v_basis_.cols() == 0; }

  /// ⟨v_i, v_j⟩ on the V-basis.
  num::SymmetricMatrix gram_v() const { return gram_.congruence(v_basis_); }

  /// Throws ErrorKind::Domain for mu > m(S) and ErrorKind::CriterionViolated
  /// when V is trivial.
  num::SymmetricMatrix weighted_gram(double mu) const;

 private:
  double m_s_;
  num::SymmetricMatrix gram_;
  num::Matrix v_basis_;
  WeightedGram weighted_gram_;
};

}  // namespace kvb
