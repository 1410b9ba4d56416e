#include "kvb/extension/deficiency_model.hpp"

#include <cmath>
#include <utility>

#include "kvb/error.hpp"
#include "kvb/extension/extension.hpp"

namespace kvb {

DeficiencyModel::DeficiencyModel(double m_s, num::SymmetricMatrix gram, num::Matrix v_basis,
                                 WeightedGram weighted_gram)
    : m_s_(m_s),
      gram_(std::move(gram)),
      v_basis_(std::move(v_basis)),
      weighted_gram_(std::move(weighted_gram)) {
  if (!(m_s_ > 0.0) || !std::isfinite(m_s_))
    throw Error(ErrorKind::Hypothesis, "deficiency model requires m(S) > 0; shift the operator first");
  if (gram_.dim() == 0) throw Error(ErrorKind::Model, "deficiency index must be positive");
  if (v_basis_.cols() > 0 && v_basis_.rows() != gram_.dim())
    throw Error(ErrorKind::Model, "V-basis rows must match dim ker S*");
  (void)num::Cholesky(gram_);
  if (v_basis_.cols() > 0 && num::column_rank(v_basis_, kSubspaceTol) != v_basis_.cols())
    throw Error(ErrorKind::Model, "V-basis columns are linearly dependent");
  if (v_basis_.cols() > 0 && !weighted_gram_)
    throw Error(ErrorKind::Model, "non-trivial V requires a weighted Gram function");
}

num::SymmetricMatrix DeficiencyModel::weighted_gram(double mu) const {
  if (v_trivial()) throw Error(ErrorKind::CriterionViolated, "V is trivial");
  if (!(mu <= m_s_)) throw Error(ErrorKind::Domain, "weighted Gram needs mu <= m(S)");
  num::SymmetricMatrix w = weighted_gram_(mu);
  if (w.dim() != v_dim()) throw Error(ErrorKind::Model, "weighted Gram has the wrong dimension");
  return w;
}

}  // namespace kvb
