#pragma once

// Comparison of the exact type-A engine against the Groebner oracle. The
// two engines use different monomial bases, so engine basis monomials are
// first expressed in oracle coordinates; after that, normal forms of any
// polynomial must agree under this change of basis.

#include <cstddef>
#include <vector>

#include "kflag/flag_engine.hpp"
#include "kflag/groebner.hpp"

namespace kflag {

class OracleAlignment {
 public:
  /// Requires an ordinary-mode engine and a basis built from
  /// PolyRingEncoding::for_ordinary_presentation of the same tower.
  OracleAlignment(const QuotientEngine& engine, const GroebnerBasis& gb);

  /// The engine basis maps to a basis of the oracle quotient.
  bool full_rank() const { return full_rank_; }
  /// nf_oracle(p) == sum_b engine_nf(p)[b] * nf_oracle(b).
  bool agrees(const LaurentPoly& p) const;

 private:
  const QuotientEngine& engine_;
  const GroebnerBasis& gb_;
  std::vector<OracleCoordinates> columns_;
  bool full_rank_ = false;
};

/// Rank of a rational matrix given as rows.
std::size_t rational_rank(std::vector<std::vector<mpq_class>> rows);

struct CrossCheckResult {
  bool full_rank = false;
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  bool pass() const { return full_rank && disagreements == 0; }
};

/// Deterministic sample: every y^{+-1} and every product of two of them.
CrossCheckResult cross_check(const QuotientEngine& engine, const GroebnerBasis& gb);

}  // namespace kflag
