#pragma once

// Exact normal forms in the K-ring of a full-flag type-A tower.
//
// For each stage j the relations e_k(y_j) = c_{j,k} are replaced by the
// triangular system
//   g_{j,i} = f_{j,i-1}(y_{j,i}),  f_{j,0}(t) = prod_i (t - y_{j,i}) written
//   through the c_{j,k},  f_{j,i} = f_{j,i-1} / (t - y_{j,i}),
// whose leading terms y_{j,i}^{m_j-i+1} are pairwise coprime. The standard
// monomials prod y_{j,i}^{a_{j,i}}, 0 <= a_{j,i} <= m_j - i, form a basis
// over Z (ordinary mode) or over the Laurent ring in the u-variables
// (equivariant mode).

#include <cstddef>
#include <map>
#include <vector>

#include "kflag/laurent.hpp"
#include "kflag/tower.hpp"

namespace kflag {

/// Coordinates of a quotient-ring element in the standard-monomial basis.
/// Coefficients are constants in ordinary mode and Laurent polynomials in
/// the u-variables in equivariant mode.
class BasisVector {
 public:
  using Coordinates = std::map<Monomial, LaurentPoly, std::greater<>>;

  BasisVector() = default;
  explicit BasisVector(Coordinates coords);

  const Coordinates& coordinates() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  LaurentPoly coefficient(const Monomial& basis_monomial) const;
  /// sum coefficient * basis monomial.
  LaurentPoly expansion() const;

  friend bool operator==(const BasisVector&, const BasisVector&) = default;

 private:
  Coordinates coords_;
};

class QuotientEngine {
 public:
  /// Requires every stage to be family A with Borel blocks. Runs a
  /// self-check that all presentation relations reduce to zero.
  static QuotientEngine build(const Tower& tower, PresentationMode mode);

  const Tower& tower() const { return tower_; }
  PresentationMode mode() const { return mode_; }
  const std::vector<Monomial>& basis() const { return basis_; }

  /// g_{j,i}, 1-based.
  const LaurentPoly& row(int j, int i) const;
  /// Reduced image c_{j,k} of e_k(y_j), k = 0..m_j.
  const LaurentPoly& chern_coefficient(int j, int k) const;
  std::size_t row_count() const;

  /// Congruent polynomial with no negative y-exponents.
  LaurentPoly clear_inverses(const LaurentPoly& p) const;
  /// Fully reduced representative (standard monomials only in y).
  LaurentPoly reduce(const LaurentPoly& p) const;
  BasisVector normal_form(const LaurentPoly& p) const;

 private:
  struct Row {
    LaurentPoly poly;
    // poly = y^degree + sum_{d < degree} tail[d] * y^d.
    std::vector<LaurentPoly> tail;
    int degree = 0;
  };

  QuotientEngine(Tower tower, PresentationMode mode) : tower_(std::move(tower)), mode_(mode) {}

  void check_universe(const LaurentPoly& p) const;
  LaurentPoly clear_inverses_below(const LaurentPoly& p, int top_stage) const;
  LaurentPoly reduce_below(const LaurentPoly& p, int top_stage) const;
  // p must be free of inverted y variables.
  LaurentPoly reduce_stages(const LaurentPoly& p, int top_stage) const;
  LaurentPoly reduce_variable(const LaurentPoly& p, int j, int i) const;

  Tower tower_;
  PresentationMode mode_;
  std::vector<std::vector<Row>> rows_;
  std::vector<std::vector<LaurentPoly>> chern_;
  // Image of y_{j,1}...y_{j,m_j}: a unit monomial in lower stages (and u).
  std::vector<Monomial> determinant_image_;
  std::vector<Monomial> basis_;
};

inline QuotientEngine build_engine(const Tower& tower, PresentationMode mode) {
  return QuotientEngine::build(tower, mode);
}

/// table[a][b] = normal form of basis[a] * basis[b].
using MultTable = std::vector<std::vector<BasisVector>>;
inline constexpr std::size_t kDefaultMultTableCap = 720;

MultTable mult_table(const QuotientEngine& engine, std::size_t cap = kDefaultMultTableCap);

}  // namespace kflag
