#pragma once

// Buchberger's algorithm over Q, used to check quotient dimensions for all
// supported families and as an independent normal-form oracle.
//
// Laurent ideals are encoded in an ordinary polynomial ring: every
// character variable x gets a companion xbar with x*xbar - 1 in the ideal.
// A spin stage is encoded by y[j,1..m] and the half character
// h = w[j,1]...w[j,m] subject to h^2 = y[j,1]...y[j,m]. A non-Borel type-A
// stage is encoded by the block elementary symmetric functions e[j,b,k].

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kflag/laurent.hpp"
#include "kflag/tower.hpp"

namespace kflag {

using Exponents = std::vector<int>;

/// Block degrevlex: blocks compared in order (first block most significant),
/// degrevlex inside each block.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  /// Half-open variable ranges [begin, end).
  explicit MonomialOrder(std::vector<std::pair<int, int>> blocks) : blocks_(std::move(blocks)) {}

  std::strong_ordering compare(const Exponents& a, const Exponents& b) const;
  const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }

 private:
  std::vector<std::pair<int, int>> blocks_;
};

struct GbTerm {
  Exponents exponents;
  mpq_class coeff;
  friend bool operator==(const GbTerm&, const GbTerm&) = default;
};

/// Terms in strictly decreasing order, no zero coefficients.
using GbPoly = std::vector<GbTerm>;

class PolyRingEncoding {
 public:
  /// Variables of the tower's ordinary universe plus companion and spin
  /// relations; no other relations.
  static PolyRingEncoding for_tower(const Tower& t);
  /// for_tower plus the given Laurent relations.
  static PolyRingEncoding for_relations(const Tower& t, std::span<const LaurentPoly> relations);
  /// Ordinary presentation; non-Borel stages use block generators.
  static PolyRingEncoding for_ordinary_presentation(const Tower& t);
  /// Bare ring with the given variable names in one degrevlex block and the
  /// given relations; encode/decode of Laurent data is unavailable.
  static PolyRingEncoding plain(std::vector<std::string> names, std::vector<GbPoly> relations);

  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<GbPoly>& relations() const { return relations_; }

  /// Throws ArgumentError for monomials outside the encoded ring (u/v
  /// variables, off-lattice spin monomials, non-symmetric block monomials).
  Exponents encode(const Monomial& m) const;
  GbPoly encode(const LaurentPoly& p) const;
  LaurentPoly decode(const Exponents& e) const;
  LaurentPoly decode(const GbPoly& p) const;

  void add_relation(GbPoly p);

 private:
  struct StageLayout {
    int stage = 0;
    int vars = 0;
    bool spin = false;
    std::vector<int> blocks;  // empty for Borel
    int first = 0;            // first variable index of this stage block
  };

  PolyRingEncoding() = default;
  GbPoly block_elementary(const StageLayout& s, int k) const;

  std::vector<std::string> names_;
  std::vector<StageLayout> layouts_;  // indexed by stage - 1
  MonomialOrder order_;
  std::vector<GbPoly> relations_;
};

struct ResourceCaps {
  std::size_t max_terms = 1'000'000;
  std::size_t max_pairs = 100'000;
  /// Defaults, overridden by KFLAG_RESOURCE_CAP (sets both caps).
  static ResourceCaps from_env();
};

struct GroebnerBasis {
  PolyRingEncoding encoding;
  /// Reduced and monic, sorted by increasing leading monomial.
  std::vector<GbPoly> polys;
  std::size_t pairs_processed = 0;
};

GroebnerBasis buchberger(const PolyRingEncoding& enc, const ResourceCaps& caps = {});

/// Remainder of f on division by gb.polys.
GbPoly reduce_poly(const GroebnerBasis& gb, const GbPoly& f);
/// S-polynomial of two monic polynomials.
GbPoly s_polynomial(const MonomialOrder& order, const GbPoly& f, const GbPoly& g);

/// Number of standard monomials; nullopt when infinite.
std::optional<std::uint64_t> quotient_dimension(const GroebnerBasis& gb);
/// Throws ArgumentError if the quotient is infinite-dimensional.
std::vector<Exponents> standard_monomials(const GroebnerBasis& gb);

/// Remainder of p modulo the basis, keyed by standard monomial.
using OracleCoordinates = std::map<Exponents, mpq_class>;
OracleCoordinates nf_oracle(const GroebnerBasis& gb, const LaurentPoly& p);

struct RankReport {
  std::string tower;
  std::uint64_t expected = 0;
  std::optional<std::uint64_t> computed;  // nullopt = infinite
  bool pass = false;
  std::size_t basis_size = 0;
  std::int64_t elapsed_ms = 0;
};

RankReport verify_rank(const Tower& t, const ResourceCaps& caps = ResourceCaps::from_env());

}  // namespace kflag
