#pragma once

// Shared helpers for the test suites: seeded random generators and small
// tower fixtures.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kflag/laurent.hpp"
#include "kflag/tower.hpp"
#include "kflag/tower_io.hpp"

namespace kflag::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return between(0, 1) == 1; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Tower tower_from_json(const std::string& text) { return Tower::validate(parse_tower_spec(text)); }

/// Random Laurent monomial in `vars`, total |degree| at most max_degree
/// and each exponent in [lo, hi].
inline Monomial random_monomial(Rng& rng, const std::vector<VarId>& vars, int max_degree, int lo, int hi) {
  std::vector<Monomial::Entry> entries;
  int budget = max_degree;
  for (const auto& v : vars) {
    if (budget <= 0) break;
    int e = rng.between(lo, hi);
    if (std::abs(e) > budget) e = e > 0 ? budget : -budget;
    budget -= std::abs(e);
    if (e != 0) entries.emplace_back(v, e);
  }
  return Monomial(std::move(entries));
}

/// Random integer Laurent polynomial with up to max_terms terms.
inline LaurentPoly random_poly(Rng& rng, const std::vector<VarId>& vars, int max_terms = 4, int max_degree = 4,
                               int lo = -2, int hi = 2, int coeff = 5) {
  LaurentPoly p;
  const int terms = rng.between(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<VarId> shuffled = vars;
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    p.add_term(random_monomial(rng, shuffled, max_degree, lo, hi), rng.between(-coeff, coeff));
  }
  return p;
}

/// All y-variables of a tower (and u-variables when base_side is set).
inline std::vector<VarId> tower_vars(const Tower& t, bool base_side = false) {
  std::vector<VarId> out;
  for (int j = 1; j <= t.height(); ++j) {
    for (int i = 1; i <= t.stage(j).vars(); ++i) {
      out.push_back(VarId::y(j, i));
      if (base_side) out.push_back(VarId::u(j, i));
    }
  }
  return out;
}

/// Random type-A full-flag tower with the given stage sizes and matrix
/// entries in [-bound, bound].
inline Tower random_type_a_tower(Rng& rng, const std::vector<int>& sizes, int bound = 2) {
  TowerSpec spec;
  for (int m : sizes) spec.stages.emplace_back(Family::A, m);
  for (int j = 2; j <= static_cast<int>(sizes.size()); ++j) {
    for (int l = 1; l < j; ++l) {
      IntMatrix a(sizes[j - 1], std::vector<int>(sizes[l - 1]));
      for (auto& row : a) {
        for (auto& x : row) x = rng.between(-bound, bound);
      }
      spec.maps[{j, l}] = a;
    }
  }
  return Tower::validate(spec);
}

}  // namespace kflag::testing
