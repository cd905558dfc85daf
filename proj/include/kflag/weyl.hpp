#pragma once

// Lie-stage metadata: Weyl group sizes, parabolic cosets, and generators of
// the Weyl-invariant characters for families A (SL), C (Sp) and B (Spin).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kflag/laurent.hpp"

namespace kflag {

enum class Family { A, C, B_spin };

std::string_view to_string(Family f);
/// Accepts "A", "C", "B_spin"; any other Lie family is rejected.
Family parse_family(std::string_view name);

/// One tower level. `vars` is the number of torus variables: n+1 for
/// SL(n+1), n for Sp(n) and Spin(2n+1). `blocks` is a composition of `vars`
/// describing the parabolic (all ones = Borel).
class Stage {
 public:
  Stage(Family family, int vars, std::vector<int> blocks = {});

  Family family() const { return family_; }
  int vars() const { return vars_; }
  const std::vector<int>& blocks() const { return blocks_; }
  bool is_borel() const;
  bool is_spin() const { return family_ == Family::B_spin; }

  friend bool operator==(const Stage&, const Stage&) = default;

 private:
  Family family_;
  int vars_;
  std::vector<int> blocks_;
};

/// |W|: m! for A, 2^m m! for C and B_spin.
std::uint64_t weyl_order(const Stage& s);
/// |W / W_L|.
std::uint64_t coset_rank(const Stage& s);

/// Generators of R(T)^W in the variables of stage `stage_index`.
std::vector<LaurentPoly> invariant_generators(const Stage& s, int stage_index = 1);

/// Generators of R(T)^{W_L}. Borel stages give the variables themselves
/// (plus the half character w[j,1]*...*w[j,m] for spin stages).
std::vector<LaurentPoly> parabolic_generators(const Stage& s, int stage_index = 1);

/// Number of simple reflections: m-1 for A, m for C and B_spin.
int simple_reflection_count(const Stage& s);

/// Action of the k-th simple reflection (1-based) on stage-`stage_index`
/// variables; all other variables are untouched.
LaurentPoly apply_simple_reflection(const Stage& s, int k, const LaurentPoly& p, int stage_index = 1);

/// lambda^i(rho_{2m+1}) for i = 0..2m+1 as coefficients of
/// (1+t) prod (1 + y_i t)(1 + y_i^-1 t).
std::vector<LaurentPoly> spin_lambda_coefficients(int m, int stage_index = 1);

/// prod_i (w_i + w_i^-1).
LaurentPoly spin_delta(int m, int stage_index = 1);

}  // namespace kflag
