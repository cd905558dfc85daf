#include "kflag/weyl.hpp"

#include <algorithm>
#include <numeric>

#include "kflag/errors.hpp"

namespace kflag {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ArgumentError("Weyl group order overflows 64 bits");
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t out = 1;
  for (int i = 2; i <= n; ++i) out = checked_mul(out, static_cast<std::uint64_t>(i));
  return out;
}

std::vector<LaurentPoly> stage_variables(int m, int j, int first = 1) {
  std::vector<LaurentPoly> out;
  for (int i = first; i < first + m; ++i) out.push_back(LaurentPoly::variable(VarId::y(j, i)));
  return out;
}

// Rewrite the stage-j (y,w) part of m through its half-exponent vector.
Monomial remap_half_exponents(const Monomial& m, int j, int count,
                              const std::function<void(std::vector<int>&)>& act) {
  std::vector<int> half(count);
  for (int i = 1; i <= count; ++i) half[i - 1] = m.half_exponent(j, i);
  act(half);
  Monomial rest = m.without([j](const VarId& v) {
    return v.stage == j && (v.kind == VarKind::Y || v.kind == VarKind::W);
  });
  std::vector<Monomial::Entry> entries;
  for (int i = 1; i <= count; ++i) entries.emplace_back(VarId::w(j, i), half[i - 1]);
  return rest * Monomial(std::move(entries));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::C: return "C";
    case Family::B_spin: return "B_spin";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "A") return Family::A;
  if (name == "C") return Family::C;
  if (name == "B_spin") return Family::B_spin;
  throw UnsupportedError("unsupported Lie family '" + std::string(name) +
                         "' (supported: A, C, B_spin)");
}

Stage::Stage(Family family, int vars, std::vector<int> blocks)
    : family_(family), vars_(vars), blocks_(std::move(blocks)) {
  if (vars_ < 1) throw ValidationError("stage must have at least one variable");
  if (blocks_.empty()) blocks_.assign(vars_, 1);
  if (std::any_of(blocks_.begin(), blocks_.end(), [](int b) { return b < 1; })) {
    throw ValidationError("parabolic blocks must be positive");
  }
  if (std::accumulate(blocks_.begin(), blocks_.end(), 0) != vars_) {
    throw ValidationError("parabolic blocks must sum to " + std::to_string(vars_));
  }
  if (family_ != Family::A && !is_borel()) {
    throw ValidationError("non-Borel parabolics are only supported for family A");
  }
}

bool Stage::is_borel() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](int b) { return b == 1; });
}

std::uint64_t weyl_order(const Stage& s) {
  std::uint64_t order = factorial(s.vars());
  if (s.family() != Family::A) order = checked_mul(order, std::uint64_t{1} << s.vars());
  return order;
}

std::uint64_t coset_rank(const Stage& s) {
  if (s.family() != Family::A) return weyl_order(s);
  std::uint64_t denom = 1;
  for (int b : s.blocks()) denom = checked_mul(denom, factorial(b));
  return weyl_order(s) / denom;
}

std::vector<LaurentPoly> spin_lambda_coefficients(int m, int j) {
  // Coefficients of (1+t) prod_i (1 + y_i t)(1 + y_i^-1 t), index = power of t.
  std::vector<LaurentPoly> coeffs{LaurentPoly::constant(1), LaurentPoly::constant(1)};
  auto multiply_linear = [&](const LaurentPoly& a) {
    std::vector<LaurentPoly> next(coeffs.size() + 1);
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
      next[d] += coeffs[d];
      next[d + 1] += coeffs[d] * a;
    }
    coeffs = std::move(next);
  };
  for (int i = 1; i <= m; ++i) {
    multiply_linear(LaurentPoly::variable(VarId::y(j, i)));
    multiply_linear(LaurentPoly::variable(VarId::y(j, i), -1));
  }
  return coeffs;
}

LaurentPoly spin_delta(int m, int j) {
  LaurentPoly out = LaurentPoly::constant(1);
  for (int i = 1; i <= m; ++i) {
    out *= LaurentPoly::variable(VarId::w(j, i)) + LaurentPoly::variable(VarId::w(j, i), -1);
  }
  return out;
}

std::vector<LaurentPoly> invariant_generators(const Stage& s, int j) {
  const int m = s.vars();
  std::vector<LaurentPoly> out;
  switch (s.family()) {
    case Family::A: {
      auto ys = stage_variables(m, j);
      for (int k = 1; k <= m; ++k) out.push_back(elementary_symmetric(std::span<const LaurentPoly>(ys), k));
      break;
    }
    case Family::C: {
      std::vector<LaurentPoly> both;
      for (int i = 1; i <= m; ++i) {
        both.push_back(LaurentPoly::variable(VarId::y(j, i)));
        both.push_back(LaurentPoly::variable(VarId::y(j, i), -1));
      }
      for (int k = 1; k <= m; ++k) out.push_back(elementary_symmetric(std::span<const LaurentPoly>(both), k));
      break;
    }
    case Family::B_spin: {
      auto lambdas = spin_lambda_coefficients(m, j);
      for (int i = 1; i <= m - 1; ++i) out.push_back(lambdas[i]);
      out.push_back(spin_delta(m, j));
      break;
    }
  }
  return out;
}

std::vector<LaurentPoly> parabolic_generators(const Stage& s, int j) {
  if (s.is_borel()) {
    auto out = stage_variables(s.vars(), j);
    if (s.is_spin()) {
      std::vector<Monomial::Entry> half;
      for (int i = 1; i <= s.vars(); ++i) half.emplace_back(VarId::w(j, i), 1);
      out.push_back(LaurentPoly::monomial(Monomial(std::move(half))));
    }
    return out;
  }
  if (s.family() != Family::A) {
    throw UnsupportedError("non-Borel parabolic generators are only available for family A");
  }
  std::vector<LaurentPoly> out;
  int first = 1;
  for (int b : s.blocks()) {
    auto block = stage_variables(b, j, first);
    for (int k = 1; k <= b; ++k) out.push_back(elementary_symmetric(std::span<const LaurentPoly>(block), k));
    first += b;
  }
  return out;
}

int simple_reflection_count(const Stage& s) {
  return s.family() == Family::A ? s.vars() - 1 : s.vars();
}

LaurentPoly apply_simple_reflection(const Stage& s, int k, const LaurentPoly& p, int j) {
  const int m = s.vars();
  if (k < 1 || k > simple_reflection_count(s)) {
    throw ArgumentError("simple reflection index " + std::to_string(k) + " out of range for " +
                        std::string(to_string(s.family())) + " with " + std::to_string(m) + " variables");
  }
  auto act = [&](std::vector<int>& half) {
    if (k < m) {
      std::swap(half[k - 1], half[k]);
    } else {
      half[m - 1] = -half[m - 1];
    }
  };
  return map_monomials(p, [&](const Monomial& mono) {
    return LaurentPoly::monomial(remap_half_exponents(mono, j, m, act));
  });
}

}  // namespace kflag
