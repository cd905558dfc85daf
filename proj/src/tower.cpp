#include "kflag/tower.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kflag/errors.hpp"

namespace kflag {

namespace {

std::string pair_name(int j, int l) {
  return "A_" + std::to_string(l) + "^(" + std::to_string(j) + ") (j=" + std::to_string(j) +
         ", l=" + std::to_string(l) + ")";
}

// Image of a stage-j character monomial under Psi_j^* (optionally twisted by
// the base characters of stage j).
Monomial pullback_monomial(const Tower& t, int j, const Monomial& m, bool twisted) {
  if (j < 1 || j > t.height()) throw ArgumentError("stage index " + std::to_string(j) + " out of range");
  const Stage& stage = t.stage(j);
  const int count = stage.vars();
  for (const auto& [var, e] : m.entries()) {
    if (var.stage != j || var.is_base_side()) {
      throw ArgumentError("pullback along stage " + std::to_string(j) + " cannot act on " + to_string(var));
    }
    if (var.index > count) throw ArgumentError("variable " + to_string(var) + " does not exist");
    if (var.kind == VarKind::W && !stage.is_spin()) {
      throw ArgumentError("square-root variable " + to_string(var) + " on a non-spin stage");
    }
  }
  std::vector<int> half(count);
  for (int i = 1; i <= count; ++i) half[i - 1] = m.half_exponent(j, i);
  if (stage.is_spin()) {
    const int parity = std::abs(half[0]) % 2;
    for (int h : half) {
      if (std::abs(h) % 2 != parity) {
        throw ArgumentError("monomial " + to_string(m) + " is not on the spin character lattice");
      }
    }
  }
  std::vector<Monomial::Entry> entries;
  for (int l = 1; l < j; ++l) {
    const IntMatrix& a = t.matrix(j, l);
    const bool lower_spin = t.stage(l).is_spin();
    for (int s = 1; s <= t.stage(l).vars(); ++s) {
      long h = 0;
      for (int i = 1; i <= count; ++i) h += static_cast<long>(half[i - 1]) * a[i - 1][s - 1];
      if (lower_spin) {
        entries.emplace_back(VarId::w(l, s), static_cast<int>(h));
      } else {
        if (h % 2 != 0) throw InternalError("pullback left the integral character lattice");
        entries.emplace_back(VarId::y(l, s), static_cast<int>(h / 2));
      }
    }
  }
  if (twisted) {
    for (int i = 1; i <= count; ++i) entries.emplace_back(VarId::v(j, i), half[i - 1]);
  }
  return Monomial(std::move(entries));
}

LaurentPoly pullback(const Tower& t, int j, const LaurentPoly& p, bool twisted) {
  return map_monomials(p, [&](const Monomial& m) {
    return LaurentPoly::monomial(pullback_monomial(t, j, m, twisted));
  });
}

Presentation build_presentation(const Tower& t, PresentationMode mode) {
  Presentation out;
  out.mode = mode;
  const bool twisted = mode == PresentationMode::Equivariant;
  for (int j = 1; j <= t.height(); ++j) {
    for (auto& g : parabolic_generators(t.stage(j), j)) out.ring_generators.push_back(std::move(g));
  }
  if (twisted) {
    for (int j = 1; j <= t.height(); ++j) {
      const int m = t.stage(j).vars();
      for (int i = 1; i <= m; ++i) out.ring_generators.push_back(LaurentPoly::variable(VarId::u(j, i)));
      if (t.stage(j).is_spin()) {
        std::vector<Monomial::Entry> half;
        for (int i = 1; i <= m; ++i) half.emplace_back(VarId::v(j, i), 1);
        out.ring_generators.push_back(LaurentPoly::monomial(Monomial(std::move(half))));
      }
    }
  }
  for (int j = 1; j <= t.height(); ++j) {
    for (const auto& g : invariant_generators(t.stage(j), j)) {
      out.relations.push_back(g - pullback(t, j, g, twisted));
      out.relation_stage.push_back(j);
    }
  }
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Tower Tower::validate(TowerSpec spec) {
  if (spec.stages.empty()) throw ValidationError("tower must have at least one stage");
  const int r = static_cast<int>(spec.stages.size());
  Tower out;
  out.stages_ = std::move(spec.stages);

  for (const auto& [key, a] : spec.maps) {
    const auto [j, l] = key;
    if (j < 2 || j > r || l < 1 || l >= j) {
      throw ValidationError("map " + pair_name(j, l) + " must satisfy 1 <= l < j <= " + std::to_string(r));
    }
    const int rows = out.stage(j).vars();
    const int cols = out.stage(l).vars();
    bool ok = static_cast<int>(a.size()) == rows &&
              std::all_of(a.begin(), a.end(), [cols](const auto& row) { return static_cast<int>(row.size()) == cols; });
    if (!ok) {
      throw ValidationError("shape mismatch for " + pair_name(j, l) + ": expected " + std::to_string(rows) +
                            "x" + std::to_string(cols));
    }
  }

  for (int j = 2; j <= r; ++j) {
    for (int l = 1; l < j; ++l) {
      auto it = spec.maps.find({j, l});
      IntMatrix a = it != spec.maps.end()
                        ? it->second
                        : IntMatrix(out.stage(j).vars(), std::vector<int>(out.stage(l).vars(), 0));

      // Characters of a non-abelian Levi factor are constant on its blocks.
      const Stage& lower = out.stage(l);
      if (!lower.is_borel()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
          int first = 0;
          for (int b : lower.blocks()) {
            for (int s = first + 1; s < first + b; ++s) {
              if (a[i][s] != a[i][first]) {
                throw ValidationError("row " + std::to_string(i + 1) + " of " + pair_name(j, l) +
                                      " is not constant on parabolic block of stage " + std::to_string(l));
              }
            }
            first += b;
          }
        }
      }

      if (out.stage(j).is_spin()) {
        std::vector<long> col_sums(lower.vars(), 0);
        for (const auto& row : a) {
          for (std::size_t s = 0; s < row.size(); ++s) col_sums[s] += row[s];
        }
        for (std::size_t s = 0; s < col_sums.size(); ++s) {
          bool bad = lower.is_spin() ? (std::abs(col_sums[s]) % 2 != std::abs(col_sums[0]) % 2)
                                     : (col_sums[s] % 2 != 0);
          if (bad) {
            throw ValidationError("spin parity violation in " + pair_name(j, l) + ": column " +
                                  std::to_string(s + 1) + " has sum " + std::to_string(col_sums[s]) +
                                  (lower.is_spin() ? " with parity different from column 1" : " (must be even)"));
          }
        }
      }
      out.maps_.emplace(std::make_pair(j, l), std::move(a));
    }
  }
  return out;
}

bool Tower::all_type_a_borel() const {
  return std::all_of(stages_.begin(), stages_.end(),
                     [](const Stage& s) { return s.family() == Family::A && s.is_borel(); });
}

std::string fingerprint(const Tower& t) {
  std::ostringstream text;
  for (const auto& s : t.stages()) {
    text << to_string(s.family()) << ':' << s.vars() << ':';
    for (int b : s.blocks()) text << b << ',';
    text << ';';
  }
  for (const auto& [key, a] : t.matrices()) {
    text << key.first << '/' << key.second << '=';
    for (const auto& row : a) {
      for (int x : row) text << x << ',';
      text << '|';
    }
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << fnv1a(text.str());
  return hex.str();
}

LaurentPoly psi_pullback(const Tower& t, int j, const LaurentPoly& p) { return pullback(t, j, p, false); }

LaurentPoly twisted_pullback(const Tower& t, int j, const LaurentPoly& p) { return pullback(t, j, p, true); }

std::vector<LaurentPoly> twisted_arguments(const Tower& t, int j) {
  std::vector<LaurentPoly> out;
  for (int i = 1; i <= t.stage(j).vars(); ++i) {
    out.push_back(twisted_pullback(t, j, LaurentPoly::variable(VarId::y(j, i))));
  }
  return out;
}

std::string_view to_string(PresentationMode mode) {
  return mode == PresentationMode::Ordinary ? "ordinary" : "equivariant";
}

Presentation ordinary_presentation(const Tower& t) { return build_presentation(t, PresentationMode::Ordinary); }

Presentation equivariant_presentation(const Tower& t) {
  return build_presentation(t, PresentationMode::Equivariant);
}

Presentation specialize_u1(const Presentation& p) {
  if (p.mode != PresentationMode::Equivariant) {
    throw ModeError("specialize_u1 requires an equivariant presentation");
  }
  auto drop_base = [](const LaurentPoly& q) {
    return map_monomials(q, [](const Monomial& m) {
      return LaurentPoly::monomial(m.without([](const VarId& v) { return v.is_base_side(); }));
    });
  };
  Presentation out;
  out.mode = PresentationMode::Ordinary;
  for (const auto& g : p.ring_generators) {
    const auto vars = g.variables();
    const bool base_only =
        !vars.empty() && std::all_of(vars.begin(), vars.end(), [](const VarId& v) { return v.is_base_side(); });
    if (!base_only) out.ring_generators.push_back(drop_base(g));
  }
  for (const auto& r : p.relations) out.relations.push_back(drop_base(r));
  out.relation_stage = p.relation_stage;
  return out;
}

std::uint64_t expected_rank(const Tower& t) {
  std::uint64_t out = 1;
  for (const auto& s : t.stages()) {
    if (__builtin_mul_overflow(out, coset_rank(s), &out)) throw ArgumentError("expected rank overflows 64 bits");
  }
  return out;
}

bool in_presentation_ring(const Tower& t, const LaurentPoly& p, PresentationMode mode) {
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [var, e] : m.entries()) {
      if (var.stage < 1 || var.stage > t.height()) return false;
      const Stage& s = t.stage(var.stage);
      if (var.index < 1 || var.index > s.vars()) return false;
      if (var.is_root() && !s.is_spin()) return false;
      if (var.is_base_side() && mode == PresentationMode::Ordinary) return false;
    }
    for (int j = 1; j <= t.height(); ++j) {
      const Stage& s = t.stage(j);
      if (!s.is_spin()) continue;
      for (bool base : {false, true}) {
        const int parity = std::abs(m.half_exponent(j, 1, base)) % 2;
        for (int i = 2; i <= s.vars(); ++i) {
          if (std::abs(m.half_exponent(j, i, base)) % 2 != parity) return false;
        }
      }
    }
  }
  // Block symmetry for non-Borel stages: invariant under transpositions
  // inside each block.
  for (int j = 1; j <= t.height(); ++j) {
    const Stage& s = t.stage(j);
    if (s.is_borel()) continue;
    int first = 1;
    for (int b : s.blocks()) {
      for (int i = first; i < first + b - 1; ++i) {
        std::map<VarId, LaurentPoly> swap{{VarId::y(j, i), LaurentPoly::variable(VarId::y(j, i + 1))},
                                          {VarId::y(j, i + 1), LaurentPoly::variable(VarId::y(j, i))}};
        if (substitute_monomials(p, swap) != p) return false;
      }
      first += b;
    }
  }
  return true;
}

}  // namespace kflag
