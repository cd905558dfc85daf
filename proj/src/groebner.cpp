#include "kflag/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>

#include "kflag/errors.hpp"

namespace kflag {

// ---------------------------------------------------------------------------
// Monomial order and polynomial helpers

std::strong_ordering MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  for (const auto& [begin, end] : blocks_) {
    int da = 0;
    int db = 0;
    for (int v = begin; v < end; ++v) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da <=> db;
    for (int v = end - 1; v >= begin; --v) {
      if (a[v] != b[v]) return b[v] <=> a[v];
    }
  }
  return std::strong_ordering::equal;
}

namespace {

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] > b[v]) return false;
  }
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = std::max(a[v], b[v]);
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] != 0 && b[v] != 0) return false;
  }
  return true;
}

Exponents difference(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = a[v] - b[v];
  return out;
}

Exponents sum(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = a[v] + b[v];
  return out;
}

struct Descending {
  const MonomialOrder* order;
  bool operator()(const Exponents& a, const Exponents& b) const { return order->compare(a, b) > 0; }
};

using Workspace = std::map<Exponents, mpq_class, Descending>;

GbPoly from_workspace(const Workspace& w) {
  GbPoly out;
  out.reserve(w.size());
  for (const auto& [e, c] : w) out.push_back({e, c});
  return out;
}

void make_monic(GbPoly& p) {
  if (p.empty()) return;
  const mpq_class lead = p.front().coeff;
  for (auto& t : p) t.coeff /= lead;
}

GbPoly multiply(const GbPoly& a, const GbPoly& b, const MonomialOrder& order) {
  Workspace w{Descending{&order}};
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      auto [it, inserted] = w.try_emplace(sum(ta.exponents, tb.exponents), ta.coeff * tb.coeff);
      if (!inserted) {
        it->second += ta.coeff * tb.coeff;
        if (it->second == 0) w.erase(it);
      }
    }
  }
  return from_workspace(w);
}

GbPoly add(const GbPoly& a, const GbPoly& b, const MonomialOrder& order) {
  Workspace w{Descending{&order}};
  for (const auto* p : {&a, &b}) {
    for (const auto& t : *p) {
      auto [it, inserted] = w.try_emplace(t.exponents, t.coeff);
      if (!inserted) {
        it->second += t.coeff;
        if (it->second == 0) w.erase(it);
      }
    }
  }
  return from_workspace(w);
}

GbPoly constant(std::size_t n, const mpq_class& c) {
  if (c == 0) return {};
  return {{Exponents(n, 0), c}};
}

GbPoly variable(std::size_t n, int v) {
  Exponents e(n, 0);
  e[v] = 1;
  return {{e, 1}};
}

class Reducer {
 public:
  Reducer(const MonomialOrder& order, const ResourceCaps& caps) : order_(order), caps_(caps) {}

  /// Full reduction of f modulo the monic polynomials in `basis`, skipping
  /// index `skip`.
  GbPoly reduce(const GbPoly& f, const std::vector<GbPoly>& basis, std::size_t basis_terms,
                std::size_t skip = static_cast<std::size_t>(-1)) const {
    Workspace w{Descending{&order_}};
    for (const auto& t : f) w.emplace(t.exponents, t.coeff);
    GbPoly remainder;
    while (!w.empty()) {
      if (w.size() + remainder.size() + basis_terms > caps_.max_terms) {
        throw ResourceError("Groebner computation exceeded " + std::to_string(caps_.max_terms) +
                            " monomials in flight (basis size " + std::to_string(basis.size()) + ")");
      }
      auto lead = w.begin();
      const GbPoly* divisor = nullptr;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k != skip && divides(basis[k].front().exponents, lead->first)) {
          divisor = &basis[k];
          break;
        }
      }
      if (divisor == nullptr) {
        remainder.push_back({lead->first, lead->second});
        w.erase(lead);
        continue;
      }
      const Exponents shift = difference(lead->first, divisor->front().exponents);
      const mpq_class factor = lead->second;  // divisor is monic
      w.erase(lead);
      for (std::size_t t = 1; t < divisor->size(); ++t) {
        const auto& term = (*divisor)[t];
        auto [it, inserted] = w.try_emplace(sum(term.exponents, shift), -factor * term.coeff);
        if (!inserted) {
          it->second -= factor * term.coeff;
          if (it->second == 0) w.erase(it);
        }
      }
    }
    return remainder;
  }

 private:
  const MonomialOrder& order_;
  const ResourceCaps& caps_;
};

std::size_t term_count(const std::vector<GbPoly>& polys) {
  std::size_t n = 0;
  for (const auto& p : polys) n += p.size();
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Encoding

PolyRingEncoding PolyRingEncoding::for_tower(const Tower& t) {
  PolyRingEncoding enc;
  enc.layouts_.resize(t.height());
  std::vector<std::pair<int, int>> blocks;
  int next = 0;
  auto name = [](const std::string& base, std::initializer_list<int> idx) {
    std::string out = base + '[';
    bool first = true;
    for (int i : idx) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
    return out + ']';
  };
  for (int j = t.height(); j >= 1; --j) {
    const Stage& s = t.stage(j);
    StageLayout& lay = enc.layouts_[j - 1];
    lay.stage = j;
    lay.vars = s.vars();
    lay.spin = s.is_spin();
    lay.first = next;
    if (!s.is_borel()) {
      lay.blocks = s.blocks();
      for (std::size_t b = 0; b < lay.blocks.size(); ++b) enc.names_.push_back(name("ebar", {j, int(b) + 1}));
      for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
        for (int k = 1; k <= lay.blocks[b]; ++k) enc.names_.push_back(name("e", {j, int(b) + 1, k}));
      }
    } else {
      for (int i = 1; i <= s.vars(); ++i) enc.names_.push_back(name("ybar", {j, i}));
      if (lay.spin) enc.names_.push_back(name("hbar", {j}));
      for (int i = 1; i <= s.vars(); ++i) enc.names_.push_back(name("y", {j, i}));
      if (lay.spin) enc.names_.push_back(name("h", {j}));
    }
    const int end = static_cast<int>(enc.names_.size());
    blocks.emplace_back(lay.first, end);
    next = end;
  }
  enc.order_ = MonomialOrder(std::move(blocks));

  const std::size_t n = enc.names_.size();
  auto pair_relation = [&](int x, int xbar) {
    enc.relations_.push_back(add(multiply(variable(n, x), variable(n, xbar), enc.order_), constant(n, -1), enc.order_));
  };
  for (int j = 1; j <= t.height(); ++j) {
    const StageLayout& lay = enc.layouts_[j - 1];
    if (!lay.blocks.empty()) {
      const int t_blocks = static_cast<int>(lay.blocks.size());
      int pos = lay.first + t_blocks;
      for (int b = 0; b < t_blocks; ++b) {
        pos += lay.blocks[b];
        pair_relation(pos - 1, lay.first + b);
      }
      continue;
    }
    const int m = lay.vars;
    const int comp = lay.first;
    const int orig = lay.first + m + (lay.spin ? 1 : 0);
    for (int i = 0; i < m; ++i) pair_relation(orig + i, comp + i);
    if (lay.spin) {
      const int h = orig + m;
      const int hbar = comp + m;
      pair_relation(h, hbar);
      GbPoly prod = constant(n, 1);
      for (int i = 0; i < m; ++i) prod = multiply(prod, variable(n, orig + i), enc.order_);
      GbPoly hsq = multiply(variable(n, h), variable(n, h), enc.order_);
      for (auto& term : prod) term.coeff = -term.coeff;
      enc.relations_.push_back(add(hsq, prod, enc.order_));
    }
  }
  return enc;
}

PolyRingEncoding PolyRingEncoding::for_relations(const Tower& t, std::span<const LaurentPoly> relations) {
  PolyRingEncoding enc = for_tower(t);
  for (const auto& r : relations) enc.add_relation(enc.encode(r));
  return enc;
}

GbPoly PolyRingEncoding::block_elementary(const StageLayout& s, int k) const {
  const std::size_t n = names_.size();
  // Product over blocks of (1 + e[b,1] t + ... + e[b,size] t^size); keep coefficient lists.
  std::vector<GbPoly> coeffs{constant(n, 1)};
  int pos = s.first + static_cast<int>(s.blocks.size());
  for (int size : s.blocks) {
    std::vector<GbPoly> next(coeffs.size() + size);
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
      next[d] = add(next[d], coeffs[d], order_);
      for (int kk = 1; kk <= size; ++kk) {
        next[d + kk] = add(next[d + kk], multiply(coeffs[d], variable(n, pos + kk - 1), order_), order_);
      }
    }
    coeffs = std::move(next);
    pos += size;
  }
  return coeffs.at(k);
}

PolyRingEncoding PolyRingEncoding::for_ordinary_presentation(const Tower& t) {
  PolyRingEncoding enc = for_tower(t);
  const Presentation pres = ordinary_presentation(t);
  for (std::size_t r = 0; r < pres.relations.size(); ++r) {
    const int j = pres.relation_stage[r];
    const Stage& s = t.stage(j);
    if (s.is_borel()) {
      enc.add_relation(enc.encode(pres.relations[r]));
      continue;
    }
    // Relation k of this stage is e_k(y_j) - Psi^*(e_k(y_j)).
    int k = 1;
    for (std::size_t q = 0; q < r; ++q) k += pres.relation_stage[q] == j ? 1 : 0;
    const auto gens = invariant_generators(s, j);
    GbPoly lhs = enc.block_elementary(enc.layouts_[j - 1], k);
    GbPoly rhs = enc.encode(psi_pullback(t, j, gens[k - 1]));
    for (auto& term : rhs) term.coeff = -term.coeff;
    enc.add_relation(add(lhs, rhs, enc.order_));
  }
  return enc;
}

PolyRingEncoding PolyRingEncoding::plain(std::vector<std::string> names, std::vector<GbPoly> relations) {
  PolyRingEncoding enc;
  const int n = static_cast<int>(names.size());
  enc.names_ = std::move(names);
  enc.order_ = MonomialOrder({{0, n}});
  for (auto& r : relations) {
    for (const auto& t : r) {
      if (t.exponents.size() != enc.names_.size()) throw ArgumentError("relation has the wrong number of variables");
    }
    enc.add_relation(add(r, {}, enc.order_));
  }
  return enc;
}

void PolyRingEncoding::add_relation(GbPoly p) { relations_.push_back(std::move(p)); }

Exponents PolyRingEncoding::encode(const Monomial& m) const {
  Exponents out(names_.size(), 0);
  auto place = [&](int orig, int comp, int a) {
    if (a > 0) out[orig] += a;
    if (a < 0) out[comp] += -a;
  };
  for (const auto& [var, e] : m.entries()) {
    if (var.stage < 1 || var.stage > static_cast<int>(layouts_.size()) || var.index < 1 ||
        var.index > layouts_[var.stage - 1].vars) {
      throw ArgumentError("variable " + to_string(var) + " is not in the encoded ring");
    }
    if (var.is_base_side()) throw ArgumentError("equivariant variable " + to_string(var) + " cannot be encoded");
    if (var.kind == VarKind::W && !layouts_[var.stage - 1].spin) {
      throw ArgumentError("square-root variable " + to_string(var) + " on a non-spin stage");
    }
  }
  for (const auto& lay : layouts_) {
    const int j = lay.stage;
    const int m_vars = lay.vars;
    if (!lay.blocks.empty()) {
      int first_var = 1;
      int pos = lay.first + static_cast<int>(lay.blocks.size());
      for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
        const int a = m.exponent(VarId::y(j, first_var));
        for (int i = first_var; i < first_var + lay.blocks[b]; ++i) {
          if (m.exponent(VarId::y(j, i)) != a) {
            throw ArgumentError("monomial " + to_string(m) + " is not symmetric in parabolic block " +
                                std::to_string(b + 1) + " of stage " + std::to_string(j));
          }
        }
        pos += lay.blocks[b];
        place(pos - 1, lay.first + static_cast<int>(b), a);
        first_var += lay.blocks[b];
      }
      continue;
    }
    const int comp = lay.first;
    const int orig = lay.first + m_vars + (lay.spin ? 1 : 0);
    if (!lay.spin) {
      for (int i = 1; i <= m_vars; ++i) place(orig + i - 1, comp + i - 1, m.exponent(VarId::y(j, i)));
      continue;
    }
    const int parity = std::abs(m.half_exponent(j, 1)) % 2;
    for (int i = 1; i <= m_vars; ++i) {
      const int half = m.half_exponent(j, i);
      if (std::abs(half) % 2 != parity) {
        throw ArgumentError("monomial " + to_string(m) + " is not on the spin character lattice");
      }
      place(orig + i - 1, comp + i - 1, (half - parity) / 2);
    }
    place(orig + m_vars, comp + m_vars, parity);
  }
  return out;
}

GbPoly PolyRingEncoding::encode(const LaurentPoly& p) const {
  Workspace w{Descending{&order_}};
  for (const auto& [m, c] : p.terms()) {
    auto [it, inserted] = w.try_emplace(encode(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) w.erase(it);
    }
  }
  return from_workspace(w);
}

LaurentPoly PolyRingEncoding::decode(const Exponents& e) const {
  if (layouts_.empty()) throw ArgumentError("this encoding has no Laurent interpretation");
  LaurentPoly out = LaurentPoly::constant(1);
  for (const auto& lay : layouts_) {
    const int j = lay.stage;
    if (!lay.blocks.empty()) {
      int first_var = 1;
      int pos = lay.first + static_cast<int>(lay.blocks.size());
      for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
        std::vector<LaurentPoly> block;
        for (int i = first_var; i < first_var + lay.blocks[b]; ++i) block.push_back(LaurentPoly::variable(VarId::y(j, i)));
        for (int k = 1; k <= lay.blocks[b]; ++k) {
          const int ex = e[pos + k - 1];
          if (ex != 0) out *= elementary_symmetric(std::span<const LaurentPoly>(block), k).pow(ex);
        }
        const int bar = e[lay.first + static_cast<int>(b)];
        if (bar != 0) out *= elementary_symmetric(std::span<const LaurentPoly>(block), lay.blocks[b]).pow(-bar);
        pos += lay.blocks[b];
        first_var += lay.blocks[b];
      }
      continue;
    }
    const int comp = lay.first;
    const int orig = lay.first + lay.vars + (lay.spin ? 1 : 0);
    std::vector<Monomial::Entry> entries;
    for (int i = 1; i <= lay.vars; ++i) entries.emplace_back(VarId::y(j, i), e[orig + i - 1] - e[comp + i - 1]);
    if (lay.spin) {
      const int h = e[orig + lay.vars] - e[comp + lay.vars];
      for (int i = 1; i <= lay.vars; ++i) entries.emplace_back(VarId::w(j, i), h);
    }
    out = out.times(Monomial(std::move(entries)));
  }
  return out;
}

LaurentPoly PolyRingEncoding::decode(const GbPoly& p) const {
  LaurentPoly out(CoeffMode::Rational);
  for (const auto& t : p) {
    for (const auto& [m, c] : decode(t.exponents).terms()) out.add_term(m, c * t.coeff);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Buchberger

GbPoly s_polynomial(const MonomialOrder& order, const GbPoly& f, const GbPoly& g) {
  const Exponents l = lcm(f.front().exponents, g.front().exponents);
  const Exponents shift_f = difference(l, f.front().exponents);
  const Exponents shift_g = difference(l, g.front().exponents);
  GbPoly a;
  for (const auto& t : f) a.push_back({sum(t.exponents, shift_f), t.coeff / f.front().coeff});
  GbPoly b;
  for (const auto& t : g) b.push_back({sum(t.exponents, shift_g), -t.coeff / g.front().coeff});
  return add(a, b, order);
}

GbPoly reduce_poly(const GroebnerBasis& gb, const GbPoly& f) {
  const ResourceCaps caps = ResourceCaps::from_env();
  return Reducer(gb.encoding.order(), caps).reduce(add(f, {}, gb.encoding.order()), gb.polys, term_count(gb.polys));
}

ResourceCaps ResourceCaps::from_env() {
  ResourceCaps caps;
  if (const char* raw = std::getenv("KFLAG_RESOURCE_CAP")) {
    char* end = nullptr;
    const long long value = std::strtoll(raw, &end, 10);
    if (end == raw || *end != '\0' || value <= 0) {
      throw ArgumentError(std::string("KFLAG_RESOURCE_CAP must be a positive integer, got '") + raw + "'");
    }
    caps.max_terms = static_cast<std::size_t>(value);
    caps.max_pairs = static_cast<std::size_t>(value);
  }
  return caps;
}

GroebnerBasis buchberger(const PolyRingEncoding& enc, const ResourceCaps& caps) {
  const MonomialOrder& order = enc.order();
  const Reducer reducer(order, caps);
  std::vector<GbPoly> basis;

  struct Pair {
    std::size_t i;
    std::size_t j;
    Exponents lcm;
  };
  std::vector<Pair> pending;
  auto pending_has = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pending.begin(), pending.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
  };
  auto insert = [&](GbPoly h) {
    make_monic(h);
    basis.push_back(std::move(h));
    const std::size_t k = basis.size() - 1;
    for (std::size_t i = 0; i < k; ++i) {
      pending.push_back({i, k, lcm(basis[i].front().exponents, basis[k].front().exponents)});
    }
  };

  for (const auto& rel : enc.relations()) {
    GbPoly h = reducer.reduce(rel, basis, term_count(basis));
    if (!h.empty()) insert(std::move(h));
  }

  std::size_t processed = 0;
  while (!pending.empty()) {
    auto best = pending.begin();
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      auto c = order.compare(it->lcm, best->lcm);
      if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
    }
    const Pair pair = *best;
    pending.erase(best);

    const Exponents& lead_i = basis[pair.i].front().exponents;
    const Exponents& lead_j = basis[pair.j].front().exponents;
    if (coprime(lead_i, lead_j)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      chain = divides(basis[k].front().exponents, pair.lcm) && !pending_has(pair.i, k) && !pending_has(pair.j, k);
    }
    if (chain) continue;

    if (++processed > caps.max_pairs) {
      throw ResourceError("Groebner computation exceeded " + std::to_string(caps.max_pairs) +
                          " S-pairs (basis size " + std::to_string(basis.size()) + ", " +
                          std::to_string(pending.size()) + " pairs pending)");
    }
    GbPoly h = reducer.reduce(s_polynomial(order, basis[pair.i], basis[pair.j]), basis, term_count(basis));
    if (!h.empty()) insert(std::move(h));
  }

  // Minimal basis: drop elements whose leading monomial is divisible by another's.
  std::sort(basis.begin(), basis.end(), [&](const GbPoly& a, const GbPoly& b) {
    return order.compare(a.front().exponents, b.front().exponents) < 0;
  });
  std::vector<GbPoly> minimal;
  for (auto& g : basis) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const GbPoly& h) {
      return divides(h.front().exponents, g.front().exponents);
    });
    if (!redundant) minimal.push_back(std::move(g));
  }
  // Inter-reduce tails.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    GbPoly tail(minimal[k].begin() + 1, minimal[k].end());
    GbPoly reduced = reducer.reduce(tail, minimal, term_count(minimal), k);
    reduced.insert(reduced.begin(), minimal[k].front());
    minimal[k] = std::move(reduced);
    make_monic(minimal[k]);
  }

  GroebnerBasis out{enc, std::move(minimal), processed};
  return out;
}

namespace {

// Depth-first walk over monomials not divisible by any leading monomial.
// Returns nullopt when some variable has no pure-power leading monomial.
std::optional<std::uint64_t> walk_standard(const GroebnerBasis& gb, std::vector<Exponents>* collect) {
  const std::size_t n = gb.encoding.variable_count();
  std::vector<Exponents> leads;
  for (const auto& g : gb.polys) leads.push_back(g.front().exponents);
  if (std::any_of(leads.begin(), leads.end(),
                  [](const Exponents& e) { return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; }); })) {
    return 0;
  }
  std::vector<int> bound(n, -1);
  for (const auto& e : leads) {
    int nonzero = -1;
    int count = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (e[v] != 0) {
        nonzero = static_cast<int>(v);
        ++count;
      }
    }
    if (count == 1 && (bound[nonzero] < 0 || e[nonzero] < bound[nonzero])) bound[nonzero] = e[nonzero];
  }
  if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return std::nullopt;

  constexpr std::uint64_t kEnumerationCap = 10'000'000;
  std::uint64_t count = 0;
  Exponents current(n, 0);
  auto blocked = [&]() {
    return std::any_of(leads.begin(), leads.end(), [&](const Exponents& e) { return divides(e, current); });
  };
  std::function<void(std::size_t)> recurse = [&](std::size_t v) {
    if (v == n) {
      if (++count > kEnumerationCap) throw ResourceError("standard monomial enumeration exceeded cap");
      if (collect != nullptr) collect->push_back(current);
      return;
    }
    for (int e = 0; e < bound[v]; ++e) {
      current[v] = e;
      if (blocked()) break;
      recurse(v + 1);
    }
    current[v] = 0;
  };
  recurse(0);
  return count;
}

}  // namespace

std::optional<std::uint64_t> quotient_dimension(const GroebnerBasis& gb) { return walk_standard(gb, nullptr); }

std::vector<Exponents> standard_monomials(const GroebnerBasis& gb) {
  std::vector<Exponents> out;
  if (!walk_standard(gb, &out)) throw ArgumentError("quotient is infinite-dimensional");
  return out;
}

OracleCoordinates nf_oracle(const GroebnerBasis& gb, const LaurentPoly& p) {
  const GbPoly encoded = gb.encoding.encode(p);
  const ResourceCaps caps = ResourceCaps::from_env();
  const Reducer reducer(gb.encoding.order(), caps);
  OracleCoordinates out;
  for (auto& t : reducer.reduce(encoded, gb.polys, term_count(gb.polys))) out.emplace(std::move(t.exponents), t.coeff);
  return out;
}

RankReport verify_rank(const Tower& t, const ResourceCaps& caps) {
  const auto start = std::chrono::steady_clock::now();
  RankReport report;
  report.tower = fingerprint(t);
  report.expected = expected_rank(t);
  const GroebnerBasis gb = buchberger(PolyRingEncoding::for_ordinary_presentation(t), caps);
  report.computed = quotient_dimension(gb);
  report.basis_size = gb.polys.size();
  report.pass = report.computed.has_value() && *report.computed == report.expected;
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace kflag
