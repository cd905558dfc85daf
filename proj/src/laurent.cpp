#include "kflag/laurent.hpp"

#include <algorithm>

#include "kflag/errors.hpp"

namespace kflag {

namespace {

char kind_letter(VarKind kind) {
  switch (kind) {
    case VarKind::Y: return 'y';
    case VarKind::U: return 'u';
    case VarKind::W: return 'w';
    case VarKind::V: return 'v';
  }
  return '?';
}

}  // namespace

std::string to_string(const VarId& var) {
  std::string out(1, kind_letter(var.kind));
  out += '[' + std::to_string(var.stage) + ',' + std::to_string(var.index) + ']';
  return out;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(VarId var, int exponent) {
  if (exponent != 0) entries_.emplace_back(var, exponent);
  normalize();
}

Monomial::Monomial(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  entries_ = std::move(merged);
  normalize();
}

// A square-root exponent e_w together with the exponent e_y of its square
// gives t = 2*e_y + e_w half units. Odd t is stored as w^{+1} (t > 0) or
// w^{-1} (t < 0), so the representation is symmetric under t -> -t.
void Monomial::normalize() {
  bool has_root = std::any_of(entries_.begin(), entries_.end(),
                              [](const Entry& e) { return e.first.is_root(); });
  if (!has_root) return;

  std::map<VarId, int> acc;
  for (const auto& [var, e] : entries_) {
    if (!var.is_root()) {
      acc[var] += e;
      continue;
    }
    VarId square{var.stage, var.index, var.kind == VarKind::W ? VarKind::Y : VarKind::U};
    // Half-unit accounting; the square's exponent is doubled below.
    acc[var] += e;
    acc[square] += 0;
  }
  std::vector<Entry> out;
  for (auto it = acc.begin(); it != acc.end(); ++it) {
    const VarId& var = it->first;
    if (var.is_root()) continue;
    VarId root{var.stage, var.index, var.kind == VarKind::Y ? VarKind::W : VarKind::V};
    auto rit = acc.find(root);
    int root_exp = rit == acc.end() ? 0 : rit->second;
    int t = 2 * it->second + root_exp;
    int square_exp = 0;
    int new_root = 0;
    if (t % 2 == 0) {
      square_exp = t / 2;
    } else if (t > 0) {
      new_root = 1;
      square_exp = (t - 1) / 2;
    } else {
      new_root = -1;
      square_exp = (t + 1) / 2;
    }
    if (square_exp != 0) out.emplace_back(var, square_exp);
    if (new_root != 0) out.emplace_back(root, new_root);
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  entries_ = std::move(out);
}

int Monomial::exponent(const VarId& var) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, const VarId& v) { return e.first < v; });
  return (it != entries_.end() && it->first == var) ? it->second : 0;
}

int Monomial::half_exponent(int stage, int index, bool base_side) const {
  VarKind sq = base_side ? VarKind::U : VarKind::Y;
  VarKind rt = base_side ? VarKind::V : VarKind::W;
  return 2 * exponent({stage, index, sq}) + exponent({stage, index, rt});
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int k) const {
  std::vector<Entry> out(entries_);
  for (auto& e : out) e.second *= k;
  return Monomial(std::move(out));
}

Monomial Monomial::without(const std::function<bool(const VarId&)>& drop) const {
  return only([&](const VarId& v) { return !drop(v); });
}

Monomial Monomial::only(const std::function<bool(const VarId&)>& keep) const {
  Monomial out;
  for (const auto& e : entries_) {
    if (keep(e.first)) out.entries_.push_back(e);
  }
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  std::vector<Monomial::Entry> merged;
  merged.reserve(a.entries_.size() + b.entries_.size());
  merged.insert(merged.end(), a.entries_.begin(), a.entries_.end());
  merged.insert(merged.end(), b.entries_.begin(), b.entries_.end());
  return Monomial(std::move(merged));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  while (ia != a.entries_.end() || ib != b.entries_.end()) {
    if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
      // a has a variable b lacks (b's exponent there is 0).
      return ia->second <=> 0;
    }
    if (ia == a.entries_.end() || ib->first < ia->first) {
      return 0 <=> ib->second;
    }
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [var, e] : m.entries()) {
    if (!out.empty()) out += '*';
    out += to_string(var);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(const mpq_class& c, CoeffMode mode) {
  return monomial(Monomial(), c, mode);
}

LaurentPoly LaurentPoly::variable(VarId var, int exponent) {
  return monomial(Monomial(var, exponent));
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const mpq_class& c, CoeffMode mode) {
  LaurentPoly p(mode);
  p.add_term(m, c);
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

mpq_class LaurentPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void LaurentPoly::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  if (mode_ == CoeffMode::Integer && c.get_den() != 1) {
    throw ModeError("non-integer coefficient " + c.get_str() + " in integer-mode polynomial");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::require_same_mode(const LaurentPoly& other) const {
  if (mode_ != other.mode_) {
    throw ModeError("mixed integer and rational coefficient modes");
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_same_mode(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  require_same_mode(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.require_same_mode(b);
  LaurentPoly out(a.mode_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::times(const Monomial& m, const mpq_class& c) const {
  LaurentPoly out(mode_);
  if (c == 0) return out;
  for (const auto& [mt, ct] : terms_) out.add_term(mt * m, ct * c);
  return out;
}

LaurentPoly LaurentPoly::pow(int k) const {
  if (k < 0) {
    auto unit = as_unit();
    if (!unit) throw UnitError("negative power of non-unit " + to_string(*this));
    return monomial(unit->second.pow(k), (k % 2 == 0) ? 1 : unit->first, mode_);
  }
  LaurentPoly result = constant(1, mode_);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

std::optional<std::pair<int, Monomial>> LaurentPoly::as_unit() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (c == 1) return std::make_pair(1, m);
  if (c == -1) return std::make_pair(-1, m);
  return std::nullopt;
}

std::set<VarId> LaurentPoly::variables() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [var, e] : m.entries()) out.insert(var);
  }
  return out;
}

LaurentPoly LaurentPoly::to_rational() const {
  LaurentPoly out(*this);
  out.mode_ = CoeffMode::Rational;
  return out;
}

LaurentPoly LaurentPoly::to_integer() const {
  LaurentPoly out(CoeffMode::Integer);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

std::string coefficient_string(const mpq_class& c) { return c.get_str(); }

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    mpq_class mag = abs(c);
    std::string body;
    if (m.is_one()) {
      body = coefficient_string(mag);
    } else if (mag == 1) {
      body = to_string(m);
    } else {
      body = coefficient_string(mag) + '*' + to_string(m);
    }
    if (first) {
      out = (c < 0 ? "-" : "") + body;
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly map_monomials(const LaurentPoly& p,
                          const std::function<LaurentPoly(const Monomial&)>& image) {
  LaurentPoly out(p.mode());
  for (const auto& [m, c] : p.terms()) {
    LaurentPoly img = image(m);
    if (img.mode() != p.mode()) img = p.mode() == CoeffMode::Rational ? img.to_rational() : img.to_integer();
    for (const auto& [mi, ci] : img.terms()) out.add_term(mi, ci * c);
  }
  return out;
}

LaurentPoly substitute_monomials(const LaurentPoly& p, const std::map<VarId, LaurentPoly>& images) {
  std::map<VarId, std::pair<int, Monomial>> units;
  for (const auto& [var, img] : images) {
    auto unit = img.as_unit();
    if (!unit) {
      throw UnitError("substitution image of " + to_string(var) + " is not a unit: " + to_string(img));
    }
    units.emplace(var, *unit);
  }
  return map_monomials(p, [&](const Monomial& m) {
    int sign = 1;
    std::vector<Monomial::Entry> rest;
    Monomial out;
    for (const auto& [var, e] : m.entries()) {
      auto it = units.find(var);
      if (it == units.end()) {
        rest.emplace_back(var, e);
        continue;
      }
      if (it->second.first < 0 && e % 2 != 0) sign = -sign;
      out = out * it->second.second.pow(e);
    }
    return LaurentPoly::monomial(out * Monomial(std::move(rest)), sign);
  });
}

LaurentPoly elementary_symmetric(std::span<const LaurentPoly> vars, int k) {
  const int n = static_cast<int>(vars.size());
  if (k < 0 || k > n) {
    throw ArgumentError("elementary symmetric degree " + std::to_string(k) + " outside [0, " +
                        std::to_string(n) + "]");
  }
  // table[d] = e_d of the prefix processed so far.
  const CoeffMode mode = vars.empty() ? CoeffMode::Integer : vars.front().mode();
  std::vector<LaurentPoly> table(k + 1, LaurentPoly(mode));
  table[0] = LaurentPoly::constant(1, mode);
  for (int i = 0; i < n; ++i) {
    for (int d = std::min(k, i + 1); d >= 1; --d) {
      table[d] += table[d - 1] * vars[i];
    }
  }
  return table[k];
}

LaurentPoly elementary_symmetric(std::span<const Monomial> vars, int k) {
  std::vector<LaurentPoly> polys;
  polys.reserve(vars.size());
  for (const auto& m : vars) polys.push_back(LaurentPoly::monomial(m));
  return elementary_symmetric(std::span<const LaurentPoly>(polys), k);
}

mpq_class eval_point(const LaurentPoly& p, const std::map<VarId, mpq_class>& assignment) {
  for (const auto& [var, value] : assignment) {
    if (value == 0) throw EvaluationError("zero value assigned to " + to_string(var));
  }
  mpq_class total = 0;
  for (const auto& [m, c] : p.terms()) {
    mpq_class term = c;
    for (const auto& [var, e] : m.entries()) {
      auto it = assignment.find(var);
      if (it == assignment.end()) throw EvaluationError("no value assigned to " + to_string(var));
      mpq_class base = e > 0 ? it->second : mpq_class(1 / it->second);
      for (int i = 0; i < std::abs(e); ++i) term *= base;
    }
    total += term;
  }
  return total;
}

}  // namespace kflag
