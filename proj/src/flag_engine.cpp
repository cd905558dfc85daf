#include "kflag/flag_engine.hpp"

#include <algorithm>

#include "kflag/errors.hpp"

namespace kflag {

BasisVector::BasisVector(Coordinates coords) : coords_(std::move(coords)) {
  std::erase_if(coords_, [](const auto& kv) { return kv.second.is_zero(); });
}

LaurentPoly BasisVector::coefficient(const Monomial& basis_monomial) const {
  auto it = coords_.find(basis_monomial);
  return it == coords_.end() ? LaurentPoly() : it->second;
}

LaurentPoly BasisVector::expansion() const {
  LaurentPoly out;
  for (const auto& [m, c] : coords_) out += c.times(m);
  return out;
}

namespace {

LaurentPoly stage_product(int j, int m) {
  std::vector<Monomial::Entry> entries;
  for (int i = 1; i <= m; ++i) entries.emplace_back(VarId::y(j, i), 1);
  return LaurentPoly::monomial(Monomial(std::move(entries)));
}

}  // namespace

QuotientEngine QuotientEngine::build(const Tower& tower, PresentationMode mode) {
  if (!tower.all_type_a_borel()) {
    throw UnsupportedError("the exact normal-form engine requires full-flag type-A stages");
  }
  QuotientEngine e(tower, mode);
  const bool twisted = mode == PresentationMode::Equivariant;
  auto pull = [&](int j, const LaurentPoly& p) {
    return twisted ? twisted_pullback(e.tower_, j, p) : psi_pullback(e.tower_, j, p);
  };

  for (int j = 1; j <= tower.height(); ++j) {
    const int m = tower.stage(j).vars();
    auto det = pull(j, stage_product(j, m)).as_unit();
    if (!det || det->first != 1) throw InternalError("determinant image is not a monomial");
    e.determinant_image_.push_back(det->second);

    std::vector<LaurentPoly> ys;
    for (int i = 1; i <= m; ++i) ys.push_back(LaurentPoly::variable(VarId::y(j, i)));
    std::vector<LaurentPoly> chern(m + 1);
    chern[0] = LaurentPoly::constant(1);
    for (int k = 1; k <= m; ++k) {
      chern[k] = e.reduce_below(pull(j, elementary_symmetric(std::span<const LaurentPoly>(ys), k)), j - 1);
    }

    // f[d] = coefficient of t^d in f_{j,i-1}(t).
    std::vector<LaurentPoly> f(m + 1);
    for (int k = 0; k <= m; ++k) f[m - k] = (k % 2 == 0) ? chern[k] : -chern[k];

    std::vector<Row> rows;
    for (int i = 1; i <= m; ++i) {
      const int degree = static_cast<int>(f.size()) - 1;
      const VarId y = VarId::y(j, i);
      Row row;
      row.degree = degree;
      row.tail.assign(f.begin(), f.end() - 1);
      for (int d = 0; d <= degree; ++d) row.poly += f[d].times(Monomial(y, d));
      rows.push_back(std::move(row));

      if (i == m) break;
      std::vector<LaurentPoly> q(degree);
      q[degree - 1] = f[degree];
      for (int d = degree - 1; d >= 1; --d) q[d - 1] = f[d] + q[d].times(Monomial(y));
      f = std::move(q);
    }
    e.rows_.push_back(std::move(rows));
    e.chern_.push_back(std::move(chern));
  }

  // Standard monomials, stage 1 index 1 varying fastest.
  std::vector<std::pair<VarId, int>> caps;
  for (int j = 1; j <= tower.height(); ++j) {
    const int m = tower.stage(j).vars();
    for (int i = 1; i <= m; ++i) caps.emplace_back(VarId::y(j, i), m - i);
  }
  std::vector<int> digits(caps.size(), 0);
  while (true) {
    std::vector<Monomial::Entry> entries;
    for (std::size_t k = 0; k < caps.size(); ++k) entries.emplace_back(caps[k].first, digits[k]);
    e.basis_.emplace_back(std::move(entries));
    std::size_t k = 0;
    while (k < caps.size() && digits[k] == caps[k].second) digits[k++] = 0;
    if (k == caps.size()) break;
    ++digits[k];
  }

  if (e.basis_.size() != expected_rank(tower)) {
    throw InternalError("standard monomial count differs from expected rank");
  }
  const Presentation pres = twisted ? equivariant_presentation(tower) : ordinary_presentation(tower);
  for (const auto& rel : pres.relations) {
    if (!e.reduce(rel).is_zero()) {
      throw InternalError("presentation relation " + to_string(rel) + " does not reduce to zero");
    }
  }
  return e;
}

const LaurentPoly& QuotientEngine::row(int j, int i) const { return rows_.at(j - 1).at(i - 1).poly; }

const LaurentPoly& QuotientEngine::chern_coefficient(int j, int k) const { return chern_.at(j - 1).at(k); }

std::size_t QuotientEngine::row_count() const {
  std::size_t n = 0;
  for (const auto& rows : rows_) n += rows.size();
  return n;
}

void QuotientEngine::check_universe(const LaurentPoly& p) const {
  for (const VarId& var : p.variables()) {
    if (var.stage < 1 || var.stage > tower_.height() || var.index < 1 ||
        var.index > tower_.stage(var.stage).vars()) {
      throw ArgumentError("variable " + to_string(var) + " is not in the tower");
    }
    if (var.is_root()) throw ArgumentError("square-root variable " + to_string(var) + " on a type-A tower");
    if (var.kind == VarKind::U && mode_ == PresentationMode::Ordinary) {
      throw ArgumentError("ordinary-mode normal form cannot contain " + to_string(var));
    }
  }
}

LaurentPoly QuotientEngine::clear_inverses_below(const LaurentPoly& p, int top_stage) const {
  return map_monomials(p, [&](const Monomial& start) {
    Monomial m = start;
    for (int j = top_stage; j >= 1; --j) {
      const int count = tower_.stage(j).vars();
      int deficit = 0;
      for (int i = 1; i <= count; ++i) deficit = std::max(deficit, -m.exponent(VarId::y(j, i)));
      if (deficit == 0) continue;
      // y_{j,1}...y_{j,m} equals the determinant image in the quotient.
      std::vector<Monomial::Entry> entries;
      for (int i = 1; i <= count; ++i) entries.emplace_back(VarId::y(j, i), deficit);
      m = m * Monomial(std::move(entries)) * determinant_image_[j - 1].pow(-deficit);
    }
    return LaurentPoly::monomial(m);
  });
}

LaurentPoly QuotientEngine::clear_inverses(const LaurentPoly& p) const {
  check_universe(p);
  return clear_inverses_below(p, tower_.height());
}

LaurentPoly QuotientEngine::reduce_variable(const LaurentPoly& p, int j, int i) const {
  const Row& row = rows_[j - 1][i - 1];
  const VarId y = VarId::y(j, i);
  std::map<int, LaurentPoly> buckets;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(y);
    buckets[e].add_term(m.without([&](const VarId& v) { return v == y; }), c);
  }
  while (!buckets.empty() && buckets.rbegin()->first >= row.degree) {
    auto top = std::prev(buckets.end());
    const int e = top->first;
    LaurentPoly coeff = std::move(top->second);
    buckets.erase(top);
    // y^degree = -sum_{d < degree} tail[d] y^d.
    for (int d = 0; d < row.degree; ++d) {
      if (row.tail[d].is_zero()) continue;
      buckets[e - row.degree + d] -= reduce_stages(coeff * row.tail[d], j - 1);
    }
  }
  LaurentPoly out;
  for (const auto& [e, coeff] : buckets) out += coeff.times(Monomial(y, e));
  return out;
}

LaurentPoly QuotientEngine::reduce_below(const LaurentPoly& p, int top_stage) const {
  return reduce_stages(clear_inverses_below(p, top_stage), top_stage);
}

// Lower stages are reduced first and kept reduced, so coefficients stay
// small while the top stage is divided out.
LaurentPoly QuotientEngine::reduce_stages(const LaurentPoly& p, int top_stage) const {
  if (top_stage == 0) return p;
  LaurentPoly q = reduce_stages(p, top_stage - 1);
  for (int i = tower_.stage(top_stage).vars(); i >= 1; --i) q = reduce_variable(q, top_stage, i);
  return q;
}

LaurentPoly QuotientEngine::reduce(const LaurentPoly& p) const {
  check_universe(p);
  return reduce_below(p, tower_.height());
}

BasisVector QuotientEngine::normal_form(const LaurentPoly& p) const {
  const LaurentPoly r = reduce(p);
  BasisVector::Coordinates coords;
  for (const auto& [m, c] : r.terms()) {
    Monomial fiber = m.only([](const VarId& v) { return v.kind == VarKind::Y; });
    Monomial base = m.only([](const VarId& v) { return v.kind == VarKind::U; });
    coords[fiber].add_term(base, c);
  }
  return BasisVector(std::move(coords));
}

MultTable mult_table(const QuotientEngine& engine, std::size_t cap) {
  const auto& basis = engine.basis();
  if (basis.size() > cap) {
    throw SizeError("basis size " + std::to_string(basis.size()) + " exceeds multiplication table cap " +
                    std::to_string(cap));
  }
  MultTable table(basis.size(), std::vector<BasisVector>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      table[a][b] = engine.normal_form(LaurentPoly::monomial(basis[a] * basis[b]));
    }
  }
  return table;
}

}  // namespace kflag
