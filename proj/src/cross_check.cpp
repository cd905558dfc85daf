#include "kflag/cross_check.hpp"

#include "kflag/errors.hpp"

namespace kflag {

OracleAlignment::OracleAlignment(const QuotientEngine& engine, const GroebnerBasis& gb) : engine_(engine), gb_(gb) {
  if (engine.mode() != PresentationMode::Ordinary) throw ModeError("oracle alignment needs an ordinary-mode engine");
  for (const auto& b : engine.basis()) columns_.push_back(nf_oracle(gb, LaurentPoly::monomial(b)));
  const auto dim = quotient_dimension(gb);
  if (!dim || *dim != columns_.size()) return;
  std::vector<Exponents> standard = standard_monomials(gb);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& col : columns_) {
    std::vector<mpq_class> row;
    for (const auto& s : standard) {
      auto it = col.find(s);
      row.push_back(it == col.end() ? mpq_class(0) : it->second);
    }
    rows.push_back(std::move(row));
  }
  full_rank_ = rational_rank(std::move(rows)) == columns_.size();
}

bool OracleAlignment::agrees(const LaurentPoly& p) const {
  const BasisVector nf = engine_.normal_form(p);
  OracleCoordinates combined;
  const auto& basis = engine_.basis();
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const mpq_class c = nf.coefficient(basis[b]).coefficient(Monomial());
    if (c == 0) continue;
    for (const auto& [e, x] : columns_[b]) {
      mpq_class& slot = combined[e];
      slot += c * x;
      if (slot == 0) combined.erase(e);
    }
  }
  return combined == nf_oracle(gb_, p);
}

std::size_t rational_rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

CrossCheckResult cross_check(const QuotientEngine& engine, const GroebnerBasis& gb) {
  CrossCheckResult out;
  const OracleAlignment align(engine, gb);
  out.full_rank = align.full_rank();
  if (!out.full_rank) return out;
  std::vector<LaurentPoly> units;
  const Tower& t = engine.tower();
  for (int j = 1; j <= t.height(); ++j) {
    for (int i = 1; i <= t.stage(j).vars(); ++i) {
      units.push_back(LaurentPoly::variable(VarId::y(j, i)));
      units.push_back(LaurentPoly::variable(VarId::y(j, i), -1));
    }
  }
  auto check = [&](const LaurentPoly& p) {
    ++out.samples;
    if (!align.agrees(p)) ++out.disagreements;
  };
  for (std::size_t a = 0; a < units.size(); ++a) {
    check(units[a]);
    for (std::size_t b = a; b < units.size(); ++b) check(units[a] * units[b]);
  }
  return out;
}

}  // namespace kflag
