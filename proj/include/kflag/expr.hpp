#pragma once

// Polynomial expression language:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' SIGNED_INT)?
//   base   := SIGNED_INT | VAR | '(' expr ')'
//   VAR    := ('y' | 'u' | 'w' | 'v') '[' INT ',' INT ']'
// Whitespace is ignored. A '-' directly in front of a digit where a base is
// expected is the sign of an integer literal.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "kflag/laurent.hpp"
#include "kflag/tower.hpp"

namespace kflag {

struct ExprAst {
  enum class Kind { Integer, Variable, Negate, Sum, Product, Power };

  Kind kind = Kind::Integer;
  mpz_class value;  // Integer
  VarId var;        // Variable
  int exponent = 0; // Power
  std::vector<ExprAst> children;

  static ExprAst integer(const mpz_class& v);
  static ExprAst variable(VarId v);
  static ExprAst negate(ExprAst child);
  static ExprAst sum(std::vector<ExprAst> terms);
  static ExprAst product(std::vector<ExprAst> factors);
  static ExprAst power(ExprAst base, int exponent);

  friend bool operator==(const ExprAst&, const ExprAst&) = default;
};

/// Throws SyntaxError or SemanticError (non-positive variable index).
ExprAst parse_expr(std::string_view src);

/// Canonical text; parse_expr(render_expr(a)) == a.
std::string render_expr(const ExprAst& a);

/// Shape of the variable universe used for binding.
class VariableTable {
 public:
  static VariableTable from_tower(const Tower& t, PresentationMode mode = PresentationMode::Equivariant);

  /// Throws BindingError if the variable does not exist.
  void check(const VarId& v) const;

 private:
  std::vector<int> vars_;
  std::vector<bool> spin_;
  bool base_side_ = true;
};

/// Throws BindingError for unknown variables and UnitError for negative
/// powers of non-units.
LaurentPoly lower_expr(const ExprAst& a, const VariableTable& table);

inline LaurentPoly parse_poly(std::string_view src, const VariableTable& table) {
  return lower_expr(parse_expr(src), table);
}

}  // namespace kflag
