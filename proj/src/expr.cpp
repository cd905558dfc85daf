#include "kflag/expr.hpp"

#include <cctype>
#include <climits>

#include "kflag/errors.hpp"

namespace kflag {

SyntaxError::SyntaxError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : Error("syntax_error", ErrorCategory::Input,
            [&] {
              std::string msg = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected ";
              for (std::size_t k = 0; k < expected.size(); ++k) {
                if (k > 0) msg += k + 1 == expected.size() ? " or " : ", ";
                msg += expected[k];
              }
              return msg + ", found " + found;
            }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ExprAst ExprAst::integer(const mpz_class& v) {
  ExprAst a;
  a.kind = Kind::Integer;
  a.value = v;
  return a;
}

ExprAst ExprAst::variable(VarId v) {
  ExprAst a;
  a.kind = Kind::Variable;
  a.var = v;
  return a;
}

ExprAst ExprAst::negate(ExprAst child) {
  ExprAst a;
  a.kind = Kind::Negate;
  a.children.push_back(std::move(child));
  return a;
}

ExprAst ExprAst::sum(std::vector<ExprAst> terms) {
  ExprAst a;
  a.kind = Kind::Sum;
  a.children = std::move(terms);
  return a;
}

ExprAst ExprAst::product(std::vector<ExprAst> factors) {
  ExprAst a;
  a.kind = Kind::Product;
  a.children = std::move(factors);
  return a;
}

ExprAst ExprAst::power(ExprAst base, int exponent) {
  ExprAst a;
  a.kind = Kind::Power;
  a.exponent = exponent;
  a.children.push_back(std::move(base));
  return a;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprAst parse() {
    ExprAst e = expr();
    skip_space();
    if (pos_ != src_.size()) fail({"'+'", "'-'", "'*'", "'^'", "end of input"});
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool sign_then_digit() {
    skip_space();
    if (peek() != '-') return false;
    std::size_t p = pos_ + 1;
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    int line = 1;
    int column = 1;
    for (std::size_t k = 0; k < pos_; ++k) {
      if (src_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw SyntaxError(line, column, std::move(expected), found);
  }

  void expect(char c) {
    if (peek() != c) fail({"'" + std::string(1, c) + "'"});
    ++pos_;
  }

  mpz_class unsigned_digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer"});
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  mpz_class signed_int() {
    bool negative = false;
    if (peek() == '-') {
      ++pos_;
      negative = true;
    }
    mpz_class v = unsigned_digits();
    return negative ? mpz_class(-v) : v;
  }

  int small_int(const mpz_class& v, const char* what) {
    if (v > INT_MAX || v < -INT_MAX) throw SemanticError(std::string(what) + " " + v.get_str() + " is out of range");
    return static_cast<int>(v.get_si());
  }

  ExprAst expr() {
    std::vector<ExprAst> terms;
    if (peek() == '-' && !sign_then_digit()) {
      ++pos_;
      terms.push_back(ExprAst::negate(term()));
    } else {
      terms.push_back(term());
    }
    while (true) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        terms.push_back(term());
      } else if (c == '-') {
        ++pos_;
        terms.push_back(ExprAst::negate(term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? std::move(terms.front()) : ExprAst::sum(std::move(terms));
  }

  ExprAst term() {
    std::vector<ExprAst> factors;
    factors.push_back(factor());
    while (peek() == '*') {
      ++pos_;
      factors.push_back(factor());
    }
    return factors.size() == 1 ? std::move(factors.front()) : ExprAst::product(std::move(factors));
  }

  ExprAst factor() {
    ExprAst b = base();
    if (peek() == '^') {
      ++pos_;
      if (peek() != '-' && !std::isdigit(static_cast<unsigned char>(peek()))) fail({"integer"});
      return ExprAst::power(std::move(b), small_int(signed_int(), "exponent"));
    }
    return b;
  }

  ExprAst base() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || sign_then_digit()) return ExprAst::integer(signed_int());
    if (c == '(') {
      ++pos_;
      ExprAst inner = expr();
      expect(')');
      return inner;
    }
    if (c == 'y' || c == 'u' || c == 'w' || c == 'v') {
      ++pos_;
      expect('[');
      if (peek() != '-' && !std::isdigit(static_cast<unsigned char>(peek()))) fail({"integer"});
      const int j = small_int(signed_int(), "stage index");
      expect(',');
      if (peek() != '-' && !std::isdigit(static_cast<unsigned char>(peek()))) fail({"integer"});
      const int i = small_int(signed_int(), "variable index");
      expect(']');
      if (j < 1) throw SemanticError("stage index must be >= 1, got " + std::to_string(j));
      if (i < 1) throw SemanticError("variable index must be >= 1, got " + std::to_string(i));
      const VarKind kind = c == 'y' ? VarKind::Y : c == 'u' ? VarKind::U : c == 'w' ? VarKind::W : VarKind::V;
      return ExprAst::variable(VarId{j, i, kind});
    }
    fail({"'('", "integer", "variable"});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool starts_with_digit(const std::string& s) { return !s.empty() && std::isdigit(static_cast<unsigned char>(s[0])); }

std::string wrap(const std::string& s) { return "(" + s + ")"; }

}  // namespace

ExprAst parse_expr(std::string_view src) { return Parser(src).parse(); }

std::string render_expr(const ExprAst& a) {
  using K = ExprAst::Kind;
  switch (a.kind) {
    case K::Integer:
      return a.value.get_str();
    case K::Variable:
      return to_string(a.var);
    case K::Negate: {
      const ExprAst& c = a.children.front();
      std::string inner = render_expr(c);
      if (c.kind == K::Sum || c.kind == K::Negate || starts_with_digit(inner)) inner = wrap(inner);
      return "-" + inner;
    }
    case K::Sum: {
      std::string out;
      for (std::size_t k = 0; k < a.children.size(); ++k) {
        const ExprAst& c = a.children[k];
        if (c.kind == K::Sum) {
          out += (k == 0 ? "" : " + ") + wrap(render_expr(c));
        } else if (k > 0 && c.kind == K::Negate) {
          const ExprAst& inner = c.children.front();
          std::string s = render_expr(inner);
          if (inner.kind == K::Sum || inner.kind == K::Negate) s = wrap(s);
          out += " - " + s;
        } else {
          out += (k == 0 ? "" : " + ") + render_expr(c);
        }
      }
      return out;
    }
    case K::Product: {
      std::string out;
      for (std::size_t k = 0; k < a.children.size(); ++k) {
        const ExprAst& c = a.children[k];
        std::string s = render_expr(c);
        if (c.kind == K::Sum || c.kind == K::Product || c.kind == K::Negate) s = wrap(s);
        out += (k == 0 ? "" : "*") + s;
      }
      return out;
    }
    case K::Power: {
      const ExprAst& b = a.children.front();
      std::string s = render_expr(b);
      if (b.kind == K::Power || b.kind == K::Sum || b.kind == K::Product || b.kind == K::Negate) s = wrap(s);
      return s + "^" + std::to_string(a.exponent);
    }
  }
  throw InternalError("unknown expression node");
}

VariableTable VariableTable::from_tower(const Tower& t, PresentationMode mode) {
  VariableTable out;
  for (const auto& s : t.stages()) {
    out.vars_.push_back(s.vars());
    out.spin_.push_back(s.is_spin());
  }
  out.base_side_ = mode == PresentationMode::Equivariant;
  return out;
}

void VariableTable::check(const VarId& v) const {
  if (v.stage > static_cast<int>(vars_.size())) {
    throw BindingError("unknown variable " + to_string(v) + ": the tower has " + std::to_string(vars_.size()) +
                       " stage(s)");
  }
  if (v.index > vars_[v.stage - 1]) {
    throw BindingError("unknown variable " + to_string(v) + ": stage " + std::to_string(v.stage) + " has " +
                       std::to_string(vars_[v.stage - 1]) + " variable(s)");
  }
  if (v.is_root() && !spin_[v.stage - 1]) {
    throw BindingError("square-root variable " + to_string(v) + " requires a B_spin stage");
  }
  if (v.is_base_side() && !base_side_) {
    throw BindingError("equivariant variable " + to_string(v) + " is not available in ordinary mode");
  }
}

LaurentPoly lower_expr(const ExprAst& a, const VariableTable& table) {
  using K = ExprAst::Kind;
  switch (a.kind) {
    case K::Integer:
      return LaurentPoly::constant(mpq_class(a.value));
    case K::Variable:
      table.check(a.var);
      return LaurentPoly::variable(a.var);
    case K::Negate:
      return -lower_expr(a.children.front(), table);
    case K::Sum: {
      LaurentPoly out;
      for (const auto& c : a.children) out += lower_expr(c, table);
      return out;
    }
    case K::Product: {
      LaurentPoly out = LaurentPoly::constant(1);
      for (const auto& c : a.children) out *= lower_expr(c, table);
      return out;
    }
    case K::Power: {
      LaurentPoly b = lower_expr(a.children.front(), table);
      if (a.exponent < 0 && !b.as_unit()) {
        throw UnitError("negative power of non-unit " + render_expr(a.children.front()));
      }
      return b.pow(a.exponent);
    }
  }
  throw InternalError("unknown expression node");
}

}  // namespace kflag
