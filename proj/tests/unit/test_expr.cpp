#include <doctest.h>

#include "kflag/errors.hpp"
#include "kflag/expr.hpp"
#include "support/support.hpp"

using namespace kflag;
using kflag::testing::Rng;
using kflag::testing::tower_from_json;
using K = ExprAst::Kind;

namespace {

LaurentPoly y(int j, int i, int e = 1) { return LaurentPoly::variable(VarId::y(j, i), e); }
LaurentPoly u(int j, int i, int e = 1) { return LaurentPoly::variable(VarId::u(j, i), e); }
LaurentPoly w(int j, int i, int e = 1) { return LaurentPoly::variable(VarId::w(j, i), e); }
LaurentPoly c(long v) { return LaurentPoly::constant(v); }

ExprAst var(VarKind k, int j, int i) { return ExprAst::variable(VarId{j, i, k}); }

const Tower& mixed_tower() {
  static const Tower t = tower_from_json(
      R"({"stages":[{"family":"A","vars":2},{"family":"B_spin","vars":2},{"family":"A","vars":3}]})");
  return t;
}

ExprAst random_ast(Rng& rng, int depth) {
  const int pick = depth <= 0 ? rng.between(0, 1) : rng.between(0, 5);
  switch (pick) {
    case 0:
      return ExprAst::integer(rng.between(-20, 20));
    case 1: {
      const int kind = rng.between(0, 3);
      return var(static_cast<VarKind>(kind), rng.between(1, 3), rng.between(1, 3));
    }
    case 2:
      return ExprAst::negate(random_ast(rng, depth - 1));
    case 3: {
      std::vector<ExprAst> terms;
      for (int k = rng.between(2, 3); k > 0; --k) terms.push_back(random_ast(rng, depth - 1));
      return ExprAst::sum(std::move(terms));
    }
    case 4: {
      std::vector<ExprAst> factors;
      for (int k = rng.between(2, 3); k > 0; --k) factors.push_back(random_ast(rng, depth - 1));
      return ExprAst::product(std::move(factors));
    }
    default:
      return ExprAst::power(random_ast(rng, depth - 1), rng.between(-3, 3));
  }
}

}  // namespace

TEST_CASE("parse_expr examples") {
  const ExprAst a = parse_expr("y[1,1] + y[1,2]^-1");
  CHECK(a == ExprAst::sum({var(VarKind::Y, 1, 1), ExprAst::power(var(VarKind::Y, 1, 2), -1)}));

  const ExprAst b = parse_expr("(y[2,1] - 1)^3 * u[1,1]");
  CHECK(b == ExprAst::product({ExprAst::power(ExprAst::sum({var(VarKind::Y, 2, 1), ExprAst::negate(ExprAst::integer(1))}), 3),
                               var(VarKind::U, 1, 1)}));

  CHECK_THROWS_AS(parse_expr("y[0,1]"), SemanticError);
  CHECK_THROWS_AS(parse_expr("y[1,0]"), SemanticError);
  CHECK_THROWS_AS(parse_expr("y[-2,1]"), SemanticError);
}

TEST_CASE("precedence, associativity and signs") {
  CHECK(parse_expr("1 + 2 * 3") ==
        ExprAst::sum({ExprAst::integer(1), ExprAst::product({ExprAst::integer(2), ExprAst::integer(3)})}));
  CHECK(parse_expr("y[1,1]*y[1,2]^2") ==
        ExprAst::product({var(VarKind::Y, 1, 1), ExprAst::power(var(VarKind::Y, 1, 2), 2)}));
  CHECK(parse_expr("1 - 2 - 3") ==
        ExprAst::sum({ExprAst::integer(1), ExprAst::negate(ExprAst::integer(2)), ExprAst::negate(ExprAst::integer(3))}));
  CHECK(parse_expr("-y[1,1]") == ExprAst::negate(var(VarKind::Y, 1, 1)));
  CHECK(parse_expr("-3*y[1,1]") == ExprAst::product({ExprAst::integer(-3), var(VarKind::Y, 1, 1)}));
  CHECK(parse_expr("y[1,1]*-2") == ExprAst::product({var(VarKind::Y, 1, 1), ExprAst::integer(-2)}));
  CHECK(parse_expr(" y [ 1 , 2 ] ^ - 2 ") == ExprAst::power(var(VarKind::Y, 1, 2), -2));
  CHECK(parse_expr("w[2,1]*v[2,2]") == ExprAst::product({var(VarKind::W, 2, 1), var(VarKind::V, 2, 2)}));
  CHECK(parse_expr("123456789012345678901234567890").value == mpz_class("123456789012345678901234567890"));
}

TEST_CASE("syntax errors carry position and expected tokens") {
  auto error_of = [](const char* src) -> SyntaxError {
    try {
      parse_expr(src);
    } catch (const SyntaxError& e) {
      return e;
    }
    FAIL("no syntax error for " << src);
    throw;
  };
  const SyntaxError e1 = error_of("y[1,1] +");
  CHECK(e1.line() == 1);
  CHECK(e1.column() == 9);
  CHECK(e1.expected() == std::vector<std::string>{"'('", "integer", "variable"});
  CHECK(e1.kind() == "syntax_error");
  CHECK(e1.category() == ErrorCategory::Input);

  const SyntaxError e2 = error_of("y[1,1]\n  * )");
  CHECK(e2.line() == 2);
  CHECK(e2.column() == 5);

  const SyntaxError e3 = error_of("y[1 1]");
  CHECK(e3.expected() == std::vector<std::string>{"','"});

  const SyntaxError e4 = error_of("y[1,1]^y[1,2]");
  CHECK(e4.expected() == std::vector<std::string>{"integer"});

  CHECK_THROWS_AS(parse_expr(""), SyntaxError);
  CHECK_THROWS_AS(parse_expr("x[1,1]"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("y[1,1]^2^3"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("(y[1,1]"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("y[1,1] y[1,2]"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("--y[1,1]"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("y[1,1]^99999999999"), SemanticError);
}

TEST_CASE("lower_expr examples") {
  const VariableTable table = VariableTable::from_tower(tower_from_json(R"({"stages":[{"family":"A","vars":2}]})"));
  CHECK(parse_poly("y[1,1]^-2", table) == y(1, 1, -2));
  CHECK_THROWS_AS(parse_poly("(y[1,1]+1)^-1", table), UnitError);
  CHECK_THROWS_AS(parse_poly("2^-1", table), UnitError);
  CHECK(parse_poly("(-1)^-3", table) == c(-1));
  CHECK(parse_poly("(-y[1,1])^-1", table) == -y(1, 1, -1));
  CHECK_THROWS_AS(parse_poly("w[1,1]", table), BindingError);
  CHECK_THROWS_AS(parse_poly("y[1,3]", table), BindingError);
  CHECK_THROWS_AS(parse_poly("y[2,1]", table), BindingError);

  const VariableTable ordinary =
      VariableTable::from_tower(tower_from_json(R"({"stages":[{"family":"A","vars":2}]})"), PresentationMode::Ordinary);
  CHECK_THROWS_AS(parse_poly("u[1,1]", ordinary), BindingError);
}

TEST_CASE("lower_expr agrees with direct construction") {
  const VariableTable table = VariableTable::from_tower(mixed_tower());
  const LaurentPoly v21 = LaurentPoly::variable(VarId::v(2, 1));
  const std::vector<std::pair<const char*, LaurentPoly>> cases{
      {"0", LaurentPoly()},
      {"-7", c(-7)},
      {"y[1,1]", y(1, 1)},
      {"y[1,1] + y[1,2] - 2", y(1, 1) + y(1, 2) - c(2)},
      {"y[1,1]*y[1,2] - 1", y(1, 1) * y(1, 2) - c(1)},
      {"(y[1,1] - y[1,2])*(y[1,1] + y[1,2])", y(1, 1, 2) - y(1, 2, 2)},
      {"(y[2,1] - 1)^3*u[1,1]", (y(2, 1) - c(1)).pow(3) * u(1, 1)},
      {"(w[2,1] + w[2,1]^-1)^2", y(2, 1) + c(2) + y(2, 1, -1)},
      {"w[2,1]^2", y(2, 1)},
      {"w[2,1]*w[2,2]", w(2, 1) * w(2, 2)},
      {"(w[2,1]*w[2,2])^-1", w(2, 1, -1) * w(2, 2, -1)},
      {"v[2,1]^3", v21 * LaurentPoly::variable(VarId::u(2, 1))},
      {"u[3,3]^-2*y[3,3]^4", u(3, 3, -2) * y(3, 3, 4)},
      {"-(y[1,1])", -y(1, 1)},
      {"-(3*y[1,1])", c(-3) * y(1, 1)},
      {"2*(y[1,2] + 1)^2", c(2) * y(1, 2, 2) + c(4) * y(1, 2) + c(2)},
      {"y[1,1]^0", c(1)},
      {"(y[1,1]*y[1,2]^-1)^-2", y(1, 1, -2) * y(1, 2, 2)},
      {"1 - 1 + y[3,1] - y[3,1]", LaurentPoly()},
      {"(y[1,1]+u[1,1])^2 - y[1,1]^2", c(2) * y(1, 1) * u(1, 1) + u(1, 1, 2)},
  };
  REQUIRE(cases.size() == 20);
  for (const auto& [src, expected] : cases) {
    CAPTURE(src);
    CHECK(parse_poly(src, table) == expected);
  }
}

TEST_CASE("render_expr round trip on a fixed corpus") {
  const std::vector<const char*> corpus{
      "y[1,1]",         "-y[1,1]",          "-3",           "-(3)",           "y[1,1] - -3",  "-3^2",
      "(-3)^2",         "y[1,1]*-2",        "-(y[1,1] + 1)", "(y[1,1] + 1)*(y[1,2] - 1)", "((y[1,1]))",
      "(y[1,1]^2)^3",   "y[1,1]^-1",        "1 - (2 - 3)",  "(1 + 2) + 3",    "1*(2*3)",      "-(-y[1,1])",
      "-(3*y[1,1])",    "u[2,1]*w[1,1]",    "v[1,1]^-3",    "0",              "007",          "-y[1,1]^2 + 4",
  };
  for (const char* src : corpus) {
    CAPTURE(src);
    const ExprAst a = parse_expr(src);
    const std::string text = render_expr(a);
    CHECK(parse_expr(text) == a);
    CHECK(render_expr(parse_expr(text)) == text);
  }
  CHECK(render_expr(parse_expr("(y[2,1]-1)^3*u[1,1]")) == "(y[2,1] - 1)^3*u[1,1]");
  CHECK(render_expr(parse_expr("y[1,1]+y[1,2]^-1")) == "y[1,1] + y[1,2]^-1");
}

TEST_CASE("render_expr round trip on random trees") {
  Rng rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const ExprAst a = random_ast(rng, 4);
    const std::string text = render_expr(a);
    CAPTURE(text);
    CHECK(parse_expr(text) == a);
  }
}

TEST_CASE("canonical polynomial text re-parses to the same polynomial") {
  Rng rng(55);
  const VariableTable table = VariableTable::from_tower(mixed_tower());
  const std::vector<VarId> vars{VarId::y(1, 1), VarId::y(1, 2), VarId::u(1, 2), VarId::w(2, 1),
                                VarId::y(2, 2), VarId::v(2, 2),  VarId::y(3, 3)};
  for (int trial = 0; trial < 150; ++trial) {
    const LaurentPoly p = kflag::testing::random_poly(rng, vars, 5, 5, -3, 3, 40);
    CHECK(parse_poly(to_string(p), table) == p);
  }
}
