#include <doctest.h>

#include <cstdlib>

#include "kflag/errors.hpp"
#include "kflag/groebner.hpp"
#include "support/support.hpp"

using namespace kflag;
using kflag::testing::Rng;
using kflag::testing::tower_from_json;

namespace {

LaurentPoly y(int j, int i, int e = 1) { return LaurentPoly::variable(VarId::y(j, i), e); }
LaurentPoly w(int j, int i, int e = 1) { return LaurentPoly::variable(VarId::w(j, i), e); }
LaurentPoly c(long v) { return LaurentPoly::constant(v); }

const char* kSl2 = R"({"stages":[{"family":"A","vars":2}]})";
const char* kSp1 = R"({"stages":[{"family":"C","vars":1}]})";

GbPoly poly(std::initializer_list<std::pair<Exponents, long>> terms) {
  GbPoly out;
  for (const auto& [e, v] : terms) out.push_back({e, v});
  return out;
}

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) { setenv("KFLAG_RESOURCE_CAP", value, 1); }
  ~EnvGuard() { unsetenv("KFLAG_RESOURCE_CAP"); }
};

std::uint64_t rank_of(const char* json) {
  const Tower t = tower_from_json(json);
  return *quotient_dimension(buchberger(PolyRingEncoding::for_ordinary_presentation(t)));
}

}  // namespace

TEST_CASE("buchberger examples") {
  // Sp(1): y + ybar - 2 with the companion relation y*ybar - 1.
  const Tower sp1 = tower_from_json(kSp1);
  const PolyRingEncoding enc = PolyRingEncoding::for_ordinary_presentation(sp1);
  REQUIRE(enc.variable_names() == std::vector<std::string>{"ybar[1,1]", "y[1,1]"});
  const GroebnerBasis gb = buchberger(enc);
  // Variables are (ybar, y); ybar is the larger one.
  CHECK(gb.polys == std::vector<GbPoly>{poly({{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, -2}}),
                                        poly({{{0, 2}, 1}, {{0, 1}, -2}, {{0, 0}, 1}})});

  const GroebnerBasis empty = buchberger(PolyRingEncoding::plain({"x", "z"}, {}));
  CHECK(empty.polys.empty());
  CHECK_FALSE(quotient_dimension(empty).has_value());
  CHECK_THROWS_AS(standard_monomials(empty), ArgumentError);

  const GroebnerBasis unit = buchberger(PolyRingEncoding::plain({"x"}, {poly({{{0}, 1}})}));
  CHECK(unit.polys == std::vector<GbPoly>{poly({{{0}, 1}})});
  CHECK(quotient_dimension(unit) == 0u);
}

TEST_CASE("quotient_dimension examples") {
  CHECK(rank_of(kSl2) == 2);
  CHECK(rank_of(kSp1) == 2);
  CHECK(rank_of(R"({"stages":[{"family":"B_spin","vars":2}]})") == 8);
  CHECK(rank_of(R"({"stages":[{"family":"B_spin","vars":1}]})") == 2);
  CHECK(rank_of(R"({"stages":[{"family":"C","vars":2}]})") == 8);
  CHECK(rank_of(R"({"stages":[{"family":"A","vars":4,"blocks":[2,2]}]})") == 6);
  CHECK(rank_of(R"({"stages":[{"family":"A","vars":3,"blocks":[2,1]},{"family":"A","vars":2}],
                    "maps":{"2":{"1":[[1,1,0],[-1,-1,2]]}}})") == 6);
}

TEST_CASE("nf_oracle examples") {
  const Tower sl2 = tower_from_json(kSl2);
  const GroebnerBasis gb = buchberger(PolyRingEncoding::for_ordinary_presentation(sl2));
  const PolyRingEncoding& enc = gb.encoding;
  auto decoded = [&](const OracleCoordinates& coords) {
    LaurentPoly out(CoeffMode::Rational);
    for (const auto& [e, v] : coords) out += enc.decode(e).to_rational().times(Monomial(), v);
    return out;
  };
  // The standard monomials are 1 and y[1,2].
  CHECK(decoded(nf_oracle(gb, y(1, 2))) == y(1, 2).to_rational());
  CHECK(decoded(nf_oracle(gb, y(1, 1))) == (c(2) - y(1, 2)).to_rational());
  CHECK(decoded(nf_oracle(gb, y(1, 1) * y(1, 2))) == c(1).to_rational());
  CHECK(nf_oracle(gb, LaurentPoly()).empty());
  const auto standard = standard_monomials(gb);
  REQUIRE(standard.size() == 2);
}

TEST_CASE("verify_rank examples") {
  const RankReport two = verify_rank(tower_from_json(
      R"({"stages":[{"family":"A","vars":2},{"family":"A","vars":2}],"maps":{"2":{"1":[[1,0],[0,0]]}}})"));
  CHECK(two.expected == 4);
  CHECK(two.computed == 4u);
  CHECK(two.pass);
  const RankReport blocks = verify_rank(tower_from_json(R"({"stages":[{"family":"A","vars":3,"blocks":[2,1]}]})"));
  CHECK(blocks.expected == 3);
  CHECK(blocks.computed == 3u);
  const RankReport spin = verify_rank(tower_from_json(R"({"stages":[{"family":"B_spin","vars":1}]})"));
  CHECK(spin.expected == 2);
  CHECK(spin.computed == 2u);
  CHECK(spin.basis_size > 0);
}

TEST_CASE("resource caps") {
  const Tower t = tower_from_json(R"({"stages":[{"family":"B_spin","vars":2}]})");
  ResourceCaps tiny;
  tiny.max_terms = 5;
  CHECK_THROWS_AS(buchberger(PolyRingEncoding::for_ordinary_presentation(t), tiny), ResourceError);
  ResourceCaps few_pairs;
  few_pairs.max_pairs = 1;
  CHECK_THROWS_AS(buchberger(PolyRingEncoding::for_ordinary_presentation(t), few_pairs), ResourceError);
  {
    EnvGuard env("3");
    const ResourceCaps caps = ResourceCaps::from_env();
    CHECK(caps.max_terms == 3);
    CHECK(caps.max_pairs == 3);
    CHECK_THROWS_AS(verify_rank(t), ResourceError);
  }
  {
    EnvGuard env("lots");
    CHECK_THROWS_AS(ResourceCaps::from_env(), ArgumentError);
  }
  CHECK(ResourceCaps::from_env().max_terms == 1'000'000);
  CHECK(ResourceCaps::from_env().max_pairs == 100'000);
}

TEST_CASE("encoding round trip") {
  Rng rng(3);
  const Tower t = tower_from_json(R"({"stages":[{"family":"A","vars":2},{"family":"B_spin","vars":2},
                                      {"family":"A","vars":3,"blocks":[1,2]}],
                                      "maps":{"2":{"1":[[1,0],[1,2]]}}})");
  const PolyRingEncoding enc = PolyRingEncoding::for_tower(t);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Monomial::Entry> entries;
    for (int i = 1; i <= 2; ++i) entries.emplace_back(VarId::y(1, i), rng.between(-3, 3));
    const int parity = rng.between(0, 1);
    for (int i = 1; i <= 2; ++i) {
      entries.emplace_back(VarId::y(2, i), rng.between(-2, 2));
      entries.emplace_back(VarId::w(2, i), parity == 1 ? (rng.coin() ? 1 : -1) : 0);
    }
    entries.emplace_back(VarId::y(3, 1), rng.between(-2, 2));
    const int block = rng.between(-2, 2);
    entries.emplace_back(VarId::y(3, 2), block);
    entries.emplace_back(VarId::y(3, 3), block);
    const Monomial m(std::move(entries));
    const Exponents e = enc.encode(m);
    CHECK(enc.decode(e) == LaurentPoly::monomial(m));
  }
  CHECK_THROWS_AS(enc.encode(Monomial({{VarId::y(3, 2), 1}})), ArgumentError);
  CHECK_THROWS_AS(enc.encode(Monomial({{VarId::w(2, 1), 1}})), ArgumentError);
  CHECK_THROWS_AS(enc.encode(Monomial({{VarId::u(1, 1), 1}})), ArgumentError);
  CHECK_THROWS_AS(enc.encode(Monomial({{VarId::w(1, 1), 1}})), ArgumentError);
}

TEST_CASE("Groebner basis invariants") {
  const std::vector<const char*> towers{
      kSl2,
      kSp1,
      R"({"stages":[{"family":"C","vars":2}]})",
      R"({"stages":[{"family":"B_spin","vars":2}]})",
      R"({"stages":[{"family":"A","vars":2},{"family":"C","vars":1}],"maps":{"2":{"1":[[1,-1]]}}})",
      R"({"stages":[{"family":"A","vars":3,"blocks":[2,1]}]})",
      R"({"stages":[{"family":"A","vars":2},{"family":"A","vars":2}],"maps":{"2":{"1":[[2,-1],[0,1]]}}})"};
  for (const char* json : towers) {
    CAPTURE(json);
    const Tower t = tower_from_json(json);
    const PolyRingEncoding enc = PolyRingEncoding::for_ordinary_presentation(t);
    const GroebnerBasis gb = buchberger(enc);
    const MonomialOrder& order = enc.order();
    for (std::size_t a = 0; a < gb.polys.size(); ++a) {
      CHECK(gb.polys[a].front().coeff == 1);
      for (std::size_t t2 = 1; t2 < gb.polys[a].size(); ++t2) {
        CHECK(order.compare(gb.polys[a][t2 - 1].exponents, gb.polys[a][t2].exponents) > 0);
      }
      for (std::size_t b = 0; b < gb.polys.size(); ++b) {
        if (a == b) continue;
        CHECK(reduce_poly(gb, s_polynomial(order, gb.polys[a], gb.polys[b])).empty());
        // Inter-reduced: no term of polys[a] is divisible by the lead of polys[b].
        for (const auto& term : gb.polys[a]) {
          bool divisible = true;
          for (std::size_t v = 0; v < term.exponents.size(); ++v) {
            divisible = divisible && gb.polys[b].front().exponents[v] <= term.exponents[v];
          }
          CHECK_FALSE(divisible);
        }
      }
    }
    for (const auto& rel : enc.relations()) CHECK(reduce_poly(gb, rel).empty());
    // Deterministic rerun.
    CHECK(buchberger(enc).polys == gb.polys);
    CHECK(quotient_dimension(gb) == expected_rank(t));
  }
}

TEST_CASE("companion products reduce to one") {
  const Tower t = tower_from_json(R"({"stages":[{"family":"A","vars":2},{"family":"B_spin","vars":1}]})");
  const PolyRingEncoding enc = PolyRingEncoding::for_ordinary_presentation(t);
  const GroebnerBasis gb = buchberger(enc);
  const std::size_t n = enc.variable_count();
  const auto& names = enc.variable_names();
  for (std::size_t v = 0; v < n; ++v) {
    const std::string bar = names[v].find("bar") != std::string::npos ? "" : names[v];
    if (bar.empty()) continue;
    std::string companion = names[v];
    companion.insert(companion.find('['), "bar");
    const auto it = std::find(names.begin(), names.end(), companion);
    REQUIRE(it != names.end());
    Exponents e(n, 0);
    e[v] = 1;
    e[it - names.begin()] = 1;
    CHECK(reduce_poly(gb, {{e, 1}}) == GbPoly{{Exponents(n, 0), 1}});
  }
  // The half character squares to the product of the roots.
  CHECK(nf_oracle(gb, w(2, 1) * w(2, 1)) == nf_oracle(gb, y(2, 1)));
}
