#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "kflag/errors.hpp"
#include "kflag/weyl.hpp"
#include "support/support.hpp"

using namespace kflag;
using kflag::testing::Rng;

namespace {

LaurentPoly y(int i, int e = 1) { return LaurentPoly::variable(VarId::y(1, i), e); }
LaurentPoly w(int i, int e = 1) { return LaurentPoly::variable(VarId::w(1, i), e); }

std::vector<Stage> supported_stages() {
  std::vector<Stage> out;
  for (int m = 1; m <= 4; ++m) out.emplace_back(Family::A, m);
  for (int m = 1; m <= 3; ++m) out.emplace_back(Family::C, m);
  for (int m = 1; m <= 3; ++m) out.emplace_back(Family::B_spin, m);
  return out;
}

// Orbit of a regular character under the group generated by the simple
// reflections.
std::size_t regular_orbit_size(const Stage& s) {
  std::vector<Monomial::Entry> entries;
  for (int i = 1; i <= s.vars(); ++i) entries.emplace_back(VarId::y(1, i), i);
  const LaurentPoly start = LaurentPoly::monomial(Monomial(std::move(entries)));
  std::set<std::string> seen{to_string(start)};
  std::vector<LaurentPoly> frontier{start};
  while (!frontier.empty()) {
    LaurentPoly p = frontier.back();
    frontier.pop_back();
    for (int k = 1; k <= simple_reflection_count(s); ++k) {
      LaurentPoly q = apply_simple_reflection(s, k, p);
      if (seen.insert(to_string(q)).second) frontier.push_back(q);
    }
  }
  return seen.size();
}

// Number of distinct arrangements of block labels.
std::uint64_t arrangements(const std::vector<int>& blocks) {
  std::vector<int> labels;
  for (std::size_t b = 0; b < blocks.size(); ++b) labels.insert(labels.end(), blocks[b], static_cast<int>(b));
  std::uint64_t count = 0;
  do {
    ++count;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return count;
}

}  // namespace

TEST_CASE("weyl_order examples") {
  CHECK(weyl_order(Stage(Family::A, 3)) == 6);
  CHECK(weyl_order(Stage(Family::C, 2)) == 8);
  CHECK(weyl_order(Stage(Family::B_spin, 1)) == 2);
}

TEST_CASE("weyl_order equals the size of a regular orbit") {
  for (const auto& s : supported_stages()) {
    CAPTURE(to_string(s.family()));
    CAPTURE(s.vars());
    CHECK(weyl_order(s) == regular_orbit_size(s));
  }
}

TEST_CASE("coset_rank examples") {
  CHECK(coset_rank(Stage(Family::A, 3, {2, 1})) == 3);
  CHECK(coset_rank(Stage(Family::A, 2, {1, 1})) == 2);
  CHECK(coset_rank(Stage(Family::C, 2)) == 8);
}

TEST_CASE("coset_rank counts block arrangements") {
  const std::vector<std::vector<int>> compositions{{1}, {2}, {1, 2}, {2, 2}, {3, 1}, {1, 1, 2}, {2, 1, 2}, {1, 3, 1}, {4}};
  for (const auto& blocks : compositions) {
    const Stage s(Family::A, std::accumulate(blocks.begin(), blocks.end(), 0), blocks);
    CHECK(coset_rank(s) == arrangements(blocks));
    CHECK(weyl_order(s) % coset_rank(s) == 0);
    CHECK((weyl_order(s) == coset_rank(s)) == s.is_borel());
  }
  for (const auto& s : supported_stages()) CHECK(coset_rank(s) == weyl_order(s));
}

TEST_CASE("stage validation") {
  CHECK_THROWS_AS(Stage(Family::A, 0), ValidationError);
  CHECK_THROWS_AS(Stage(Family::A, 3, {2, 2}), ValidationError);
  CHECK_THROWS_AS(Stage(Family::A, 3, {3, 0}), ValidationError);
  CHECK_THROWS_AS(Stage(Family::C, 2, {2}), ValidationError);
  CHECK_NOTHROW(Stage(Family::C, 2, {1, 1}));
  CHECK_THROWS_AS(parse_family("D"), UnsupportedError);
  CHECK_THROWS_AS(parse_family("G2"), UnsupportedError);
  CHECK(parse_family("B_spin") == Family::B_spin);
}

TEST_CASE("invariant_generators examples") {
  CHECK(invariant_generators(Stage(Family::A, 2)) == std::vector<LaurentPoly>{y(1) + y(2), y(1) * y(2)});
  CHECK(invariant_generators(Stage(Family::C, 1)) == std::vector<LaurentPoly>{y(1) + y(1, -1)});
  CHECK(invariant_generators(Stage(Family::B_spin, 1)) == std::vector<LaurentPoly>{w(1) + w(1, -1)});
  // Stage index places the generators on the requested stage.
  CHECK(invariant_generators(Stage(Family::A, 1), 3).front() == LaurentPoly::variable(VarId::y(3, 1)));
}

TEST_CASE("parabolic_generators examples") {
  CHECK(parabolic_generators(Stage(Family::A, 3, {2, 1})) == std::vector<LaurentPoly>{y(1) + y(2), y(1) * y(2), y(3)});
  CHECK(parabolic_generators(Stage(Family::A, 2, {1, 1})) == std::vector<LaurentPoly>{y(1), y(2)});
  CHECK(parabolic_generators(Stage(Family::C, 2)) == std::vector<LaurentPoly>{y(1), y(2)});
  CHECK(parabolic_generators(Stage(Family::B_spin, 2)) == std::vector<LaurentPoly>{y(1), y(2), w(1) * w(2)});
}

TEST_CASE("apply_simple_reflection examples") {
  CHECK(apply_simple_reflection(Stage(Family::A, 2), 1, y(1)) == y(2));
  CHECK(apply_simple_reflection(Stage(Family::C, 1), 1, y(1) + y(1, -1)) == y(1, -1) + y(1));
  CHECK(apply_simple_reflection(Stage(Family::B_spin, 1), 1, w(1)) == w(1, -1));
  CHECK(apply_simple_reflection(Stage(Family::B_spin, 2), 2, w(1) * w(2)) == w(1) * w(2, -1));
  CHECK_THROWS_AS(apply_simple_reflection(Stage(Family::A, 2), 2, y(1)), ArgumentError);
  CHECK_THROWS_AS(apply_simple_reflection(Stage(Family::C, 2), 0, y(1)), ArgumentError);
  // Variables of other stages are untouched.
  const LaurentPoly other = LaurentPoly::variable(VarId::y(2, 1)) * LaurentPoly::variable(VarId::u(1, 1));
  CHECK(apply_simple_reflection(Stage(Family::C, 1), 1, other) == other);
}

TEST_CASE("invariant generators are fixed by every simple reflection") {
  for (const auto& s : supported_stages()) {
    for (const auto& g : invariant_generators(s)) {
      for (int k = 1; k <= simple_reflection_count(s); ++k) CHECK(apply_simple_reflection(s, k, g) == g);
    }
  }
}

TEST_CASE("simple reflections are involutions") {
  Rng rng(31);
  const std::vector<VarId> vars{VarId::y(1, 1), VarId::y(1, 2), VarId::y(1, 3), VarId::w(1, 1), VarId::w(1, 3)};
  for (const auto& s : {Stage(Family::A, 3), Stage(Family::C, 3), Stage(Family::B_spin, 3)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const LaurentPoly p = kflag::testing::random_poly(rng, vars);
      for (int k = 1; k <= simple_reflection_count(s); ++k) {
        CHECK(apply_simple_reflection(s, k, apply_simple_reflection(s, k, p)) == p);
      }
    }
  }
}

TEST_CASE("symplectic lambda classes are palindromic") {
  for (int m = 1; m <= 3; ++m) {
    std::vector<LaurentPoly> both;
    for (int i = 1; i <= m; ++i) {
      both.push_back(y(i));
      both.push_back(y(i, -1));
    }
    for (int k = 0; k <= 2 * m; ++k) {
      CHECK(elementary_symmetric(std::span<const LaurentPoly>(both), k) ==
            elementary_symmetric(std::span<const LaurentPoly>(both), 2 * m - k));
    }
  }
}

TEST_CASE("spin identities") {
  for (int m = 1; m <= 3; ++m) {
    const Stage s(Family::B_spin, m);
    const LaurentPoly delta = invariant_generators(s).back();
    LaurentPoly expected = LaurentPoly::constant(1);
    for (int i = 1; i <= m; ++i) expected *= y(i) + LaurentPoly::constant(2) + y(i, -1);
    const LaurentPoly square = delta * delta;
    CHECK(square == expected);
    for (const VarId& v : square.variables()) CHECK(v.kind == VarKind::Y);

    // lambda^i of the (2m+1)-dimensional representation = e_i of its weights.
    std::vector<LaurentPoly> weights{LaurentPoly::constant(1)};
    for (int i = 1; i <= m; ++i) {
      weights.push_back(y(i));
      weights.push_back(y(i, -1));
    }
    const auto lambdas = spin_lambda_coefficients(m);
    REQUIRE(lambdas.size() == static_cast<std::size_t>(2 * m + 2));
    for (int i = 0; i <= 2 * m + 1; ++i) {
      CHECK(lambdas[i] == elementary_symmetric(std::span<const LaurentPoly>(weights), i));
    }
    CHECK(invariant_generators(s).size() == static_cast<std::size_t>(m));
  }
}
