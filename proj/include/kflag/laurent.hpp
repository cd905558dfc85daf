#pragma once

// Exact sparse Laurent polynomials over the tower variable universe.
//
// Variables are y[j,i] (fiber characters), u[j,i] (equivariant base
// characters), and for spin stages the square roots w[j,i]^2 = y[j,i] and
// v[j,i]^2 = u[j,i]. Monomials are kept normalized so that a square-root
// variable only ever appears with exponent +1 or -1.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kflag {

/// Canonical kind order Y < U < W < V.
enum class VarKind : std::uint8_t { Y = 0, U = 1, W = 2, V = 3 };

struct VarId {
  int stage = 1;
  int index = 1;
  VarKind kind = VarKind::Y;

  static constexpr VarId y(int j, int i) { return {j, i, VarKind::Y}; }
  static constexpr VarId u(int j, int i) { return {j, i, VarKind::U}; }
  static constexpr VarId w(int j, int i) { return {j, i, VarKind::W}; }
  static constexpr VarId v(int j, int i) { return {j, i, VarKind::V}; }

  bool is_root() const { return kind == VarKind::W || kind == VarKind::V; }
  bool is_base_side() const { return kind == VarKind::U || kind == VarKind::V; }

  // Stage-major, then index, then kind.
  auto operator<=>(const VarId&) const = default;
};

std::string to_string(const VarId& var);

/// A Laurent monomial: finitely many variables with nonzero integer exponents.
class Monomial {
 public:
  using Entry = std::pair<VarId, int>;

  Monomial() = default;
  explicit Monomial(VarId var, int exponent = 1);
  /// Entries may repeat variables and contain zeros; they are combined and normalized.
  explicit Monomial(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  int exponent(const VarId& var) const;

  /// Exponent of the (y,w) or (u,v) pair at (stage, index) in half units:
  /// 2*e_y + e_w.
  int half_exponent(int stage, int index, bool base_side = false) const;

  Monomial inverse() const;
  Monomial pow(int k) const;
  /// Drop all variables for which `drop` returns true.
  Monomial without(const std::function<bool(const VarId&)>& drop) const;
  /// Keep only variables for which `keep` returns true.
  Monomial only(const std::function<bool(const VarId&)>& keep) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Term order: a > b iff at the first variable (canonical order) where the
  /// exponents differ, a has the larger exponent. Used for rendering.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  void normalize();
  std::vector<Entry> entries_;
};

std::string to_string(const Monomial& m);

enum class CoeffMode { Integer, Rational };

class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, mpq_class, std::greater<>>;

  LaurentPoly() = default;
  explicit LaurentPoly(CoeffMode mode) : mode_(mode) {}

  static LaurentPoly constant(const mpq_class& c, CoeffMode mode = CoeffMode::Integer);
  static LaurentPoly constant(long c) { return constant(mpq_class(c)); }
  static LaurentPoly variable(VarId var, int exponent = 1);
  static LaurentPoly monomial(const Monomial& m, const mpq_class& c = 1,
                              CoeffMode mode = CoeffMode::Integer);

  CoeffMode mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the given monomial (zero if absent).
  mpq_class coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const mpq_class& c);

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }

  /// Multiply every term by a monomial.
  LaurentPoly times(const Monomial& m, const mpq_class& c = 1) const;

  /// Non-negative powers always; negative powers only for units.
  LaurentPoly pow(int k) const;

  /// Returns (coefficient, monomial) if this is +-1 times a monomial.
  std::optional<std::pair<int, Monomial>> as_unit() const;

  std::set<VarId> variables() const;

  LaurentPoly to_rational() const;
  /// Throws ModeError if some coefficient is not an integer.
  LaurentPoly to_integer() const;

 private:
  void require_same_mode(const LaurentPoly& other) const;

  CoeffMode mode_ = CoeffMode::Integer;
  TermMap terms_;
};

/// Canonical rendering, e.g. "y[1,1]^2*y[2,1]^-1 + 3".
std::string to_string(const LaurentPoly& p);
std::string coefficient_string(const mpq_class& c);

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b);

/// Ring homomorphism sending each mapped variable to a unit (+-monomial).
/// Unmapped variables pass through.
LaurentPoly substitute_monomials(const LaurentPoly& p, const std::map<VarId, LaurentPoly>& images);

/// Apply a monomial-to-polynomial map termwise and sum (linear extension).
LaurentPoly map_monomials(const LaurentPoly& p,
                          const std::function<LaurentPoly(const Monomial&)>& image);

/// e_k of the given entries; e_0 = 1.
LaurentPoly elementary_symmetric(std::span<const Monomial> vars, int k);
LaurentPoly elementary_symmetric(std::span<const LaurentPoly> vars, int k);

/// Exact rational value of p at the given point.
mpq_class eval_point(const LaurentPoly& p, const std::map<VarId, mpq_class>& assignment);

}  // namespace kflag
