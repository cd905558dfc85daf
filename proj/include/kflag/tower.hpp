#pragma once

// Tower descriptions, the character maps they induce on lower stages, and
// the ordinary / equivariant K-ring presentations built from them.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kflag/laurent.hpp"
#include "kflag/weyl.hpp"

namespace kflag {

using IntMatrix = std::vector<std::vector<int>>;

/// Tower data as written by a user. Matrix A_l^(j) is stored under key
/// (j, l) with rows indexed by stage-j variables and columns by stage-l
/// variables. Absent matrices mean the zero map.
struct TowerSpec {
  std::vector<Stage> stages;
  std::map<std::pair<int, int>, IntMatrix> maps;
};

/// A validated tower. All matrices are materialized.
class Tower {
 public:
  /// Checks shapes, block compatibility and spin parity.
  static Tower validate(TowerSpec spec);

  int height() const { return static_cast<int>(stages_.size()); }
  /// 1-based.
  const Stage& stage(int j) const { return stages_.at(j - 1); }
  const std::vector<Stage>& stages() const { return stages_; }
  /// A_l^(j) for 1 <= l < j.
  const IntMatrix& matrix(int j, int l) const { return maps_.at({j, l}); }
  const std::map<std::pair<int, int>, IntMatrix>& matrices() const { return maps_; }
  bool all_type_a_borel() const;

  TowerSpec spec() const { return {stages_, maps_}; }

 private:
  Tower() = default;
  std::vector<Stage> stages_;
  std::map<std::pair<int, int>, IntMatrix> maps_;
};

/// Stable hex fingerprint of the tower data.
std::string fingerprint(const Tower& t);

/// Pull back a polynomial in stage-j characters (y[j,*], w[j,*]) to the
/// lower stages along the character map. Stage 1 pulls back to constants.
LaurentPoly psi_pullback(const Tower& t, int j, const LaurentPoly& p);

/// Same as psi_pullback but every character chi of T_j is additionally
/// multiplied by the base character u^chi (v-variables for half characters).
LaurentPoly twisted_pullback(const Tower& t, int j, const LaurentPoly& p);

/// Twisted arguments u[j,i] * Psi_j^*(y[j,i]), i = 1..m_j. For Bott
/// towers these are the classes c_{j,1}, c_{j,2}.
std::vector<LaurentPoly> twisted_arguments(const Tower& t, int j);

enum class PresentationMode { Ordinary, Equivariant };
std::string_view to_string(PresentationMode mode);

struct Presentation {
  PresentationMode mode = PresentationMode::Ordinary;
  std::vector<LaurentPoly> ring_generators;
  std::vector<LaurentPoly> relations;
  /// Stage of each relation (stage-major order).
  std::vector<int> relation_stage;
};

Presentation ordinary_presentation(const Tower& t);
Presentation equivariant_presentation(const Tower& t);
/// Set every u and v variable to 1.
Presentation specialize_u1(const Presentation& p);

/// Product of coset ranks over all stages.
std::uint64_t expected_rank(const Tower& t);

/// Whether p lies in the coefficient ring of the presentation: variables
/// exist, spin monomials lie on the spin lattice, and non-Borel stages are
/// block-symmetric.
bool in_presentation_ring(const Tower& t, const LaurentPoly& p, PresentationMode mode);

}  // namespace kflag
