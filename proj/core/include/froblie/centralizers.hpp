#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "froblie/bounds.hpp"
#include "froblie/frobenius.hpp"

namespace froblie {

// Simple (left-normed) commutator skeleton of weight w together with the
// arrangement of component indices: all nonzero, total = 0 mod n.
struct Pattern {
  std::vector<std::uint32_t> indices;
  std::uint32_t weight() const { return static_cast<std::uint32_t>(indices.size()); }
  bool operator==(const Pattern& o) const { return indices == o.indices; }
  bool operator<(const Pattern& o) const { return indices < o.indices; }
};

// theta_{x}: y in L_j -> [y, x_1, ..., x_k] in L_0, where
// j = -(i_1 + ... + i_k) mod n.
struct ThetaRestriction {
  std::uint32_t source_index;  // j
  Mat map_rows;                // row t = image of the t-th basis vector of L_j
  Subspace kernel;             // in ambient coordinates
  std::uint32_t codim;         // dim L_j - dim kernel
};

ThetaRestriction theta_map(const FrobeniusAction& A, const GradedDecomposition& D,
                           const std::vector<std::pair<std::uint32_t, Vec>>& tuple);

struct Representative {
  Pattern pattern;
  Vec value;                 // element of L_0, ambient coordinates
  std::vector<Vec> entries;  // entries[i] in L_{pattern.indices[i]}(level)
  std::uint32_t level = 0;
  bool orbit_image = false;  // fixed as an h-image of the canonical choice
};

struct TowerLevel {
  // graded centralizers L_j(t); slot 0 holds L_0 itself for convenience
  std::vector<Subspace> centralizers;
  std::vector<Representative> reps;
  // lookup from (pattern indices, value) to position in reps
  std::map<std::pair<std::vector<std::uint32_t>, Vec>, std::size_t> index;
  // construction log: distinct theta tuples intersected at this level
  std::uint64_t theta_tuples_used = 0;
};

struct TowerCaps {
  std::uint32_t U_used = 2;
  std::uint32_t T_used = 1;
  std::uint64_t max_rep_tuples = 1u << 22;    // per-pattern enumeration budget
  std::uint64_t max_theta_tuples = 1u << 22;  // per-level kernel budget
};

struct CentralizerTower {
  const LieRing* ring = nullptr;
  FrobeniusShape shape;
  Mat phi, h;
  GradedDecomposition decomposition;
  TowerCaps caps;
  std::vector<TowerLevel> levels;  // 0 .. T_used
};

// Builds levels 0..T_used: level-t centralizers are intersections of the
// kernels of all theta maps against representative tuples of levels < t
// (lengths <= U_used); level-t representatives fix one canonical realization
// per (pattern, value) pair over the level-t components, plus H-orbits.
CentralizerTower build_tower(const FrobeniusAction& A, const GradedDecomposition& D,
                             const TowerCaps& caps);

struct FreezeEntry {
  std::uint32_t component;  // j_i, nonzero
  std::uint32_t level;      // k_i
  Vec vector;               // element of L_{j_i}(k_i)
};

// Freezing procedure: replaces a zero-sum commutator over centralizers of
// levels k_1..k_w by the fixed representation of the same (pattern, value)
// pair at level s <= min(k_i). Value is preserved exactly.
const Representative& freeze(const CentralizerTower& tower,
                             const std::vector<FreezeEntry>& commutator,
                             std::uint32_t target_level);

// Exhaustive re-check of the centralizer property at the built caps, plus the
// quasirepresentative extension up to the weight cap. Throws ResourceError if
// the enumeration would exceed the node budget.
ValidationReport verify_centralizer_property(const CentralizerTower& tower,
                                             std::uint32_t weight_cap,
                                             std::uint64_t node_budget = 1u << 22);

struct ZReport {
  Subspace Z;
  std::uint32_t codim = 0;
  bool nilpotent = false;
  std::uint32_t z_class = 0;
  bool phi_invariant = false;
  bool h_invariant = false;
  // codimension of each L_j(T) in L_j, j = 1..n-1
  std::vector<std::uint32_t> level_codims;
};

ZReport build_Z_and_report(const CentralizerTower& tower);

// patterns of weight 2..max_weight with nonzero indices and zero sum, in
// lexicographic order
std::vector<Pattern> enumerate_patterns(std::uint64_t n, std::uint32_t max_weight);

}  // namespace froblie
