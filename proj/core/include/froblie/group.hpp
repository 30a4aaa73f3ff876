#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "froblie/centralizers.hpp"
#include "froblie/frobenius.hpp"

namespace froblie {

// Finite group as a Cayley table over element ids 0..N-1.
struct FiniteGroup {
  std::uint32_t order = 0;
  std::vector<std::uint32_t> table;  // row-major
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> inv;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[std::size_t(a) * order + b]; }
  std::uint32_t conj(std::uint32_t a, std::uint32_t g) const {  // g^{-1} a g
    return mul(mul(inv[g], a), g);
  }
  std::uint32_t comm(std::uint32_t a, std::uint32_t b) const {  // [a,b] = a^{-1} b^{-1} a b
    return mul(mul(mul(inv[a], inv[b]), a), b);
  }

  // Locates the identity and inverses; throws StructuralError when the table
  // is not even a quasigroup with identity.
  static FiniteGroup from_table(std::uint32_t order, std::vector<std::uint32_t> table);
};

using Subgroup = std::vector<std::uint32_t>;  // sorted element ids

bool subgroup_contains(const Subgroup& S, std::uint32_t g);
Subgroup closure(const FiniteGroup& G, std::vector<std::uint32_t> gens);
Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& A, const Subgroup& B);
std::vector<Subgroup> group_lower_central_series(const FiniteGroup& G);
std::vector<Subgroup> subgroup_lower_central_series(const FiniteGroup& G, const Subgroup& S);
bool is_normal(const FiniteGroup& G, const Subgroup& S);
bool is_nilpotent_subgroup(const FiniteGroup& G, const Subgroup& S);

struct GroupAutomorphismPair {
  std::vector<std::uint32_t> phi, h;  // permutations of element ids
  FrobeniusShape shape;
};

struct GroupCaps {
  std::uint32_t max_order = 2000;
  // full pairwise checks up to this order, seeded sampling above it
  std::uint32_t exhaustive_threshold = 500;
  std::uint64_t samples = 20000;
  std::uint64_t seed = 1;
};

ValidationReport validate_group(const FiniteGroup& G, const GroupAutomorphismPair* autos,
                                const GroupCaps& caps = {});

// fixed points of a permutation automorphism (a subgroup)
Subgroup fixed_subgroup(const FiniteGroup& G, const std::vector<std::uint32_t>& perm);

// ---------------------------------------------------------------------------
// Associated Lie ring L(G) = + gamma_i/gamma_{i+1} over F_p, carried over
// F_{p^e} with e minimal such that omega of order n exists.

struct AssociatedLieRing {
  const FiniteGroup* G = nullptr;
  std::uint64_t p = 0;
  LieRing ring;          // over F_{p^e}
  Mat phi_mat, h_mat;
  FrobeniusShape shape;
  std::vector<Subgroup> gamma;                   // lcs, gamma[0] = G, down to {e}
  std::vector<std::uint32_t> factor_dims;        // per weight, over F_p
  std::vector<std::uint32_t> coord_weight;       // weight of each ring coordinate
  std::vector<std::vector<std::uint32_t>> factor_basis;  // group elements
  // per factor: element of gamma_i -> coordinates of its coset
  std::vector<std::unordered_map<std::uint32_t, std::vector<std::uint32_t>>> coords;

  AssociatedLieRing() : ring(Fq::prime_field(2, 1), 0) {}

  std::uint32_t weight_offset(std::uint32_t i) const;  // first coordinate of factor i (1-based)
  // ambient vector of the weight-i coset of g (zero if g in gamma_{i+1})
  Vec embed(std::uint32_t i, std::uint32_t g) const;
};

AssociatedLieRing lcs_and_associated_lie_ring(const FiniteGroup& G,
                                              const GroupAutomorphismPair& autos);

// phi-terms x_k of a group element: projections of the weight-1 image, so all
// zero for x in gamma_2.
std::vector<Vec> phi_terms(const AssociatedLieRing& R, const GradedDecomposition& D,
                           std::uint32_t x);

// ---------------------------------------------------------------------------
// Group-side theta maps and generalized centralizers.

struct GroupThetaResult {
  Subgroup kernel;          // K(v) as an element set
  std::uint64_t index = 0;  // |G : K(v)|
  std::uint64_t m = 0;      // |C_G(phi)|
  bool F_invariant = false;
  bool h_window_ok = false;      // K(v)^h == K(v^h)
  bool index_bound_ok = false;   // every theta kernel has index <= m
  bool lie_property_ok = false;  // eq. c-prop via phi-terms on sampled tuples
};

GroupThetaResult group_theta_and_K(const FiniteGroup& G, const GroupAutomorphismPair& autos,
                                   const AssociatedLieRing& R, const GradedDecomposition& D,
                                   const std::vector<std::uint32_t>& v,
                                   std::uint32_t length_cap = 3);

struct InductionParameter {
  std::uint64_t m = 0;
  std::vector<std::uint64_t> mbar;  // fixed length, padded with 1 beyond the class
  std::uint64_t t = 0;              // |P(G)| under the pattern weight cap
};

// mbar compares inverse-lexicographically (larger early entry means smaller);
// triples compare lexicographically with that. Returns -1, 0, 1.
int compare_induction_parameters(const InductionParameter& a, const InductionParameter& b);

struct GroupTowerCaps {
  std::uint32_t levels = 2;              // generalized centralizer levels to build
  std::uint32_t pattern_weight_cap = 2;  // stands in for the paper's N
  std::uint32_t tuple_length_cap = 2;    // K(v) tuple lengths
  std::uint32_t mbar_length = 2;
  std::uint64_t budget = 1u << 22;
};

struct GroupRep {
  Pattern pattern;
  Vec value;                                // in L_0 of L(G) extended by omega
  std::vector<std::uint32_t> group_elements;  // canonical realizing elements
};

struct ATowerResult {
  std::vector<Subgroup> A;                  // A(0) = G down the chain
  std::vector<std::vector<GroupRep>> reps;  // per level
  std::vector<bool> F_invariant, H_invariant;
  InductionParameter parameter_G;
  std::vector<InductionParameter> parameter_A;  // per level subgroup
  std::vector<int> nerav_vs_G;                  // compare(A(i), G) <= 0 expected
};

ATowerResult build_A_tower_and_parameter(const FiniteGroup& G,
                                         const GroupAutomorphismPair& autos,
                                         const GroupTowerCaps& caps = {});

// Induction parameter of a phi-invariant subgroup B, computed on B's own
// associated Lie ring (with the restricted action).
InductionParameter induction_parameter(const FiniteGroup& G, const GroupAutomorphismPair& autos,
                                       const Subgroup& B, const GroupTowerCaps& caps);

// ---------------------------------------------------------------------------
// Fitting subgroup via p-cores.

struct FittingResult {
  Subgroup fitting;
  std::uint64_t index = 0;
  std::vector<std::pair<std::uint64_t, Subgroup>> p_cores;
  bool nilpotent = false;
  bool normal = false;
  // every nilpotent normal subgroup in the generated lattice lies inside
  bool maximal_in_lattice = false;
};

FittingResult fitting_subgroup(const FiniteGroup& G, std::uint32_t lattice_cap = 64);

Subgroup sylow_subgroup(const FiniteGroup& G, std::uint64_t p);

// ---------------------------------------------------------------------------
// Small construction helpers used by tests, fixtures and the CLI.

// Upper unitriangular 3x3 over F_p with the order-3 and order-2 automorphisms
// for the shape (3, 2, 2); requires p = 1 mod 3 and p coprime to 6.
std::pair<FiniteGroup, GroupAutomorphismPair> make_heisenberg_group(std::uint64_t p);
FiniteGroup make_cyclic_group(std::uint32_t k);
FiniteGroup make_symmetric3();
FiniteGroup make_elementary_abelian(std::uint64_t p, std::uint32_t rank);

}  // namespace froblie
