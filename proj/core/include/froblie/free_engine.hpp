#pragma once

#include <cstdint>
#include <vector>

#include "froblie/hall.hpp"
#include "froblie/lie_ring.hpp"

namespace froblie {

// Universal quotient M = K/(J+I) of a truncated free Lie ring K:
//   J = ideal generated by the zero-index component K_0,
//   I = smallest F-invariant ideal containing gamma_{c+1}(C_K(H)).
// Everything is computed degreewise, which is exact for weights <= W.
class UniversalQuotient {
 public:
  UniversalQuotient(const FreeLieTruncation& trunc, Fq field, std::uint64_t c);

  const FreeLieTruncation& truncation() const { return *trunc_; }
  const Fq& field() const { return K_; }
  std::uint64_t c() const { return c_; }

  const Subspace& J(std::uint32_t w) const { return J_[w]; }
  const Subspace& I(std::uint32_t w) const { return I_[w]; }
  const Subspace& JI(std::uint32_t w) const { return JI_[w]; }
  const Subspace& fixed_of_h(std::uint32_t w) const { return C_[w]; }

  std::uint32_t m_dim(std::uint32_t w) const { return static_cast<std::uint32_t>(mcoords_[w].size()); }
  // dimension of the index-0 part of M_w (must be 0 by construction of J)
  std::uint32_t m0_dim(std::uint32_t w) const;

  std::uint32_t empirical_class() const { return empirical_class_; }
  // true when some component <= W vanished; M is generated in weight 1, so
  // all later components vanish too and the class is final
  bool stabilized() const { return stabilized_; }

  const std::vector<std::uint32_t>& m_coords(std::uint32_t w) const { return mcoords_[w]; }
  Vec project_m(std::uint32_t w, const Vec& kvec) const;
  Vec lift_m(std::uint32_t w, const Vec& mvec) const;
  Vec bracket_m(std::uint32_t wa, const Vec& a, std::uint32_t wb, const Vec& b) const;
  Mat h_matrix_m(std::uint32_t w) const;

 private:
  const FreeLieTruncation* trunc_;
  Fq K_;
  std::uint64_t c_;
  std::vector<Subspace> J_, I_, JI_, C_;          // indexed by weight, [0] unused
  std::vector<std::vector<std::uint32_t>> mcoords_;
  std::uint32_t empirical_class_ = 0;
  bool stabilized_ = false;
};

// Structural re-checks of the construction: J/I invariance under phi, h and
// theta_s, M_0 = 0 per weight, gamma_{c+1}(C_M(H)) = 0 computed on the
// quotient structure, and monotone vanishing of the M components.
ValidationReport validate_universal_quotient(const UniversalQuotient& uq);

// ---------------------------------------------------------------------------
// KMS transformation

// Simple left-normed commutator over generators of the truncation.
struct GenWord {
  std::vector<std::uint32_t> letters;
  std::uint32_t weight() const { return static_cast<std::uint32_t>(letters.size()); }
};

std::vector<std::uint32_t> orbit_multiplicities(const IndexedGeneratorSet& gens,
                                                const GenWord& w);
std::uint32_t word_index_sum(const IndexedGeneratorSet& gens, const GenWord& w);
// zero-sum initial segment of length 2..len (the whole word counts)
bool has_zero_sum_prefix(const IndexedGeneratorSet& gens, const GenWord& w);

struct KmsTerm {
  fel coeff;
  GenWord word;
};

struct KmsResult {
  std::vector<KmsTerm> terms;
  bool already_normal = false;  // input had a zero-sum initial segment
  // verified certificate: (input - sum of terms) lies in I at the input weight
  bool residual_in_ideal = false;
};

// Rewrites the initial segment of length T_used of a simple phi-homogeneous
// commutator as a combination of same-weight simple commutators with zero-sum
// initial segments, modulo the ideal I of the universal quotient. Solved as a
// linear membership problem; infeasibility throws ContractError naming the
// weight component (it would falsify the underlying proposition at these
// parameters).
KmsResult kms_transform(const UniversalQuotient& uq, const GenWord& input,
                        std::uint32_t T_used);

// ---------------------------------------------------------------------------
// Iterated KMS: output terms are bracket trees carrying (f1)/(f2) witnesses.

struct CommTree {
  std::int32_t gen = -1;       // leaf when >= 0
  std::vector<CommTree> kids;  // size 2 when internal
  bool is_leaf() const { return gen >= 0; }
  static CommTree leaf(std::uint32_t g) { return CommTree{static_cast<std::int32_t>(g), {}}; }
  static CommTree node(CommTree l, CommTree r);
};

std::uint32_t tree_weight(const CommTree& t);
std::uint32_t tree_index_sum(const IndexedGeneratorSet& gens, const CommTree& t);
std::vector<std::uint32_t> tree_orbit_multiplicities(const IndexedGeneratorSet& gens,
                                                     const CommTree& t);
Vec eval_tree_local(const FreeLieTruncation& trunc, const Fq& K, const CommTree& t);

// Syntactic witness scanner. f1: some subcommutator has >= t1 nested zero-sum
// initial segments (itself included). f2: some subcommutator is
// [leaf, c^1, ..., c^{t2}] with every c^i internal of index sum 0. Any proper
// zero-sum subcommutator also counts as a degenerate witness.
struct WitnessScan {
  bool f1 = false;
  bool f2 = false;
  bool zero_proper_subcommutator = false;
  bool any() const { return f1 || f2 || zero_proper_subcommutator; }
};

WitnessScan scan_tree(const IndexedGeneratorSet& gens, const CommTree& t, std::uint32_t t1,
                      std::uint32_t t2);

struct IteratedKmsTerm {
  fel coeff;
  CommTree tree;
};

struct IteratedKmsResult {
  std::vector<IteratedKmsTerm> terms;
  bool residual_in_ideal = false;
};

struct IteratedKmsCaps {
  std::uint64_t max_targets = 200000;
};

IteratedKmsResult iterated_kms(const UniversalQuotient& uq, const GenWord& input,
                               std::uint32_t t1, std::uint32_t t2, std::uint32_t V_used,
                               IteratedKmsCaps caps = {});

// Degreewise closure of homogeneous seed vectors into an FH-invariant ideal:
// seeds are split into phi-components, closed under h, then closed under
// bracketing with the whole ring, weight by weight.
std::vector<Subspace> fh_invariant_ideal(const FreeLieTruncation& trunc, const Fq& K,
                                         const std::vector<std::vector<Vec>>& seeds_per_weight);

// Evaluation of a generator word in a concrete ring under the specialization
// delta: y_{r^k i_s} -> x_{i_s} * h^k, where assignment[s] gives the image of
// the orbit-s base generator.
Vec specialize_word(const LieRing& L, const Mat& h, const IndexedGeneratorSet& gens,
                    const std::vector<Vec>& assignment, const GenWord& word);
Vec specialize_tree(const LieRing& L, const Mat& h, const IndexedGeneratorSet& gens,
                    const std::vector<Vec>& assignment, const CommTree& t);

}  // namespace froblie
