#include <doctest.h>

#include <froblie/free_engine.hpp>
#include <froblie/instance.hpp>

#include "helpers.hpp"

using namespace froblie;

namespace {

FreeLieTruncation trunc_of(const FrobeniusShape& shape, std::vector<std::uint32_t> orbits,
                           std::uint32_t W) {
  return FreeLieTruncation(make_generator_set(shape, std::move(orbits)), W);
}

}  // namespace

TEST_CASE("universal quotient at (3,2,2), c = 1, one orbit") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 6);
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);

  // weight 2: [y2,y1] has index sum 0, so J kills it and M_2 = 0
  CHECK(uq.m_dim(1) == 2);
  for (std::uint32_t w = 2; w <= 6; ++w) CHECK(uq.m_dim(w) == 0);
  CHECK(uq.empirical_class() == 1);
  CHECK(uq.stabilized());
  for (std::uint32_t w = 1; w <= 6; ++w) CHECK(uq.m0_dim(w) == 0);
  CHECK(validate_universal_quotient(uq).ok());
}

TEST_CASE("universal quotient at (7,3,2), c = 1, one orbit") {
  FrobeniusShape s{7, 3, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 4);
  Fq K = Fq::prime_field(29, 7);
  UniversalQuotient uq(tr, K, 1);
  CHECK(uq.m_dim(1) == 3);
  CHECK(uq.m_dim(2) == 3);  // no zero-index weight-2 element at this shape
  CHECK(uq.m_dim(3) == 0);
  CHECK(uq.m_dim(4) == 0);
  CHECK(uq.empirical_class() == 2);
  CHECK(uq.stabilized());
  CHECK(validate_universal_quotient(uq).ok());
}

TEST_CASE("c >= W leaves I empty within the truncation") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 3);
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 10);
  for (std::uint32_t w = 1; w <= 3; ++w) CHECK(uq.I(w).dim() == 0);
  // M = K/J truncated
  for (std::uint32_t w = 1; w <= 3; ++w) CHECK(uq.m_dim(w) + uq.J(w).dim() == tr.weight_dim(w));
}

TEST_CASE("kms: input with a zero-sum initial segment returns unchanged") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 4);
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);
  GenWord w{{0, 0, 0}};  // indices 1,1,1: total 0 at length 3
  KmsResult res = kms_transform(uq, w, 2);
  CHECK(res.already_normal);
  REQUIRE(res.terms.size() == 1);
  CHECK(res.terms[0].word.letters == w.letters);
  CHECK(res.terms[0].coeff == 1);
  CHECK(res.residual_in_ideal);
}

TEST_CASE("kms rewrites a two-orbit input and certifies soundness") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1, 1}, 5);  // orbits {y1,y2}, {u1,u2}
  const IndexedGeneratorSet& gens = tr.gens();
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);

  // generators: 0=y1, 1=y2, 2=u1, 3=u2 (indices 1,2,1,2)
  GenWord input{{0, 2, 1}};  // prefix sums 1, 2, 4=1: no zero-sum prefix
  CHECK_FALSE(has_zero_sum_prefix(gens, input));
  KmsResult res = kms_transform(uq, input, 2);
  CHECK(res.residual_in_ideal);
  CHECK_FALSE(res.already_normal);
  auto counts = orbit_multiplicities(gens, input);
  for (const auto& t : res.terms) {
    CHECK(has_zero_sum_prefix(gens, t.word));
    CHECK(orbit_multiplicities(gens, t.word) == counts);
    CHECK(t.word.weight() == input.weight());
  }

  // longer input: only the initial segment is transformed
  GenWord longer{{0, 2, 1, 1, 0}};
  KmsResult res2 = kms_transform(uq, longer, 2);
  CHECK(res2.residual_in_ideal);
  for (const auto& t : res2.terms) {
    CHECK(t.word.weight() == longer.weight());
    CHECK(has_zero_sum_prefix(gens, t.word));
    CHECK(orbit_multiplicities(gens, t.word) == orbit_multiplicities(gens, longer));
  }
}

TEST_CASE("kms specializes exactly into a concrete instance") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1, 1}, 5);
  const IndexedGeneratorSet& gens = tr.gens();
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);

  // concrete instance with C_L(F) = 0 and abelian C_L(H): the mod_ji quotient
  FreeNilpotentParams params;
  params.shape = s;
  params.orbit_base_indices = {1, 1};
  params.weight = 5;
  params.p = 7;
  params.relations = FreeNilpotentRelations::mod_ji;
  params.c = 1;
  LieInstance inst = generate_free_nilpotent(params);
  FrobeniusAction act = inst.action();
  GradedDecomposition D = eigen_decompose(act);
  // assignment: orbit s base generator -> a vector of component index 1
  REQUIRE(inst.ring.dim() >= 2);
  std::vector<Vec> assign;
  {
    // the two surviving weight-1 coordinates of index 1 are the images of y1, u1
    Vec a(inst.ring.dim(), 0), b(inst.ring.dim(), 0);
    // basis order: weight-1 complement coords come first
    // find two independent vectors in L_1
    const Subspace& L1 = D.components[1];
    REQUIRE(L1.dim() >= 2);
    a = L1.basis.row(0);
    b = L1.basis.row(1);
    assign = {a, b};
  }

  GenWord input{{0, 2, 1, 3}};
  KmsResult res = kms_transform(uq, input, 2);
  CHECK(res.residual_in_ideal);
  Vec lhs = specialize_word(inst.ring, inst.h, gens, assign, input);
  Vec rhs(inst.ring.dim(), 0);
  for (const auto& t : res.terms) {
    Vec tv = specialize_word(inst.ring, inst.h, gens, assign, t.word);
    rhs = vec_add(K, rhs, vec_scale(K, t.coeff, tv));
  }
  CHECK(lhs == rhs);
}

TEST_CASE("kms rejects bad inputs") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 4);
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);
  CHECK_THROWS_AS(kms_transform(uq, GenWord{{0}}, 2), ContractError);          // below T_used
  CHECK_THROWS_AS(kms_transform(uq, GenWord{{0, 1, 0, 1, 0}}, 2), ContractError);  // beyond W
}

TEST_CASE("scanner recognizes f1, f2 and degenerate witnesses") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 6);
  const IndexedGeneratorSet& gens = tr.gens();

  // f1: [y1,y2,y2,y1] has zero prefix sums at 2 and 4
  CommTree w = CommTree::leaf(0);
  for (std::uint32_t g : {1u, 1u, 0u}) w = CommTree::node(std::move(w), CommTree::leaf(g));
  WitnessScan sc = scan_tree(gens, w, 2, 2);
  CHECK(sc.f1);

  // f2: [y1, [y1,y2], [y2,y1]] has two internal zero-sum blocks after a leaf
  CommTree f2 = CommTree::node(
      CommTree::node(CommTree::leaf(0),
                     CommTree::node(CommTree::leaf(0), CommTree::leaf(1))),
      CommTree::node(CommTree::leaf(1), CommTree::leaf(0)));
  WitnessScan sc2 = scan_tree(gens, f2, 3, 2);
  CHECK(sc2.f2);
  CHECK_FALSE(sc2.f1);  // only one nested zero-sum initial segment anywhere

  // a zero-sum proper subcommutator counts as a degenerate witness
  CommTree deg = CommTree::node(CommTree::node(CommTree::leaf(0), CommTree::leaf(1)),
                                CommTree::leaf(0));
  WitnessScan sc3 = scan_tree(gens, deg, 5, 5);
  CHECK(sc3.zero_proper_subcommutator);
}

TEST_CASE("iterated kms with t1 = t2 = 1 behaves like a single pass") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1, 1}, 4);
  const IndexedGeneratorSet& gens = tr.gens();
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);
  GenWord input{{0, 2, 1, 3}};
  IteratedKmsResult res = iterated_kms(uq, input, 1, 1, 4);
  CHECK(res.residual_in_ideal);
  auto counts = orbit_multiplicities(gens, input);
  for (const auto& t : res.terms) {
    CHECK(scan_tree(gens, t.tree, 1, 1).any());
    CHECK(tree_orbit_multiplicities(gens, t.tree) == counts);
    CHECK(tree_weight(t.tree) == input.weight());
  }
}

TEST_CASE("iterated kms desk run at (3,2,2), c=1, t1=2, t2=2, V=6") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 6);
  const IndexedGeneratorSet& gens = tr.gens();
  Fq K = Fq::prime_field(7, 3);
  UniversalQuotient uq(tr, K, 1);
  GenWord input{{0, 1, 0, 0, 1, 0}};
  IteratedKmsResult res = iterated_kms(uq, input, 2, 2, 6);
  CHECK(res.residual_in_ideal);
  for (const auto& t : res.terms) {
    WitnessScan sc = scan_tree(gens, t.tree, 2, 2);
    CHECK(sc.any());
    CHECK(tree_orbit_multiplicities(gens, t.tree) == orbit_multiplicities(gens, input));
  }
}

TEST_CASE("fh_invariant_ideal closes its seeds under phi and h") {
  FrobeniusShape s{3, 2, 2};
  FreeLieTruncation tr = trunc_of(s, {1}, 4);
  Fq K = Fq::prime_field(7, 3);
  std::vector<std::vector<Vec>> seeds(5);
  Vec v(tr.weight_dim(2), 0);
  v[0] = 3;
  seeds[2].push_back(v);
  auto ideal = fh_invariant_ideal(tr, K, seeds);
  for (std::uint32_t w = 1; w <= 4; ++w) {
    Mat hw = tr.h_matrix(K, w);
    Vec diag = tr.phi_diagonal(K, w);
    for (std::uint32_t r = 0; r < ideal[w].basis.nr; ++r) {
      Vec row = ideal[w].basis.row(r);
      CHECK(subspace_contains(K, ideal[w], vec_mat(K, row, hw)));
      Vec scaled(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) scaled[i] = K.mul(row[i], diag[i]);
      CHECK(subspace_contains(K, ideal[w], scaled));
    }
  }
}
