#include <doctest.h>

#include <froblie/hall.hpp>

#include "helpers.hpp"

using namespace froblie;
using froblie::testing::free_lie_dim_bruteforce;

namespace {
FreeLieTruncation trunc_322(std::uint32_t orbits, std::uint32_t W) {
  std::vector<std::uint32_t> bases(orbits, 1);
  return FreeLieTruncation(make_generator_set(FrobeniusShape{3, 2, 2}, bases), W);
}
}  // namespace

TEST_CASE("witt formula") {
  CHECK(witt_dimension(2, 1) == 2);
  CHECK(witt_dimension(2, 2) == 1);
  CHECK(witt_dimension(2, 3) == 2);
  CHECK(witt_dimension(3, 4) == 18);  // (81 - 9) / 4
  CHECK(witt_dimension(1, 1) == 1);
  CHECK(witt_dimension(1, 5) == 0);
  CHECK(witt_dimension(4, 8) == 8160);
}

TEST_CASE("hall basis counts match witt dimensions") {
  FreeLieTruncation tr = trunc_322(1, 3);  // 2 generators
  CHECK(tr.weight_dim(1) == 2);
  CHECK(tr.weight_dim(2) == 1);
  CHECK(tr.weight_dim(3) == 2);

  FreeLieTruncation one(make_generator_set(FrobeniusShape{3, 2, 2}, {1}), 1);
  CHECK(one.total_dim() == 2);

  // 3 generators at (7,3,2), weight 4: dim 18 by Witt
  FreeLieTruncation tr7(make_generator_set(FrobeniusShape{7, 3, 2}, {1}), 4);
  CHECK(tr7.weight_dim(4) == 18);
}

TEST_CASE("hall counts agree with the tensor-algebra brute force") {
  Fq K = Fq::prime_field(101, 1);
  for (std::uint32_t w = 1; w <= 5; ++w)
    CHECK(free_lie_dim_bruteforce(K, 2, w) == witt_dimension(2, w));
  for (std::uint32_t w = 1; w <= 4; ++w)
    CHECK(free_lie_dim_bruteforce(K, 3, w) == witt_dimension(3, w));
}

TEST_CASE("caps yield resource errors with the would-be size") {
  CHECK_THROWS_AS(trunc_322(4, 3), ResourceError);  // 8 generators > 6
  TruncationCaps tight;
  tight.max_total_dim = 3;
  CHECK_THROWS_AS(FreeLieTruncation(make_generator_set(FrobeniusShape{3, 2, 2}, {1}), 4, tight),
                  ResourceError);
}

TEST_CASE("index grading is additive under bracketing") {
  FreeLieTruncation tr = trunc_322(1, 6);
  for (std::uint32_t id = 0; id < tr.total_dim(); ++id) {
    const HallElt& e = tr.elt(id);
    if (e.left < 0) continue;
    std::uint32_t expect =
        (tr.index_of(static_cast<std::uint32_t>(e.left)) + tr.index_of(static_cast<std::uint32_t>(e.right))) % 3;
    CHECK(tr.index_of(id) == expect);
  }
}

TEST_CASE("normal form products satisfy antisymmetry and jacobi") {
  FreeLieTruncation tr = trunc_322(1, 6);
  Fq K = Fq::prime_field(7, 3);
  // antisymmetry and Jacobi over all basis pairs/triples within the truncation
  for (std::uint32_t w1 = 1; w1 <= 2; ++w1) {
    for (std::uint32_t w2 = 1; w2 <= 2; ++w2) {
      for (std::uint32_t i = 0; i < tr.weight_dim(w1); ++i) {
        Vec a(tr.weight_dim(w1), 0);
        a[i] = 1;
        for (std::uint32_t j = 0; j < tr.weight_dim(w2); ++j) {
          Vec b(tr.weight_dim(w2), 0);
          b[j] = 1;
          Vec ab = tr.bracket_local(K, w1, a, w2, b);
          Vec ba = tr.bracket_local(K, w2, b, w1, a);
          for (std::size_t k = 0; k < ab.size(); ++k) CHECK(K.add(ab[k], ba[k]) == 0);
          for (std::uint32_t w3 = 1; w3 <= 2 && w1 + w2 + w3 <= 6; ++w3) {
            for (std::uint32_t l = 0; l < tr.weight_dim(w3); ++l) {
              Vec c(tr.weight_dim(w3), 0);
              c[l] = 1;
              Vec s1 = tr.bracket_local(K, w1 + w2, ab, w3, c);
              Vec s2 = tr.bracket_local(K, w2 + w3, tr.bracket_local(K, w2, b, w3, c), w1, a);
              Vec s3 = tr.bracket_local(K, w3 + w1, tr.bracket_local(K, w3, c, w1, a), w2, b);
              Vec sum = vec_add(K, vec_add(K, s1, s2), s3);
              CHECK(vec_is_zero(sum));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("h action: [y1,y2] maps to its own negative at (3,2,2)") {
  FreeLieTruncation tr = trunc_322(1, 2);
  Fq K = Fq::prime_field(7, 3);
  Mat h2 = tr.h_matrix(K, 2);  // single basis element [y2,y1]
  REQUIRE(h2.nr == 1);
  CHECK(h2.at(0, 0) == K.neg(1));
  // h has order q on every weight component
  Mat h1 = tr.h_matrix(K, 1);
  CHECK(mat_mul(K, h1, h1) == Mat::identity(2));
}

TEST_CASE("phi is diagonal with omega^index and fixes index-0 elements") {
  FreeLieTruncation tr = trunc_322(1, 3);
  Fq K = Fq::prime_field(7, 3);
  Vec d2 = tr.phi_diagonal(K, 2);  // [y2,y1] has index sum 0
  CHECK(d2[0] == 1);
  Vec d3 = tr.phi_diagonal(K, 3);
  // weight-3 elements [[y2,y1],y1] (index 1) and [[y2,y1],y2] (index 2)
  CHECK(d3[0] == K.omega());
  CHECK(d3[1] == K.mul(K.omega(), K.omega()));
}

TEST_CASE("word evaluation matches hall expansion") {
  FreeLieTruncation tr = trunc_322(1, 3);
  Fq K = Fq::prime_field(7, 3);
  // [y1, y2] = -[y2, y1]
  Vec v = tr.eval_word_local(K, {0, 1});
  REQUIRE(v.size() == 1);
  CHECK(v[0] == K.neg(1));
  // left-normed [y1,y1,...] vanishes
  CHECK(vec_is_zero(tr.eval_word_local(K, {0, 0, 1})));
}
