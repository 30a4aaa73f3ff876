#include <doctest.h>

#include <froblie/linalg.hpp>

#include "helpers.hpp"

using namespace froblie;

namespace {
std::uint64_t lcg(std::uint64_t& s) {
  s = s * 6364136223846793005ull + 1442695040888963407ull;
  return s >> 11;
}
Vec random_vec(const Fq& K, std::uint32_t d, std::uint64_t& s) {
  Vec v(d);
  for (auto& x : v) x = lcg(s) % K.size();
  return v;
}
}  // namespace

TEST_CASE("echelon form is canonical: shuffled spanning sets agree bit for bit") {
  Fq K = Fq::prime_field(11, 1);
  std::uint64_t seed = 42;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(random_vec(K, 6, seed));
    Subspace A = make_subspace(K, 6, gens);
    // a different generating set of the same span: scaled sums, reversed
    std::vector<Vec> gens2;
    for (int i = 3; i >= 0; --i) {
      Vec v = gens[i];
      Vec w = gens[(i + 1) % 4];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = K.add(K.mul(3, v[k]), K.mul(5, w[k]));
      gens2.push_back(v);
      gens2.push_back(gens[i]);
    }
    Subspace B = make_subspace(K, 6, gens2);
    CHECK(A == B);
  }
}

TEST_CASE("left kernel annihilates and has complementary rank") {
  Fq K = Fq::prime_field(7, 1);
  std::uint64_t seed = 7;
  for (int trial = 0; trial < 20; ++trial) {
    Mat M(5, 3);
    for (auto& x : M.a) x = lcg(seed) % 7;
    Subspace ker = left_kernel(K, M);
    Subspace img = row_space(K, M);
    CHECK(ker.dim() + img.dim() == 5);
    for (std::uint32_t r = 0; r < ker.basis.nr; ++r)
      CHECK(vec_is_zero(vec_mat(K, ker.basis.row(r), M)));
  }
}

TEST_CASE("solve_left finds canonical solutions and detects inconsistency") {
  Fq K = Fq::prime_field(5, 1);
  Mat M(3, 2);
  M.at(0, 0) = 1;
  M.at(1, 1) = 1;  // row 2 is zero
  Vec b{3, 4};
  auto x = solve_left(K, M, b);
  REQUIRE(x.has_value());
  CHECK(vec_mat(K, *x, M) == b);
  CHECK((*x)[2] == 0);  // free coordinate pinned to zero

  Mat Z(2, 2);  // zero map
  CHECK_FALSE(solve_left(K, Z, Vec{1, 0}).has_value());
}

TEST_CASE("intersection and sum satisfy the dimension formula") {
  Fq K = Fq::prime_field(7, 1);
  std::uint64_t seed = 99;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> ga, gb;
    for (int i = 0; i < 3; ++i) ga.push_back(random_vec(K, 5, seed));
    for (int i = 0; i < 3; ++i) gb.push_back(random_vec(K, 5, seed));
    Subspace A = make_subspace(K, 5, ga);
    Subspace B = make_subspace(K, 5, gb);
    Subspace S = subspace_sum(K, A, B);
    Subspace I = subspace_intersect(K, A, B);
    CHECK(S.dim() + I.dim() == A.dim() + B.dim());
    CHECK(subspace_leq(K, I, A));
    CHECK(subspace_leq(K, I, B));
    for (std::uint32_t r = 0; r < I.basis.nr; ++r) {
      CHECK(subspace_contains(K, A, I.basis.row(r)));
      CHECK(subspace_contains(K, B, I.basis.row(r)));
    }
  }
}

TEST_CASE("matrix inverse round trip") {
  Fq K = Fq::prime_field(13, 1);
  Mat A(3, 3);
  std::uint64_t seed = 5;
  do {
    for (auto& x : A.a) x = lcg(seed) % 13;
  } while (!mat_inverse(K, A));
  Mat Inv = *mat_inverse(K, A);
  CHECK(mat_mul(K, A, Inv) == Mat::identity(3));
  CHECK(mat_mul(K, Inv, A) == Mat::identity(3));
}
