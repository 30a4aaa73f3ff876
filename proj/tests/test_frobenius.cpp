#include <doctest.h>

#include <froblie/frobenius.hpp>

#include "helpers.hpp"

using namespace froblie;
using froblie::testing::heisenberg_f7;
using froblie::testing::unit_vec;

TEST_CASE("shape validation") {
  CHECK(validate_frobenius_shape(3, 2, 2).valid);   // S_3
  CHECK(validate_frobenius_shape(7, 3, 2).valid);   // order 21
  auto d = validate_frobenius_shape(4, 2, 3);       // gcd(3-1, 4) = 2
  CHECK_FALSE(d.valid);
  CHECK(d.first_violation.find("gcd") != std::string::npos);
  CHECK_FALSE(validate_frobenius_shape(3, 2, 1).valid);  // order of 1 is 1
  CHECK_FALSE(validate_frobenius_shape(1, 2, 1).valid);
  CHECK_FALSE(validate_frobenius_shape(9, 3, 4).valid);  // gcd(4-1, 9) = 3
  CHECK(validate_frobenius_shape(5, 2, 4).valid);
  CHECK(validate_frobenius_shape(5, 4, 2).valid);
}

TEST_CASE("action validation on the worked instance") {
  LieInstance inst = heisenberg_f7();
  FrobeniusAction A = inst.action();
  CHECK(validate_action(A).ok());

  // identity phi: order 1 != n
  FrobeniusAction bad = A;
  bad.phi = Mat::identity(3);
  ValidationReport rep = validate_action(bad);
  REQUIRE_FALSE(rep.ok());
  bool order_violation = false;
  for (const auto& v : rep.violations) order_violation |= v.kind == "order";
  CHECK(order_violation);

  // h that is not an automorphism
  FrobeniusAction bad2 = A;
  bad2.h = Mat::identity(3);
  bad2.h.at(0, 0) = 2;  // scaling x only breaks [x,y] = z
  ValidationReport rep2 = validate_action(bad2);
  CHECK_FALSE(rep2.ok());
}

TEST_CASE("coprimality: p dividing n*q is rejected") {
  // same shape over F_3: p = 3 divides n = 3
  Fq K = Fq::prime_field(3, 1);  // n_root 1; omega order clause also fires
  LieRing L(K, 1);
  FrobeniusAction A{FrobeniusShape{3, 2, 2}, Mat::identity(1), Mat::identity(1), &L};
  ValidationReport rep = validate_action(A);
  bool coprime_violation = false;
  for (const auto& v : rep.violations) coprime_violation |= v.kind == "coprimality";
  CHECK(coprime_violation);
}

TEST_CASE("eigen decomposition of the worked instance") {
  LieInstance inst = heisenberg_f7();
  FrobeniusAction A = inst.action();
  GradedDecomposition D = eigen_decompose(A);
  const Fq& K = inst.field;
  REQUIRE(D.components.size() == 3);
  CHECK(D.components[0].dim() == 1);
  CHECK(D.components[1].dim() == 1);
  CHECK(D.components[2].dim() == 1);
  Vec x = unit_vec(3, 0), y = unit_vec(3, 1), z = unit_vec(3, 2);
  CHECK(subspace_contains(K, D.components[0], z));
  CHECK(subspace_contains(K, D.components[1], x));
  CHECK(subspace_contains(K, D.components[2], y));

  // pi_0(z) = z, pi_1(z) = pi_2(z) = 0
  CHECK(vec_mat(K, z, D.projections[0]) == z);
  CHECK(vec_is_zero(vec_mat(K, z, D.projections[1])));
  CHECK(vec_is_zero(vec_mat(K, z, D.projections[2])));
  // pi_1(x+y) = x, pi_2(x+y) = y
  Vec xy = vec_add(K, x, y);
  CHECK(vec_mat(K, xy, D.projections[1]) == x);
  CHECK(vec_mat(K, xy, D.projections[2]) == y);
}

TEST_CASE("projection identities and equivariance on random vectors") {
  LieInstance inst = heisenberg_f7();
  const Fq& K = inst.field;
  FrobeniusAction A = inst.action();
  GradedDecomposition D = eigen_decompose(A);
  std::uint64_t n = A.shape.n, r = A.shape.r;

  // orthogonal idempotents as matrices
  Mat sum(3, 3);
  for (std::uint64_t k = 0; k < n; ++k) {
    sum = mat_add(K, sum, D.projections[k]);
    for (std::uint64_t l = 0; l < n; ++l) {
      Mat prod = mat_mul(K, D.projections[k], D.projections[l]);
      if (k == l) CHECK(prod == D.projections[k]);
      else CHECK(prod == Mat(3, 3));
    }
    // pi_k phi = omega^k pi_k
    Mat lhs = mat_mul(K, D.projections[k], A.phi);
    Mat rhs = mat_scale(K, K.pow(K.omega(), k), D.projections[k]);
    CHECK(lhs == rhs);
  }
  CHECK(sum == Mat::identity(3));

  std::uint64_t seed = 2024;
  auto rnd = [&]() {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    return (seed >> 11) % K.size();
  };
  for (int trial = 0; trial < 100; ++trial) {
    Vec v(3);
    for (auto& c : v) c = rnd();
    Vec back(3, 0);
    for (std::uint64_t k = 0; k < n; ++k) back = vec_add(K, back, vec_mat(K, v, D.projections[k]));
    CHECK(back == v);  // x = sum pi_k(x)
    for (std::uint64_t k = 0; k < n; ++k) {
      // pi_k(x) * h = pi_{rk}(x * h)
      Vec lhs = vec_mat(K, vec_mat(K, v, D.projections[k]), A.h);
      Vec rhs = vec_mat(K, vec_mat(K, v, A.h), D.projections[(k * r) % n]);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("fixed subrings of the worked instance") {
  LieInstance inst = heisenberg_f7();
  const Fq& K = inst.field;
  FrobeniusAction A = inst.action();

  FixedSubring ch = fixed_subring(A, FixedBy::H);
  CHECK(ch.space.dim() == 1);
  CHECK(subspace_contains(K, ch.space, vec_add(K, unit_vec(3, 0), unit_vec(3, 1))));
  CHECK(ch.bracket_closed);
  CHECK(ch.nilpotent);
  CHECK(ch.nilpotency_class == 1);

  FixedSubring cf = fixed_subring(A, FixedBy::F);
  CHECK(cf.space.dim() == 1);
  CHECK(subspace_contains(K, cf.space, unit_vec(3, 2)));
  CHECK(cf.nilpotency_class == 1);

  // C_L(F) = L_0 as subspaces
  GradedDecomposition D = eigen_decompose(A);
  CHECK(cf.space == D.components[0]);

  FixedSubring cfh = fixed_subring(A, FixedBy::FH);
  CHECK(cfh.space.dim() == 0);
}

TEST_CASE("grading laws and H-permutation") {
  LieInstance inst = heisenberg_f7();
  FrobeniusAction A = inst.action();
  GradedDecomposition D = eigen_decompose(A);
  CHECK(check_grading_laws(D, A).ok());

  // orbit of components: h^q returns each L_i to itself
  const Fq& K = inst.field;
  for (std::uint64_t i = 0; i < 3; ++i) {
    Subspace img = D.components[i];
    for (std::uint64_t s = 0; s < A.shape.q; ++s) img = subspace_image(K, img, A.h);
    CHECK(img == D.components[i]);
  }
}

TEST_CASE("homogeneous index lookup") {
  LieInstance inst = heisenberg_f7();
  FrobeniusAction A = inst.action();
  GradedDecomposition D = eigen_decompose(A);
  CHECK(homogeneous_index(inst.field, D, unit_vec(3, 0)) == 1);
  CHECK(homogeneous_index(inst.field, D, unit_vec(3, 2)) == 0);
  Vec mixed = vec_add(inst.field, unit_vec(3, 0), unit_vec(3, 1));
  CHECK_FALSE(homogeneous_index(inst.field, D, mixed).has_value());
}
