#include <doctest.h>

#include <froblie/field.hpp>

using namespace froblie;

TEST_CASE("prime field arithmetic and canonical omega") {
  Fq K = Fq::prime_field(7, 3);
  CHECK(K.omega() == 2);  // smallest element of exact order 3
  CHECK(K.mul(3, 5) == 1);
  CHECK(K.add(6, 4) == 3);
  CHECK(K.sub(2, 5) == 4);
  CHECK(K.inv(3) == 5);
  CHECK(K.pow(2, 3) == 1);
  CHECK(K.mult_order(2) == 3);
  CHECK(K.mult_order(3) == 6);
  CHECK(K.neg(0) == 0);
  CHECK_THROWS_AS(K.inv(0), ContractError);
}

TEST_CASE("field construction rejects bad parameters") {
  CHECK_THROWS_AS(Fq::prime_field(6, 1), StructuralError);   // not prime
  CHECK_THROWS_AS(Fq::prime_field(7, 4), StructuralError);   // 4 does not divide 6
  CHECK_THROWS_AS(Fq::with_omega(7, 1, {}, 3, 3), StructuralError);  // order(3) = 6 != 3
  CHECK_NOTHROW(Fq::with_omega(7, 1, {}, 3, 4));             // 4 = omega^2 also has order 3
}

TEST_CASE("extension field F_19^2 with a 5th root of unity") {
  // 5 divides 19^2 - 1 = 360 but not 18
  Fq K = make_field_with_root_order(19, 5);
  CHECK(K.e() == 2);
  CHECK(K.size() == 361);
  CHECK(K.mult_order(K.omega()) == 5);
  fel w = K.omega();
  CHECK(K.pow(w, 5) == 1);
  CHECK(K.pow(w, 1) != 1);
  // field axioms spot checks
  fel a = 37, b = 123;  // arbitrary codes
  CHECK(K.mul(a, K.inv(a)) == 1);
  CHECK(K.mul(a, b) == K.mul(b, a));
  CHECK(K.mul(a, K.add(b, w)) == K.add(K.mul(a, b), K.mul(a, w)));
  // coords round trip
  CHECK(K.from_coords(K.coords(a)) == a);
}

TEST_CASE("irreducibility filter rejects reducible moduli") {
  // x^2 - 1 = (x-1)(x+1) over F_19
  CHECK_THROWS_AS(Fq::extension_field(19, 2, {18, 0, 1}, 1), StructuralError);
}
