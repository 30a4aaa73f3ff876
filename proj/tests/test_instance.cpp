#include <doctest.h>

#include <froblie/instance.hpp>

#include "helpers.hpp"

using namespace froblie;

TEST_CASE("lie instance round trip is byte-identical on canonical files") {
  LieInstance inst = generate_heisenberg(7, FrobeniusShape{3, 2, 2});
  std::string text = emit_lie_instance(inst);
  LieInstance back = parse_lie_instance(text);
  CHECK(emit_lie_instance(back) == text);
  CHECK(back.ring == inst.ring);
  CHECK(back.phi == inst.phi);
  CHECK(back.h == inst.h);
  CHECK(back.field == inst.field);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_lie_instance("{"), doctest::Contains("JSON parse error"),
                       StructuralError);
  LieInstance inst = generate_heisenberg(7, FrobeniusShape{3, 2, 2});
  std::string text = emit_lie_instance(inst);

  // break a bracket index
  std::string bad = text;
  auto pos = bad.find("\"k\": 2");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 6, "\"k\": 9");
  CHECK_THROWS_WITH_AS(parse_lie_instance(bad), doctest::Contains("/brackets/0/entries/0"),
                       StructuralError);

  // break omega's order
  std::string bad2 = text;
  pos = bad2.find("\"omega\": [\n    2\n  ]");
  if (pos == std::string::npos) {
    pos = bad2.find("\"omega\"");
    REQUIRE(pos != std::string::npos);
    auto end = bad2.find(']', pos);
    bad2.replace(pos, end - pos + 1, "\"omega\": [3]");
  }
  CHECK_THROWS_WITH_AS(parse_lie_instance(bad2), doctest::Contains("/omega"), StructuralError);
}

TEST_CASE("group instance round trip") {
  auto [G, autos] = make_heisenberg_group(7);
  GroupInstance gi{G, autos};
  std::string text = emit_group_instance(gi);
  GroupInstance back = parse_group_instance(text);
  CHECK(back.group.order == 343);
  CHECK(back.group.table == G.table);
  CHECK(back.autos.phi == autos.phi);
  CHECK(emit_group_instance(back) == text);
}

TEST_CASE("heisenberg generator matches the worked instance") {
  LieInstance gen = generate_heisenberg(7, FrobeniusShape{3, 2, 2});
  LieInstance hand = froblie::testing::heisenberg_f7();
  CHECK(gen.ring == hand.ring);
  CHECK(gen.phi == hand.phi);
  CHECK(gen.h == hand.h);
  // infeasible parameters are explicit errors
  CHECK_THROWS_AS(generate_heisenberg(7, FrobeniusShape{7, 3, 2}), StructuralError);
  CHECK_THROWS_AS(generate_heisenberg(3, FrobeniusShape{3, 2, 2}), StructuralError);
}

TEST_CASE("free-nilpotent generator: dims match Witt counts without relations") {
  FreeNilpotentParams params;
  params.shape = FrobeniusShape{3, 2, 2};
  params.orbit_base_indices = {1};
  params.weight = 3;
  params.relations = FreeNilpotentRelations::none;
  LieInstance inst = generate_free_nilpotent(params);
  CHECK(inst.ring.dim() == witt_dimension(2, 1) + witt_dimension(2, 2) + witt_dimension(2, 3));
  CHECK(validate_lie_ring(inst.ring).ok());
  CHECK(validate_action(inst.action()).ok());
  CHECK(inst.field.p() == 7);  // default prime for the shape

  // class of the truncated free ring is the truncation weight
  LowerCentralSeries lcs = lower_central_series(inst.ring);
  CHECK(lcs.nilpotent);
  CHECK(lcs.nilpotency_class == 3);
}

TEST_CASE("free-nilpotent generator honors mod_j and mod_ji") {
  FreeNilpotentParams params;
  params.shape = FrobeniusShape{3, 2, 2};
  params.orbit_base_indices = {1};
  params.weight = 4;
  params.relations = FreeNilpotentRelations::mod_j;
  LieInstance inst = generate_free_nilpotent(params);
  FrobeniusAction A = inst.action();
  GradedDecomposition D = eigen_decompose(A);
  CHECK(D.components[0].dim() == 0);  // C_L(F) = 0 by construction

  params.relations = FreeNilpotentRelations::mod_ji;
  params.c = 1;
  LieInstance inst2 = generate_free_nilpotent(params);
  FrobeniusAction A2 = inst2.action();
  CHECK(eigen_decompose(A2).components[0].dim() == 0);
  FixedSubring ch = fixed_subring(A2, FixedBy::H);
  CHECK(ch.nilpotent);
  CHECK(ch.nilpotency_class <= 1);
}

TEST_CASE("free-nilpotent generator with seeded extra relations is deterministic") {
  FreeNilpotentParams params;
  params.shape = FrobeniusShape{3, 2, 2};
  params.orbit_base_indices = {1};
  params.weight = 4;
  params.extra_relations = 2;
  params.seed = 12345;
  LieInstance a = generate_free_nilpotent(params);
  LieInstance b = generate_free_nilpotent(params);
  CHECK(emit_lie_instance(a) == emit_lie_instance(b));
  params.seed = 54321;
  LieInstance c = generate_free_nilpotent(params);
  CHECK(validate_lie_ring(c.ring).ok());
  CHECK(validate_action(c.action()).ok());
}

TEST_CASE("direct-sum generator: dim L_0 equals the number of Heisenberg copies") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    LieInstance inst = generate_direct_sum(7, FrobeniusShape{3, 2, 2}, k, 0);
    CHECK(inst.ring.dim() == 3 * k);
    FrobeniusAction A = inst.action();
    GradedDecomposition D = eigen_decompose(A);
    CHECK(D.components[0].dim() == k);
    CHECK(lower_central_series(inst.ring).nilpotency_class == 2);
  }
  LieInstance mixed = generate_direct_sum(7, FrobeniusShape{3, 2, 2}, 1, 2);
  CHECK(mixed.ring.dim() == 15);
  CHECK(eigen_decompose(mixed.action()).components[0].dim() == 1);
}

TEST_CASE("default prime per shape") {
  CHECK(default_prime_for_shape(FrobeniusShape{3, 2, 2}) == 7);
  CHECK(default_prime_for_shape(FrobeniusShape{7, 3, 2}) == 29);
  CHECK(default_prime_for_shape(FrobeniusShape{5, 2, 4}) == 11);
}
