#pragma once

#include <string>
#include <vector>

#include "froblie/free_engine.hpp"
#include "froblie/group.hpp"

namespace froblie {

// A concrete Lie instance: ring, action matrices and naming, as carried by
// the JSON interchange format. Raw bracket entries are retained so that the
// axiom validator can inspect the table exactly as given.
struct LieInstance {
  Fq field;
  FrobeniusShape shape;
  LieRing ring;
  Mat phi, h;
  std::vector<std::string> basis_names;
  std::vector<RawBracket> raw_brackets;

  LieInstance() : field(Fq::prime_field(2, 1)), ring(field, 0) {}
  FrobeniusAction action() const { return FrobeniusAction{shape, phi, h, &ring}; }
};

// Throws StructuralError with a JSON-pointer position for malformed input;
// Lie-axiom and action violations are left to validate_* so callers can
// report them instead of failing the parse.
LieInstance parse_lie_instance(const std::string& text);
std::string emit_lie_instance(const LieInstance& inst);

struct GroupInstance {
  FiniteGroup group;
  GroupAutomorphismPair autos;
};

GroupInstance parse_group_instance(const std::string& text);
std::string emit_group_instance(const GroupInstance& inst);

// ---------------------------------------------------------------------------
// Instance generators. Every generator validates its own output by
// construction parameters and records the seed where randomness is involved.

// Heisenberg ring x, y, z with [x,y] = z over the smallest field F_{p^e}
// containing a root of order n; needs q = 2 and r = n - 1.
LieInstance generate_heisenberg(std::uint64_t p, const FrobeniusShape& shape);

enum class FreeNilpotentRelations {
  none,   // plain truncated free ring
  mod_j,  // kill the zero-index component's ideal: C_L(F) = 0
  mod_ji  // kill J + I: the universal quotient instance for a given c
};

struct FreeNilpotentParams {
  FrobeniusShape shape;
  std::vector<std::uint32_t> orbit_base_indices{1};
  std::uint32_t weight = 3;
  std::uint64_t p = 0;  // 0: smallest prime coprime to n*q admitting the root
  FreeNilpotentRelations relations = FreeNilpotentRelations::none;
  std::uint64_t c = 1;           // used by mod_ji
  std::uint32_t extra_relations = 0;
  std::uint64_t seed = 1;
};

LieInstance generate_free_nilpotent(const FreeNilpotentParams& params);

// Direct sum of heis_copies Heisenberg blocks (each contributes 1 to dim L_0)
// and pair_copies index-shifted double blocks with no fixed points of F.
LieInstance generate_direct_sum(std::uint64_t p, const FrobeniusShape& shape,
                                std::uint32_t heis_copies, std::uint32_t pair_copies);

// smallest prime with an order-n root in F_p and gcd(p, n*q) = 1
std::uint64_t default_prime_for_shape(const FrobeniusShape& shape);

}  // namespace froblie
