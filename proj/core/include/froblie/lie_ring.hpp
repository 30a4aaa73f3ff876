#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "froblie/linalg.hpp"

namespace froblie {

// One violated axiom or relation, with enough coordinates to locate it.
struct Violation {
  std::string kind;     // e.g. "antisymmetry", "jacobi", "automorphism"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Raw structure-constant entry as it appears in input, any (i, j) order.
struct RawBracket {
  std::uint32_t i, j, k;
  fel c;
};

// Finite-dimensional Lie ring over F_{p^e} given by sparse structure
// constants. Canonical storage keeps only i < j entries; antisymmetry is
// structural and [b_i, b_i] = 0 is forced.
class LieRing {
 public:
  LieRing(Fq field, std::uint32_t dim);

  // Canonicalizes raw entries (folds (j,i) into (i,j) with a sign); entries
  // that conflict under antisymmetry are an axiom violation, so this
  // constructor is only for trusted/canonical input. Throws StructuralError
  // on out-of-range indices.
  static LieRing from_raw(Fq field, std::uint32_t dim, const std::vector<RawBracket>& entries);

  const Fq& field() const { return K_; }
  std::uint32_t dim() const { return d_; }

  // Sets [b_i, b_j] for i < j as a coordinate vector.
  void set_bracket(std::uint32_t i, std::uint32_t j, const Vec& value);
  // i < j; an empty vector means the zero bracket
  const Vec& basis_bracket(std::uint32_t i, std::uint32_t j) const;

  // Bilinear bracket of coordinate vectors.
  Vec bracket(const Vec& u, const Vec& v) const;

  // Left-normed [w0, w1, ..., wk].
  Vec bracket_word(const std::vector<Vec>& word) const;

  Vec basis_vector(std::uint32_t i) const;

  bool operator==(const LieRing& o) const;

 private:
  Fq K_;
  std::uint32_t d_;
  std::vector<Vec> upper_;  // flattened i<j table, each entry a length-d vector
  std::size_t idx(std::uint32_t i, std::uint32_t j) const;
};

// Bracketed expression over explicit vectors: leaf or [left, right].
struct BracketExpr {
  Vec leaf;                                  // used when children empty
  std::vector<BracketExpr> children;         // size 0 or 2
  static BracketExpr make_leaf(Vec v) { return BracketExpr{std::move(v), {}}; }
  static BracketExpr make_node(BracketExpr l, BracketExpr r) {
    BracketExpr e;
    e.children.push_back(std::move(l));
    e.children.push_back(std::move(r));
    return e;
  }
};

// Checks antisymmetry and the Jacobi identity on a raw table; structural
// problems (bad indices) throw, axiom violations are report entries.
ValidationReport validate_lie_ring(const Fq& K, std::uint32_t dim,
                                   const std::vector<RawBracket>& entries);

// Same checks on a canonical ring (antisymmetry is structural there, so this
// is effectively an exhaustive Jacobi check).
ValidationReport validate_lie_ring(const LieRing& L);

Vec bracket_eval(const LieRing& L, const BracketExpr& expr);

struct LowerCentralSeries {
  std::vector<Subspace> terms;  // gamma_1, gamma_2, ... down to stabilization
  bool nilpotent;
  std::uint32_t nilpotency_class;  // valid when nilpotent; class of 0-ring is 0
};

LowerCentralSeries lower_central_series(const LieRing& L);

Subspace generated_subring(const LieRing& L, const std::vector<Vec>& gens);
Subspace generated_ideal(const LieRing& L, const std::vector<Vec>& gens);

struct QuotientRing {
  Subspace ideal;
  LieRing ring;                        // structure on the complement basis
  std::vector<std::uint32_t> coords;   // ambient coordinates carrying the quotient basis
  // projection of an ambient vector to quotient coordinates
  Vec project(const Fq& K, const Vec& v) const;
  // lift of a quotient vector back to the canonical ambient representative
  Vec lift(const Vec& v) const;
};

QuotientRing generated_ideal_and_quotient(const LieRing& L, const std::vector<Vec>& gens);

// Lower central series restricted to a bracket-closed subspace; used for
// nilpotency classes of subrings.
LowerCentralSeries subring_lower_central_series(const LieRing& L, const Subspace& S);

}  // namespace froblie
