#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "froblie/lie_ring.hpp"

namespace froblie {

// Metacyclic Frobenius data: kernel F = <phi> of order n, complement
// H = <h> of order q, and phi^{h^{-1}} = phi^r.
struct FrobeniusShape {
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::uint64_t r = 0;
};

struct ShapeDiagnosis {
  bool valid;
  std::string first_violation;  // empty when valid
};

// Checks: n,q >= 2; 1 <= r < n; r^q = 1 mod n with exact order q;
// gcd(r^j - 1, n) = 1 for 1 <= j < q.
ShapeDiagnosis validate_frobenius_shape(std::uint64_t n, std::uint64_t q, std::uint64_t r);

// FH acting on a concrete LieRing by matrices (right action on row vectors).
struct FrobeniusAction {
  FrobeniusShape shape;
  Mat phi;
  Mat h;
  const LieRing* ring = nullptr;
};

// Relations, exact orders, automorphism property on basis pairs, coprimality
// of p with n*q. Structural problems (dimension mismatch) throw.
ValidationReport validate_action(const FrobeniusAction& A);

// The phi-eigenspace grading L = L_0 + ... + L_{n-1} with its projections
// pi_k = (1/n) sum_s omega^{-ks} phi^s.
struct GradedDecomposition {
  std::vector<Subspace> components;
  std::vector<Mat> projections;
};

GradedDecomposition eigen_decompose(const FrobeniusAction& A);

enum class FixedBy { F, H, FH };

struct FixedSubring {
  Subspace space;
  bool bracket_closed;
  bool nilpotent;
  std::uint32_t nilpotency_class;  // valid when nilpotent
};

FixedSubring fixed_subring(const FrobeniusAction& A, FixedBy which);

// Grading law [L_s, L_t] <= L_{s+t mod n} on component bases, and the
// H-permutation law L_i * h = L_{ri}.
ValidationReport check_grading_laws(const GradedDecomposition& D, const FrobeniusAction& A);

// component index of a phi-homogeneous vector, if any
std::optional<std::uint32_t> homogeneous_index(const Fq& K, const GradedDecomposition& D,
                                               const Vec& v);

}  // namespace froblie
