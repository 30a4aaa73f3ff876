#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "froblie/errors.hpp"

namespace froblie {

// Field element of F_{p^e}, encoded as sum coeff[i] * p^i with coefficients
// in [0, p). Equality of codes is equality of elements.
using fel = std::uint64_t;

// F_{p^e} together with a distinguished element omega of exact multiplicative
// order n. All arithmetic is exact. For e > 1 the field is F_p[x]/(modulus)
// in the power basis 1, x, ..., x^{e-1}.
class Fq {
 public:
  // Prime field F_p carrying a primitive n-th root of unity (requires n | p-1).
  // omega is chosen canonically as the smallest code of exact order n.
  static Fq prime_field(std::uint64_t p, std::uint64_t n);

  // Extension field F_{p^e}; modulus holds the e+1 coefficients of a monic
  // irreducible polynomial over F_p, constant term first.
  static Fq extension_field(std::uint64_t p, std::uint32_t e,
                            const std::vector<std::uint64_t>& modulus,
                            std::uint64_t n);

  // As above, but with an explicitly supplied omega (validated to have exact
  // order n). Used when loading instance files.
  static Fq with_omega(std::uint64_t p, std::uint32_t e,
                       const std::vector<std::uint64_t>& modulus, std::uint64_t n,
                       fel omega);

  std::uint64_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint64_t n_root() const { return n_; }
  fel omega() const { return omega_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  // Number of elements, p^e. Throws if it does not fit in 63 bits.
  std::uint64_t size() const { return size_; }

  fel zero() const { return 0; }
  fel one() const { return 1; }
  fel from_int(std::int64_t v) const;  // image of an integer in the prime subfield

  fel add(fel a, fel b) const;
  fel sub(fel a, fel b) const;
  fel neg(fel a) const;
  fel mul(fel a, fel b) const;
  fel inv(fel a) const;  // throws ContractError on 0
  fel pow(fel a, std::uint64_t k) const;

  bool is_zero(fel a) const { return a == 0; }

  // Exact multiplicative order (a != 0).
  std::uint64_t mult_order(fel a) const;

  // Power-basis coordinates, length e, each in [0, p).
  std::vector<std::uint64_t> coords(fel a) const;
  fel from_coords(const std::vector<std::uint64_t>& c) const;

  std::string to_string(fel a) const;

  bool operator==(const Fq& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_ && n_ == o.n_ &&
           omega_ == o.omega_;
  }

 private:
  Fq() = default;
  void init_checks() const;

  std::uint64_t p_ = 0;
  std::uint32_t e_ = 1;
  std::vector<std::uint64_t> modulus_;  // empty iff e == 1
  std::uint64_t n_ = 1;
  fel omega_ = 1;
  std::uint64_t size_ = 0;
};

bool is_prime_u64(std::uint64_t v);
std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Smallest-degree field F_{p^e} containing an element of exact order n, with
// the lexicographically least irreducible modulus when e > 1.
Fq make_field_with_root_order(std::uint64_t p, std::uint64_t n);

}  // namespace froblie
