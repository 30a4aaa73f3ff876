#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace froblie {

using BigInt = boost::multiprecision::cpp_int;

// V(t1, t2) = sum_{i=1}^{t1} ((f+1)^2 t2)^i + 1, exact.
BigInt kms_bound_V(std::uint64_t t1, std::uint64_t t2, const BigInt& f);

// Headline constants of the construction for nilpotency class bound f:
// T = f + 1, U = V(T, T-1), N = V(T, 2(T-1)). The *_used fields record the
// caps a computation actually ran with; they must not exceed the paper-side
// values (U and N are far beyond desk scale for any real f, so runs always cap).
struct BoundParams {
  std::uint64_t c = 1;
  std::uint64_t q = 2;
  std::uint64_t n = 3;
  BigInt f;         // empirical or user-supplied
  BigInt T;         // f + 1
  BigInt U;         // V(T, T-1)
  BigInt N;         // V(T, 2(T-1))
  std::uint32_t U_used = 2;  // weight cap actually used
  std::uint32_t T_used = 1;  // level cap actually used
};

BoundParams make_bound_params(std::uint64_t c, std::uint64_t q, std::uint64_t n,
                              const BigInt& f, std::uint32_t U_used, std::uint32_t T_used);

std::string to_string(const BigInt& v);

}  // namespace froblie
