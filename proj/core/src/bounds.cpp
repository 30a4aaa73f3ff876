#include "froblie/bounds.hpp"

#include "froblie/errors.hpp"

namespace froblie {

BigInt kms_bound_V(std::uint64_t t1, std::uint64_t t2, const BigInt& f) {
  if (t1 == 0) throw ContractError("V requires t1 >= 1");
  if (t1 > 1000000) throw ResourceError("t1 too large for exact V evaluation", t1, 1000000);
  BigInt base = (f + 1) * (f + 1) * t2;
  BigInt sum = 0;
  BigInt pw = 1;
  for (std::uint64_t i = 1; i <= t1; ++i) {
    pw *= base;
    sum += pw;
  }
  return sum + 1;
}

BoundParams make_bound_params(std::uint64_t c, std::uint64_t q, std::uint64_t n,
                              const BigInt& f, std::uint32_t U_used, std::uint32_t T_used) {
  if (f < 0) throw ContractError("f must be nonnegative");
  if (f > 1000000) throw ResourceError("f too large for exact bound evaluation", 0, 1000000);
  BoundParams bp;
  bp.c = c;
  bp.q = q;
  bp.n = n;
  bp.f = f;
  bp.T = f + 1;
  std::uint64_t Tu = static_cast<std::uint64_t>(bp.T);
  bp.U = kms_bound_V(Tu, Tu - 1, f);
  bp.N = kms_bound_V(Tu, 2 * (Tu - 1), f);
  bp.U_used = U_used;
  bp.T_used = T_used;
  if (BigInt(U_used) > bp.U) throw ContractError("U_used exceeds the paper bound U");
  if (BigInt(T_used) > bp.T) throw ContractError("T_used exceeds the paper level bound T");
  return bp;
}

std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace froblie
