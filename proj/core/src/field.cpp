#include "froblie/field.hpp"

#include <algorithm>
#include <numeric>

namespace froblie {

namespace {

// digits of a code in base p, little-endian, padded to e
void decode(std::uint64_t a, std::uint64_t p, std::uint32_t e, std::uint64_t* out) {
  for (std::uint32_t i = 0; i < e; ++i) {
    out[i] = a % p;
    a /= p;
  }
}

std::uint64_t encode(const std::uint64_t* digits, std::uint64_t p, std::uint32_t e) {
  std::uint64_t a = 0;
  for (std::uint32_t i = e; i-- > 0;) a = a * p + digits[i];
  return a;
}

constexpr std::uint32_t kMaxExt = 8;  // cap on extension degree

std::uint64_t mul_mod_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // p < 2^31 is enforced at construction
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  // extended Euclid
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw ContractError("inverse of a non-unit mod p");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

// polynomial helpers over F_p; vectors little-endian, no trailing zeros required
using Poly = std::vector<std::uint64_t>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  // reduce by monic f of degree d
  std::size_t d = f.size() - 1;
  for (std::size_t i = prod.size(); i-- > d;) {
    std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < d; ++j) {
      std::uint64_t sub = mul_mod_p(c, f[j], p);
      prod[i - d + j] = (prod[i - d + j] + p - sub) % p;
    }
  }
  prod.resize(d);
  return prod;
}

Poly poly_pow_mod(Poly base, std::uint64_t exp, const Poly& f, std::uint64_t p) {
  Poly result(f.size() - 1, 0);
  result[0] = 1;
  while (exp) {
    if (exp & 1) result = poly_mul_mod(result, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    exp >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  std::size_t d = f.size() - 1;
  for (std::size_t i = a.size(); i-- > d;) {
    std::uint64_t c = a[i];
    if (c == 0) continue;
    a[i] = 0;
    for (std::size_t j = 0; j < d; ++j) {
      std::uint64_t sub = mul_mod_p(c, f[j], p);
      a[i - d + j] = (a[i - d + j] + p - sub) % p;
    }
  }
  a.resize(std::max<std::size_t>(d, 1));
  return a;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  auto deg = [](const Poly& x) -> std::int64_t {
    for (std::size_t i = x.size(); i-- > 0;)
      if (x[i] != 0) return static_cast<std::int64_t>(i);
    return -1;
  };
  while (!poly_is_zero(b)) {
    // a mod b
    std::int64_t db = deg(b);
    std::uint64_t lead_inv = inv_mod_p(b[static_cast<std::size_t>(db)], p);
    Poly r = a;
    std::int64_t dr = deg(r);
    while (dr >= db) {
      std::uint64_t c = mul_mod_p(r[static_cast<std::size_t>(dr)], lead_inv, p);
      for (std::int64_t j = 0; j <= db; ++j) {
        std::uint64_t sub = mul_mod_p(c, b[static_cast<std::size_t>(j)], p);
        std::size_t idx = static_cast<std::size_t>(dr - db + j);
        r[idx] = (r[idx] + p - sub) % p;
      }
      dr = deg(r);
    }
    a = b;
    b = r;
  }
  return a;
}

bool modulus_irreducible(const Poly& f, std::uint64_t p, std::uint32_t e) {
  // Rabin: x^{p^e} == x mod f, and gcd(x^{p^{e/l}} - x, f) == 1 for primes l | e
  Poly x(e, 0);
  if (e == 1) return true;
  x[1] = 1;
  auto frob_power = [&](std::uint32_t k) {
    Poly r = x;
    for (std::uint32_t i = 0; i < k; ++i) r = poly_pow_mod(r, p, f, p);
    return r;
  };
  Poly xe = frob_power(e);
  Poly diff = xe;
  diff[1] = (diff[1] + p - 1) % p;
  if (!poly_is_zero(diff)) return false;
  for (std::uint32_t l = 2; l <= e; ++l) {
    if (e % l != 0) continue;
    bool lprime = true;
    for (std::uint32_t d = 2; d * d <= l; ++d)
      if (l % d == 0) lprime = false;
    if (!lprime) continue;
    Poly xk = frob_power(e / l);
    Poly g = xk;
    g[1] = (g[1] + p - 1) % p;
    if (poly_is_zero(g)) return false;
    Poly gc = poly_gcd(f, g, p);
    std::size_t nz = 0, deg = 0;
    for (std::size_t i = 0; i < gc.size(); ++i)
      if (gc[i] != 0) {
        ++nz;
        deg = i;
      }
    if (!(nz >= 1 && deg == 0)) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    exp >>= 1;
  }
  return r;
}

void Fq::init_checks() const {
  if (!is_prime_u64(p_)) throw StructuralError("p is not prime: " + std::to_string(p_));
  if (p_ >= (1ull << 31)) throw StructuralError("p too large (>= 2^31)");
  if (e_ < 1 || e_ > kMaxExt) throw StructuralError("extension degree out of range");
  if (e_ > 1) {
    if (modulus_.size() != e_ + 1 || modulus_[e_] != 1)
      throw StructuralError("modulus must be monic of degree e");
    for (auto c : modulus_)
      if (c >= p_) throw StructuralError("modulus coefficient out of range");
    if (!modulus_irreducible(modulus_, p_, e_))
      throw StructuralError("modulus is reducible over F_p");
  }
  // size fits
  std::uint64_t s = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (s > (1ull << 62) / p_) throw StructuralError("p^e too large");
    s *= p_;
  }
  if ((s - 1) % n_ != 0)
    throw StructuralError("n does not divide p^e - 1; no primitive n-th root exists");
}

Fq Fq::with_omega(std::uint64_t p, std::uint32_t e,
                  const std::vector<std::uint64_t>& modulus, std::uint64_t n,
                  fel omega) {
  Fq k;
  k.p_ = p;
  k.e_ = e;
  k.modulus_ = modulus;
  k.n_ = n;
  k.omega_ = 1;
  std::uint64_t s = 1;
  for (std::uint32_t i = 0; i < e; ++i) s *= p;
  k.size_ = s;
  k.init_checks();
  if (omega >= k.size_) throw StructuralError("omega code out of range");
  k.omega_ = omega;
  if (omega == 0 || k.mult_order(omega) != n)
    throw StructuralError("omega does not have exact multiplicative order n");
  return k;
}

Fq Fq::prime_field(std::uint64_t p, std::uint64_t n) {
  return extension_field(p, 1, {}, n);
}

Fq Fq::extension_field(std::uint64_t p, std::uint32_t e,
                       const std::vector<std::uint64_t>& modulus, std::uint64_t n) {
  Fq k;
  k.p_ = p;
  k.e_ = e;
  k.modulus_ = modulus;
  k.n_ = n;
  k.omega_ = 1;
  std::uint64_t s = 1;
  for (std::uint32_t i = 0; i < e; ++i) s *= p;
  k.size_ = s;
  k.init_checks();
  if (n == 1) {
    k.omega_ = 1;
    return k;
  }
  // canonical omega: smallest code of exact order n
  for (fel c = 2; c < k.size_; ++c) {
    if (k.mult_order(c) == n) {
      k.omega_ = c;
      return k;
    }
  }
  throw StructuralError("no element of order n found");  // unreachable when n | p^e-1
}

fel Fq::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += static_cast<std::int64_t>(p_);
  return static_cast<fel>(m);
}

fel Fq::add(fel a, fel b) const {
  if (e_ == 1) {
    fel s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t da[kMaxExt], db[kMaxExt], dc[kMaxExt];
  decode(a, p_, e_, da);
  decode(b, p_, e_, db);
  for (std::uint32_t i = 0; i < e_; ++i) {
    dc[i] = da[i] + db[i];
    if (dc[i] >= p_) dc[i] -= p_;
  }
  return encode(dc, p_, e_);
}

fel Fq::neg(fel a) const {
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint64_t da[kMaxExt], dc[kMaxExt];
  decode(a, p_, e_, da);
  for (std::uint32_t i = 0; i < e_; ++i) dc[i] = da[i] == 0 ? 0 : p_ - da[i];
  return encode(dc, p_, e_);
}

fel Fq::sub(fel a, fel b) const { return add(a, neg(b)); }

fel Fq::mul(fel a, fel b) const {
  if (e_ == 1) return (a * b) % p_;
  std::uint64_t da[kMaxExt], db[kMaxExt];
  decode(a, p_, e_, da);
  decode(b, p_, e_, db);
  std::uint64_t prod[2 * kMaxExt] = {0};
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < e_; ++j) {
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
  }
  for (std::uint32_t i = 2 * e_ - 1; i >= e_; --i) {
    std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::uint32_t j = 0; j < e_; ++j) {
      std::uint64_t sub = (c * modulus_[j]) % p_;
      prod[i - e_ + j] = (prod[i - e_ + j] + p_ - sub) % p_;
    }
  }
  return encode(prod, p_, e_);
}

fel Fq::pow(fel a, std::uint64_t k) const {
  fel r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

fel Fq::inv(fel a) const {
  if (a == 0) throw ContractError("division by zero in F_{p^e}");
  if (e_ == 1) return inv_mod_p(a, p_);
  return pow(a, size_ - 2);
}

std::uint64_t Fq::mult_order(fel a) const {
  if (a == 0) throw ContractError("order of zero");
  std::uint64_t ord = size_ - 1;
  for (std::uint64_t q : prime_divisors(size_ - 1)) {
    while (ord % q == 0 && pow(a, ord / q) == 1) ord /= q;
  }
  return ord;
}

std::vector<std::uint64_t> Fq::coords(fel a) const {
  std::uint64_t d[kMaxExt];
  decode(a, p_, e_, d);
  return std::vector<std::uint64_t>(d, d + e_);
}

fel Fq::from_coords(const std::vector<std::uint64_t>& c) const {
  if (c.size() != e_) throw StructuralError("scalar coordinate list has wrong length");
  for (auto v : c)
    if (v >= p_) throw StructuralError("scalar coordinate out of range [0, p)");
  std::uint64_t d[kMaxExt] = {0};
  std::copy(c.begin(), c.end(), d);
  return encode(d, p_, e_);
}

Fq make_field_with_root_order(std::uint64_t p, std::uint64_t n) {
  if (!is_prime_u64(p)) throw StructuralError("p is not prime");
  std::uint64_t pe = 1;
  for (std::uint32_t e = 1; e <= kMaxExt; ++e) {
    if (pe > (1ull << 62) / p) break;
    pe *= p;
    if ((pe - 1) % n != 0) continue;
    if (e == 1) return Fq::prime_field(p, n);
    // lexicographically least monic irreducible of degree e (low coeffs fastest)
    std::vector<std::uint64_t> mod(e + 1, 0);
    mod[e] = 1;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < e; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < e; ++i) {
        mod[i] = c % p;
        c /= p;
      }
      if (modulus_irreducible(mod, p, e)) return Fq::extension_field(p, e, mod, n);
    }
  }
  throw StructuralError("no field F_{p^e} with e <= 8 contains a root of order " +
                        std::to_string(n));
}

std::string Fq::to_string(fel a) const {
  if (e_ == 1) return std::to_string(a);
  auto c = coords(a);
  std::string s = "[";
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

}  // namespace froblie
