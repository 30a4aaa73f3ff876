#include "froblie/group.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

namespace froblie {

namespace {

std::uint64_t lcg_next(std::uint64_t& s) {
  s = s * 6364136223846793005ull + 1442695040888963407ull;
  return s >> 11;
}

bool is_perm(const std::vector<std::uint32_t>& p, std::uint32_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::uint32_t> perm_compose(const std::vector<std::uint32_t>& f,
                                        const std::vector<std::uint32_t>& g) {
  // (f then g): x -> g[f[x]]
  std::vector<std::uint32_t> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

std::vector<std::uint32_t> perm_pow(std::vector<std::uint32_t> p, std::uint64_t k) {
  std::vector<std::uint32_t> r(p.size());
  std::iota(r.begin(), r.end(), 0);
  while (k) {
    if (k & 1) r = perm_compose(r, p);
    p = perm_compose(p, p);
    k >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> perm_inverse(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> out(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::uint32_t order, std::vector<std::uint32_t> table) {
  if (order == 0 || table.size() != std::size_t(order) * order)
    throw StructuralError("Cayley table has wrong size");
  for (auto v : table)
    if (v >= order) throw StructuralError("Cayley table entry out of range");
  FiniteGroup G;
  G.order = order;
  G.table = std::move(table);
  // identity
  std::optional<std::uint32_t> id;
  for (std::uint32_t e = 0; e < order; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < order && ok; ++x)
      if (G.mul(e, x) != x || G.mul(x, e) != x) ok = false;
    if (ok) {
      id = e;
      break;
    }
  }
  if (!id) throw StructuralError("Cayley table has no identity element");
  G.identity = *id;
  G.inv.assign(order, order);
  for (std::uint32_t x = 0; x < order; ++x) {
    for (std::uint32_t y = 0; y < order; ++y)
      if (G.mul(x, y) == G.identity && G.mul(y, x) == G.identity) {
        G.inv[x] = y;
        break;
      }
    if (G.inv[x] == order) throw StructuralError("element without a two-sided inverse");
  }
  return G;
}

bool subgroup_contains(const Subgroup& S, std::uint32_t g) {
  return std::binary_search(S.begin(), S.end(), g);
}

Subgroup closure(const FiniteGroup& G, std::vector<std::uint32_t> gens) {
  std::vector<bool> in(G.order, false);
  std::vector<std::uint32_t> frontier;
  in[G.identity] = true;
  frontier.push_back(G.identity);
  for (auto g : gens)
    if (!in[g]) {
      in[g] = true;
      frontier.push_back(g);
    }
  // close under products with generators and inverses
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> members;
    for (std::uint32_t x = 0; x < G.order; ++x)
      if (in[x]) members.push_back(x);
    for (auto a : members) {
      for (auto b : members) {
        std::uint32_t c = G.mul(a, b);
        if (!in[c]) {
          in[c] = true;
          grew = true;
        }
      }
    }
  }
  Subgroup out;
  for (std::uint32_t x = 0; x < G.order; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& A, const Subgroup& B) {
  std::vector<std::uint32_t> gens;
  for (auto a : A)
    for (auto b : B) gens.push_back(G.comm(a, b));
  return closure(G, gens);
}

std::vector<Subgroup> group_lower_central_series(const FiniteGroup& G) {
  Subgroup full(G.order);
  std::iota(full.begin(), full.end(), 0);
  return subgroup_lower_central_series(G, full);
}

std::vector<Subgroup> subgroup_lower_central_series(const FiniteGroup& G, const Subgroup& S) {
  std::vector<Subgroup> out{S};
  while (true) {
    Subgroup next = commutator_subgroup(G, out.back(), S);
    if (next == out.back()) break;  // stabilized (nontrivial when not nilpotent)
    out.push_back(next);
    if (next.size() == 1) break;
  }
  return out;
}

bool is_normal(const FiniteGroup& G, const Subgroup& S) {
  for (std::uint32_t g = 0; g < G.order; ++g)
    for (auto s : S)
      if (!subgroup_contains(S, G.conj(s, g))) return false;
  return true;
}

bool is_nilpotent_subgroup(const FiniteGroup& G, const Subgroup& S) {
  return subgroup_lower_central_series(G, S).back().size() == 1;
}

Subgroup fixed_subgroup(const FiniteGroup& G, const std::vector<std::uint32_t>& perm) {
  Subgroup out;
  for (std::uint32_t x = 0; x < G.order; ++x)
    if (perm[x] == x) out.push_back(x);
  return out;
}

ValidationReport validate_group(const FiniteGroup& G, const GroupAutomorphismPair* autos,
                                const GroupCaps& caps) {
  ValidationReport rep;
  if (G.order > caps.max_order) throw ResourceError("group order exceeds cap", G.order, caps.max_order);
  // identity + inverses were located structurally; associativity:
  if (G.order <= caps.exhaustive_threshold) {
    for (std::uint32_t a = 0; a < G.order && rep.violations.size() < 16; ++a)
      for (std::uint32_t b = 0; b < G.order; ++b)
        for (std::uint32_t c = 0; c < G.order; ++c)
          if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) {
            rep.violations.push_back({"associativity",
                                      "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(c) + ")"});
            goto assoc_done;
          }
  } else {
    std::uint64_t s = caps.seed;
    for (std::uint64_t i = 0; i < caps.samples; ++i) {
      std::uint32_t a = lcg_next(s) % G.order, b = lcg_next(s) % G.order,
                    c = lcg_next(s) % G.order;
      if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) {
        rep.violations.push_back({"associativity", "sampled triple (" + std::to_string(a) + "," +
                                                       std::to_string(b) + "," +
                                                       std::to_string(c) + ")"});
        break;
      }
    }
  }
assoc_done:
  if (!autos) return rep;

  const auto& A = *autos;
  ShapeDiagnosis sd = validate_frobenius_shape(A.shape.n, A.shape.q, A.shape.r);
  if (!sd.valid) {
    rep.violations.push_back({"shape", sd.first_violation});
    return rep;
  }
  if (std::gcd<std::uint64_t>(G.order, A.shape.n * A.shape.q) != 1)
    rep.violations.push_back({"coprimality", "gcd(|G|, n*q) != 1"});
  if (!is_perm(A.phi, G.order) || !is_perm(A.h, G.order)) {
    rep.violations.push_back({"permutation", "phi or h is not a permutation of element ids"});
    return rep;
  }
  auto check_hom = [&](const std::vector<std::uint32_t>& f, const std::string& name) {
    if (G.order <= caps.exhaustive_threshold) {
      for (std::uint32_t a = 0; a < G.order; ++a)
        for (std::uint32_t b = 0; b < G.order; ++b)
          if (f[G.mul(a, b)] != G.mul(f[a], f[b])) {
            rep.violations.push_back({"automorphism", name + " is not a homomorphism at (" +
                                                          std::to_string(a) + "," +
                                                          std::to_string(b) + ")"});
            return;
          }
    } else {
      std::uint64_t s = caps.seed ^ 0x9e3779b97f4a7c15ull;
      for (std::uint64_t i = 0; i < caps.samples; ++i) {
        std::uint32_t a = lcg_next(s) % G.order, b = lcg_next(s) % G.order;
        if (f[G.mul(a, b)] != G.mul(f[a], f[b])) {
          rep.violations.push_back({"automorphism", name + " fails (sampled)"});
          return;
        }
      }
    }
  };
  check_hom(A.phi, "phi");
  check_hom(A.h, "h");
  auto order_of_perm = [&](const std::vector<std::uint32_t>& p, std::uint64_t bound) {
    std::vector<std::uint32_t> acc = p;
    for (std::uint64_t k = 1; k <= bound; ++k) {
      bool ident = true;
      for (std::uint32_t i = 0; i < G.order; ++i)
        if (acc[i] != i) {
          ident = false;
          break;
        }
      if (ident) return k;
      acc = perm_compose(acc, p);
    }
    return std::uint64_t{0};
  };
  std::uint64_t op = order_of_perm(A.phi, A.shape.n);
  if (op != A.shape.n)
    rep.violations.push_back({"order", "phi has order " + std::to_string(op) + " != n"});
  std::uint64_t oh = order_of_perm(A.h, A.shape.q);
  if (oh != A.shape.q)
    rep.violations.push_back({"order", "h has order " + std::to_string(oh) + " != q"});
  // h^{-1} phi h = phi^r
  std::vector<std::uint32_t> lhs = perm_compose(perm_compose(perm_inverse(A.h), A.phi), A.h);
  if (lhs != perm_pow(A.phi, A.shape.r))
    rep.violations.push_back({"relation", "h^{-1} phi h != phi^r"});
  return rep;
}

// ---------------------------------------------------------------------------

std::uint32_t AssociatedLieRing::weight_offset(std::uint32_t i) const {
  std::uint32_t off = 0;
  for (std::uint32_t w = 1; w < i; ++w) off += factor_dims[w - 1];
  return off;
}

Vec AssociatedLieRing::embed(std::uint32_t i, std::uint32_t g) const {
  Vec v(ring.dim(), 0);
  auto it = coords[i - 1].find(g);
  if (it == coords[i - 1].end()) return v;  // in gamma_{i+1}: zero image
  std::uint32_t off = weight_offset(i);
  for (std::uint32_t k = 0; k < factor_dims[i - 1]; ++k) v[off + k] = it->second[k];
  return v;
}

AssociatedLieRing lcs_and_associated_lie_ring(const FiniteGroup& G,
                                              const GroupAutomorphismPair& autos) {
  AssociatedLieRing R;
  R.G = &G;
  R.shape = autos.shape;
  R.gamma = group_lower_central_series(G);
  if (R.gamma.back().size() != 1)
    throw UnsupportedInstanceError("group is not nilpotent; no associated Lie ring here");
  std::uint32_t cl = static_cast<std::uint32_t>(R.gamma.size()) - 1;

  // single prime p: |G| must be a p-power for the factors to live over F_p
  std::vector<std::uint64_t> pf = prime_factors(G.order);
  if (pf.size() != 1)
    throw UnsupportedInstanceError(
        "lower central factors are not elementary abelian over one prime (|G| is not a prime "
        "power)");
  R.p = pf[0];

  // factors elementary abelian: exponent p
  for (std::uint32_t i = 1; i <= cl; ++i) {
    for (auto g : R.gamma[i - 1]) {
      std::uint32_t acc = G.identity;
      for (std::uint64_t k = 0; k < R.p; ++k) acc = G.mul(acc, g);
      if (!subgroup_contains(R.gamma[i], acc))
        throw UnsupportedInstanceError("lower central factor " + std::to_string(i) +
                                       " is not elementary abelian");
    }
  }

  Fq K = make_field_with_root_order(R.p, autos.shape.n);

  // factor bases and coset coordinates
  R.factor_dims.assign(cl, 0);
  R.factor_basis.assign(cl, {});
  R.coords.assign(cl, {});
  for (std::uint32_t i = 1; i <= cl; ++i) {
    const Subgroup& gi = R.gamma[i - 1];
    const Subgroup& gnext = R.gamma[i];
    Subgroup span = gnext;
    std::vector<std::uint32_t> basis;
    for (auto g : gi) {
      if (subgroup_contains(span, g)) continue;
      basis.push_back(g);
      std::vector<std::uint32_t> gens(span.begin(), span.end());
      gens.push_back(g);
      span = closure(G, gens);
      if (span.size() == gi.size()) break;
    }
    R.factor_basis[i - 1] = basis;
    R.factor_dims[i - 1] = static_cast<std::uint32_t>(basis.size());
    // coordinates: enumerate all power products times gamma_{i+1}
    std::vector<std::uint32_t> digits(basis.size(), 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos,
                                                              std::uint32_t acc) {
      if (pos == basis.size()) {
        for (auto z : gnext) {
          std::uint32_t elem = G.mul(acc, z);
          std::vector<std::uint32_t> c(digits.begin(), digits.end());
          R.coords[i - 1].emplace(elem, std::move(c));
        }
        return;
      }
      std::uint32_t cur = acc;
      for (std::uint32_t d = 0; d < R.p; ++d) {
        digits[pos] = d;
        rec(pos + 1, cur);
        cur = G.mul(cur, basis[pos]);
      }
      digits[pos] = 0;
    };
    rec(0, G.identity);
    if (R.coords[i - 1].size() != gi.size())
      throw Error("internal: factor coordinate table incomplete");
  }

  std::uint32_t dim = 0;
  for (auto d : R.factor_dims) dim += d;
  LieRing ring(K, dim);

  // structure constants on factor bases via group commutators
  std::uint32_t off_i = 0;
  for (std::uint32_t i = 1; i <= cl; ++i) {
    std::uint32_t off_j = 0;
    for (std::uint32_t j = 1; j <= cl; ++j) {
      if (j < i || i + j > cl + 0) {
        off_j += R.factor_dims[j - 1];
        continue;
      }
      for (std::uint32_t a = 0; a < R.factor_dims[i - 1]; ++a) {
        for (std::uint32_t b = 0; b < R.factor_dims[j - 1]; ++b) {
          std::uint32_t ga = off_i + a, gb = off_j + b;
          if (ga >= gb) continue;
          std::uint32_t cg = G.comm(R.factor_basis[i - 1][a], R.factor_basis[j - 1][b]);
          Vec val(dim, 0);
          if (i + j <= cl) {
            auto it = R.coords[i + j - 1].find(cg);
            if (it != R.coords[i + j - 1].end()) {
              std::uint32_t off = 0;
              for (std::uint32_t w = 1; w < i + j; ++w) off += R.factor_dims[w - 1];
              for (std::uint32_t k = 0; k < R.factor_dims[i + j - 1]; ++k)
                val[off + k] = it->second[k];
            } else if (cg != G.identity && !subgroup_contains(R.gamma[i + j], cg)) {
              throw Error("internal: commutator escaped gamma_{i+j}");
            }
          }
          ring.set_bracket(ga, gb, val);
        }
      }
      off_j += R.factor_dims[j - 1];
    }
    off_i += R.factor_dims[i - 1];
  }
  R.ring = std::move(ring);

  R.coord_weight.clear();
  for (std::uint32_t i = 1; i <= cl; ++i)
    for (std::uint32_t k = 0; k < R.factor_dims[i - 1]; ++k) R.coord_weight.push_back(i);

  // induced automorphism matrices, block per factor
  auto build_mat = [&](const std::vector<std::uint32_t>& perm) {
    Mat M(dim, dim);
    std::uint32_t off = 0;
    for (std::uint32_t i = 1; i <= cl; ++i) {
      for (std::uint32_t a = 0; a < R.factor_dims[i - 1]; ++a) {
        std::uint32_t img = perm[R.factor_basis[i - 1][a]];
        auto it = R.coords[i - 1].find(img);
        if (it == R.coords[i - 1].end())
          throw Error("internal: automorphism image escaped its factor");
        std::uint32_t o2 = 0;
        for (std::uint32_t w = 1; w < i; ++w) o2 += R.factor_dims[w - 1];
        for (std::uint32_t k = 0; k < R.factor_dims[i - 1]; ++k)
          M.at(off + a, o2 + k) = it->second[k];
      }
      off += R.factor_dims[i - 1];
    }
    return M;
  };
  R.phi_mat = build_mat(autos.phi);
  R.h_mat = build_mat(autos.h);
  return R;
}

std::vector<Vec> phi_terms(const AssociatedLieRing& R, const GradedDecomposition& D,
                           std::uint32_t x) {
  const Fq& K = R.ring.field();
  Vec xbar = R.embed(1, x);
  std::vector<Vec> terms;
  for (std::uint64_t k = 0; k < R.shape.n; ++k)
    terms.push_back(vec_mat(K, xbar, D.projections[k]));
  return terms;
}

// ---------------------------------------------------------------------------

namespace {

// K(v) = intersection over all a-tuples of Ker theta_{v,a}; also reports
// whether every single theta kernel had index <= bound.
Subgroup theta_kernel(const FiniteGroup& G, const GroupAutomorphismPair& autos,
                      const std::vector<Subgroup>& gamma, const std::vector<std::uint32_t>& v,
                      std::uint64_t index_bound, bool* bound_ok) {
  std::uint32_t k = static_cast<std::uint32_t>(v.size());
  std::uint64_t n = autos.shape.n;
  std::vector<std::vector<std::uint32_t>> phi_pows;
  phi_pows.push_back(perm_pow(autos.phi, 0));
  for (std::uint64_t s = 1; s < n; ++s) phi_pows.push_back(perm_compose(phi_pows.back(), autos.phi));
  Subgroup trivial{G.identity};
  const Subgroup& gk2 = (k + 1 < gamma.size()) ? gamma[k + 1] : trivial;

  std::vector<bool> in_kernel(G.order, true);
  if (bound_ok) *bound_ok = true;
  std::vector<std::uint64_t> a(k, 0);
  std::function<void(std::uint32_t)> loop = [&](std::uint32_t pos) {
    if (pos == k) {
      std::uint64_t ker_size = 0;
      for (std::uint32_t u = 0; u < G.order; ++u) {
        std::uint32_t acc = u;
        for (std::uint32_t s = 0; s < k; ++s) acc = G.comm(acc, phi_pows[a[s]][v[s]]);
        std::uint32_t prod = G.identity, cur = acc;
        for (std::uint64_t t = 0; t < n; ++t) {
          prod = G.mul(prod, cur);
          cur = phi_pows[1][cur];
        }
        bool ker = subgroup_contains(gk2, prod);
        if (ker) ++ker_size;
        else in_kernel[u] = false;
      }
      if (bound_ok && (ker_size == 0 || (G.order / ker_size) > std::max<std::uint64_t>(index_bound, 1)))
        *bound_ok = false;
      return;
    }
    for (std::uint64_t s = 0; s < n; ++s) {
      a[pos] = s;
      loop(pos + 1);
    }
  };
  loop(0);
  Subgroup out;
  for (std::uint32_t u = 0; u < G.order; ++u)
    if (in_kernel[u]) out.push_back(u);
  return out;
}

}  // namespace

GroupThetaResult group_theta_and_K(const FiniteGroup& G, const GroupAutomorphismPair& autos,
                                   const AssociatedLieRing& R, const GradedDecomposition& D,
                                   const std::vector<std::uint32_t>& v,
                                   std::uint32_t length_cap) {
  std::uint32_t k = static_cast<std::uint32_t>(v.size());
  if (k == 0 || k > length_cap) throw ContractError("group_theta_and_K: tuple length out of cap");
  std::uint64_t n = autos.shape.n;

  GroupThetaResult res;
  res.m = fixed_subgroup(G, autos.phi).size();
  res.kernel = theta_kernel(G, autos, R.gamma, v, res.m, &res.index_bound_ok);
  res.index = G.order / res.kernel.size();

  res.F_invariant = true;
  for (auto u : res.kernel)
    if (!subgroup_contains(res.kernel, autos.phi[u])) res.F_invariant = false;

  // K(v)^h == K(v^h)
  {
    Subgroup lhs;
    for (auto u : res.kernel) lhs.push_back(autos.h[u]);
    std::sort(lhs.begin(), lhs.end());
    std::vector<std::uint32_t> vh;
    for (auto x : v) vh.push_back(autos.h[x]);
    Subgroup rhs = theta_kernel(G, autos, R.gamma, vh, res.m, nullptr);
    res.h_window_ok = (lhs == rhs);
  }

  // Lie-level centralizer property (eq. c-prop) via phi-terms, on a bounded
  // sample of kernel members and all index tuples
  res.lie_property_ok = true;
  std::uint32_t checked = 0;
  for (auto u : res.kernel) {
    if (++checked > 16) break;
    std::vector<Vec> uterms = phi_terms(R, D, u);
    std::vector<std::vector<Vec>> vterms;
    for (auto x : v) vterms.push_back(phi_terms(R, D, x));
    std::vector<std::uint64_t> idx(k, 1);
    std::function<void(std::uint32_t, std::uint64_t)> iloop = [&](std::uint32_t pos,
                                                                  std::uint64_t sum) {
      if (!res.lie_property_ok) return;
      if (pos == k) {
        std::uint64_t j = (n - sum % n) % n;
        Vec acc = uterms[j];
        for (std::uint32_t s = 0; s < k; ++s) acc = R.ring.bracket(acc, vterms[s][idx[s]]);
        if (!vec_is_zero(acc)) res.lie_property_ok = false;
        return;
      }
      for (std::uint64_t i = 0; i < n; ++i) {
        idx[pos] = i;
        iloop(pos + 1, sum + i);
      }
    };
    iloop(0, 0);
  }
  return res;
}

// ---------------------------------------------------------------------------

int compare_induction_parameters(const InductionParameter& a, const InductionParameter& b) {
  if (a.m != b.m) return a.m < b.m ? -1 : 1;
  // inverse lexicographic on mbar: larger early entry means smaller
  std::size_t len = std::max(a.mbar.size(), b.mbar.size());
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t ai = i < a.mbar.size() ? a.mbar[i] : 1;
    std::uint64_t bi = i < b.mbar.size() ? b.mbar[i] : 1;
    if (ai != bi) return ai > bi ? -1 : 1;
  }
  if (a.t != b.t) return a.t < b.t ? -1 : 1;
  return 0;
}

namespace {

// distinct phi-terms of elements of B, per nonzero index, with the smallest
// producing element
std::vector<std::vector<std::pair<Vec, std::uint32_t>>> phi_term_sets(
    const FiniteGroup& G, const AssociatedLieRing& R, const GradedDecomposition& D,
    const Subgroup& B) {
  std::uint64_t n = R.shape.n;
  std::vector<std::vector<std::pair<Vec, std::uint32_t>>> X(n);
  for (auto b : B) {
    std::vector<Vec> terms = phi_terms(R, D, b);
    for (std::uint64_t j = 1; j < n; ++j) {
      bool found = false;
      for (auto& [vec, elt] : X[j])
        if (vec == terms[j]) {
          found = true;
          break;
        }
      if (!found) X[j].emplace_back(terms[j], b);
    }
  }
  return X;
}

FiniteGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& B,
                              std::vector<std::uint32_t>& global_of_local) {
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  global_of_local.assign(B.begin(), B.end());
  for (std::uint32_t i = 0; i < B.size(); ++i) local[B[i]] = i;
  std::uint32_t m = static_cast<std::uint32_t>(B.size());
  std::vector<std::uint32_t> table(std::size_t(m) * m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      std::uint32_t prod = G.mul(B[i], B[j]);
      auto it = local.find(prod);
      if (it == local.end()) throw ContractError("subgroup_as_group: set is not closed");
      table[std::size_t(i) * m + j] = it->second;
    }
  return FiniteGroup::from_table(m, std::move(table));
}

}  // namespace

InductionParameter induction_parameter(const FiniteGroup& G, const GroupAutomorphismPair& autos,
                                       const Subgroup& B, const GroupTowerCaps& caps) {
  // restrict to B as its own group with the restricted action
  std::vector<std::uint32_t> glob;
  FiniteGroup H = subgroup_as_group(G, B, glob);
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  for (std::uint32_t i = 0; i < glob.size(); ++i) local[glob[i]] = i;
  GroupAutomorphismPair sub;
  sub.shape = autos.shape;
  sub.phi.resize(H.order);
  sub.h.resize(H.order);
  for (std::uint32_t i = 0; i < H.order; ++i) {
    auto ip = local.find(autos.phi[glob[i]]);
    auto ih = local.find(autos.h[glob[i]]);
    if (ip == local.end() || ih == local.end())
      throw ContractError("induction_parameter: subgroup is not FH-invariant");
    sub.phi[i] = ip->second;
    sub.h[i] = ih->second;
  }

  InductionParameter out;
  out.m = fixed_subgroup(H, sub.phi).size();

  AssociatedLieRing R = lcs_and_associated_lie_ring(H, sub);
  std::uint32_t cl = static_cast<std::uint32_t>(R.gamma.size()) - 1;
  out.mbar.assign(caps.mbar_length, 1);
  for (std::uint32_t j = 1; j <= caps.mbar_length; ++j) {
    if (j > cl) break;  // gamma_j trivial: fixed count 1
    const Subgroup& gj = R.gamma[j - 1];
    const Subgroup& gj1 = R.gamma[j];  // gamma_{j+1}
    std::uint64_t fixed_elems = 0;
    for (auto x : gj) {
      std::uint32_t moved = H.mul(sub.phi[x], H.inv[x]);
      if (subgroup_contains(gj1, moved)) ++fixed_elems;
    }
    out.mbar[j - 1] = fixed_elems / gj1.size();
  }

  // |P(B)|: realizable (pattern, value) pairs on phi-terms
  FrobeniusAction act{sub.shape, R.phi_mat, R.h_mat, &R.ring};
  GradedDecomposition D = eigen_decompose(act);
  auto X = phi_term_sets(H, R, D, [&] {
    Subgroup all(H.order);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }());
  std::vector<Pattern> pats = enumerate_patterns(sub.shape.n, caps.pattern_weight_cap);
  std::set<std::pair<std::vector<std::uint32_t>, Vec>> pairs;
  std::uint64_t work = 0;
  for (const Pattern& pat : pats) {
    std::vector<const std::vector<std::pair<Vec, std::uint32_t>>*> slots;
    for (auto idx : pat.indices) slots.push_back(&X[idx]);
    std::vector<std::uint32_t> pick(pat.weight(), 0);
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t pos) {
      if (++work > caps.budget)
        throw ResourceError("induction parameter enumeration exceeds budget", work, caps.budget);
      if (pos == pat.weight()) {
        Vec acc = (*slots[0])[pick[0]].first;
        for (std::uint32_t s = 1; s < pat.weight(); ++s)
          acc = R.ring.bracket(acc, (*slots[s])[pick[s]].first);
        pairs.emplace(pat.indices, std::move(acc));
        return;
      }
      for (std::uint32_t i = 0; i < slots[pos]->size(); ++i) {
        pick[pos] = i;
        rec(pos + 1);
      }
    };
    rec(0);
  }
  out.t = pairs.size();
  return out;
}

ATowerResult build_A_tower_and_parameter(const FiniteGroup& G,
                                         const GroupAutomorphismPair& autos,
                                         const GroupTowerCaps& caps) {
  AssociatedLieRing R = lcs_and_associated_lie_ring(G, autos);
  FrobeniusAction act{autos.shape, R.phi_mat, R.h_mat, &R.ring};
  GradedDecomposition D = eigen_decompose(act);
  std::uint64_t n = autos.shape.n;

  ATowerResult res;
  Subgroup full(G.order);
  std::iota(full.begin(), full.end(), 0);
  res.A.push_back(full);

  auto fix_reps = [&](const Subgroup& At) {
    std::vector<GroupRep> reps;
    auto X = phi_term_sets(G, R, D, At);
    std::vector<Pattern> pats = enumerate_patterns(n, caps.pattern_weight_cap);
    std::set<std::pair<std::vector<std::uint32_t>, Vec>> seen;
    std::uint64_t work = 0;
    for (const Pattern& pat : pats) {
      std::vector<std::uint32_t> pick(pat.weight(), 0);
      std::function<void(std::uint32_t)> rec = [&](std::uint32_t pos) {
        if (++work > caps.budget)
          throw ResourceError("representative enumeration exceeds budget", work, caps.budget);
        if (pos == pat.weight()) {
          Vec acc = X[pat.indices[0]][pick[0]].first;
          std::vector<std::uint32_t> elems{X[pat.indices[0]][pick[0]].second};
          for (std::uint32_t s = 1; s < pat.weight(); ++s) {
            acc = R.ring.bracket(acc, X[pat.indices[s]][pick[s]].first);
            elems.push_back(X[pat.indices[s]][pick[s]].second);
          }
          auto key = std::make_pair(pat.indices, acc);
          if (!seen.count(key)) {
            seen.insert(key);
            GroupRep gr;
            gr.pattern = pat;
            gr.value = acc;
            gr.group_elements = elems;
            reps.push_back(std::move(gr));
          }
          return;
        }
        for (std::uint32_t i = 0; i < X[pat.indices[pos]].size(); ++i) {
          pick[pos] = i;
          rec(pos + 1);
        }
      };
      rec(0);
    }
    return reps;
  };

  res.reps.push_back(fix_reps(full));
  res.F_invariant.push_back(true);
  res.H_invariant.push_back(true);

  for (std::uint32_t t = 1; t <= caps.levels; ++t) {
    // pool of group representative elements of levels < t, with H-orbits
    std::vector<std::uint32_t> pool;
    for (std::uint32_t lv = 0; lv < t; ++lv)
      for (const auto& rep : res.reps[lv])
        for (auto e : rep.group_elements) {
          std::uint32_t cur = e;
          for (std::uint64_t s = 0; s < autos.shape.q; ++s) {
            if (std::find(pool.begin(), pool.end(), cur) == pool.end()) pool.push_back(cur);
            cur = autos.h[cur];
          }
        }
    std::sort(pool.begin(), pool.end());

    std::vector<bool> in(G.order, true);
    std::vector<std::uint32_t> pick;
    std::uint64_t work = 0;
    std::function<void()> rec = [&]() {
      if (!pick.empty()) {
        if (++work > caps.budget)
          throw ResourceError("A-tower tuple enumeration exceeds budget", work, caps.budget);
        Subgroup ker = theta_kernel(G, autos, R.gamma, pick, 0, nullptr);
        for (std::uint32_t u = 0; u < G.order; ++u)
          if (!subgroup_contains(ker, u)) in[u] = false;
      }
      if (pick.size() == caps.tuple_length_cap) return;
      for (auto e : pool) {
        pick.push_back(e);
        rec();
        pick.pop_back();
      }
    };
    rec();
    Subgroup At;
    for (std::uint32_t u = 0; u < G.order; ++u)
      if (in[u]) At.push_back(u);
    // intersect with the previous level to keep the chain descending even at
    // tiny caps
    Subgroup prev = res.A.back();
    Subgroup inter;
    std::set_intersection(At.begin(), At.end(), prev.begin(), prev.end(),
                          std::back_inserter(inter));
    res.A.push_back(inter);

    bool finv = true, hinv = true;
    for (auto u : inter) {
      if (!subgroup_contains(inter, autos.phi[u])) finv = false;
      if (!subgroup_contains(inter, autos.h[u])) hinv = false;
    }
    res.F_invariant.push_back(finv);
    res.H_invariant.push_back(hinv);
    res.reps.push_back(fix_reps(inter));
  }

  res.parameter_G = induction_parameter(G, autos, full, caps);
  for (std::size_t i = 0; i < res.A.size(); ++i) {
    res.parameter_A.push_back(induction_parameter(G, autos, res.A[i], caps));
    res.nerav_vs_G.push_back(
        compare_induction_parameters(res.parameter_A.back(), res.parameter_G));
  }
  return res;
}

// ---------------------------------------------------------------------------

Subgroup sylow_subgroup(const FiniteGroup& G, std::uint64_t p) {
  std::uint64_t full = 1;
  {
    std::uint64_t o = G.order;
    while (o % p == 0) {
      o /= p;
      full *= p;
    }
  }
  if (full == 1) return Subgroup{G.identity};

  auto element_order = [&](std::uint32_t g) {
    std::uint64_t k = 1;
    std::uint32_t acc = g;
    while (acc != G.identity) {
      acc = G.mul(acc, g);
      ++k;
    }
    return k;
  };
  auto is_p_power = [&](std::uint64_t v) {
    while (v % p == 0) v /= p;
    return v == 1;
  };

  Subgroup P{G.identity};
  for (std::uint32_t g = 0; g < G.order; ++g)
    if (g != G.identity && is_p_power(element_order(g))) {
      P = closure(G, {g});
      break;
    }
  while (P.size() < full) {
    // normalizer of P
    Subgroup N;
    for (std::uint32_t g = 0; g < G.order; ++g) {
      bool norm = true;
      for (auto s : P)
        if (!subgroup_contains(P, G.conj(s, g))) {
          norm = false;
          break;
        }
      if (norm) N.push_back(g);
    }
    bool grew = false;
    for (auto y : N) {
      if (subgroup_contains(P, y) || !is_p_power(element_order(y))) continue;
      std::vector<std::uint32_t> gens(P.begin(), P.end());
      gens.push_back(y);
      Subgroup bigger = closure(G, gens);
      if (is_p_power(bigger.size())) {
        P = bigger;
        grew = true;
        break;
      }
    }
    if (!grew) throw Error("internal: Sylow extension stalled");
  }
  return P;
}

FittingResult fitting_subgroup(const FiniteGroup& G, std::uint32_t lattice_cap) {
  FittingResult res;
  std::vector<std::uint32_t> gens;
  for (auto p : prime_factors(G.order)) {
    Subgroup syl = sylow_subgroup(G, p);
    // p-core: intersection of all conjugates
    std::vector<bool> in(G.order, false);
    for (auto s : syl) in[s] = true;
    for (std::uint32_t g = 0; g < G.order; ++g) {
      std::vector<bool> conj(G.order, false);
      for (auto s : syl) conj[G.conj(s, g)] = true;
      for (std::uint32_t x = 0; x < G.order; ++x)
        if (in[x] && !conj[x]) in[x] = false;
    }
    Subgroup core;
    for (std::uint32_t x = 0; x < G.order; ++x)
      if (in[x]) core.push_back(x);
    res.p_cores.emplace_back(p, core);
    for (auto x : core) gens.push_back(x);
  }
  res.fitting = closure(G, gens);
  res.index = G.order / res.fitting.size();
  res.nilpotent = is_nilpotent_subgroup(G, res.fitting);
  res.normal = is_normal(G, res.fitting);

  // generated lattice: normal closures of cyclic subgroups and pairwise joins
  std::vector<Subgroup> lattice;
  for (std::uint32_t x = 0; x < G.order && lattice.size() < lattice_cap; ++x) {
    std::vector<std::uint32_t> cgens;
    for (std::uint32_t g = 0; g < G.order; ++g) cgens.push_back(G.conj(x, g));
    Subgroup nc = closure(G, cgens);
    if (std::find(lattice.begin(), lattice.end(), nc) == lattice.end()) lattice.push_back(nc);
  }
  std::size_t base = lattice.size();
  for (std::size_t i = 0; i < base && lattice.size() < lattice_cap; ++i)
    for (std::size_t j = i + 1; j < base && lattice.size() < lattice_cap; ++j) {
      std::vector<std::uint32_t> jg(lattice[i].begin(), lattice[i].end());
      jg.insert(jg.end(), lattice[j].begin(), lattice[j].end());
      Subgroup join = closure(G, jg);
      if (std::find(lattice.begin(), lattice.end(), join) == lattice.end())
        lattice.push_back(join);
    }
  res.maximal_in_lattice = true;
  for (const auto& S : lattice) {
    if (!is_normal(G, S) || !is_nilpotent_subgroup(G, S)) continue;
    for (auto s : S)
      if (!subgroup_contains(res.fitting, s)) {
        res.maximal_in_lattice = false;
        break;
      }
  }
  return res;
}

// ---------------------------------------------------------------------------

std::pair<FiniteGroup, GroupAutomorphismPair> make_heisenberg_group(std::uint64_t p) {
  if (!is_prime_u64(p) || p % 3 != 1 || p <= 3)
    throw StructuralError("make_heisenberg_group requires a prime p = 1 mod 3, p > 3");
  std::uint32_t N = static_cast<std::uint32_t>(p * p * p);
  auto id_of = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return static_cast<std::uint32_t>((a * p + b) * p + c);
  };
  std::vector<std::uint32_t> table(std::size_t(N) * N);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c)
        for (std::uint64_t a2 = 0; a2 < p; ++a2)
          for (std::uint64_t b2 = 0; b2 < p; ++b2)
            for (std::uint64_t c2 = 0; c2 < p; ++c2)
              table[std::size_t(id_of(a, b, c)) * N + id_of(a2, b2, c2)] =
                  id_of((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
  FiniteGroup G = FiniteGroup::from_table(N, std::move(table));

  Fq F = Fq::prime_field(p, 3);
  std::uint64_t w = F.omega();
  GroupAutomorphismPair autos;
  autos.shape = FrobeniusShape{3, 2, 2};
  autos.phi.resize(N);
  autos.h.resize(N);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c) {
        autos.phi[id_of(a, b, c)] = id_of(a * w % p, b * w % p * w % p, c);
        autos.h[id_of(a, b, c)] = id_of(b, a, (a * b % p + p - c % p) % p);
      }
  return {std::move(G), std::move(autos)};
}

FiniteGroup make_cyclic_group(std::uint32_t k) {
  std::vector<std::uint32_t> table(std::size_t(k) * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) table[std::size_t(a) * k + b] = (a + b) % k;
  return FiniteGroup::from_table(k, std::move(table));
}

FiniteGroup make_symmetric3() {
  // permutations of {0,1,2} listed in a fixed order
  std::vector<std::array<std::uint32_t, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  auto compose = [&](int i, int j) {  // apply i then j
    std::array<std::uint32_t, 3> r;
    for (int x = 0; x < 3; ++x) r[x] = perms[j][perms[i][x]];
    for (int t = 0; t < 6; ++t)
      if (perms[t] == r) return t;
    return -1;
  };
  std::vector<std::uint32_t> table(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) table[i * 6 + j] = static_cast<std::uint32_t>(compose(i, j));
  return FiniteGroup::from_table(6, std::move(table));
}

FiniteGroup make_elementary_abelian(std::uint64_t p, std::uint32_t rank) {
  std::uint64_t N = 1;
  for (std::uint32_t i = 0; i < rank; ++i) N *= p;
  std::vector<std::uint32_t> table(N * N);
  for (std::uint64_t a = 0; a < N; ++a)
    for (std::uint64_t b = 0; b < N; ++b) {
      std::uint64_t x = a, y = b, out = 0, mult = 1;
      for (std::uint32_t i = 0; i < rank; ++i) {
        out += ((x % p + y % p) % p) * mult;
        mult *= p;
        x /= p;
        y /= p;
      }
      table[a * N + b] = static_cast<std::uint32_t>(out);
    }
  return FiniteGroup::from_table(static_cast<std::uint32_t>(N), std::move(table));
}

}  // namespace froblie
