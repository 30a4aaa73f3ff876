#include "froblie/lie_ring.hpp"

#include <algorithm>

namespace froblie {

LieRing::LieRing(Fq field, std::uint32_t dim) : K_(std::move(field)), d_(dim) {
  upper_.assign(std::size_t(d_) * d_, Vec());  // only i<j slots used
}

std::size_t LieRing::idx(std::uint32_t i, std::uint32_t j) const {
  return std::size_t(i) * d_ + j;
}

void LieRing::set_bracket(std::uint32_t i, std::uint32_t j, const Vec& value) {
  if (i >= j || j >= d_) throw StructuralError("set_bracket: need i < j < dim");
  if (value.size() != d_) throw StructuralError("set_bracket: bad value length");
  upper_[idx(i, j)] = value;
}

const Vec& LieRing::basis_bracket(std::uint32_t i, std::uint32_t j) const {
  if (i >= j || j >= d_) throw StructuralError("basis_bracket: need i < j < dim");
  return upper_[idx(i, j)];
}

LieRing LieRing::from_raw(Fq field, std::uint32_t dim, const std::vector<RawBracket>& entries) {
  LieRing L(std::move(field), dim);
  const Fq& K = L.field();
  for (const auto& ent : entries) {
    if (ent.i >= dim || ent.j >= dim || ent.k >= dim)
      throw StructuralError("bracket entry index out of range");
    if (ent.i == ent.j) {
      if (ent.c != 0) throw StructuralError("nonzero [b_i, b_i] entry");
      continue;
    }
    std::uint32_t i = ent.i, j = ent.j;
    fel c = ent.c;
    bool flip = i > j;
    if (flip) std::swap(i, j);
    Vec& slot = L.upper_[L.idx(i, j)];
    if (slot.empty()) slot.assign(dim, 0);
    slot[ent.k] = K.add(slot[ent.k], flip ? K.neg(c) : c);
  }
  return L;
}

Vec LieRing::basis_vector(std::uint32_t i) const {
  Vec v(d_, 0);
  v[i] = 1;
  return v;
}

Vec LieRing::bracket(const Vec& u, const Vec& v) const {
  if (u.size() != d_ || v.size() != d_) throw StructuralError("bracket: dimension mismatch");
  Vec out(d_, 0);
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (u[i] == 0 && v[i] == 0) continue;
    for (std::uint32_t j = i + 1; j < d_; ++j) {
      // coefficient of [b_i, b_j]: u_i v_j - u_j v_i
      fel c = K_.sub(K_.mul(u[i], v[j]), K_.mul(u[j], v[i]));
      if (c == 0) continue;
      const Vec& t = upper_[idx(i, j)];
      if (t.empty()) continue;
      for (std::uint32_t k = 0; k < d_; ++k) {
        if (t[k] == 0) continue;
        out[k] = K_.add(out[k], K_.mul(c, t[k]));
      }
    }
  }
  return out;
}

Vec LieRing::bracket_word(const std::vector<Vec>& word) const {
  if (word.empty()) throw ContractError("bracket_word: empty word");
  Vec acc = word[0];
  for (std::size_t i = 1; i < word.size(); ++i) acc = bracket(acc, word[i]);
  return acc;
}

bool LieRing::operator==(const LieRing& o) const {
  if (!(K_ == o.K_) || d_ != o.d_) return false;
  for (std::uint32_t i = 0; i < d_; ++i)
    for (std::uint32_t j = i + 1; j < d_; ++j) {
      const Vec& a = upper_[idx(i, j)];
      const Vec& b = o.upper_[idx(i, j)];
      bool za = a.empty() || vec_is_zero(a);
      bool zb = b.empty() || vec_is_zero(b);
      if (za && zb) continue;
      if (za != zb || a != b) return false;
    }
  return true;
}

ValidationReport validate_lie_ring(const Fq& K, std::uint32_t dim,
                                   const std::vector<RawBracket>& entries) {
  ValidationReport rep;
  // assemble both triangles independently to check antisymmetry as stated
  std::vector<Vec> table(std::size_t(dim) * dim);
  std::vector<bool> present(std::size_t(dim) * dim, false);
  for (const auto& ent : entries) {
    if (ent.i >= dim || ent.j >= dim || ent.k >= dim)
      throw StructuralError("bracket entry index out of range");
    auto id = std::size_t(ent.i) * dim + ent.j;
    if (table[id].empty()) table[id].assign(dim, 0);
    table[id][ent.k] = K.add(table[id][ent.k], ent.c);
    present[id] = true;
  }
  auto get = [&](std::uint32_t i, std::uint32_t j) -> Vec {
    auto id = std::size_t(i) * dim + j;
    if (!table[id].empty()) return table[id];
    return Vec(dim, 0);
  };
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (present[std::size_t(i) * dim + i] && !vec_is_zero(get(i, i)))
      rep.violations.push_back({"antisymmetry", "[b_" + std::to_string(i) + ", b_" +
                                                    std::to_string(i) + "] != 0"});
  }
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = i + 1; j < dim; ++j) {
      bool pij = present[std::size_t(i) * dim + j];
      bool pji = present[std::size_t(j) * dim + i];
      if (!(pij && pji)) continue;  // one triangle given: antisymmetry is derived
      Vec a = get(i, j), b = get(j, i);
      for (std::uint32_t k = 0; k < dim; ++k) {
        if (K.add(a[k], b[k]) != 0) {
          rep.violations.push_back(
              {"antisymmetry", "c(" + std::to_string(i) + "," + std::to_string(j) + ")^" +
                                   std::to_string(k) + " != -c(" + std::to_string(j) + "," +
                                   std::to_string(i) + ")^" + std::to_string(k)});
          break;
        }
      }
    }
  }
  // canonical ring from the i<j triangle (or folded), then Jacobi
  std::vector<RawBracket> canon;
  for (const auto& ent : entries)
    if (ent.i < ent.j) canon.push_back(ent);
    else if (ent.i > ent.j && !present[std::size_t(ent.j) * dim + ent.i])
      canon.push_back(ent);
  LieRing L = LieRing::from_raw(K, dim, canon);
  ValidationReport jac = validate_lie_ring(L);
  for (auto& v : jac.violations) rep.violations.push_back(std::move(v));
  return rep;
}

ValidationReport validate_lie_ring(const LieRing& L) {
  ValidationReport rep;
  const Fq& K = L.field();
  std::uint32_t d = L.dim();
  for (std::uint32_t i = 0; i < d; ++i) {
    Vec bi = L.basis_vector(i);
    for (std::uint32_t j = i + 1; j < d; ++j) {
      Vec bj = L.basis_vector(j);
      Vec ij = L.bracket(bi, bj);
      for (std::uint32_t k = j + 1; k < d; ++k) {
        Vec bk = L.basis_vector(k);
        Vec s = L.bracket(ij, bk);
        s = vec_add(K, s, L.bracket(L.bracket(bj, bk), bi));
        s = vec_add(K, s, L.bracket(L.bracket(bk, bi), bj));
        if (!vec_is_zero(s)) {
          rep.violations.push_back({"jacobi", "triple (" + std::to_string(i) + "," +
                                                  std::to_string(j) + "," + std::to_string(k) +
                                                  ")"});
        }
      }
    }
  }
  return rep;
}

Vec bracket_eval(const LieRing& L, const BracketExpr& expr) {
  if (expr.children.empty()) {
    if (expr.leaf.size() != L.dim()) throw StructuralError("bracket_eval: leaf dimension mismatch");
    return expr.leaf;
  }
  Vec l = bracket_eval(L, expr.children[0]);
  Vec r = bracket_eval(L, expr.children[1]);
  return L.bracket(l, r);
}

LowerCentralSeries lower_central_series(const LieRing& L) {
  return subring_lower_central_series(L, full_space(L.dim()));
}

LowerCentralSeries subring_lower_central_series(const LieRing& L, const Subspace& S) {
  const Fq& K = L.field();
  LowerCentralSeries out;
  out.terms.push_back(S);
  while (true) {
    const Subspace& g = out.terms.back();
    if (g.dim() == 0) break;
    std::vector<Vec> gens;
    for (std::uint32_t a = 0; a < g.basis.nr; ++a)
      for (std::uint32_t b = 0; b < S.basis.nr; ++b)
        gens.push_back(L.bracket(g.basis.row(a), S.basis.row(b)));
    Subspace next = make_subspace(K, L.dim(), gens);
    if (next == g) {  // stabilized at a nonzero term
      out.nilpotent = false;
      out.nilpotency_class = 0;
      return out;
    }
    out.terms.push_back(next);
    if (next.dim() == 0) break;
  }
  out.nilpotent = true;
  out.nilpotency_class = static_cast<std::uint32_t>(out.terms.size()) - 1;
  return out;
}

Subspace generated_subring(const LieRing& L, const std::vector<Vec>& gens) {
  const Fq& K = L.field();
  Subspace S = make_subspace(K, L.dim(), gens);
  while (true) {
    std::vector<Vec> next;
    for (std::uint32_t a = 0; a < S.basis.nr; ++a)
      for (std::uint32_t b = a + 1; b < S.basis.nr; ++b)
        next.push_back(L.bracket(S.basis.row(a), S.basis.row(b)));
    for (std::uint32_t r = 0; r < S.basis.nr; ++r) next.push_back(S.basis.row(r));
    Subspace grown = make_subspace(K, L.dim(), next);
    if (grown == S) return S;
    S = std::move(grown);
  }
}

Subspace generated_ideal(const LieRing& L, const std::vector<Vec>& gens) {
  const Fq& K = L.field();
  Subspace S = make_subspace(K, L.dim(), gens);
  while (true) {
    std::vector<Vec> next;
    for (std::uint32_t r = 0; r < S.basis.nr; ++r) next.push_back(S.basis.row(r));
    for (std::uint32_t a = 0; a < S.basis.nr; ++a)
      for (std::uint32_t b = 0; b < L.dim(); ++b)
        next.push_back(L.bracket(S.basis.row(a), L.basis_vector(b)));
    Subspace grown = make_subspace(K, L.dim(), next);
    if (grown == S) return S;
    S = std::move(grown);
  }
}

Vec QuotientRing::project(const Fq& K, const Vec& v) const {
  Vec red = reduce_mod(K, ideal, v);
  Vec out(coords.size(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = red[coords[i]];
  return out;
}

Vec QuotientRing::lift(const Vec& v) const {
  Vec out(ideal.ambient(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) out[coords[i]] = v[i];
  return out;
}

QuotientRing generated_ideal_and_quotient(const LieRing& L, const std::vector<Vec>& gens) {
  const Fq& K = L.field();
  QuotientRing Q{generated_ideal(L, gens), LieRing(K, 0), {}};
  // quotient basis: non-pivot coordinates of the ideal's echelon basis
  std::vector<bool> is_pivot(L.dim(), false);
  for (auto c : Q.ideal.pivots) is_pivot[c] = true;
  for (std::uint32_t c = 0; c < L.dim(); ++c)
    if (!is_pivot[c]) Q.coords.push_back(c);
  std::uint32_t qd = static_cast<std::uint32_t>(Q.coords.size());
  LieRing R(K, qd);
  for (std::uint32_t i = 0; i < qd; ++i) {
    for (std::uint32_t j = i + 1; j < qd; ++j) {
      Vec br = L.bracket(L.basis_vector(Q.coords[i]), L.basis_vector(Q.coords[j]));
      R.set_bracket(i, j, Q.project(K, br));
    }
  }
  Q.ring = std::move(R);
  return Q;
}

}  // namespace froblie
