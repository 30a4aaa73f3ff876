#include "froblie/linalg.hpp"

#include <algorithm>

namespace froblie {

Mat mat_mul(const Fq& K, const Mat& A, const Mat& B) {
  if (A.nc != B.nr) throw StructuralError("mat_mul: dimension mismatch");
  Mat C(A.nr, B.nc);
  for (std::uint32_t i = 0; i < A.nr; ++i) {
    for (std::uint32_t k = 0; k < A.nc; ++k) {
      fel aik = A.at(i, k);
      if (aik == 0) continue;
      for (std::uint32_t j = 0; j < B.nc; ++j) {
        fel b = B.at(k, j);
        if (b == 0) continue;
        C.at(i, j) = K.add(C.at(i, j), K.mul(aik, b));
      }
    }
  }
  return C;
}

Mat mat_add(const Fq& K, const Mat& A, const Mat& B) {
  if (A.nr != B.nr || A.nc != B.nc) throw StructuralError("mat_add: shape mismatch");
  Mat C(A.nr, A.nc);
  for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = K.add(A.a[i], B.a[i]);
  return C;
}

Mat mat_sub(const Fq& K, const Mat& A, const Mat& B) {
  if (A.nr != B.nr || A.nc != B.nc) throw StructuralError("mat_sub: shape mismatch");
  Mat C(A.nr, A.nc);
  for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = K.sub(A.a[i], B.a[i]);
  return C;
}

Mat mat_scale(const Fq& K, fel c, const Mat& A) {
  Mat C(A.nr, A.nc);
  for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = K.mul(c, A.a[i]);
  return C;
}

Mat mat_pow(const Fq& K, Mat A, std::uint64_t k) {
  if (A.nr != A.nc) throw StructuralError("mat_pow: square matrix required");
  Mat R = Mat::identity(A.nr);
  while (k) {
    if (k & 1) R = mat_mul(K, R, A);
    A = mat_mul(K, A, A);
    k >>= 1;
  }
  return R;
}

Mat mat_transpose(const Mat& A) {
  Mat T(A.nc, A.nr);
  for (std::uint32_t i = 0; i < A.nr; ++i)
    for (std::uint32_t j = 0; j < A.nc; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

Vec vec_mat(const Fq& K, const Vec& v, const Mat& M) {
  if (v.size() != M.nr) throw StructuralError("vec_mat: dimension mismatch");
  Vec out(M.nc, 0);
  for (std::uint32_t i = 0; i < M.nr; ++i) {
    fel vi = v[i];
    if (vi == 0) continue;
    for (std::uint32_t j = 0; j < M.nc; ++j) {
      fel m = M.at(i, j);
      if (m == 0) continue;
      out[j] = K.add(out[j], K.mul(vi, m));
    }
  }
  return out;
}

Vec vec_add(const Fq& K, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = K.add(a[i], b[i]);
  return c;
}

Vec vec_sub(const Fq& K, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = K.sub(a[i], b[i]);
  return c;
}

Vec vec_scale(const Fq& K, fel c, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = K.mul(c, a[i]);
  return out;
}

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](fel x) { return x == 0; });
}

std::vector<std::uint32_t> rref_inplace(const Fq& K, Mat& M) {
  std::vector<std::uint32_t> pivots;
  std::uint32_t row = 0;
  for (std::uint32_t col = 0; col < M.nc && row < M.nr; ++col) {
    std::uint32_t sel = row;
    while (sel < M.nr && M.at(sel, col) == 0) ++sel;
    if (sel == M.nr) continue;
    if (sel != row)
      for (std::uint32_t j = 0; j < M.nc; ++j) std::swap(M.at(sel, j), M.at(row, j));
    fel inv = K.inv(M.at(row, col));
    for (std::uint32_t j = col; j < M.nc; ++j) M.at(row, j) = K.mul(inv, M.at(row, j));
    for (std::uint32_t i = 0; i < M.nr; ++i) {
      if (i == row) continue;
      fel f = M.at(i, col);
      if (f == 0) continue;
      for (std::uint32_t j = col; j < M.nc; ++j)
        M.at(i, j) = K.sub(M.at(i, j), K.mul(f, M.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  // drop zero rows
  Mat R(row, M.nc);
  std::copy(M.a.begin(), M.a.begin() + std::size_t(row) * M.nc, R.a.begin());
  M = std::move(R);
  return pivots;
}

Subspace make_subspace(const Fq& K, std::uint32_t ambient, const std::vector<Vec>& gens) {
  Mat M(static_cast<std::uint32_t>(gens.size()), ambient);
  for (std::uint32_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != ambient) throw StructuralError("make_subspace: bad vector length");
    M.set_row(i, gens[i]);
  }
  Subspace S;
  S.pivots = rref_inplace(K, M);
  S.basis = std::move(M);
  return S;
}

Subspace zero_subspace(std::uint32_t ambient) {
  Subspace S;
  S.basis = Mat(0, ambient);
  return S;
}

Subspace full_space(std::uint32_t ambient) {
  Subspace S;
  S.basis = Mat::identity(ambient);
  S.pivots.resize(ambient);
  for (std::uint32_t i = 0; i < ambient; ++i) S.pivots[i] = i;
  return S;
}

Vec reduce_mod(const Fq& K, const Subspace& S, Vec v) {
  for (std::uint32_t r = 0; r < S.basis.nr; ++r) {
    fel c = v[S.pivots[r]];
    if (c == 0) continue;
    for (std::uint32_t j = 0; j < S.basis.nc; ++j)
      v[j] = K.sub(v[j], K.mul(c, S.basis.at(r, j)));
  }
  return v;
}

bool subspace_contains(const Fq& K, const Subspace& S, const Vec& v) {
  if (v.size() != S.ambient()) throw StructuralError("subspace_contains: bad vector length");
  return vec_is_zero(reduce_mod(K, S, v));
}

bool subspace_leq(const Fq& K, const Subspace& A, const Subspace& B) {
  for (std::uint32_t r = 0; r < A.basis.nr; ++r)
    if (!subspace_contains(K, B, A.basis.row(r))) return false;
  return true;
}

Subspace subspace_sum(const Fq& K, const Subspace& A, const Subspace& B) {
  std::vector<Vec> gens;
  gens.reserve(A.dim() + B.dim());
  for (std::uint32_t r = 0; r < A.basis.nr; ++r) gens.push_back(A.basis.row(r));
  for (std::uint32_t r = 0; r < B.basis.nr; ++r) gens.push_back(B.basis.row(r));
  return make_subspace(K, A.ambient(), gens);
}

Subspace left_kernel(const Fq& K, const Mat& M) {
  // x * M = 0  <=>  M^T x^T = 0; free-column construction on RREF(M^T)
  Mat T = mat_transpose(M);
  std::vector<std::uint32_t> piv = rref_inplace(K, T);
  std::vector<bool> is_pivot(M.nr, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::uint32_t free = 0; free < M.nr; ++free) {
    if (is_pivot[free]) continue;
    Vec x(M.nr, 0);
    x[free] = 1;
    for (std::uint32_t r = 0; r < T.nr; ++r) {
      // pivot variable piv[r] = -T[r][free] * x[free]
      x[piv[r]] = K.neg(T.at(r, free));
    }
    basis.push_back(std::move(x));
  }
  return make_subspace(K, M.nr, basis);
}

Subspace row_space(const Fq& K, const Mat& M) {
  Mat C = M;
  Subspace S;
  S.pivots = rref_inplace(K, C);
  S.basis = std::move(C);
  return S;
}

Subspace subspace_intersect(const Fq& K, const Subspace& A, const Subspace& B) {
  // x in A∩B: x = u * A.basis = v * B.basis; kernel of [A.basis; -B.basis]^T trick:
  // find (u,v) with u*A - v*B = 0 via left kernel of stacked matrix.
  std::uint32_t da = A.dim(), db = B.dim();
  if (da == 0 || db == 0) return zero_subspace(A.ambient());
  Mat S(da + db, A.ambient());
  for (std::uint32_t r = 0; r < da; ++r) S.set_row(r, A.basis.row(r));
  for (std::uint32_t r = 0; r < db; ++r) {
    Vec v = B.basis.row(r);
    for (auto& x : v) x = K.neg(x);
    S.set_row(da + r, v);
  }
  Subspace ker = left_kernel(K, S);
  std::vector<Vec> gens;
  for (std::uint32_t r = 0; r < ker.basis.nr; ++r) {
    Vec uv = ker.basis.row(r);
    Vec x(A.ambient(), 0);
    for (std::uint32_t i = 0; i < da; ++i) {
      if (uv[i] == 0) continue;
      for (std::uint32_t j = 0; j < A.ambient(); ++j)
        x[j] = K.add(x[j], K.mul(uv[i], A.basis.at(i, j)));
    }
    gens.push_back(std::move(x));
  }
  return make_subspace(K, A.ambient(), gens);
}

std::optional<Vec> solve_left(const Fq& K, const Mat& M, const Vec& b) {
  if (b.size() != M.nc) throw StructuralError("solve_left: rhs length mismatch");
  // augmented system on M^T: [M^T | b^T]
  Mat Aug(M.nc, M.nr + 1);
  for (std::uint32_t i = 0; i < M.nr; ++i)
    for (std::uint32_t j = 0; j < M.nc; ++j) Aug.at(j, i) = M.at(i, j);
  for (std::uint32_t j = 0; j < M.nc; ++j) Aug.at(j, M.nr) = b[j];
  std::vector<std::uint32_t> piv = rref_inplace(K, Aug);
  Vec x(M.nr, 0);
  for (std::uint32_t r = 0; r < Aug.nr; ++r) {
    if (piv[r] == M.nr) return std::nullopt;  // inconsistent
    // canonical solution: free variables stay 0, but pivot rows may still
    // reference free columns — the RREF solution with zero free vars reads
    // x[piv] = rhs entry.
    x[piv[r]] = Aug.at(r, M.nr);
  }
  // verify (free columns with nonzero coefficients do not disturb correctness
  // because their variables are zero)
  Vec check = vec_mat(K, x, M);
  if (check != b) return std::nullopt;
  return x;
}

std::optional<Mat> mat_inverse(const Fq& K, const Mat& A) {
  if (A.nr != A.nc) throw StructuralError("mat_inverse: square matrix required");
  std::uint32_t d = A.nr;
  Mat Aug(d, 2 * d);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) Aug.at(i, j) = A.at(i, j);
    Aug.at(i, d + i) = 1;
  }
  std::vector<std::uint32_t> piv = rref_inplace(K, Aug);
  if (Aug.nr != d) return std::nullopt;
  for (std::uint32_t i = 0; i < d; ++i)
    if (piv[i] != i) return std::nullopt;
  Mat Inv(d, d);
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = 0; j < d; ++j) Inv.at(i, j) = Aug.at(i, d + j);
  return Inv;
}

Subspace subspace_image(const Fq& K, const Subspace& S, const Mat& M) {
  std::vector<Vec> gens;
  gens.reserve(S.dim());
  for (std::uint32_t r = 0; r < S.basis.nr; ++r) gens.push_back(vec_mat(K, S.basis.row(r), M));
  return make_subspace(K, M.nc, gens);
}

}  // namespace froblie
