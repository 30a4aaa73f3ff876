#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "froblie/field.hpp"

namespace froblie {

using Vec = std::vector<fel>;

// Dense row-major matrix over F_{p^e}. Vectors are rows; linear maps act on
// the right, v -> v * M.
struct Mat {
  std::uint32_t nr = 0, nc = 0;
  std::vector<fel> a;

  Mat() = default;
  Mat(std::uint32_t rows, std::uint32_t cols) : nr(rows), nc(cols), a(std::size_t(rows) * cols, 0) {}

  fel& at(std::uint32_t r, std::uint32_t c) { return a[std::size_t(r) * nc + c]; }
  fel at(std::uint32_t r, std::uint32_t c) const { return a[std::size_t(r) * nc + c]; }

  Vec row(std::uint32_t r) const {
    return Vec(a.begin() + std::size_t(r) * nc, a.begin() + std::size_t(r + 1) * nc);
  }
  void set_row(std::uint32_t r, const Vec& v) {
    std::copy(v.begin(), v.end(), a.begin() + std::size_t(r) * nc);
  }

  static Mat identity(std::uint32_t d) {
    Mat m(d, d);
    for (std::uint32_t i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& o) const { return nr == o.nr && nc == o.nc && a == o.a; }
};

Mat mat_mul(const Fq& K, const Mat& A, const Mat& B);
Mat mat_add(const Fq& K, const Mat& A, const Mat& B);
Mat mat_sub(const Fq& K, const Mat& A, const Mat& B);
Mat mat_scale(const Fq& K, fel c, const Mat& A);
Mat mat_pow(const Fq& K, Mat A, std::uint64_t k);
Mat mat_transpose(const Mat& A);
Vec vec_mat(const Fq& K, const Vec& v, const Mat& M);
Vec vec_add(const Fq& K, const Vec& a, const Vec& b);
Vec vec_sub(const Fq& K, const Vec& a, const Vec& b);
Vec vec_scale(const Fq& K, fel c, const Vec& a);
bool vec_is_zero(const Vec& v);

// In-place reduced row echelon form; returns pivot column per surviving row.
std::vector<std::uint32_t> rref_inplace(const Fq& K, Mat& M);

// Additive subgroup of F_{p^e}^d in canonical form: rows form a reduced
// echelon basis with no zero rows. Two subspaces are equal iff the structs
// compare equal.
struct Subspace {
  Mat basis;                        // RREF rows
  std::vector<std::uint32_t> pivots;

  std::uint32_t dim() const { return basis.nr; }
  std::uint32_t ambient() const { return basis.nc; }
  bool operator==(const Subspace& o) const { return basis == o.basis; }
};

Subspace make_subspace(const Fq& K, std::uint32_t ambient, const std::vector<Vec>& gens);
Subspace zero_subspace(std::uint32_t ambient);
Subspace full_space(std::uint32_t ambient);

bool subspace_contains(const Fq& K, const Subspace& S, const Vec& v);
bool subspace_leq(const Fq& K, const Subspace& A, const Subspace& B);  // A <= B
Subspace subspace_sum(const Fq& K, const Subspace& A, const Subspace& B);
Subspace subspace_intersect(const Fq& K, const Subspace& A, const Subspace& B);

// Reduce v modulo S (kill pivot coordinates); the result is the canonical
// coset representative supported on non-pivot coordinates.
Vec reduce_mod(const Fq& K, const Subspace& S, Vec v);

// {x : x * M = 0}, canonical basis.
Subspace left_kernel(const Fq& K, const Mat& M);

// Row space of M.
Subspace row_space(const Fq& K, const Mat& M);

// Canonical solution x of x * M = b (free coordinates set to 0), if any.
std::optional<Vec> solve_left(const Fq& K, const Mat& M, const Vec& b);

std::optional<Mat> mat_inverse(const Fq& K, const Mat& A);

// Image of a subspace under a matrix acting on the right.
Subspace subspace_image(const Fq& K, const Subspace& S, const Mat& M);

}  // namespace froblie
