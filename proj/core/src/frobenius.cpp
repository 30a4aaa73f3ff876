#include "froblie/frobenius.hpp"

#include <numeric>

namespace froblie {

ShapeDiagnosis validate_frobenius_shape(std::uint64_t n, std::uint64_t q, std::uint64_t r) {
  if (n < 2) return {false, "n must be at least 2"};
  if (q < 2) return {false, "q must be at least 2"};
  if (r < 1 || r >= n) return {false, "r must lie in [1, n-1]"};
  if (mod_pow_u64(r, q, n) != 1 % n) return {false, "r^q != 1 (mod n)"};
  // exact order q
  for (std::uint64_t j = 1; j < q; ++j) {
    if (mod_pow_u64(r, j, n) == 1)
      return {false, "multiplicative order of r mod n is " + std::to_string(j) +
                         ", not q = " + std::to_string(q)};
  }
  for (std::uint64_t j = 1; j < q; ++j) {
    std::uint64_t rj = mod_pow_u64(r, j, n);
    std::uint64_t g = std::gcd(rj + n - 1, n);
    if (g != 1)
      return {false, "gcd(r^" + std::to_string(j) + " - 1, n) = " + std::to_string(g) +
                         " != 1 (H does not act fixed-point-freely on F)"};
  }
  return {true, ""};
}

namespace {

bool is_automorphism_matrix(const LieRing& L, const Mat& g) {
  const Fq& K = L.field();
  for (std::uint32_t i = 0; i < L.dim(); ++i) {
    Vec gi = vec_mat(K, L.basis_vector(i), g);
    for (std::uint32_t j = i + 1; j < L.dim(); ++j) {
      Vec gj = vec_mat(K, L.basis_vector(j), g);
      Vec lhs = vec_mat(K, L.bracket(L.basis_vector(i), L.basis_vector(j)), g);
      Vec rhs = L.bracket(gi, gj);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

std::uint64_t matrix_order(const Fq& K, const Mat& g, std::uint64_t bound) {
  Mat acc = g;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (acc == Mat::identity(g.nr)) return k;
    acc = mat_mul(K, acc, g);
  }
  return 0;  // exceeds bound
}

}  // namespace

ValidationReport validate_action(const FrobeniusAction& A) {
  ValidationReport rep;
  const LieRing& L = *A.ring;
  const Fq& K = L.field();
  std::uint32_t d = L.dim();
  if (A.phi.nr != d || A.phi.nc != d || A.h.nr != d || A.h.nc != d)
    throw StructuralError("action matrices must be dim x dim");
  ShapeDiagnosis sd = validate_frobenius_shape(A.shape.n, A.shape.q, A.shape.r);
  if (!sd.valid) {
    rep.violations.push_back({"shape", sd.first_violation});
    return rep;
  }
  if ((A.shape.n * A.shape.q) % K.p() == 0)
    rep.violations.push_back({"coprimality", "p = " + std::to_string(K.p()) +
                                                 " divides n*q"});
  if (K.n_root() % A.shape.n != 0)
    rep.violations.push_back(
        {"omega", "field omega has order " + std::to_string(K.n_root()) +
                      ", not a multiple of n"});
  if (!mat_inverse(K, A.phi)) rep.violations.push_back({"invertibility", "phi is singular"});
  if (!mat_inverse(K, A.h)) rep.violations.push_back({"invertibility", "h is singular"});
  std::uint64_t ord_phi = matrix_order(K, A.phi, A.shape.n);
  if (ord_phi != A.shape.n)
    rep.violations.push_back({"order", "phi has order " +
                                           (ord_phi ? std::to_string(ord_phi) : std::string(">" + std::to_string(A.shape.n))) +
                                           " != n = " + std::to_string(A.shape.n)});
  std::uint64_t ord_h = matrix_order(K, A.h, A.shape.q);
  if (ord_h != A.shape.q)
    rep.violations.push_back({"order", "h has order " +
                                           (ord_h ? std::to_string(ord_h) : std::string(">" + std::to_string(A.shape.q))) +
                                           " != q = " + std::to_string(A.shape.q)});
  // h^{-1} phi h = phi^r
  auto hinv = mat_inverse(K, A.h);
  if (hinv) {
    Mat lhs = mat_mul(K, mat_mul(K, *hinv, A.phi), A.h);
    Mat rhs = mat_pow(K, A.phi, A.shape.r);
    if (!(lhs == rhs))
      rep.violations.push_back({"relation", "h^{-1} phi h != phi^r"});
  }
  if (!is_automorphism_matrix(L, A.phi))
    rep.violations.push_back({"automorphism", "phi is not a Lie automorphism"});
  if (!is_automorphism_matrix(L, A.h))
    rep.violations.push_back({"automorphism", "h is not a Lie automorphism"});
  return rep;
}

GradedDecomposition eigen_decompose(const FrobeniusAction& A) {
  const LieRing& L = *A.ring;
  const Fq& K = L.field();
  std::uint32_t d = L.dim();
  std::uint64_t n = A.shape.n;
  fel omega = K.pow(K.omega(), K.n_root() / n);  // exact order n
  fel inv_n = K.inv(K.from_int(static_cast<std::int64_t>(n % K.p())));

  GradedDecomposition D;
  D.projections.reserve(n);
  // powers of phi
  std::vector<Mat> phi_pow;
  phi_pow.push_back(Mat::identity(d));
  for (std::uint64_t s = 1; s < n; ++s) phi_pow.push_back(mat_mul(K, phi_pow.back(), A.phi));
  for (std::uint64_t k = 0; k < n; ++k) {
    Mat pi(d, d);
    for (std::uint64_t s = 0; s < n; ++s) {
      fel w = K.pow(omega, (n - (k % n)) * s % n);  // omega^{-ks}
      pi = mat_add(K, pi, mat_scale(K, w, phi_pow[s]));
    }
    pi = mat_scale(K, inv_n, pi);
    D.projections.push_back(pi);
  }
  for (std::uint64_t k = 0; k < n; ++k) D.components.push_back(row_space(K, D.projections[k]));
  return D;
}

FixedSubring fixed_subring(const FrobeniusAction& A, FixedBy which) {
  const LieRing& L = *A.ring;
  const Fq& K = L.field();
  std::uint32_t d = L.dim();
  auto fixed_of = [&](const Mat& g) {
    Mat m = mat_sub(K, g, Mat::identity(d));
    return left_kernel(K, m);
  };
  Subspace S = full_space(d);
  if (which == FixedBy::F || which == FixedBy::FH) S = subspace_intersect(K, S, fixed_of(A.phi));
  if (which == FixedBy::H || which == FixedBy::FH) S = subspace_intersect(K, S, fixed_of(A.h));

  FixedSubring out;
  out.space = S;
  out.bracket_closed = true;
  for (std::uint32_t a = 0; a < S.basis.nr && out.bracket_closed; ++a)
    for (std::uint32_t b = a + 1; b < S.basis.nr; ++b)
      if (!subspace_contains(K, S, L.bracket(S.basis.row(a), S.basis.row(b)))) {
        out.bracket_closed = false;
        break;
      }
  LowerCentralSeries lcs = subring_lower_central_series(L, S);
  out.nilpotent = lcs.nilpotent;
  out.nilpotency_class = lcs.nilpotent ? lcs.nilpotency_class : 0;
  return out;
}

ValidationReport check_grading_laws(const GradedDecomposition& D, const FrobeniusAction& A) {
  ValidationReport rep;
  const LieRing& L = *A.ring;
  const Fq& K = L.field();
  std::uint64_t n = A.shape.n;
  for (std::uint64_t s = 0; s < n; ++s) {
    const Subspace& Ls = D.components[s];
    for (std::uint64_t t = 0; t < n; ++t) {
      const Subspace& Lt = D.components[t];
      const Subspace& target = D.components[(s + t) % n];
      for (std::uint32_t a = 0; a < Ls.basis.nr; ++a)
        for (std::uint32_t b = 0; b < Lt.basis.nr; ++b) {
          Vec br = L.bracket(Ls.basis.row(a), Lt.basis.row(b));
          if (!subspace_contains(K, target, br)) {
            rep.violations.push_back({"grading", "[L_" + std::to_string(s) + ", L_" +
                                                     std::to_string(t) + "] not inside L_" +
                                                     std::to_string((s + t) % n)});
            goto next_pair;
          }
        }
    next_pair:;
    }
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    Subspace img = subspace_image(K, D.components[i], A.h);
    if (!(img == D.components[(i * A.shape.r) % n]))
      rep.violations.push_back({"h-permutation", "L_" + std::to_string(i) +
                                                     " * h != L_" +
                                                     std::to_string((i * A.shape.r) % n)});
  }
  return rep;
}

std::optional<std::uint32_t> homogeneous_index(const Fq& K, const GradedDecomposition& D,
                                               const Vec& v) {
  if (vec_is_zero(v)) return 0;
  for (std::uint32_t k = 0; k < D.components.size(); ++k)
    if (subspace_contains(K, D.components[k], v)) return k;
  return std::nullopt;
}

}  // namespace froblie
