#pragma once

#include <froblie/free_engine.hpp>
#include <froblie/instance.hpp>

// Shared fixtures and independent oracles for the test suites.

namespace froblie::testing {

// The worked instance: Heisenberg ring over F_7 with phi = diag(2,4,1) and
// h swapping x,y and negating z, shape (3,2,2). Built by hand so that tests
// do not depend on the instance generator.
inline LieInstance heisenberg_f7() {
  LieInstance inst;
  inst.field = Fq::prime_field(7, 3);  // omega = 2
  inst.shape = FrobeniusShape{3, 2, 2};
  LieRing ring(inst.field, 3);
  Vec z(3, 0);
  z[2] = 1;
  ring.set_bracket(0, 1, z);
  inst.ring = std::move(ring);
  inst.phi = Mat(3, 3);
  inst.phi.at(0, 0) = 2;
  inst.phi.at(1, 1) = 4;
  inst.phi.at(2, 2) = 1;
  inst.h = Mat(3, 3);
  inst.h.at(0, 1) = 1;
  inst.h.at(1, 0) = 1;
  inst.h.at(2, 2) = 6;  // -1 mod 7
  inst.basis_names = {"x", "y", "z"};
  return inst;
}

// sl2-style table over F_7: [e,f]=h, [h,e]=2e, [h,f]=-2f (not nilpotent).
inline LieRing sl2_f7() {
  Fq K = Fq::prime_field(7, 1);
  LieRing L(K, 3);  // basis e, f, h
  Vec v(3, 0);
  v[2] = 1;
  L.set_bracket(0, 1, v);  // [e,f] = h
  Vec ve(3, 0);
  ve[0] = 5;  // [e,h] = -2e
  L.set_bracket(0, 2, ve);
  Vec vf(3, 0);
  vf[1] = 2;  // [f,h] = 2f
  L.set_bracket(1, 2, vf);
  return L;
}

// Independent oracle: dimension of the weight-w component of the free Lie
// ring on g generators computed inside the tensor algebra. Left-normed
// brackets span every component over any coefficient ring, so the span of
// { [b, e_j] : b basis of the previous component } is the whole component.
inline std::uint64_t free_lie_dim_bruteforce(const Fq& K, std::uint32_t g, std::uint32_t w) {
  // tensors of weight k live in F^{g^k}
  std::vector<Vec> basis;  // current component basis, weight k
  std::uint64_t dim_k = g;
  basis.reserve(g);
  for (std::uint32_t i = 0; i < g; ++i) {
    Vec v(g, 0);
    v[i] = 1;
    basis.push_back(std::move(v));
  }
  for (std::uint32_t k = 2; k <= w; ++k) {
    std::uint64_t dim_next = dim_k * g;
    std::vector<Vec> gens;
    for (const Vec& b : basis) {
      for (std::uint32_t j = 0; j < g; ++j) {
        // [b, e_j] = b (x) e_j - e_j (x) b
        Vec t(dim_next, 0);
        for (std::uint64_t a = 0; a < dim_k; ++a) {
          if (b[a] == 0) continue;
          t[a * g + j] = K.add(t[a * g + j], b[a]);
          t[std::uint64_t(j) * dim_k + a] = K.sub(t[std::uint64_t(j) * dim_k + a], b[a]);
        }
        gens.push_back(std::move(t));
      }
    }
    Subspace span = make_subspace(K, static_cast<std::uint32_t>(dim_next), gens);
    basis.clear();
    for (std::uint32_t r = 0; r < span.basis.nr; ++r) basis.push_back(span.basis.row(r));
    dim_k = dim_next;
  }
  return basis.size();
}

inline Vec unit_vec(std::uint32_t dim, std::uint32_t i, fel c = 1) {
  Vec v(dim, 0);
  v[i] = c;
  return v;
}

}  // namespace froblie::testing
