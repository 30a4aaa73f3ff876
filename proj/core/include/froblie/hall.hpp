#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "froblie/frobenius.hpp"
#include "froblie/linalg.hpp"

namespace froblie {

// Free generators organized in H-orbits. Orbit s carries q formal generators
// y_{i_s}, y_{r i_s}, ..., y_{r^{q-1} i_s}; all symbols are distinct even when
// their indices mod n coincide.
struct IndexedGeneratorSet {
  FrobeniusShape shape;
  std::vector<std::uint32_t> orbit_base_indices;  // each in [1, n-1]

  std::uint32_t num_orbits() const { return static_cast<std::uint32_t>(orbit_base_indices.size()); }
  std::uint32_t num_generators() const { return num_orbits() * static_cast<std::uint32_t>(shape.q); }
  // generator id = orbit * q + k, where k is the power of r applied to the base index
  std::uint32_t orbit_of(std::uint32_t gen) const { return gen / static_cast<std::uint32_t>(shape.q); }
  std::uint32_t slot_of(std::uint32_t gen) const { return gen % static_cast<std::uint32_t>(shape.q); }
  std::uint32_t index_of(std::uint32_t gen) const;
  std::uint32_t h_image(std::uint32_t gen) const;  // cyclic shift within the orbit
  std::string name_of(std::uint32_t gen) const;    // e.g. "y1" with a prime per reuse
};

IndexedGeneratorSet make_generator_set(const FrobeniusShape& shape,
                                       const std::vector<std::uint32_t>& orbit_base_indices);

struct TruncationCaps {
  std::uint32_t max_generators = 6;
  std::uint32_t max_weight = 12;
  std::uint64_t max_total_dim = 200000;
};

// Integer linear combination of Hall basis elements, sorted by id.
using SparseZ = std::vector<std::pair<std::uint32_t, std::int64_t>>;

// Node of a Hall tree. Leaves have left == -1 and carry a generator id.
struct HallElt {
  std::int32_t left = -1, right = -1;
  std::uint32_t weight = 1;
  std::uint32_t gen = 0;
  std::uint32_t index_sum = 0;               // mod n
  std::vector<std::uint16_t> multidegree;    // per-generator leaf counts
};

// Hall basis of the free Lie ring on an indexed generator set, truncated at
// weight W. The basis order is weight first, then creation order (left factor
// ascending, right factor ascending), which makes normal forms canonical.
// Products are computed by the classical Hall rewriting
//   [[x,y],b] = [[x,b],y] + [x,[y,b]]   (when y > b)
// with integer coefficients, memoized, so one truncation serves any field.
class FreeLieTruncation {
 public:
  FreeLieTruncation(IndexedGeneratorSet gens, std::uint32_t W, TruncationCaps caps = {});

  const IndexedGeneratorSet& gens() const { return gens_; }
  std::uint32_t max_weight() const { return W_; }

  std::uint32_t total_dim() const { return static_cast<std::uint32_t>(elems_.size()); }
  std::uint32_t weight_dim(std::uint32_t w) const { return off_[w + 1] - off_[w]; }
  std::uint32_t weight_offset(std::uint32_t w) const { return off_[w]; }
  const HallElt& elt(std::uint32_t id) const { return elems_[id]; }
  std::uint32_t weight_of(std::uint32_t id) const { return elems_[id].weight; }
  std::uint32_t index_of(std::uint32_t id) const { return elems_[id].index_sum; }

  // Normal form of [a, b] as an integer combination of basis elements;
  // products of weight > W truncate to 0.
  const SparseZ& nf_product(std::uint32_t a, std::uint32_t b) const;

  // Bracket of per-weight coordinate vectors (local indexing inside each
  // weight component); result lives in weight wa+wb, zero if beyond W.
  Vec bracket_local(const Fq& K, std::uint32_t wa, const Vec& va, std::uint32_t wb,
                    const Vec& vb) const;

  // Left-normed evaluation of a generator word; returns local coordinates in
  // the weight-|word| component.
  Vec eval_word_local(const Fq& K, const std::vector<std::uint32_t>& word) const;

  // h acts by the orbit shift on leaves; image of a basis element re-expressed
  // in the Hall basis (integer coefficients, memoized).
  const SparseZ& h_image(std::uint32_t id) const;

  // Matrix of h on the weight-w component over a field.
  Mat h_matrix(const Fq& K, std::uint32_t w) const;

  // phi is diagonal: basis element of index i scales by omega_n^i.
  Vec phi_diagonal(const Fq& K, std::uint32_t w) const;

  std::string render(std::uint32_t id) const;  // bracket string for messages

  std::uint32_t local_of(std::uint32_t id) const { return id - off_[elems_[id].weight]; }
  std::uint32_t global_of(std::uint32_t w, std::uint32_t local) const { return off_[w] + local; }

 private:
  IndexedGeneratorSet gens_;
  std::uint32_t W_;
  std::vector<HallElt> elems_;
  std::vector<std::uint32_t> off_;  // off_[w] = first id of weight w; size W+2
  std::unordered_map<std::uint64_t, std::uint32_t> pair_id_;
  mutable std::unordered_map<std::uint64_t, SparseZ> nf_cache_;
  mutable std::unordered_map<std::uint32_t, SparseZ> h_cache_;

  SparseZ nf_compute(std::uint32_t a, std::uint32_t b) const;
};

// Necklace count: dimension of the weight-w component of a free Lie ring on
// g generators, (1/w) sum_{d | w} mu(d) g^{w/d}.
std::uint64_t witt_dimension(std::uint64_t g, std::uint32_t w);

}  // namespace froblie
