#include "froblie/hall.hpp"

#include <algorithm>

namespace froblie {

namespace {

std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
  return (std::uint64_t(a) << 32) | b;
}

SparseZ sparse_neg(SparseZ s) {
  for (auto& [id, c] : s) c = -c;
  return s;
}

void sparse_accum(SparseZ& acc, const SparseZ& add, std::int64_t scale) {
  if (scale == 0 || add.empty()) return;
  SparseZ merged;
  merged.reserve(acc.size() + add.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < add.size()) {
    if (j == add.size() || (i < acc.size() && acc[i].first < add[j].first)) {
      merged.push_back(acc[i++]);
    } else if (i == acc.size() || add[j].first < acc[i].first) {
      merged.emplace_back(add[j].first, add[j].second * scale);
      ++j;
    } else {
      std::int64_t c = acc[i].second + add[j].second * scale;
      if (c != 0) merged.emplace_back(acc[i].first, c);
      ++i;
      ++j;
    }
  }
  acc = std::move(merged);
}

std::vector<std::uint32_t> mobius_divisors(std::uint32_t w, std::vector<std::int32_t>& mu) {
  std::vector<std::uint32_t> divs;
  mu.clear();
  for (std::uint32_t d = 1; d <= w; ++d) {
    if (w % d != 0) continue;
    // mu(d)
    std::uint32_t m = d;
    std::int32_t val = 1;
    for (std::uint32_t p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) {
          val = 0;
          break;
        }
        val = -val;
      }
    }
    if (val != 0 && m > 1) val = -val;
    divs.push_back(d);
    mu.push_back(val);
  }
  return divs;
}

}  // namespace

std::uint64_t witt_dimension(std::uint64_t g, std::uint32_t w) {
  if (w == 0) return 0;
  std::vector<std::int32_t> mu;
  std::vector<std::uint32_t> divs = mobius_divisors(w, mu);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (mu[i] == 0) continue;
    std::uint64_t pw = 1;
    for (std::uint32_t k = 0; k < w / divs[i]; ++k) pw *= g;
    sum += mu[i] * static_cast<std::int64_t>(pw);
  }
  return static_cast<std::uint64_t>(sum / w);
}

std::uint32_t IndexedGeneratorSet::index_of(std::uint32_t gen) const {
  std::uint32_t s = orbit_of(gen), k = slot_of(gen);
  std::uint64_t idx = orbit_base_indices[s] % shape.n;
  for (std::uint32_t t = 0; t < k; ++t) idx = (idx * shape.r) % shape.n;
  return static_cast<std::uint32_t>(idx);
}

std::uint32_t IndexedGeneratorSet::h_image(std::uint32_t gen) const {
  std::uint32_t s = orbit_of(gen), k = slot_of(gen);
  return s * static_cast<std::uint32_t>(shape.q) + (k + 1) % static_cast<std::uint32_t>(shape.q);
}

std::string IndexedGeneratorSet::name_of(std::uint32_t gen) const {
  std::string s = "y" + std::to_string(index_of(gen));
  std::uint32_t orbit = orbit_of(gen);
  for (std::uint32_t t = 0; t < orbit; ++t) s += "'";
  return s;
}

IndexedGeneratorSet make_generator_set(const FrobeniusShape& shape,
                                       const std::vector<std::uint32_t>& orbit_base_indices) {
  ShapeDiagnosis d = validate_frobenius_shape(shape.n, shape.q, shape.r);
  if (!d.valid) throw StructuralError("invalid Frobenius shape: " + d.first_violation);
  if (orbit_base_indices.empty()) throw StructuralError("generator set needs at least one orbit");
  for (auto i : orbit_base_indices)
    if (i == 0 || i >= shape.n)
      throw StructuralError("orbit base index must be a nonzero residue mod n");
  return IndexedGeneratorSet{shape, orbit_base_indices};
}

FreeLieTruncation::FreeLieTruncation(IndexedGeneratorSet gens, std::uint32_t W,
                                     TruncationCaps caps)
    : gens_(std::move(gens)), W_(W) {
  if (W < 1) throw StructuralError("truncation weight must be >= 1");
  std::uint32_t g = gens_.num_generators();
  if (g > caps.max_generators)
    throw ResourceError("generator count exceeds cap", g, caps.max_generators);
  if (W > caps.max_weight) throw ResourceError("truncation weight exceeds cap", W, caps.max_weight);
  std::uint64_t predicted = 0;
  for (std::uint32_t w = 1; w <= W; ++w) predicted += witt_dimension(g, w);
  if (predicted > caps.max_total_dim)
    throw ResourceError("Hall basis dimension exceeds cap", predicted, caps.max_total_dim);

  off_.assign(W + 2, 0);
  off_[1] = 0;
  for (std::uint32_t i = 0; i < g; ++i) {
    HallElt e;
    e.gen = i;
    e.weight = 1;
    e.index_sum = gens_.index_of(i);
    e.multidegree.assign(g, 0);
    e.multidegree[i] = 1;
    elems_.push_back(std::move(e));
  }
  off_[2] = g;
  for (std::uint32_t w = 2; w <= W; ++w) {
    // left factor ascending, right factor ascending
    for (std::uint32_t u = 0; u < off_[w]; ++u) {
      std::uint32_t wu = elems_[u].weight;
      if (wu >= w) break;
      std::uint32_t wv = w - wu;
      for (std::uint32_t v = off_[wv]; v < off_[wv + 1] && v < u; ++v) {
        if (elems_[u].left >= 0 && static_cast<std::uint32_t>(elems_[u].right) > v) continue;
        HallElt e;
        e.left = static_cast<std::int32_t>(u);
        e.right = static_cast<std::int32_t>(v);
        e.weight = w;
        e.index_sum =
            static_cast<std::uint32_t>((elems_[u].index_sum + elems_[v].index_sum) % gens_.shape.n);
        e.multidegree = elems_[u].multidegree;
        for (std::uint32_t i = 0; i < g; ++i) e.multidegree[i] += elems_[v].multidegree[i];
        pair_id_[pack(u, v)] = static_cast<std::uint32_t>(elems_.size());
        elems_.push_back(std::move(e));
      }
    }
    off_[w + 1] = static_cast<std::uint32_t>(elems_.size());
  }
}

const SparseZ& FreeLieTruncation::nf_product(std::uint32_t a, std::uint32_t b) const {
  static const SparseZ kZero;
  if (a == b) return kZero;
  if (elems_[a].weight + elems_[b].weight > W_) return kZero;
  std::uint64_t key = pack(a, b);
  auto it = nf_cache_.find(key);
  if (it != nf_cache_.end()) return it->second;
  SparseZ r = a > b ? nf_compute(a, b) : sparse_neg(nf_compute(b, a));
  return nf_cache_.emplace(key, std::move(r)).first->second;
}

SparseZ FreeLieTruncation::nf_compute(std::uint32_t a, std::uint32_t b) const {
  // a > b and weight fits
  const HallElt& ea = elems_[a];
  if (ea.left < 0 || static_cast<std::uint32_t>(ea.right) <= b) {
    auto it = pair_id_.find(pack(a, b));
    if (it == pair_id_.end()) throw Error("internal: missing Hall pair");
    return {{it->second, 1}};
  }
  // [[x,y],b] = [[x,b],y] + [x,[y,b]] with y > b
  std::uint32_t x = static_cast<std::uint32_t>(ea.left);
  std::uint32_t y = static_cast<std::uint32_t>(ea.right);
  SparseZ out;
  const SparseZ& xb = nf_product(x, b);
  for (const auto& [e, c] : xb) sparse_accum(out, nf_product(e, y), c);
  const SparseZ& yb = nf_product(y, b);
  for (const auto& [e, c] : yb) sparse_accum(out, nf_product(x, e), c);
  return out;
}

Vec FreeLieTruncation::bracket_local(const Fq& K, std::uint32_t wa, const Vec& va,
                                     std::uint32_t wb, const Vec& vb) const {
  std::uint32_t w = wa + wb;
  if (w > W_) return Vec();
  Vec out(weight_dim(w), 0);
  for (std::uint32_t i = 0; i < va.size(); ++i) {
    if (va[i] == 0) continue;
    std::uint32_t gi = global_of(wa, i);
    for (std::uint32_t j = 0; j < vb.size(); ++j) {
      if (vb[j] == 0) continue;
      fel c = K.mul(va[i], vb[j]);
      const SparseZ& prod = nf_product(gi, global_of(wb, j));
      for (const auto& [id, z] : prod) {
        fel zc = z >= 0 ? K.from_int(z) : K.neg(K.from_int(-z));
        out[local_of(id)] = K.add(out[local_of(id)], K.mul(c, zc));
      }
    }
  }
  return out;
}

Vec FreeLieTruncation::eval_word_local(const Fq& K, const std::vector<std::uint32_t>& word) const {
  if (word.empty()) throw ContractError("eval_word_local: empty word");
  if (word.size() > W_)
    throw ContractError("word weight exceeds the truncation weight");
  Vec acc(weight_dim(1), 0);
  if (word[0] >= gens_.num_generators()) throw StructuralError("bad generator id");
  acc[word[0]] = 1;
  std::uint32_t w = 1;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i] >= gens_.num_generators()) throw StructuralError("bad generator id");
    Vec leaf(weight_dim(1), 0);
    leaf[word[i]] = 1;
    acc = bracket_local(K, w, acc, 1, leaf);
    w += 1;
  }
  return acc;
}

const SparseZ& FreeLieTruncation::h_image(std::uint32_t id) const {
  auto it = h_cache_.find(id);
  if (it != h_cache_.end()) return it->second;
  const HallElt& e = elems_[id];
  SparseZ r;
  if (e.left < 0) {
    r = {{gens_.h_image(e.gen), 1}};
  } else {
    const SparseZ& li = h_image(static_cast<std::uint32_t>(e.left));
    const SparseZ& ri = h_image(static_cast<std::uint32_t>(e.right));
    for (const auto& [a, ca] : li)
      for (const auto& [b, cb] : ri) sparse_accum(r, nf_product(a, b), ca * cb);
  }
  return h_cache_.emplace(id, std::move(r)).first->second;
}

Mat FreeLieTruncation::h_matrix(const Fq& K, std::uint32_t w) const {
  std::uint32_t d = weight_dim(w);
  Mat M(d, d);
  for (std::uint32_t i = 0; i < d; ++i) {
    const SparseZ& img = h_image(global_of(w, i));
    for (const auto& [id, z] : img) {
      fel zc = z >= 0 ? K.from_int(z) : K.neg(K.from_int(-z));
      M.at(i, local_of(id)) = K.add(M.at(i, local_of(id)), zc);
    }
  }
  return M;
}

Vec FreeLieTruncation::phi_diagonal(const Fq& K, std::uint32_t w) const {
  std::uint32_t d = weight_dim(w);
  fel omega = K.pow(K.omega(), K.n_root() / gens_.shape.n);
  Vec diag(d);
  for (std::uint32_t i = 0; i < d; ++i)
    diag[i] = K.pow(omega, elems_[global_of(w, i)].index_sum);
  return diag;
}

std::string FreeLieTruncation::render(std::uint32_t id) const {
  const HallElt& e = elems_[id];
  if (e.left < 0) return gens_.name_of(e.gen);
  return "[" + render(static_cast<std::uint32_t>(e.left)) + "," +
         render(static_cast<std::uint32_t>(e.right)) + "]";
}

}  // namespace froblie
