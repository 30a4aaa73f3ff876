#include "froblie/free_engine.hpp"

#include <algorithm>
#include <functional>

namespace froblie {

namespace {

// group coordinates of a weight component by index_sum; used for F-closure
std::vector<Vec> phi_projections(const FreeLieTruncation& tr, std::uint32_t w, const Vec& v) {
  std::vector<Vec> parts(tr.gens().shape.n);
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    std::uint32_t k = tr.index_of(tr.global_of(w, i));
    if (parts[k].empty()) parts[k].assign(v.size(), 0);
    parts[k][i] = v[i];
  }
  std::vector<Vec> out;
  for (auto& p : parts)
    if (!p.empty()) out.push_back(std::move(p));
  return out;
}

// degreewise ideal closure of homogeneous seeds
std::vector<Subspace> ideal_closure(const FreeLieTruncation& tr, const Fq& K,
                                    const std::vector<std::vector<Vec>>& seeds) {
  std::uint32_t W = tr.max_weight();
  std::vector<Subspace> out(W + 1, zero_subspace(0));
  for (std::uint32_t w = 1; w <= W; ++w) {
    std::vector<Vec> gens = seeds[w];
    for (std::uint32_t wl = 1; wl < w; ++wl) {
      std::uint32_t wr = w - wl;
      const Subspace& lower = out[wl];
      for (std::uint32_t r = 0; r < lower.basis.nr; ++r) {
        Vec row = lower.basis.row(r);
        for (std::uint32_t j = 0; j < tr.weight_dim(wr); ++j) {
          Vec unit(tr.weight_dim(wr), 0);
          unit[j] = 1;
          gens.push_back(tr.bracket_local(K, wl, row, wr, unit));
        }
      }
    }
    out[w] = make_subspace(K, tr.weight_dim(w), gens);
  }
  return out;
}

}  // namespace

UniversalQuotient::UniversalQuotient(const FreeLieTruncation& trunc, Fq field, std::uint64_t c)
    : trunc_(&trunc), K_(std::move(field)), c_(c) {
  if (c < 1) throw ContractError("universal quotient requires c >= 1");
  std::uint32_t W = trunc.max_weight();
  if (K_.n_root() % trunc.gens().shape.n != 0)
    throw StructuralError("field omega order is not a multiple of n");

  // C_K(H) per weight: fixed space of the cyclic generator h
  C_.assign(W + 1, zero_subspace(0));
  for (std::uint32_t w = 1; w <= W; ++w) {
    Mat hw = trunc.h_matrix(K_, w);
    C_[w] = left_kernel(K_, mat_sub(K_, hw, Mat::identity(hw.nr)));
  }

  // J: ideal generated by the zero-index basis elements
  std::vector<std::vector<Vec>> jseeds(W + 1);
  for (std::uint32_t w = 1; w <= W; ++w) {
    for (std::uint32_t i = 0; i < trunc.weight_dim(w); ++i) {
      if (trunc.index_of(trunc.global_of(w, i)) == 0) {
        Vec unit(trunc.weight_dim(w), 0);
        unit[i] = 1;
        jseeds[w].push_back(std::move(unit));
      }
    }
  }
  J_ = ideal_closure(trunc, K_, jseeds);

  // gamma_{c+1}(C_K(H)) degreewise, then F-closure of the seeds
  std::vector<Subspace> gamma(W + 1);
  for (std::uint32_t w = 0; w <= W; ++w)
    gamma[w] = w >= 1 ? C_[w] : zero_subspace(0);
  for (std::uint64_t step = 1; step <= c_; ++step) {
    std::vector<Subspace> next(W + 1, zero_subspace(0));
    for (std::uint32_t w = 1; w <= W; ++w) {
      std::vector<Vec> gens;
      for (std::uint32_t wl = 1; wl < w; ++wl) {
        std::uint32_t wr = w - wl;
        for (std::uint32_t a = 0; a < gamma[wl].basis.nr; ++a)
          for (std::uint32_t b = 0; b < C_[wr].basis.nr; ++b)
            gens.push_back(
                trunc.bracket_local(K_, wl, gamma[wl].basis.row(a), wr, C_[wr].basis.row(b)));
      }
      next[w] = make_subspace(K_, trunc.weight_dim(w), gens);
    }
    gamma = std::move(next);
  }
  std::vector<std::vector<Vec>> iseeds(W + 1);
  for (std::uint32_t w = 1; w <= W; ++w) {
    for (std::uint32_t r = 0; r < gamma[w].basis.nr; ++r)
      for (Vec& part : phi_projections(trunc, w, gamma[w].basis.row(r)))
        iseeds[w].push_back(std::move(part));
  }
  I_ = ideal_closure(trunc, K_, iseeds);

  JI_.assign(W + 1, zero_subspace(0));
  mcoords_.assign(W + 1, {});
  for (std::uint32_t w = 1; w <= W; ++w) {
    JI_[w] = subspace_sum(K_, J_[w], I_[w]);
    std::vector<bool> pivot(trunc.weight_dim(w), false);
    for (auto p : JI_[w].pivots) pivot[p] = true;
    for (std::uint32_t i = 0; i < trunc.weight_dim(w); ++i)
      if (!pivot[i]) mcoords_[w].push_back(i);
  }

  empirical_class_ = 0;
  for (std::uint32_t w = 1; w <= W; ++w)
    if (m_dim(w) > 0) empirical_class_ = w;
  stabilized_ = (m_dim(W) == 0);
}

std::uint32_t UniversalQuotient::m0_dim(std::uint32_t w) const {
  // index-0 subspace of K_w modulo (J+I)_w
  const FreeLieTruncation& tr = *trunc_;
  std::vector<Vec> zero_units;
  for (std::uint32_t i = 0; i < tr.weight_dim(w); ++i)
    if (tr.index_of(tr.global_of(w, i)) == 0) {
      Vec u(tr.weight_dim(w), 0);
      u[i] = 1;
      zero_units.push_back(std::move(u));
    }
  std::vector<Vec> reduced;
  for (auto& u : zero_units) reduced.push_back(reduce_mod(K_, JI_[w], u));
  return make_subspace(K_, tr.weight_dim(w), reduced).dim();
}

Vec UniversalQuotient::project_m(std::uint32_t w, const Vec& kvec) const {
  Vec red = reduce_mod(K_, JI_[w], kvec);
  Vec out(mcoords_[w].size(), 0);
  for (std::size_t i = 0; i < mcoords_[w].size(); ++i) out[i] = red[mcoords_[w][i]];
  return out;
}

Vec UniversalQuotient::lift_m(std::uint32_t w, const Vec& mvec) const {
  Vec out(trunc_->weight_dim(w), 0);
  for (std::size_t i = 0; i < mcoords_[w].size(); ++i) out[mcoords_[w][i]] = mvec[i];
  return out;
}

Vec UniversalQuotient::bracket_m(std::uint32_t wa, const Vec& a, std::uint32_t wb,
                                 const Vec& b) const {
  std::uint32_t w = wa + wb;
  if (w > trunc_->max_weight()) return Vec();
  Vec kv = trunc_->bracket_local(K_, wa, lift_m(wa, a), wb, lift_m(wb, b));
  return project_m(w, kv);
}

Mat UniversalQuotient::h_matrix_m(std::uint32_t w) const {
  Mat hw = trunc_->h_matrix(K_, w);
  std::uint32_t d = m_dim(w);
  Mat out(d, d);
  for (std::uint32_t i = 0; i < d; ++i) {
    Vec unit(d, 0);
    unit[i] = 1;
    Vec img = vec_mat(K_, lift_m(w, unit), hw);
    out.set_row(i, project_m(w, img));
  }
  return out;
}

ValidationReport validate_universal_quotient(const UniversalQuotient& uq) {
  ValidationReport rep;
  const FreeLieTruncation& tr = uq.truncation();
  const Fq& K = uq.field();
  std::uint32_t W = tr.max_weight();

  auto check_invariant = [&](const Subspace& S, std::uint32_t w, const std::string& who) {
    // phi: diagonal scaling of coordinates
    Vec diag = tr.phi_diagonal(K, w);
    for (std::uint32_t r = 0; r < S.basis.nr; ++r) {
      Vec v = S.basis.row(r);
      Vec img(v.size());
      for (std::uint32_t i = 0; i < v.size(); ++i) img[i] = K.mul(v[i], diag[i]);
      if (!subspace_contains(K, S, img))
        rep.violations.push_back({"phi-invariance", who + " at weight " + std::to_string(w)});
    }
    Mat hw = tr.h_matrix(K, w);
    for (std::uint32_t r = 0; r < S.basis.nr; ++r) {
      if (!subspace_contains(K, S, vec_mat(K, S.basis.row(r), hw)))
        rep.violations.push_back({"h-invariance", who + " at weight " + std::to_string(w)});
    }
  };

  for (std::uint32_t w = 1; w <= W; ++w) {
    check_invariant(uq.J(w), w, "J");
    check_invariant(uq.I(w), w, "I");
    if (uq.m0_dim(w) != 0)
      rep.violations.push_back({"m0", "dim M_0 != 0 at weight " + std::to_string(w)});
    // theta_s invariance of I: killing one orbit's generators maps I into I
    for (std::uint32_t s = 0; s < tr.gens().num_orbits(); ++s) {
      const Subspace& I = uq.I(w);
      for (std::uint32_t r = 0; r < I.basis.nr; ++r) {
        Vec v = I.basis.row(r);
        Vec img(v.size(), 0);
        for (std::uint32_t i = 0; i < v.size(); ++i) {
          if (v[i] == 0) continue;
          const HallElt& e = tr.elt(tr.global_of(w, i));
          bool touches = false;
          for (std::uint32_t g = s * tr.gens().shape.q; g < (s + 1) * tr.gens().shape.q; ++g)
            if (e.multidegree[g] > 0) touches = true;
          if (!touches) img[i] = v[i];
        }
        if (!subspace_contains(K, I, img)) {
          rep.violations.push_back(
              {"theta-invariance", "theta_" + std::to_string(s) + " image escapes I at weight " +
                                       std::to_string(w)});
          break;
        }
      }
    }
  }

  // monotone vanishing: once a component dies, all later ones are dead
  bool dead = false;
  for (std::uint32_t w = 1; w <= W; ++w) {
    if (dead && uq.m_dim(w) != 0)
      rep.violations.push_back({"monotone-vanishing",
                                "M_" + std::to_string(w) + " nonzero after a zero component"});
    if (uq.m_dim(w) == 0) dead = true;
  }

  // gamma_{c+1}(C_M(H)) = 0, computed on the quotient structure
  std::vector<Subspace> cm(W + 1, zero_subspace(0));
  for (std::uint32_t w = 1; w <= W; ++w) {
    Mat hm = uq.h_matrix_m(w);
    cm[w] = left_kernel(K, mat_sub(K, hm, Mat::identity(hm.nr)));
  }
  std::vector<Subspace> gam = cm;
  for (std::uint64_t step = 1; step <= uq.c(); ++step) {
    std::vector<Subspace> next(W + 1, zero_subspace(0));
    for (std::uint32_t w = 1; w <= W; ++w) {
      std::vector<Vec> gens;
      for (std::uint32_t wl = 1; wl < w; ++wl) {
        std::uint32_t wr = w - wl;
        for (std::uint32_t a = 0; a < gam[wl].basis.nr; ++a)
          for (std::uint32_t b = 0; b < cm[wr].basis.nr; ++b)
            gens.push_back(uq.bracket_m(wl, gam[wl].basis.row(a), wr, cm[wr].basis.row(b)));
      }
      next[w] = make_subspace(K, uq.m_dim(w), gens);
    }
    gam = std::move(next);
  }
  for (std::uint32_t w = 1; w <= W; ++w)
    if (gam[w].dim() != 0)
      rep.violations.push_back({"centralizer-class",
                                "gamma_{c+1}(C_M(H)) nonzero at weight " + std::to_string(w)});
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> orbit_multiplicities(const IndexedGeneratorSet& gens,
                                                const GenWord& w) {
  std::vector<std::uint32_t> counts(gens.num_orbits(), 0);
  for (auto g : w.letters) counts[gens.orbit_of(g)]++;
  return counts;
}

std::uint32_t word_index_sum(const IndexedGeneratorSet& gens, const GenWord& w) {
  std::uint64_t s = 0;
  for (auto g : w.letters) s += gens.index_of(g);
  return static_cast<std::uint32_t>(s % gens.shape.n);
}

bool has_zero_sum_prefix(const IndexedGeneratorSet& gens, const GenWord& w) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    s += gens.index_of(w.letters[i]);
    if (i >= 1 && s % gens.shape.n == 0) return true;
  }
  return false;
}

namespace {

// all words of given length over the generator alphabet with prescribed
// per-orbit multiplicities, filtered by pred
void enumerate_words(const IndexedGeneratorSet& gens, std::uint32_t length,
                     const std::vector<std::uint32_t>& orbit_counts,
                     const std::function<bool(const GenWord&)>& pred,
                     std::vector<GenWord>& out, std::uint64_t cap) {
  GenWord cur;
  cur.letters.reserve(length);
  std::vector<std::uint32_t> left = orbit_counts;
  std::function<void()> rec = [&]() {
    if (out.size() > cap) throw ResourceError("KMS target enumeration exceeds cap", out.size(), cap);
    if (cur.letters.size() == length) {
      if (pred(cur)) out.push_back(cur);
      return;
    }
    for (std::uint32_t g = 0; g < gens.num_generators(); ++g) {
      std::uint32_t orb = gens.orbit_of(g);
      if (left[orb] == 0) continue;
      left[orb]--;
      cur.letters.push_back(g);
      rec();
      cur.letters.pop_back();
      left[orb]++;
    }
  };
  rec();
}

}  // namespace

KmsResult kms_transform(const UniversalQuotient& uq, const GenWord& input,
                        std::uint32_t T_used) {
  const FreeLieTruncation& tr = uq.truncation();
  const IndexedGeneratorSet& gens = tr.gens();
  const Fq& K = uq.field();
  if (T_used < 2) throw ContractError("kms_transform: T_used must be >= 2");
  std::uint32_t l = input.weight();
  if (l < T_used) throw ContractError("kms_transform: input weight below T_used");
  if (l > tr.max_weight())
    throw ContractError("kms_transform: input weight exceeds the truncation weight");
  for (auto g : input.letters)
    if (g >= gens.num_generators()) throw StructuralError("kms_transform: bad generator id");
    else if (gens.index_of(g) == 0) throw ContractError("kms_transform: zero-index entry");

  KmsResult res;
  if (has_zero_sum_prefix(gens, input)) {
    res.terms.push_back({K.one(), input});
    res.already_normal = true;
    res.residual_in_ideal = true;  // residual is exactly 0
    return res;
  }

  // transform the initial segment of length T_used
  GenWord prefix{std::vector<std::uint32_t>(input.letters.begin(),
                                            input.letters.begin() + T_used)};
  std::vector<std::uint32_t> tail(input.letters.begin() + T_used, input.letters.end());

  std::vector<std::uint32_t> counts = orbit_multiplicities(gens, prefix);
  std::vector<GenWord> targets;
  enumerate_words(
      gens, T_used, counts,
      [&](const GenWord& w) { return has_zero_sum_prefix(gens, w); }, targets, 2000000);

  Vec prefix_vec = tr.eval_word_local(K, prefix.letters);
  std::uint32_t dw = tr.weight_dim(T_used);
  const Subspace& Iw = uq.I(T_used);
  Mat system(static_cast<std::uint32_t>(targets.size()) + Iw.dim(), dw);
  for (std::uint32_t i = 0; i < targets.size(); ++i)
    system.set_row(i, tr.eval_word_local(K, targets[i].letters));
  for (std::uint32_t r = 0; r < Iw.dim(); ++r)
    system.set_row(static_cast<std::uint32_t>(targets.size()) + r, Iw.basis.row(r));

  std::optional<Vec> sol = solve_left(K, system, prefix_vec);
  if (!sol)
    throw ContractError(
        "kms_transform: input is not representable over zero-prefix commutators modulo I in "
        "the weight-" +
        std::to_string(T_used) + " component; this falsifies the proposition at these parameters");

  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    if ((*sol)[i] == 0) continue;
    GenWord full = targets[i];
    full.letters.insert(full.letters.end(), tail.begin(), tail.end());
    res.terms.push_back({(*sol)[i], full});
  }

  // certificate: residual of the full-weight equality lies in I
  Vec full_in = tr.eval_word_local(K, input.letters);
  Vec acc(tr.weight_dim(l), 0);
  for (const auto& t : res.terms) {
    Vec tv = tr.eval_word_local(K, t.word.letters);
    for (std::uint32_t i = 0; i < acc.size(); ++i)
      acc[i] = K.add(acc[i], K.mul(t.coeff, tv[i]));
  }
  res.residual_in_ideal = subspace_contains(K, uq.I(l), vec_sub(K, full_in, acc));
  return res;
}

// ---------------------------------------------------------------------------

CommTree CommTree::node(CommTree l, CommTree r) {
  CommTree t;
  t.kids.push_back(std::move(l));
  t.kids.push_back(std::move(r));
  return t;
}

std::uint32_t tree_weight(const CommTree& t) {
  if (t.is_leaf()) return 1;
  return tree_weight(t.kids[0]) + tree_weight(t.kids[1]);
}

std::uint32_t tree_index_sum(const IndexedGeneratorSet& gens, const CommTree& t) {
  if (t.is_leaf()) return gens.index_of(static_cast<std::uint32_t>(t.gen));
  return (tree_index_sum(gens, t.kids[0]) + tree_index_sum(gens, t.kids[1])) %
         static_cast<std::uint32_t>(gens.shape.n);
}

std::vector<std::uint32_t> tree_orbit_multiplicities(const IndexedGeneratorSet& gens,
                                                     const CommTree& t) {
  std::vector<std::uint32_t> counts(gens.num_orbits(), 0);
  std::function<void(const CommTree&)> rec = [&](const CommTree& u) {
    if (u.is_leaf()) {
      counts[gens.orbit_of(static_cast<std::uint32_t>(u.gen))]++;
      return;
    }
    rec(u.kids[0]);
    rec(u.kids[1]);
  };
  rec(t);
  return counts;
}

Vec eval_tree_local(const FreeLieTruncation& trunc, const Fq& K, const CommTree& t) {
  if (t.is_leaf()) {
    Vec v(trunc.weight_dim(1), 0);
    v[static_cast<std::uint32_t>(t.gen)] = 1;
    return v;
  }
  std::uint32_t wl = tree_weight(t.kids[0]);
  std::uint32_t wr = tree_weight(t.kids[1]);
  Vec l = eval_tree_local(trunc, K, t.kids[0]);
  Vec r = eval_tree_local(trunc, K, t.kids[1]);
  return trunc.bracket_local(K, wl, l, wr, r);
}

WitnessScan scan_tree(const IndexedGeneratorSet& gens, const CommTree& t, std::uint32_t t1,
                      std::uint32_t t2) {
  WitnessScan res;
  // zcount(v): zero-index nodes along v's left spine including v
  std::function<std::uint32_t(const CommTree&, bool)> walk =
      [&](const CommTree& v, bool is_root) -> std::uint32_t {
    if (v.is_leaf()) return 0;
    std::uint32_t zleft = walk(v.kids[0], false);
    std::uint32_t zright = walk(v.kids[1], false);
    (void)zright;
    std::uint32_t idx = tree_index_sum(gens, v);
    std::uint32_t zc = zleft + (idx == 0 ? 1 : 0);
    if (idx == 0 && zc >= t1) res.f1 = true;
    if (idx == 0 && !is_root) res.zero_proper_subcommutator = true;
    // f2 at v: spine head is a leaf, exactly t2 spine arguments, all internal
    // with zero index sum
    std::uint32_t args = 0;
    const CommTree* cur = &v;
    bool good = true;
    while (!cur->is_leaf()) {
      const CommTree& arg = cur->kids[1];
      if (arg.is_leaf() || tree_index_sum(gens, arg) != 0) {
        good = false;
        break;
      }
      ++args;
      cur = &cur->kids[0];
    }
    if (good && args == t2) res.f2 = true;
    return zc;
  };
  walk(t, true);
  return res;
}

namespace {

CommTree word_to_tree(const GenWord& w) {
  CommTree t = CommTree::leaf(w.letters[0]);
  for (std::size_t i = 1; i < w.letters.size(); ++i)
    t = CommTree::node(std::move(t), CommTree::leaf(w.letters[i]));
  return t;
}

// zero-sum words of a given length over the generators, with multiplicities
// bounded by 'left'
void zero_sum_blocks(const IndexedGeneratorSet& gens, std::uint32_t length,
                     std::vector<std::uint32_t>& left, std::vector<GenWord>& out) {
  GenWord cur;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t sum) {
    if (cur.letters.size() == length) {
      if (sum % gens.shape.n == 0) out.push_back(cur);
      return;
    }
    for (std::uint32_t g = 0; g < gens.num_generators(); ++g) {
      std::uint32_t orb = gens.orbit_of(g);
      if (left[orb] == 0) continue;
      left[orb]--;
      cur.letters.push_back(g);
      rec(sum + gens.index_of(g));
      cur.letters.pop_back();
      left[orb]++;
    }
  };
  rec(0);
}

}  // namespace

IteratedKmsResult iterated_kms(const UniversalQuotient& uq, const GenWord& input,
                               std::uint32_t t1, std::uint32_t t2, std::uint32_t V_used,
                               IteratedKmsCaps caps) {
  const FreeLieTruncation& tr = uq.truncation();
  const IndexedGeneratorSet& gens = tr.gens();
  const Fq& K = uq.field();
  if (t1 < 1 || t2 < 1) throw ContractError("iterated_kms: t1, t2 must be >= 1");
  std::uint32_t l = input.weight();
  if (l < V_used) throw ContractError("iterated_kms: input weight below V_used");
  if (l > tr.max_weight())
    throw ContractError("iterated_kms: input weight exceeds the truncation weight");
  if (std::uint64_t(V_used) * tr.total_dim() > caps.max_targets * 16)
    throw ResourceError("iterated_kms budget exceeded", std::uint64_t(V_used) * tr.total_dim(),
                        caps.max_targets * 16);
  for (auto g : input.letters)
    if (gens.index_of(g) == 0) throw ContractError("iterated_kms: zero-index entry");

  GenWord prefix{std::vector<std::uint32_t>(input.letters.begin(),
                                            input.letters.begin() + V_used)};
  std::vector<std::uint32_t> tail(input.letters.begin() + V_used, input.letters.end());
  std::vector<std::uint32_t> counts = orbit_multiplicities(gens, prefix);

  // family A: simple words with >= t1 nested zero-sum initial segments
  std::vector<CommTree> targets;
  {
    std::vector<GenWord> words;
    enumerate_words(
        gens, V_used, counts,
        [&](const GenWord& w) {
          std::uint64_t s = 0;
          std::uint32_t zc = 0;
          for (std::size_t i = 0; i < w.letters.size(); ++i) {
            s += gens.index_of(w.letters[i]);
            if (i >= 1 && s % gens.shape.n == 0) ++zc;
          }
          return zc >= t1;
        },
        words, caps.max_targets);
    for (auto& w : words) targets.push_back(word_to_tree(w));
  }

  // family B: [leaf, B^1, ..., B^{t2}, trailing leaves], each B a zero-sum block
  {
    std::vector<std::vector<std::uint32_t>> partitions;
    std::vector<std::uint32_t> part;
    std::uint32_t budget = V_used >= 1 ? V_used - 1 : 0;
    std::function<void(std::uint32_t, std::uint32_t)> prec = [&](std::uint32_t k,
                                                                 std::uint32_t used) {
      if (k == t2) {
        partitions.push_back(part);
        return;
      }
      for (std::uint32_t b = 2; used + b + 2u * (t2 - k - 1) <= budget; ++b) {
        part.push_back(b);
        prec(k + 1, used + b);
        part.pop_back();
      }
    };
    prec(0, 0);
    for (const auto& blocks : partitions) {
      std::uint32_t blocks_total = 0;
      for (auto b : blocks) blocks_total += b;
      std::uint32_t trailing = V_used - 1 - blocks_total;
      // choose the head leaf, then block contents, then trailing letters
      std::function<void(std::size_t, std::vector<std::uint32_t>&, std::vector<CommTree>&)>
          build = [&](std::size_t bi, std::vector<std::uint32_t>& left,
                      std::vector<CommTree>& acc) {
            if (bi == blocks.size()) {
              // trailing letters: enumerate words of the remaining multiset
              std::vector<GenWord> tails;
              std::uint32_t remaining = 0;
              for (auto c : left) remaining += c;
              if (remaining != trailing) return;
              if (trailing == 0) {
                tails.push_back(GenWord{});
              } else {
                GenWord cur;
                std::function<void()> trec = [&]() {
                  if (cur.letters.size() == trailing) {
                    tails.push_back(cur);
                    return;
                  }
                  for (std::uint32_t g = 0; g < gens.num_generators(); ++g) {
                    std::uint32_t orb = gens.orbit_of(g);
                    if (left[orb] == 0) continue;
                    left[orb]--;
                    cur.letters.push_back(g);
                    trec();
                    cur.letters.pop_back();
                    left[orb]++;
                  }
                };
                trec();
              }
              for (const auto& tw : tails) {
                CommTree t = acc[0];
                for (std::size_t i = 1; i < acc.size(); ++i)
                  t = CommTree::node(std::move(t), acc[i]);
                for (auto g : tw.letters) t = CommTree::node(std::move(t), CommTree::leaf(g));
                if (targets.size() > caps.max_targets)
                  throw ResourceError("iterated_kms target cap", targets.size(),
                                      caps.max_targets);
                targets.push_back(std::move(t));
              }
              return;
            }
            std::vector<GenWord> bwords;
            zero_sum_blocks(gens, blocks[bi], left, bwords);
            for (const auto& bw : bwords) {
              for (auto g : bw.letters) left[gens.orbit_of(g)]--;
              acc.push_back(word_to_tree(bw));
              build(bi + 1, left, acc);
              acc.pop_back();
              for (auto g : bw.letters) left[gens.orbit_of(g)]++;
            }
          };
      for (std::uint32_t head = 0; head < gens.num_generators(); ++head) {
        std::vector<std::uint32_t> left = counts;
        if (left[gens.orbit_of(head)] == 0) continue;
        left[gens.orbit_of(head)]--;
        std::vector<CommTree> acc{CommTree::leaf(head)};
        build(0, left, acc);
      }
    }
  }

  // solve prefix = sum coeff_i * target_i (mod I) in the weight-V component
  Vec prefix_vec = tr.eval_word_local(K, prefix.letters);
  const Subspace& Iw = uq.I(V_used);
  Mat system(static_cast<std::uint32_t>(targets.size()) + Iw.dim(), tr.weight_dim(V_used));
  for (std::uint32_t i = 0; i < targets.size(); ++i)
    system.set_row(i, eval_tree_local(tr, K, targets[i]));
  for (std::uint32_t r = 0; r < Iw.dim(); ++r)
    system.set_row(static_cast<std::uint32_t>(targets.size()) + r, Iw.basis.row(r));
  std::optional<Vec> sol = solve_left(K, system, prefix_vec);
  if (!sol)
    throw ContractError(
        "iterated_kms: input not representable over (f1)/(f2) targets modulo I in the weight-" +
        std::to_string(V_used) + " component");

  IteratedKmsResult res;
  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    if ((*sol)[i] == 0) continue;
    CommTree t = targets[i];
    for (auto g : tail) t = CommTree::node(std::move(t), CommTree::leaf(g));
    res.terms.push_back({(*sol)[i], std::move(t)});
  }

  Vec full_in = tr.eval_word_local(K, input.letters);
  Vec acc(tr.weight_dim(l), 0);
  for (const auto& t : res.terms) {
    Vec tv = eval_tree_local(tr, K, t.tree);
    for (std::uint32_t i = 0; i < acc.size(); ++i)
      acc[i] = K.add(acc[i], K.mul(t.coeff, tv[i]));
  }
  res.residual_in_ideal = subspace_contains(K, uq.I(l), vec_sub(K, full_in, acc));
  return res;
}

std::vector<Subspace> fh_invariant_ideal(const FreeLieTruncation& trunc, const Fq& K,
                                         const std::vector<std::vector<Vec>>& seeds_per_weight) {
  std::uint32_t W = trunc.max_weight();
  std::vector<std::vector<Vec>> seeds(W + 1);
  for (std::uint32_t w = 1; w <= W && w < seeds_per_weight.size(); ++w) {
    for (const Vec& v : seeds_per_weight[w]) {
      if (v.size() != trunc.weight_dim(w))
        throw StructuralError("fh_invariant_ideal: seed has wrong length");
      // h-orbit, then phi-components of each orbit member
      Mat hw = trunc.h_matrix(K, w);
      Vec cur = v;
      for (std::uint64_t s = 0; s < trunc.gens().shape.q; ++s) {
        for (Vec& part : phi_projections(trunc, w, cur)) seeds[w].push_back(std::move(part));
        cur = vec_mat(K, cur, hw);
      }
    }
  }
  return ideal_closure(trunc, K, seeds);
}

Vec specialize_word(const LieRing& L, const Mat& h, const IndexedGeneratorSet& gens,
                    const std::vector<Vec>& assignment, const GenWord& word) {
  if (assignment.size() != gens.num_orbits())
    throw ContractError("specialize_word: one assignment vector per orbit required");
  const Fq& K = L.field();
  std::vector<Vec> images;
  for (auto g : word.letters) {
    Vec v = assignment[gens.orbit_of(g)];
    for (std::uint32_t k = 0; k < gens.slot_of(g); ++k) v = vec_mat(K, v, h);
    images.push_back(std::move(v));
  }
  return L.bracket_word(images);
}

Vec specialize_tree(const LieRing& L, const Mat& h, const IndexedGeneratorSet& gens,
                    const std::vector<Vec>& assignment, const CommTree& t) {
  const Fq& K = L.field();
  if (t.is_leaf()) {
    std::uint32_t g = static_cast<std::uint32_t>(t.gen);
    Vec v = assignment[gens.orbit_of(g)];
    for (std::uint32_t k = 0; k < gens.slot_of(g); ++k) v = vec_mat(K, v, h);
    return v;
  }
  return L.bracket(specialize_tree(L, h, gens, assignment, t.kids[0]),
                   specialize_tree(L, h, gens, assignment, t.kids[1]));
}

}  // namespace froblie
