#include "froblie/centralizers.hpp"

#include <algorithm>
#include <functional>

namespace froblie {

namespace {

// all non-negative coefficient tuples over a subspace basis, in lexicographic
// order of the coefficient codes; yields nonzero vectors only
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(const Fq& K, const Subspace& S) : K_(&K), S_(&S) {
    counters_.assign(S.dim(), 0);
    done_ = false;
    advance();  // skip the zero vector
  }
  bool done() const { return done_; }
  Vec current() const {
    Vec v(S_->ambient(), 0);
    for (std::uint32_t r = 0; r < S_->dim(); ++r) {
      if (counters_[r] == 0) continue;
      for (std::uint32_t j = 0; j < S_->ambient(); ++j)
        v[j] = K_->add(v[j], K_->mul(counters_[r], S_->basis.at(r, j)));
    }
    return v;
  }
  void advance() {
    if (S_->dim() == 0) {
      done_ = true;
      return;
    }
    for (std::size_t r = counters_.size(); r-- > 0;) {
      if (counters_[r] + 1 < K_->size()) {
        counters_[r]++;
        return;
      }
      counters_[r] = 0;
    }
    done_ = true;
  }
  std::uint64_t count() const {
    std::uint64_t c = 1;
    for (std::uint32_t r = 0; r < S_->dim(); ++r) {
      c *= K_->size();
      if (c > (1ull << 62)) return c;
    }
    return c;
  }

 private:
  const Fq* K_;
  const Subspace* S_;
  std::vector<fel> counters_;
  bool done_;
};

Vec bracket_through(const LieRing& L, Vec acc, const std::vector<Vec>& rest) {
  for (const auto& x : rest) acc = L.bracket(acc, x);
  return acc;
}

}  // namespace

std::vector<Pattern> enumerate_patterns(std::uint64_t n, std::uint32_t max_weight) {
  std::vector<Pattern> out;
  for (std::uint32_t w = 2; w <= max_weight; ++w) {
    Pattern cur;
    cur.indices.assign(w, 1);
    std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t pos,
                                                                std::uint64_t sum) {
      if (pos == w) {
        if (sum % n == 0) out.push_back(cur);
        return;
      }
      for (std::uint32_t i = 1; i < n; ++i) {
        cur.indices[pos] = i;
        rec(pos + 1, sum + i);
      }
    };
    rec(0, 0);
  }
  return out;
}

ThetaRestriction theta_map(const FrobeniusAction& A, const GradedDecomposition& D,
                           const std::vector<std::pair<std::uint32_t, Vec>>& tuple) {
  const LieRing& L = *A.ring;
  const Fq& K = L.field();
  if (tuple.empty()) throw ContractError("theta_map: empty tuple");
  std::uint64_t n = A.shape.n;
  std::uint64_t sum = 0;
  for (const auto& [idx, v] : tuple) {
    if (idx == 0 || idx >= n) throw ContractError("theta_map: entry in the zero component");
    if (!subspace_contains(K, D.components[idx], v))
      throw ContractError("theta_map: entry does not lie in its declared component");
    sum += idx;
  }
  if (sum % n == 0)
    throw ContractError("theta_map: index sum is 0 mod n (no valid source component)");
  std::uint32_t j = static_cast<std::uint32_t>((n - sum % n) % n);

  const Subspace& Lj = D.components[j];
  std::vector<Vec> xs;
  for (const auto& [idx, v] : tuple) xs.push_back(v);

  ThetaRestriction out;
  out.source_index = j;
  out.map_rows = Mat(Lj.dim(), L.dim());
  for (std::uint32_t r = 0; r < Lj.dim(); ++r) {
    Vec img = bracket_through(L, Lj.basis.row(r), xs);
    if (!subspace_contains(K, D.components[0], img))
      throw Error("internal: theta image escaped L_0");
    out.map_rows.set_row(r, img);
  }
  Subspace coeff_kernel = left_kernel(K, out.map_rows);
  std::vector<Vec> gens;
  for (std::uint32_t r = 0; r < coeff_kernel.basis.nr; ++r)
    gens.push_back(vec_mat(K, coeff_kernel.basis.row(r), Lj.basis));
  out.kernel = make_subspace(K, L.dim(), gens);
  out.codim = Lj.dim() - out.kernel.dim();
  if (out.codim > D.components[0].dim())
    throw Error("internal: theta kernel codimension exceeds dim L_0");
  return out;
}

namespace {

// distinct nonzero representative vectors of levels < t with their component
// indices, closed under the H-orbit of every vector (the fixed representatives
// come with their whole H-orbits)
std::vector<std::pair<std::uint32_t, Vec>> rep_pool(const CentralizerTower& tower,
                                                    std::uint32_t t) {
  const Fq& K = tower.ring->field();
  std::uint64_t n = tower.shape.n;
  std::vector<std::pair<std::uint32_t, Vec>> pool;
  auto push = [&](std::uint32_t idx, const Vec& v) {
    std::pair<std::uint32_t, Vec> cand{idx, v};
    if (std::find(pool.begin(), pool.end(), cand) == pool.end()) pool.push_back(std::move(cand));
  };
  for (std::uint32_t lv = 0; lv < t && lv < tower.levels.size(); ++lv) {
    for (const auto& rep : tower.levels[lv].reps) {
      for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        if (vec_is_zero(rep.entries[i])) continue;
        std::uint32_t idx = rep.pattern.indices[i];
        Vec v = rep.entries[i];
        for (std::uint64_t s = 0; s < tower.shape.q; ++s) {
          push(idx, v);
          v = vec_mat(K, v, tower.h);
          idx = static_cast<std::uint32_t>((std::uint64_t(idx) * tower.shape.r) % n);
        }
      }
    }
  }
  return pool;
}

void fix_representatives(const Fq& K, const LieRing& L, CentralizerTower& tower,
                         std::uint32_t t) {
  TowerLevel& level = tower.levels[t];
  std::uint64_t n = tower.shape.n;
  std::vector<Pattern> patterns = enumerate_patterns(n, tower.caps.U_used);

  // values live in L_0, so a pattern's enumeration can stop as soon as every
  // possible value has been realized
  std::uint64_t value_cap = 1;
  for (std::uint32_t r = 0; r < tower.decomposition.components[0].dim(); ++r) {
    value_cap *= K.size();
    if (value_cap > (1ull << 40)) break;
  }

  std::map<std::pair<std::vector<std::uint32_t>, Vec>, Representative> canonical;
  for (const Pattern& pat : patterns) {
    // zero value is always realizable by the zero representation
    {
      Representative zr;
      zr.pattern = pat;
      zr.value = Vec(L.dim(), 0);
      zr.entries.assign(pat.weight(), Vec(L.dim(), 0));
      zr.level = t;
      canonical.emplace(std::make_pair(pat.indices, zr.value), std::move(zr));
    }
    // nested odometer over nonzero elements of the pattern's components
    std::vector<Vec> entries(pat.weight());
    std::uint64_t found = 1;  // the pre-seeded zero value
    std::uint64_t tuples = 0;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t pos) {
      if (found >= value_cap) return;
      if (pos == pat.weight()) {
        if (++tuples > tower.caps.max_rep_tuples)
          throw ResourceError("representative enumeration exceeds budget for pattern of weight " +
                                  std::to_string(pat.weight()),
                              tuples, tower.caps.max_rep_tuples);
        Vec value = bracket_through(L, entries[0],
                                    std::vector<Vec>(entries.begin() + 1, entries.end()));
        auto key = std::make_pair(pat.indices, value);
        if (canonical.find(key) == canonical.end()) {
          Representative r;
          r.pattern = pat;
          r.value = value;
          r.entries = entries;
          r.level = t;
          canonical.emplace(std::move(key), std::move(r));
          ++found;
        }
        return;
      }
      SubspaceEnumerator en(K, level.centralizers[pat.indices[pos]]);
      while (!en.done() && found < value_cap) {
        entries[pos] = en.current();
        rec(pos + 1);
        en.advance();
      }
    };
    rec(0);
  }

  // H-orbit closure in deterministic key order; orbit images inherit the
  // canonical status of their source
  for (const auto& [key, rep] : canonical) {
    if (level.index.count(key)) continue;
    level.index.emplace(key, level.reps.size());
    level.reps.push_back(rep);
    Representative cur = rep;
    for (std::uint64_t s = 1; s < tower.shape.q; ++s) {
      Representative img;
      img.pattern.indices.reserve(cur.pattern.indices.size());
      for (auto idx : cur.pattern.indices)
        img.pattern.indices.push_back(
            static_cast<std::uint32_t>((std::uint64_t(idx) * tower.shape.r) % n));
      img.value = vec_mat(K, cur.value, tower.h);
      for (const auto& eVec : cur.entries) img.entries.push_back(vec_mat(K, eVec, tower.h));
      img.level = t;
      img.orbit_image = true;
      auto ikey = std::make_pair(img.pattern.indices, img.value);
      if (!level.index.count(ikey)) {
        level.index.emplace(ikey, level.reps.size());
        level.reps.push_back(img);
      }
      cur = level.reps[level.index.at(ikey)];
    }
  }
}

}  // namespace

CentralizerTower build_tower(const FrobeniusAction& A, const GradedDecomposition& D,
                             const TowerCaps& caps) {
  const LieRing& L = *A.ring;
  const Fq& K = L.field();
  std::uint64_t n = A.shape.n;

  CentralizerTower tower;
  tower.ring = A.ring;
  tower.shape = A.shape;
  tower.phi = A.phi;
  tower.h = A.h;
  tower.decomposition = D;
  tower.caps = caps;
  tower.levels.resize(caps.T_used + 1);

  // level 0: the components themselves
  tower.levels[0].centralizers = D.components;
  fix_representatives(K, L, tower, 0);

  for (std::uint32_t t = 1; t <= caps.T_used; ++t) {
    TowerLevel& level = tower.levels[t];
    level.centralizers.assign(n, zero_subspace(L.dim()));
    level.centralizers[0] = D.components[0];
    std::vector<std::pair<std::uint32_t, Vec>> pool = rep_pool(tower, t);

    std::vector<Subspace> current(n);
    for (std::uint32_t j = 0; j < n; ++j) current[j] = D.components[j];

    // ordered tuples over the pool of lengths 1..U_used
    std::uint64_t used = 0;
    std::vector<std::uint32_t> pick;
    std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t len,
                                                                std::uint64_t sum) {
      if (len > 0) {
        if (++used > tower.caps.max_theta_tuples)
          throw ResourceError("theta tuple enumeration exceeds budget", used,
                              tower.caps.max_theta_tuples);
        std::uint64_t mod = sum % n;
        if (mod != 0) {
          std::uint32_t j = static_cast<std::uint32_t>((n - mod) % n);
          if (current[j].dim() > 0) {
            std::vector<Vec> xs;
            xs.reserve(pick.size());
            for (auto pi : pick) xs.push_back(pool[pi].second);
            Mat rows(current[j].dim(), L.dim());
            for (std::uint32_t r = 0; r < current[j].dim(); ++r)
              rows.set_row(r, bracket_through(L, current[j].basis.row(r), xs));
            Subspace coeff = left_kernel(K, rows);
            std::vector<Vec> gens;
            for (std::uint32_t r = 0; r < coeff.basis.nr; ++r)
              gens.push_back(vec_mat(K, coeff.basis.row(r), current[j].basis));
            current[j] = make_subspace(K, L.dim(), gens);
          }
        }
      }
      if (len == tower.caps.U_used) return;
      for (std::uint32_t pi = 0; pi < pool.size(); ++pi) {
        pick.push_back(pi);
        rec(len + 1, sum + pool[pi].first);
        pick.pop_back();
      }
    };
    rec(0, 0);
    level.theta_tuples_used = used;
    for (std::uint32_t j = 1; j < n; ++j) level.centralizers[j] = current[j];
    fix_representatives(K, L, tower, t);
  }
  return tower;
}

const Representative& freeze(const CentralizerTower& tower,
                             const std::vector<FreezeEntry>& commutator,
                             std::uint32_t target_level) {
  const LieRing& L = *tower.ring;
  const Fq& K = L.field();
  std::uint64_t n = tower.shape.n;
  if (commutator.size() < 2) throw ContractError("freeze: need a commutator of weight >= 2");
  if (commutator.size() > tower.caps.U_used)
    throw ContractError("freeze: weight exceeds the built U_used cap");
  std::uint64_t sum = 0;
  std::uint32_t min_level = commutator[0].level;
  for (const auto& ent : commutator) {
    if (ent.component == 0 || ent.component >= n)
      throw ContractError("freeze: entries must have nonzero component index");
    sum += ent.component;
    min_level = std::min(min_level, ent.level);
    if (ent.level >= tower.levels.size())
      throw ContractError("freeze: entry level beyond the built tower");
    if (!subspace_contains(K, tower.levels[ent.level].centralizers[ent.component], ent.vector))
      throw ContractError("freeze: entry is not a centralizer of its declared level");
  }
  if (sum % n != 0) throw ContractError("freeze: index sum must be 0 mod n");
  if (target_level > min_level)
    throw ContractError("freeze: target level exceeds the minimum entry level");

  std::vector<Vec> xs;
  std::vector<std::uint32_t> indices;
  for (const auto& ent : commutator) {
    xs.push_back(ent.vector);
    indices.push_back(ent.component);
  }
  Vec value = bracket_through(L, xs[0], std::vector<Vec>(xs.begin() + 1, xs.end()));
  const TowerLevel& lvl = tower.levels[target_level];
  auto it = lvl.index.find(std::make_pair(indices, value));
  if (it == lvl.index.end())
    throw ContractError(
        "freeze: (pattern, value) pair absent from the level-" + std::to_string(target_level) +
        " table; the tower was built with smaller caps than the query");
  return lvl.reps[it->second];
}

ValidationReport verify_centralizer_property(const CentralizerTower& tower,
                                             std::uint32_t weight_cap,
                                             std::uint64_t node_budget) {
  ValidationReport rep;
  const LieRing& L = *tower.ring;
  const Fq& K = L.field();
  std::uint64_t n = tower.shape.n;
  std::uint64_t nodes = 0;
  auto charge = [&]() {
    if (++nodes > node_budget)
      throw ResourceError("centralizer property enumeration exceeds budget", nodes, node_budget);
  };

  for (std::uint32_t t = 1; t < tower.levels.size(); ++t) {
    std::vector<std::pair<std::uint32_t, Vec>> pool = rep_pool(tower, t);
    for (std::uint32_t j = 1; j < n; ++j) {
      const Subspace& Lj = tower.levels[t].centralizers[j];
      for (std::uint32_t r = 0; r < Lj.dim(); ++r) {
        Vec y = Lj.basis.row(r);
        std::vector<std::uint32_t> pick;
        std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t len,
                                                                    std::uint64_t sum) {
          if (len >= 1) charge();
          if (len >= 1 && (std::uint64_t(j) + sum) % n == 0) {
            std::vector<Vec> xs;
            for (auto pi : pick) xs.push_back(pool[pi].second);
            Vec val = bracket_through(L, y, xs);
            if (!vec_is_zero(val)) {
              std::string tup;
              for (auto pi : pick) tup += " " + std::to_string(pool[pi].first);
              rep.violations.push_back({"centralizer-property",
                                        "level " + std::to_string(t) + ", j = " +
                                            std::to_string(j) + ", tuple indices" + tup});
            }
          }
          if (len == weight_cap) return;
          for (std::uint32_t pi = 0; pi < pool.size(); ++pi) {
            pick.push_back(pi);
            rec(len + 1, sum + pool[pi].first);
            pick.pop_back();
          }
        };
        rec(0, 0);
      }
    }
  }

  // quasirepresentative extension: commutators of one level-t centralizer with
  // quasirepresentatives of levels < t, zero index sum, weights within cap
  for (std::uint32_t t = 1; t < tower.levels.size(); ++t) {
    // quasireps of level e < t: left-normed brackets of one level-e
    // representative with representatives of levels < e, weight <= cap
    std::vector<std::tuple<std::uint32_t, std::uint32_t, Vec>> quasi;  // (index, weight, vec)
    for (std::uint32_t e = 0; e < t; ++e) {
      std::vector<std::pair<std::uint32_t, Vec>> lower = rep_pool(tower, e);
      for (const auto& r : tower.levels[e].reps) {
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
          if (vec_is_zero(r.entries[i])) continue;
          quasi.emplace_back(r.pattern.indices[i], 1, r.entries[i]);
          // weight-2 quasireps over lower-level representatives
          for (const auto& [li, lv] : lower) {
            Vec b = L.bracket(r.entries[i], lv);
            if (vec_is_zero(b)) continue;
            if (2 <= weight_cap)
              quasi.emplace_back(
                  static_cast<std::uint32_t>((r.pattern.indices[i] + li) % n), 2, b);
          }
        }
      }
    }
    for (std::uint32_t j = 1; j < n; ++j) {
      const Subspace& Lj = tower.levels[t].centralizers[j];
      for (std::uint32_t r = 0; r < Lj.dim(); ++r) {
        Vec y = Lj.basis.row(r);
        // tuples of quasireps with total weight <= weight_cap
        std::vector<std::size_t> pick;
        std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t wsum,
                                                                    std::uint64_t isum) {
          if (!pick.empty()) charge();
          if (!pick.empty() && (std::uint64_t(j) + isum) % n == 0) {
            std::vector<Vec> xs;
            for (auto qi : pick) xs.push_back(std::get<2>(quasi[qi]));
            Vec val = bracket_through(L, y, xs);
            if (!vec_is_zero(val))
              rep.violations.push_back({"quasirepresentative",
                                        "level " + std::to_string(t) + ", j = " +
                                            std::to_string(j)});
          }
          for (std::size_t qi = 0; qi < quasi.size(); ++qi) {
            std::uint32_t w = std::get<1>(quasi[qi]);
            if (wsum + w > weight_cap) continue;
            pick.push_back(qi);
            rec(wsum + w, isum + std::get<0>(quasi[qi]));
            pick.pop_back();
          }
        };
        rec(0, 0);
      }
    }
  }
  return rep;
}

ZReport build_Z_and_report(const CentralizerTower& tower) {
  const LieRing& L = *tower.ring;
  const Fq& K = L.field();
  std::uint64_t n = tower.shape.n;
  const TowerLevel& top = tower.levels.back();

  ZReport out;
  std::vector<Vec> gens;
  for (std::uint32_t j = 1; j < n; ++j)
    for (std::uint32_t r = 0; r < top.centralizers[j].basis.nr; ++r)
      gens.push_back(top.centralizers[j].basis.row(r));
  out.Z = generated_subring(L, gens);
  out.codim = L.dim() - out.Z.dim();
  LowerCentralSeries lcs = subring_lower_central_series(L, out.Z);
  out.nilpotent = lcs.nilpotent;
  out.z_class = lcs.nilpotent ? lcs.nilpotency_class : 0;
  out.phi_invariant = true;
  out.h_invariant = true;
  for (std::uint32_t r = 0; r < out.Z.basis.nr; ++r) {
    if (!subspace_contains(K, out.Z, vec_mat(K, out.Z.basis.row(r), tower.phi)))
      out.phi_invariant = false;
    if (!subspace_contains(K, out.Z, vec_mat(K, out.Z.basis.row(r), tower.h)))
      out.h_invariant = false;
  }
  for (std::uint32_t j = 1; j < n; ++j)
    out.level_codims.push_back(tower.decomposition.components[j].dim() -
                               top.centralizers[j].dim());
  return out;
}

}  // namespace froblie
