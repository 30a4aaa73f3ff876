#include "froblie/instance.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace froblie {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
  throw StructuralError(path + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail_at(path, std::string("missing key '") + key + "'");
  return j[key];
}

std::uint64_t need_u64(const Json& j, const char* key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_unsigned()) fail_at(path + "/" + key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

fel parse_scalar(const Fq& K, const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != K.e()) fail_at(path, "scalar must be an array of e integers");
  std::vector<std::uint64_t> coords;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) fail_at(path + "/" + std::to_string(i), "expected integer");
    coords.push_back(v[i].get<std::uint64_t>());
    if (coords.back() >= K.p()) fail_at(path + "/" + std::to_string(i), "coordinate not in [0, p)");
  }
  return K.from_coords(coords);
}

Json emit_scalar(const Fq& K, fel v) {
  Json arr = Json::array();
  for (auto c : K.coords(v)) arr.push_back(c);
  return arr;
}

Mat parse_matrix(const Fq& K, const Json& v, std::uint32_t dim, const std::string& path) {
  if (!v.is_array() || v.size() != dim) fail_at(path, "expected an array of dim rows");
  Mat M(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    const Json& row = v[r];
    if (!row.is_array() || row.size() != dim)
      fail_at(path + "/" + std::to_string(r), "expected a row of dim scalars");
    for (std::uint32_t c = 0; c < dim; ++c)
      M.at(r, c) = parse_scalar(K, row[c], path + "/" + std::to_string(r) + "/" + std::to_string(c));
  }
  return M;
}

Json emit_matrix(const Fq& K, const Mat& M) {
  Json rows = Json::array();
  for (std::uint32_t r = 0; r < M.nr; ++r) {
    Json row = Json::array();
    for (std::uint32_t c = 0; c < M.nc; ++c) row.push_back(emit_scalar(K, M.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

LieInstance parse_lie_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(std::string("JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
  }
  LieInstance inst;
  const Json& f = need(j, "field", "");
  std::uint64_t p = need_u64(f, "p", "/field");
  std::uint64_t e = need_u64(f, "e", "/field");
  const Json& fr = need(j, "frobenius", "");
  inst.shape.n = need_u64(fr, "n", "/frobenius");
  inst.shape.q = need_u64(fr, "q", "/frobenius");
  inst.shape.r = need_u64(fr, "r", "/frobenius");
  std::vector<std::uint64_t> modulus;
  if (e > 1) {
    const Json& m = need(f, "modulus", "/field");
    if (!m.is_array() || m.size() != e + 1) fail_at("/field/modulus", "expected e+1 coefficients");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_number_unsigned()) fail_at("/field/modulus", "expected integers");
      modulus.push_back(m[i].get<std::uint64_t>());
    }
  } else if (f.contains("modulus")) {
    fail_at("/field/modulus", "modulus must be absent when e = 1");
  }
  // omega: parse against a provisional field, then rebuild with exact order n
  Fq probe = e == 1 ? Fq::prime_field(p, 1) : Fq::extension_field(p, static_cast<std::uint32_t>(e), modulus, 1);
  fel omega = parse_scalar(probe, need(j, "omega", ""), "/omega");
  try {
    inst.field = Fq::with_omega(p, static_cast<std::uint32_t>(e), modulus, inst.shape.n, omega);
  } catch (const StructuralError& err) {
    fail_at("/omega", err.what());
  }

  std::uint64_t dim = need_u64(j, "dim", "");
  if (dim > 4096) fail_at("/dim", "dimension unreasonably large");
  const Json& names = need(j, "basis_names", "");
  if (!names.is_array() || names.size() != dim)
    fail_at("/basis_names", "expected dim strings");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) fail_at("/basis_names/" + std::to_string(i), "expected string");
    inst.basis_names.push_back(names[i].get<std::string>());
  }

  const Json& brackets = need(j, "brackets", "");
  if (!brackets.is_array()) fail_at("/brackets", "expected an array");
  for (std::size_t bi = 0; bi < brackets.size(); ++bi) {
    const std::string bp = "/brackets/" + std::to_string(bi);
    const Json& b = brackets[bi];
    std::uint64_t i = need_u64(b, "i", bp);
    std::uint64_t jj = need_u64(b, "j", bp);
    if (i >= dim || jj >= dim) fail_at(bp, "basis index out of range");
    const Json& entries = need(b, "entries", bp);
    if (!entries.is_array()) fail_at(bp + "/entries", "expected an array");
    for (std::size_t ei = 0; ei < entries.size(); ++ei) {
      const std::string ep = bp + "/entries/" + std::to_string(ei);
      std::uint64_t k = need_u64(entries[ei], "k", ep);
      if (k >= dim) fail_at(ep + "/k", "basis index out of range");
      fel c = parse_scalar(inst.field, need(entries[ei], "c", ep), ep + "/c");
      inst.raw_brackets.push_back(RawBracket{static_cast<std::uint32_t>(i),
                                             static_cast<std::uint32_t>(jj),
                                             static_cast<std::uint32_t>(k), c});
    }
  }
  inst.ring = LieRing::from_raw(inst.field, static_cast<std::uint32_t>(dim), inst.raw_brackets);
  inst.phi = parse_matrix(inst.field, need(j, "phi", ""), static_cast<std::uint32_t>(dim), "/phi");
  inst.h = parse_matrix(inst.field, need(j, "h", ""), static_cast<std::uint32_t>(dim), "/h");
  return inst;
}

std::string emit_lie_instance(const LieInstance& inst) {
  const Fq& K = inst.field;
  Json j;
  j["field"] = Json{{"p", K.p()}, {"e", K.e()}};
  if (K.e() > 1) {
    Json m = Json::array();
    for (auto c : K.modulus()) m.push_back(c);
    j["field"]["modulus"] = std::move(m);
  }
  j["omega"] = emit_scalar(K, K.omega());
  j["frobenius"] = Json{{"n", inst.shape.n}, {"q", inst.shape.q}, {"r", inst.shape.r}};
  j["dim"] = inst.ring.dim();
  Json names = Json::array();
  for (const auto& s : inst.basis_names) names.push_back(s);
  j["basis_names"] = std::move(names);
  Json brackets = Json::array();
  for (std::uint32_t a = 0; a < inst.ring.dim(); ++a) {
    for (std::uint32_t b = a + 1; b < inst.ring.dim(); ++b) {
      const Vec& val = inst.ring.basis_bracket(a, b);
      if (val.empty() || vec_is_zero(val)) continue;
      Json entries = Json::array();
      for (std::uint32_t k = 0; k < val.size(); ++k) {
        if (val[k] == 0) continue;
        entries.push_back(Json{{"k", k}, {"c", emit_scalar(K, val[k])}});
      }
      brackets.push_back(Json{{"i", a}, {"j", b}, {"entries", std::move(entries)}});
    }
  }
  j["brackets"] = std::move(brackets);
  j["phi"] = emit_matrix(K, inst.phi);
  j["h"] = emit_matrix(K, inst.h);
  return j.dump(2) + "\n";
}

GroupInstance parse_group_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(std::string("JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
  }
  std::uint64_t order = need_u64(j, "order", "");
  if (order == 0 || order > 4096) fail_at("/order", "order out of range");
  const Json& table = need(j, "table", "");
  if (!table.is_array() || table.size() != order) fail_at("/table", "expected order rows");
  std::vector<std::uint32_t> flat;
  flat.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    const Json& row = table[r];
    if (!row.is_array() || row.size() != order)
      fail_at("/table/" + std::to_string(r), "expected order entries");
    for (std::size_t c = 0; c < order; ++c) {
      if (!row[c].is_number_unsigned())
        fail_at("/table/" + std::to_string(r) + "/" + std::to_string(c), "expected integer");
      std::uint64_t v = row[c].get<std::uint64_t>();
      if (v >= order)
        fail_at("/table/" + std::to_string(r) + "/" + std::to_string(c), "entry out of range");
      flat.push_back(static_cast<std::uint32_t>(v));
    }
  }
  GroupInstance gi{FiniteGroup::from_table(static_cast<std::uint32_t>(order), std::move(flat)),
                   {}};
  auto parse_perm = [&](const char* key) {
    const Json& p = need(j, key, "");
    if (!p.is_array() || p.size() != order) fail_at(std::string("/") + key, "expected order entries");
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < order; ++i) {
      if (!p[i].is_number_unsigned() || p[i].get<std::uint64_t>() >= order)
        fail_at(std::string("/") + key + "/" + std::to_string(i), "bad image");
      out.push_back(static_cast<std::uint32_t>(p[i].get<std::uint64_t>()));
    }
    return out;
  };
  gi.autos.phi = parse_perm("phi");
  gi.autos.h = parse_perm("h");
  const Json& fr = need(j, "frobenius", "");
  gi.autos.shape.n = need_u64(fr, "n", "/frobenius");
  gi.autos.shape.q = need_u64(fr, "q", "/frobenius");
  gi.autos.shape.r = need_u64(fr, "r", "/frobenius");
  return gi;
}

std::string emit_group_instance(const GroupInstance& inst) {
  Json j;
  j["order"] = inst.group.order;
  Json table = Json::array();
  for (std::uint32_t r = 0; r < inst.group.order; ++r) {
    Json row = Json::array();
    for (std::uint32_t c = 0; c < inst.group.order; ++c) row.push_back(inst.group.mul(r, c));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  Json phi = Json::array(), h = Json::array();
  for (auto v : inst.autos.phi) phi.push_back(v);
  for (auto v : inst.autos.h) h.push_back(v);
  j["phi"] = std::move(phi);
  j["h"] = std::move(h);
  j["frobenius"] = Json{{"n", inst.autos.shape.n}, {"q", inst.autos.shape.q},
                        {"r", inst.autos.shape.r}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t lcg_next(std::uint64_t& s) {
  s = s * 6364136223846793005ull + 1442695040888963407ull;
  return s >> 11;
}

void check_generated(const LieInstance& inst, const std::string& family) {
  ValidationReport r1 = validate_lie_ring(inst.ring);
  if (!r1.ok())
    throw StructuralError("infeasible " + family + " family parameters: " +
                          r1.violations.front().kind + " " + r1.violations.front().detail);
  FrobeniusAction act = inst.action();
  ValidationReport r2 = validate_action(act);
  if (!r2.ok())
    throw StructuralError("infeasible " + family + " family parameters: " +
                          r2.violations.front().kind + " " + r2.violations.front().detail);
}

}  // namespace

std::uint64_t default_prime_for_shape(const FrobeniusShape& shape) {
  for (std::uint64_t p = 2; p < 1000000; ++p) {
    if (!is_prime_u64(p)) continue;
    if (std::gcd(p, shape.n * shape.q) != 1) continue;
    if ((p - 1) % shape.n == 0) return p;
  }
  throw StructuralError("no small prime admits an order-n root for this shape");
}

LieInstance generate_heisenberg(std::uint64_t p, const FrobeniusShape& shape) {
  ShapeDiagnosis sd = validate_frobenius_shape(shape.n, shape.q, shape.r);
  if (!sd.valid) throw StructuralError("invalid shape: " + sd.first_violation);
  if (shape.q != 2 || shape.r != shape.n - 1)
    throw StructuralError(
        "infeasible heisenberg family parameters: needs q = 2 and r = n - 1 (h swaps the "
        "generators)");
  LieInstance inst;
  inst.field = make_field_with_root_order(p, shape.n);
  if (std::gcd(p, shape.n * shape.q) != 1)
    throw StructuralError("infeasible heisenberg family parameters: p divides n*q");
  inst.shape = shape;
  const Fq& K = inst.field;
  fel omega = K.pow(K.omega(), K.n_root() / shape.n);
  LieRing ring(K, 3);
  Vec z(3, 0);
  z[2] = 1;
  ring.set_bracket(0, 1, z);
  inst.ring = std::move(ring);
  inst.phi = Mat(3, 3);
  inst.phi.at(0, 0) = omega;
  inst.phi.at(1, 1) = K.pow(omega, shape.n - 1);
  inst.phi.at(2, 2) = 1;
  inst.h = Mat(3, 3);
  inst.h.at(0, 1) = 1;
  inst.h.at(1, 0) = 1;
  inst.h.at(2, 2) = K.neg(1);
  inst.basis_names = {"x", "y", "z"};
  check_generated(inst, "heisenberg");
  return inst;
}

LieInstance generate_free_nilpotent(const FreeNilpotentParams& params) {
  const FrobeniusShape& shape = params.shape;
  std::uint64_t p = params.p ? params.p : default_prime_for_shape(shape);
  Fq K = make_field_with_root_order(p, shape.n);
  IndexedGeneratorSet gens = make_generator_set(shape, params.orbit_base_indices);
  FreeLieTruncation trunc(gens, params.weight);
  std::uint32_t W = trunc.max_weight();

  std::vector<Subspace> ideal(W + 1, zero_subspace(0));
  for (std::uint32_t w = 1; w <= W; ++w) ideal[w] = zero_subspace(trunc.weight_dim(w));
  if (params.relations == FreeNilpotentRelations::mod_j) {
    std::vector<std::vector<Vec>> seeds(W + 1);
    for (std::uint32_t w = 1; w <= W; ++w)
      for (std::uint32_t i = 0; i < trunc.weight_dim(w); ++i)
        if (trunc.index_of(trunc.global_of(w, i)) == 0) {
          Vec u(trunc.weight_dim(w), 0);
          u[i] = 1;
          seeds[w].push_back(std::move(u));
        }
    ideal = fh_invariant_ideal(trunc, K, seeds);
  } else if (params.relations == FreeNilpotentRelations::mod_ji) {
    UniversalQuotient uq(trunc, K, params.c);
    for (std::uint32_t w = 1; w <= W; ++w) ideal[w] = uq.JI(w);
  }

  if (params.extra_relations > 0) {
    std::uint64_t s = params.seed;
    std::vector<std::vector<Vec>> seeds(W + 1);
    for (std::uint32_t r = 0; r < params.extra_relations; ++r) {
      std::uint32_t w = W >= 2 ? 2 + static_cast<std::uint32_t>(lcg_next(s) % (W - 1)) : 1;
      Vec v(trunc.weight_dim(w), 0);
      for (auto& x : v) x = lcg_next(s) % K.size();
      if (!vec_is_zero(v)) seeds[w].push_back(std::move(v));
    }
    std::vector<Subspace> extra = fh_invariant_ideal(trunc, K, seeds);
    for (std::uint32_t w = 1; w <= W; ++w) ideal[w] = subspace_sum(K, ideal[w], extra[w]);
  }

  // complement coordinates per weight
  std::vector<std::vector<std::uint32_t>> coords(W + 1);
  std::vector<std::uint32_t> weight_of;  // per ambient coordinate
  std::vector<std::uint32_t> offset(W + 2, 0);
  for (std::uint32_t w = 1; w <= W; ++w) {
    std::vector<bool> pivot(trunc.weight_dim(w), false);
    for (auto c : ideal[w].pivots) pivot[c] = true;
    for (std::uint32_t i = 0; i < trunc.weight_dim(w); ++i)
      if (!pivot[i]) coords[w].push_back(i);
    offset[w + 1] = offset[w] + static_cast<std::uint32_t>(coords[w].size());
    for (std::size_t k = 0; k < coords[w].size(); ++k) weight_of.push_back(w);
  }
  std::uint32_t dim = offset[W + 1];
  if (dim == 0) throw StructuralError("infeasible free-nilpotent family parameters: quotient is 0");

  auto project = [&](std::uint32_t w, Vec kvec) {
    kvec = reduce_mod(K, ideal[w], std::move(kvec));
    Vec out(coords[w].size(), 0);
    for (std::size_t i = 0; i < coords[w].size(); ++i) out[i] = kvec[coords[w][i]];
    return out;
  };

  LieInstance inst;
  inst.field = K;
  inst.shape = shape;
  LieRing ring(K, dim);
  for (std::uint32_t wa = 1; wa <= W; ++wa) {
    for (std::size_t a = 0; a < coords[wa].size(); ++a) {
      for (std::uint32_t wb = wa; wb <= W; ++wb) {
        for (std::size_t b = 0; b < coords[wb].size(); ++b) {
          std::uint32_t ga = offset[wa] + static_cast<std::uint32_t>(a);
          std::uint32_t gb = offset[wb] + static_cast<std::uint32_t>(b);
          if (ga >= gb) continue;
          Vec val(dim, 0);
          if (wa + wb <= W) {
            Vec ua(trunc.weight_dim(wa), 0), ub(trunc.weight_dim(wb), 0);
            ua[coords[wa][a]] = 1;
            ub[coords[wb][b]] = 1;
            Vec prod = project(wa + wb, trunc.bracket_local(K, wa, ua, wb, ub));
            for (std::size_t k = 0; k < prod.size(); ++k) val[offset[wa + wb] + k] = prod[k];
          }
          ring.set_bracket(ga, gb, val);
        }
      }
    }
  }
  inst.ring = std::move(ring);

  inst.phi = Mat(dim, dim);
  fel omega = K.pow(K.omega(), K.n_root() / shape.n);
  for (std::uint32_t w = 1; w <= W; ++w)
    for (std::size_t a = 0; a < coords[w].size(); ++a) {
      std::uint32_t idx = trunc.index_of(trunc.global_of(w, coords[w][a]));
      inst.phi.at(offset[w] + a, offset[w] + a) = K.pow(omega, idx);
    }
  inst.h = Mat(dim, dim);
  for (std::uint32_t w = 1; w <= W; ++w) {
    Mat hw = trunc.h_matrix(K, w);
    for (std::size_t a = 0; a < coords[w].size(); ++a) {
      Vec u(trunc.weight_dim(w), 0);
      u[coords[w][a]] = 1;
      Vec img = project(w, vec_mat(K, u, hw));
      for (std::size_t k = 0; k < img.size(); ++k)
        inst.h.at(offset[w] + a, offset[w] + k) = img[k];
    }
  }
  for (std::uint32_t w = 1; w <= W; ++w)
    for (std::size_t a = 0; a < coords[w].size(); ++a)
      inst.basis_names.push_back(trunc.render(trunc.global_of(w, coords[w][a])));
  check_generated(inst, "free-nilpotent");
  return inst;
}

LieInstance generate_direct_sum(std::uint64_t p, const FrobeniusShape& shape,
                                std::uint32_t heis_copies, std::uint32_t pair_copies) {
  ShapeDiagnosis sd = validate_frobenius_shape(shape.n, shape.q, shape.r);
  if (!sd.valid) throw StructuralError("invalid shape: " + sd.first_violation);
  if (shape.q != 2 || shape.r != shape.n - 1)
    throw StructuralError("infeasible direct-sum family parameters: needs q = 2, r = n - 1");
  if (heis_copies + pair_copies == 0)
    throw StructuralError("infeasible direct-sum family parameters: no blocks");
  LieInstance inst;
  inst.field = make_field_with_root_order(p, shape.n);
  inst.shape = shape;
  const Fq& K = inst.field;
  fel omega = K.pow(K.omega(), K.n_root() / shape.n);
  std::uint32_t dim = heis_copies * 3 + pair_copies * 6;
  LieRing ring(K, dim);
  inst.phi = Mat(dim, dim);
  inst.h = Mat(dim, dim);
  std::uint32_t off = 0;
  for (std::uint32_t c = 0; c < heis_copies; ++c) {
    Vec z(dim, 0);
    z[off + 2] = 1;
    ring.set_bracket(off + 0, off + 1, z);
    inst.phi.at(off + 0, off + 0) = omega;
    inst.phi.at(off + 1, off + 1) = K.pow(omega, shape.n - 1);
    inst.phi.at(off + 2, off + 2) = 1;
    inst.h.at(off + 0, off + 1) = 1;
    inst.h.at(off + 1, off + 0) = 1;
    inst.h.at(off + 2, off + 2) = K.neg(1);
    std::string sfx = std::to_string(c + 1);
    inst.basis_names.push_back("x" + sfx);
    inst.basis_names.push_back("y" + sfx);
    inst.basis_names.push_back("z" + sfx);
    off += 3;
  }
  for (std::uint32_t c = 0; c < pair_copies; ++c) {
    // block A: xA, yA in L_1, zA in L_2; block B mirrored at index r = n-1
    Vec zA(dim, 0), zB(dim, 0);
    zA[off + 2] = 1;
    zB[off + 5] = 1;
    ring.set_bracket(off + 0, off + 1, zA);
    ring.set_bracket(off + 3, off + 4, zB);
    inst.phi.at(off + 0, off + 0) = omega;
    inst.phi.at(off + 1, off + 1) = omega;
    inst.phi.at(off + 2, off + 2) = K.mul(omega, omega);
    fel winv = K.pow(omega, shape.n - 1);
    inst.phi.at(off + 3, off + 3) = winv;
    inst.phi.at(off + 4, off + 4) = winv;
    inst.phi.at(off + 5, off + 5) = K.mul(winv, winv);
    inst.h.at(off + 0, off + 3) = 1;
    inst.h.at(off + 3, off + 0) = 1;
    inst.h.at(off + 1, off + 4) = 1;
    inst.h.at(off + 4, off + 1) = 1;
    inst.h.at(off + 2, off + 5) = 1;
    inst.h.at(off + 5, off + 2) = 1;
    std::string sfx = std::to_string(c + 1);
    inst.basis_names.push_back("a" + sfx);
    inst.basis_names.push_back("b" + sfx);
    inst.basis_names.push_back("c" + sfx);
    inst.basis_names.push_back("a'" + sfx);
    inst.basis_names.push_back("b'" + sfx);
    inst.basis_names.push_back("c'" + sfx);
    off += 6;
  }
  inst.ring = std::move(ring);
  check_generated(inst, "direct-sum");
  return inst;
}

}  // namespace froblie
