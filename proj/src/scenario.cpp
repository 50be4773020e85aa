#include "gmorita/scenario.hpp"

#include <fstream>
#include <set>

#include "gmorita/error.hpp"
#include "gmorita/oracle.hpp"

namespace gmorita {

namespace {

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object())
    throw ParseError(where + " must be an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k))
      throw ParseError("unknown key \"" + k + "\" in " + where);
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw ParseError(what + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t as_index(const Json& j, const std::string& what) {
  std::int64_t v = as_int(j, what);
  if (v < 0)
    throw ParseError(what + " must be nonnegative");
  return std::size_t(v);
}

Elem parse_element(const FiniteGroup& G, const Json& j) {
  if (j.is_string()) {
    if (auto e = G.find_label(j.get<std::string>()))
      return *e;
    throw ParseError("no element labelled " + j.get<std::string>());
  }
  if (j.is_array() && G.is_permutation_group()) {
    Permutation p;
    for (const Json& x : j)
      p.push_back(Elem(as_index(x, "permutation entry")));
    if (auto e = G.find_permutation(p))
      return *e;
    throw ParseError("permutation " + j.dump() + " is not in the group");
  }
  throw ParseError("element must be a label or a permutation image array: " + j.dump());
}

std::vector<Elem> parse_elements(const FiniteGroup& G, const Json& j) {
  if (!j.is_array())
    throw ParseError("expected a list of elements");
  std::vector<Elem> out;
  for (const Json& x : j)
    out.push_back(parse_element(G, x));
  return out;
}

Matrix parse_matrix(const PrimeField& F, const Json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a nonempty list of rows");
  std::vector<Vec> rows;
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  for (const Json& r : j) {
    if (!r.is_array() || r.size() != cols)
      throw ParseError("matrix rows must be lists of equal length");
    Vec v;
    for (const Json& x : r)
      v.push_back(F.from_int(as_int(x, "matrix entry")));
    rows.push_back(std::move(v));
  }
  return Matrix::from_rows(rows, cols);
}

std::vector<GeneratorImage> parse_images(const FiniteGroup& G, const PrimeField& F, const Json& j, std::size_t dim) {
  if (!j.is_array())
    throw ParseError("expected a list of {element, matrix}");
  std::vector<GeneratorImage> out;
  for (const Json& x : j) {
    allow_keys(x, {"element", "matrix"}, "generator image");
    GeneratorImage g{parse_element(G, field_of(x, "element")), parse_matrix(F, field_of(x, "matrix"))};
    if (g.matrix.rows() != dim || g.matrix.cols() != dim)
      throw ParseError("matrix for " + G.label(g.element) + " must be " + std::to_string(dim) + "x" +
                       std::to_string(dim));
    out.push_back(std::move(g));
  }
  return out;
}

const FiniteGroup& group_ref(const Scenario& s, const Json& j) {
  if (!j.is_string())
    throw ParseError("group reference must be a name");
  auto it = s.groups.find(j.get<std::string>());
  if (it == s.groups.end())
    throw ParseError("unknown group \"" + j.get<std::string>() + "\"");
  return it->second;
}

Vec pick_block(const FiniteGroup& G, const Subgroup& K, const PrimeField& F, const Json& j, const char* what) {
  std::size_t i = as_index(j, what);
  BlockDecomposition d = subgroup_blocks(G, K, F);
  if (i >= d.idempotents.size())
    throw ParseError(std::string(what) + " index " + std::to_string(i) + " out of range (" +
                     std::to_string(d.idempotents.size()) + " blocks)");
  return d.idempotents[i];
}

// ---------------------------------------------------------------------------
// Running checks

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const Check& c : checks) {
    Json x;
    x["name"] = c.name;
    x["ok"] = c.ok;
    if (!c.detail.empty())
      x["detail"] = c.detail;
    a.push_back(std::move(x));
  }
  return a;
}

bool all_ok(const std::vector<Check>& checks) {
  for (const Check& c : checks)
    if (!c.ok)
      return false;
  return true;
}

// rho indexed by position in `order` for a representation of the subgroup K.
std::vector<Matrix> representation(const Scenario& s, const std::vector<Elem>& order,
                                   const std::vector<GeneratorImage>& images, std::size_t dim, bool right) {
  const FiniteGroup& G = s.setting.G;
  SubgroupAsGroup kl = subgroup_as_group(G, make_subgroup(G, order));
  std::vector<Matrix> local;
  if (images.empty()) {
    require(kl.group.order() == 1, ErrorKind::InvalidInput, "generator images are required for a nontrivial group");
    local.push_back(Matrix::identity(dim));
  } else {
    std::vector<Elem> gens;
    std::vector<Matrix> mats;
    for (const GeneratorImage& g : images) {
      auto l = kl.to_local(g.element);
      require(l.has_value(), ErrorKind::InvalidInput, G.label(g.element) + " is not in the acting subgroup");
      gens.push_back(*l);
      mats.push_back(g.matrix);
    }
    local = extend_representation(kl.group, gens, mats, s.F, right);
  }
  std::vector<Matrix> out;
  for (Elem k : order)
    out.push_back(local[*kl.to_local(k)]);
  return out;
}

struct Built {
  AmbientAlgebras amb;
  Bimodule M;
};

Built build(const Scenario& s) {
  AmbientAlgebras amb = ambient_algebras(s.setting);
  auto left = representation(s, s.setting.N_order, s.M_left, s.M_dim, false);
  auto right = representation(s, s.setting.Np_order(), s.M_right, s.M_dim, true);
  Bimodule M = make_bimodule(amb.A.graded.one, amb.Ap.graded.one, s.M_dim, linear_extension(s.F, amb.A.beta, left),
                             linear_extension(s.F, amb.Ap.beta, right));
  return Built{std::move(amb), std::move(M)};
}

// X_q from the action Y of g (x) g^{-1}: with u_q = b n g and u'_q = b' n' g,
// u_q (x) u'_q^{-1} = (1 (x) n'^{-1})(n (x) 1)(g (x) g^{-1}).
Matrix unit_action_from(const Scenario& s, const Built& b, const GeneratorImage& gi) {
  const FiniteGroup& G = s.setting.G;
  const AmbientAlgebras& amb = b.amb;
  require(s.setting.Gp.contains(gi.element), ErrorKind::InvalidInput,
          "diagonal action given for " + G.label(gi.element) + ", which is not in G'");
  Elem q = amb.quotient.projection[gi.element];
  Elem r = amb.A.representatives[q];
  Elem rp = amb.Gp_local.to_parent[amb.Ap.representatives[q]];
  Elem g_inv = G.inv(gi.element);
  Elem n = G.mul(r, g_inv), np = G.mul(rp, g_inv);
  Matrix L = b.M.left_of(amb.A.graded.restrict_one(amb.A.element(n)));
  Matrix R = b.M.right_of(amb.Ap.graded.restrict_one(amb.Ap.element(*amb.Gp_local.to_local(G.inv(np)))));
  return mul(s.F, mul(s.F, L, R), gi.matrix);
}

struct WitnessBuild {
  std::optional<DeltaModuleStructure> D;
  std::optional<GradedMoritaWitness> W;
  std::vector<Check> checks;
};

WitnessBuild build_witness(const Scenario& s, const Built& b, const RunOptions& opt) {
  WitnessBuild out;
  const GradedAlgebra& A = b.amb.A.graded;
  const GradedAlgebra& Ap = b.amb.Ap.graded;
  const FiniteGroup& Q = A.grading_group;
  if (s.diagonal_actions) {
    std::vector<std::optional<Matrix>> X(Q.order());
    X[0] = Matrix::identity(s.M_dim);
    bool consistent = true;
    std::string detail;
    for (const GeneratorImage& gi : *s.diagonal_actions) {
      Matrix x = unit_action_from(s, b, gi);
      Elem q = b.amb.quotient.projection[gi.element];
      if (q == 0 && x != *X[0]) {
        consistent = false;
        detail = s.setting.G.label(gi.element) + " (x) its inverse must act as the B-action of its N-part";
      } else if (X[q] && *X[q] != x) {
        consistent = false;
        detail = "two diagonal actions disagree in degree " + Q.label(q);
      }
      X[q] = std::move(x);
    }
    std::vector<Matrix> unit_actions;
    for (Elem q = 0; q < Q.order(); ++q) {
      if (!X[q]) {
        consistent = false;
        detail = "no diagonal action given in degree " + Q.label(q);
        break;
      }
      unit_actions.push_back(*X[q]);
    }
    out.checks.push_back({"witness covers G/N consistently", consistent, detail});
    if (!consistent)
      return out;
    DeltaModuleStructure D{A, Ap, b.M, std::move(unit_actions)};
    std::string why = check_delta_structure(D);
    out.checks.push_back({"witness Delta-structure identities", why.empty(), why});
    if (!why.empty())
      return out;
    out.D = std::move(D);
  } else {
    DeltaSearchResult d = find_delta_extension(A, Ap, b.M, opt.seed);
    out.checks.push_back({"Delta-extension of M found", d.status == IsoStatus::Found, d.reason});
    if (!d.structure)
      return out;
    out.D = std::move(*d.structure);
  }
  InducedBimodule ind = induce_graded(*out.D);
  GradedMoritaResult r = verify_graded_morita(A, Ap, ind.graded.module, ind.graded.components);
  for (const Check& c : r.checks)
    out.checks.push_back(c);
  if (r.witness)
    out.W = std::move(*r.witness);
  else
    out.checks.push_back({"graded Morita witness certified", false, r.reason});
  return out;
}

Module make_U(const Scenario& s, const Built& b) {
  const AlgebraRef& B = b.amb.A.graded.one;
  if (s.U_kind == "regular")
    return regular_module(B);
  if (s.U_kind == "M")
    return make_module(B, b.M.dim, b.M.left_action);
  auto rho = representation(s, s.setting.N_order, s.U_images, s.U_dim, false);
  return make_module(B, s.U_dim, linear_extension(s.F, b.amb.A.beta, rho));
}

std::size_t log_p(std::uint64_t n, Scalar p) {
  std::size_t k = 0;
  for (; n > 1; n /= p)
    ++k;
  return k;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    rows.push_back(m.row_vec(r));
  return rows;
}

void run_morita(const Scenario& s, const RunOptions& opt, CheckRun& run) {
  Built b = build(s);
  MoritaContext ctx = build_morita_context(b.M);
  std::vector<Check> checks;
  std::string why = check_morita_context(ctx);
  checks.push_back({"Morita context identities", why.empty(), why});
  run.report["dim_M"] = ctx.M.dim;
  run.report["dim_Mstar"] = ctx.Mstar.module.dim;
  run.report["dual_basis_J"] = ctx.J.size();
  run.report["dual_basis_I"] = ctx.I.size();
  if (opt.oracle) {
    // End_B(M) has the dimension of B' for a Morita bimodule.
    auto n = oracle::count_intertwiners(s.F, b.M.left_action, b.M.left_action, b.M.dim, b.M.dim);
    if (n)
      checks.push_back({"oracle: dim End_B(M) = dim B'", log_p(*n, s.F.p()) == b.M.right->dim(),
                        std::to_string(log_p(*n, s.F.p()))});
    else
      checks.push_back({"oracle: dim End_B(M) = dim B'", true, "skipped: too large to enumerate"});
  }
  run.report["checks"] = checks_json(checks);
  if (!all_ok(checks))
    run.outcome = Outcome::Fail;
}

void run_graded(const Scenario& s, const RunOptions& opt, CheckRun& run) {
  Built b = build(s);
  WitnessBuild w = build_witness(s, b, opt);
  if (w.D) {
    Json X = Json::array();
    for (const Matrix& m : w.D->unit_actions)
      X.push_back(matrix_json(m));
    run.report["unit_actions"] = std::move(X);
  }
  if (w.W) {
    run.report["dim_Mtilde"] = w.W->Mtilde.module.dim;
    run.report["dim_Mtilde_star"] = w.W->Mtilde_star.module.dim;
  }
  if (opt.oracle && w.D) {
    // Each u_g (x) u'_g^{-1} is an isomorphism from M to its twist.
    const GradedAlgebra& A = w.D->A;
    for (Elem g = 0; g < A.grading_group.order(); ++g) {
      std::vector<Matrix> src, dst;
      const Algebra& a = *A.algebra;
      for (std::size_t i = 0; i < A.one->dim(); ++i) {
        src.push_back(b.M.left_action[i]);
        Vec c = a.mul(a.mul(A.unit_inverses[g], A.embed_one(A.one->basis(i))), A.units[g]);
        dst.push_back(b.M.left_of(A.restrict_one(c)));
      }
      auto e = oracle::exists_invertible_intertwiner(s.F, src, dst, b.M.dim);
      w.checks.push_back({"oracle: M is stable under twisting by " + A.grading_group.label(g), !e || *e,
                          e ? "" : "skipped: too large to enumerate"});
    }
  }
  run.report["checks"] = checks_json(w.checks);
  if (!w.W || !all_ok(w.checks))
    run.outcome = Outcome::Fail;
}

void run_diagram(const Scenario& s, const RunOptions& opt, CheckRun& run) {
  Built b = build(s);
  WitnessBuild w = build_witness(s, b, opt);
  if (!w.W) {
    run.report["checks"] = checks_json(w.checks);
    run.outcome = Outcome::Fail;
    return;
  }
  std::optional<Vec> twist;
  if (s.twist) {
    Elem t = *s.twist;
    require(s.setting.Gp.contains(t), ErrorKind::InvalidInput, "twist must be an element of G'");
    twist = b.amb.Ap.element(*b.amb.Gp_local.to_local(t));
    run.report["twist"] = s.setting.G.label(t);
  }
  Module U = make_U(s, b);
  DiagramReport rep = verify_diagram(*w.W, U, twist);
  std::vector<Check> checks = rep.checks;
  if (opt.oracle) {
    const GradedAlgebra& A = w.W->A();
    const Algebra& a = *A.algebra;
    std::size_t expected = 0;
    bool feasible = true;
    for (Elem g = 0; g < A.grading_group.order() && feasible; ++g) {
      std::vector<Matrix> src, dst;
      for (std::size_t i = 0; i < A.one->dim(); ++i) {
        src.push_back(U.left_action[i]);
        Vec c = a.mul(a.mul(A.unit_inverses[g], A.embed_one(A.one->basis(i))), A.units[g]);
        dst.push_back(U.left_of(A.restrict_one(c)));
      }
      auto n = oracle::count_intertwiners(s.F, src, dst, U.dim, U.dim);
      feasible = n.has_value();
      if (n)
        expected += log_p(*n, s.F.p());
    }
    checks.push_back({"oracle: dim E(U) by counting twisted homomorphisms", !feasible || expected == rep.dim_E,
                      feasible ? std::to_string(expected) : "skipped: too large to enumerate"});
  }
  run.report["dim_E"] = rep.dim_E;
  run.report["dim_E_prime"] = rep.dim_Ep;
  run.report["dim_C"] = rep.dim_C;
  run.report["dim_C_prime"] = rep.dim_Cp;
  run.report["residuals"] = rep.residuals;
  run.report["commutes"] = rep.commutes;
  run.report["checks"] = checks_json(checks);
  if (!all_ok(checks))
    run.outcome = Outcome::Fail;
}

void run_layer(const Scenario& s, const RunOptions& opt, CheckRun& run) {
  Built b = build(s);
  CentralizerLayer L = extend_to_centralizer_layer(s.setting, b.M);
  std::vector<Check> checks{{"centralizer layer certified", true, ""}};
  const FiniteGroup& G = s.setting.G;
  Json cent = Json::array();
  for (Elem c : L.centralizer.elements)
    cent.push_back(G.label(c));
  run.report["centralizer"] = std::move(cent);
  run.report["grading_group_order"] = L.grading_group.order();
  run.report["dim_C"] = L.C.graded.dim();
  run.report["dim_C_prime"] = L.Cp.graded.dim();
  run.report["dim_layer"] = L.witness.Mtilde.module.dim;
  if (opt.oracle) {
    auto direct = oracle::commuting_elements(G, s.setting.N_order);
    checks.push_back({"oracle: C_G(N) by direct commutation", direct == L.centralizer.elements, ""});
  }
  run.report["checks"] = checks_json(checks);
  if (!all_ok(checks))
    run.outcome = Outcome::Fail;
}

void run_butterfly(const Scenario& s, const RunOptions& opt, CheckRun& run) {
  Built b = build(s);
  WitnessBuild w = build_witness(s, b, opt);
  if (!w.W) {
    run.report["checks"] = checks_json(w.checks);
    run.outcome = Outcome::Fail;
    return;
  }
  Json targets = Json::array();
  bool ok = true;
  for (const ButterflyTarget& t : s.butterfly) {
    const FiniteGroup& H = s.groups.at(t.group);
    GroupEmbedding emb = make_embedding(s.setting.G, s.setting.N(), H, t.generator_images);
    TransportResult r = butterfly_transport(s.setting, *w.W, H, emb);
    std::vector<Check> checks = r.checks;
    if (opt.oracle) {
      auto direct = oracle::commuting_elements(H, r.groups.N_hat.elements);
      checks.push_back({"oracle: C_Ghat(N) by direct commutation", direct == r.groups.centralizer_hat.elements, ""});
    }
    Json x;
    x["group"] = t.group;
    x["order"] = H.order();
    x["G_hat_prime_order"] = r.groups.Ghat_prime.order();
    x["grading_group_order"] = r.hat.A.graded.grading_group.order();
    x["transversal_size"] = r.groups.T.size();
    x["dim_Mhat"] = r.Mhat.graded.module.dim;
    x["checks"] = checks_json(checks);
    ok = ok && all_ok(checks);
    targets.push_back(std::move(x));
  }
  run.report["targets"] = std::move(targets);
  run.report["checks"] = checks_json(w.checks);
  if (!ok || !all_ok(w.checks))
    run.outcome = Outcome::Fail;
}

} // namespace

FiniteGroup parse_group(const Json& j) {
  GroupSpec spec;
  if (j.contains("table")) {
    allow_keys(j, {"table", "labels"}, "group");
    spec.kind = GroupSpec::Kind::Table;
    for (const Json& row : field_of(j, "table")) {
      std::vector<Elem> r;
      for (const Json& x : row)
        r.push_back(Elem(as_index(x, "table entry")));
      spec.table.push_back(std::move(r));
    }
    if (j.contains("labels"))
      spec.labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    allow_keys(j, {"degree", "generators", "order_bound"}, "group");
    spec.kind = GroupSpec::Kind::Permutation;
    spec.degree = as_index(field_of(j, "degree"), "degree");
    for (const Json& g : field_of(j, "generators")) {
      Permutation p;
      for (const Json& x : g)
        p.push_back(Elem(as_index(x, "permutation entry")));
      spec.generators.push_back(std::move(p));
    }
    if (j.contains("order_bound"))
      spec.order_bound = as_index(j.at("order_bound"), "order_bound");
  }
  try {
    return load_group(spec);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid group: ") + e.what());
  }
}

Scenario parse_scenario(const Json& j) {
  allow_keys(j, {"version", "name", "field", "groups", "setting", "M", "witness", "U", "twist", "butterfly", "pipeline"},
             "scenario");
  if (as_int(field_of(j, "version"), "version") != 1)
    throw ParseError("unsupported scenario version " + j.at("version").dump());
  Scenario s;
  s.name = j.value("name", std::string{});
  try {
    s.F = PrimeField(Scalar(as_index(field_of(j, "field"), "field")));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid field: ") + e.what());
  }
  const Json& groups = field_of(j, "groups");
  if (!groups.is_object())
    throw ParseError("groups must be an object of named group specs");
  for (const auto& [name, spec] : groups.items())
    s.groups.emplace(name, parse_group(spec));

  const Json& st = field_of(j, "setting");
  allow_keys(st, {"group", "N", "G_prime", "b", "b_prime"}, "setting");
  BlockSetting& set = s.setting;
  set.G = group_ref(s, field_of(st, "group"));
  set.F = s.F;
  const FiniteGroup& G = set.G;
  try {
    Subgroup N = generated_subgroup(G, parse_elements(G, field_of(st, "N")));
    if (!is_normal(G, N))
      throw ParseError("N is not normal in G");
    set.N_order = N.elements;
    set.Gp = generated_subgroup(G, parse_elements(G, field_of(st, "G_prime")));
    set.b = pick_block(G, N, s.F, field_of(st, "b"), "b");
    set.bp = pick_block(G, make_subgroup(G, set.Np_order()), s.F, field_of(st, "b_prime"), "b_prime");
  } catch (const Error& e) {
    throw ParseError(std::string("invalid setting: ") + e.what());
  }

  const Json& M = field_of(j, "M");
  allow_keys(M, {"dim", "left", "right"}, "M");
  s.M_dim = as_index(field_of(M, "dim"), "M.dim");
  if (s.M_dim == 0)
    throw ParseError("M.dim must be positive");
  s.M_left = parse_images(G, s.F, field_of(M, "left"), s.M_dim);
  s.M_right = parse_images(G, s.F, M.value("right", Json::array()), s.M_dim);

  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    allow_keys(w, {"diagonal_actions"}, "witness");
    s.diagonal_actions = parse_images(G, s.F, field_of(w, "diagonal_actions"), s.M_dim);
  }
  if (j.contains("U")) {
    const Json& u = j.at("U");
    if (u.is_string()) {
      s.U_kind = u.get<std::string>();
      if (s.U_kind != "M" && s.U_kind != "regular")
        throw ParseError("U must be \"M\", \"regular\" or {dim, images}");
    } else {
      allow_keys(u, {"dim", "images"}, "U");
      s.U_kind = "explicit";
      s.U_dim = as_index(field_of(u, "dim"), "U.dim");
      s.U_images = parse_images(G, s.F, field_of(u, "images"), s.U_dim);
    }
  }
  if (j.contains("twist"))
    s.twist = parse_element(G, j.at("twist"));
  if (j.contains("butterfly")) {
    for (const Json& t : j.at("butterfly")) {
      allow_keys(t, {"group", "embedding"}, "butterfly target");
      ButterflyTarget bt;
      bt.group = field_of(t, "group").get<std::string>();
      const FiniteGroup& H = group_ref(s, field_of(t, "group"));
      for (const Json& pair : field_of(t, "embedding")) {
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("embedding entries must be [element of N, element of the target]");
        bt.generator_images.push_back({parse_element(G, pair[0]), parse_element(H, pair[1])});
      }
      s.butterfly.push_back(std::move(bt));
    }
  }
  for (const Json& c : j.value("pipeline", Json::array())) {
    std::string name = c.get<std::string>();
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
      throw ParseError("unknown check \"" + name + "\" in pipeline");
    s.pipeline.push_back(std::move(name));
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_scenario(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CheckRun run_check(const Scenario& s, const std::string& check, const RunOptions& opt) {
  CheckRun run;
  run.report["check"] = check;
  try {
    if (check == "morita")
      run_morita(s, opt, run);
    else if (check == "graded-morita")
      run_graded(s, opt, run);
    else if (check == "diagram")
      run_diagram(s, opt, run);
    else if (check == "centralizer-layer")
      run_layer(s, opt, run);
    else if (check == "butterfly")
      run_butterfly(s, opt, run);
    else
      throw ParseError("unknown check \"" + check + "\"");
  } catch (const Error& e) {
    run.outcome = e.kind() == ErrorKind::Inconsistent ? Outcome::Inconsistent : Outcome::Fail;
    run.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  }
  run.report["status"] = run.outcome == Outcome::Pass ? "pass" : run.outcome == Outcome::Fail ? "fail" : "inconsistent";
  return run;
}

std::pair<int, Json> verify_scenario(const Scenario& s, const std::vector<std::string>& checks,
                                     const RunOptions& opt) {
  Json report;
  report["version"] = 1;
  report["scenario"] = s.name;
  report["seed"] = opt.seed;
  report["oracle"] = opt.oracle;
  Json results = Json::array();
  int code = 0;
  for (const std::string& c : checks.empty() ? s.pipeline : checks) {
    CheckRun r = run_check(s, c, opt);
    code = std::max(code, int(r.outcome));
    results.push_back(std::move(r.report));
  }
  report["results"] = std::move(results);
  return {code, std::move(report)};
}

Json algebra_json(const Algebra& A) {
  Json j;
  j["field"] = A.field().p();
  j["dim"] = A.dim();
  Json sc = Json::array();
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t k = 0; k < A.dim(); ++k)
      for (const auto& [l, c] : A.product(i, k))
        sc.push_back({i, k, l, c});
  j["structure_constants"] = std::move(sc);
  j["unit"] = A.unit();
  j["labels"] = A.labels();
  return j;
}

Json blocks_report(const FiniteGroup& G, const PrimeField& F, bool oracle) {
  Algebra kG = group_algebra(G, F);
  BlockDecomposition d = primitive_central_idempotents(kG);
  Json report;
  report["group_order"] = G.order();
  report["field"] = F.p();
  Json blocks = Json::array();
  Vec total(kG.dim(), 0);
  for (std::size_t i = 0; i < d.idempotents.size(); ++i) {
    const Vec& e = d.idempotents[i];
    Json b;
    b["index"] = i;
    b["dim"] = d.block_dims[i];
    Json support = Json::array();
    for (std::size_t g = 0; g < e.size(); ++g)
      if (e[g])
        support.push_back({G.label(Elem(g)), e[g]});
    b["idempotent"] = std::move(support);
    Vec sq = kG.mul(e, e);
    std::size_t idem = 0, cent = 0;
    for (std::size_t t = 0; t < sq.size(); ++t)
      idem += sq[t] != e[t];
    for (std::size_t g = 0; g < kG.dim(); ++g) {
      Vec x = kG.basis(g);
      Vec lhs = kG.mul(e, x), rhs = kG.mul(x, e);
      for (std::size_t t = 0; t < lhs.size(); ++t)
        cent += lhs[t] != rhs[t];
    }
    b["residuals"] = {{"idempotency", idem}, {"centrality", cent}};
    b["algebra"] = algebra_json(*block_cut(kG, e).algebra);
    for (std::size_t t = 0; t < e.size(); ++t)
      total[t] = F.add(total[t], e[t]);
    blocks.push_back(std::move(b));
  }
  report["blocks"] = std::move(blocks);
  report["sum_is_one"] = total == kG.unit();
  std::string why = check_block_decomposition(kG, d);
  report["decomposition_ok"] = why.empty();
  if (oracle) {
    auto brute = oracle::enumerate_block_idempotents(kG);
    report["oracle"] = brute ? Json(*brute == d.idempotents) : Json("skipped");
  }
  return report;
}

} // namespace gmorita
