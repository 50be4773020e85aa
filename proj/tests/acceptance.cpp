// Acceptance run: one line per criterion with its verdict and wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fixtures.hpp"
#include "gmorita/butterfly.hpp"
#include "gmorita/error.hpp"
#include "gmorita/oracle.hpp"
#include "gmorita/scenario.hpp"

using namespace gmorita;
using namespace fixtures;

namespace {

struct Verdict {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::string scenario(const std::string& name) { return std::string(GMORITA_SCENARIO_DIR) + "/" + name; }

bool same_span(const PrimeField& F, const Matrix& a, const Matrix& b) {
  return rank(F, a) == rank(F, b) && rank(F, vstack(a, b)) == rank(F, a);
}

Verdict blocks_of_s3() {
  Verdict v;
  FiniteGroup G = s3();
  Algebra kG = group_algebra(G, PrimeField(2));
  BlockDecomposition d = primitive_central_idempotents(kG);
  v.expect(d.idempotents.size() == 2, "expected 2 blocks");
  v.expect(d.block_dims == std::vector<std::size_t>{2, 4}, "block dimensions are not {2, 4}");
  v.expect(center(kG).rows() == 3, "Z(kG) should have 8 elements");
  auto brute = oracle::enumerate_block_idempotents(kG);
  v.expect(brute.has_value() && *brute == d.idempotents, "disagrees with exhaustive enumeration of Z(kG)");
  v.expect(check_block_decomposition(kG, d).empty(), "decomposition invariants");
  return v;
}

Verdict crossed_product() {
  Verdict v;
  MainFixture f = main_fixture();
  const GradedAlgebra& A = f.A.graded;
  const Algebra& a = *A.algebra;
  const FiniteGroup& Q = A.grading_group;
  v.expect(A.dim() == 12 && A.dim() == Q.order() * A.one->dim(), "dim A != |G/N| dim B");
  for (Elem g = 0; g < Q.order(); ++g) {
    v.expect(A.homogeneous_degree(A.units[g]) == g, "unit of degree " + Q.label(g) + " is not homogeneous");
    v.expect(a.mul(A.units[g], A.unit_inverses[g]) == a.unit() && a.mul(A.unit_inverses[g], A.units[g]) == a.unit(),
             "unit of degree " + Q.label(g) + " is not invertible");
  }
  std::size_t pairs = 0;
  for (Elem g = 0; g < Q.order(); ++g)
    for (Elem h = 0; h < Q.order(); ++h) {
      Matrix prods(0, a.dim()), target(0, a.dim());
      for (std::size_t i : A.components[g])
        for (std::size_t j : A.components[h])
          prods.append_row(a.mul(a.basis(i), a.basis(j)));
      for (std::size_t k : A.components[Q.mul(g, h)])
        target.append_row(a.basis(k));
      v.expect(same_span(f.F, prods, target), "A_g A_h != A_gh for " + Q.label(g) + ", " + Q.label(h));
      ++pairs;
    }
  v.expect(pairs == 9, "expected 9 degree pairs");
  return v;
}

void morita_identities(Verdict& v, const Bimodule& M, const std::string& which) {
  MoritaContext ctx = build_morita_context(M);
  const PrimeField& F = M.field();
  const Bimodule& Ms = ctx.Mstar.module;
  v.expect(check_morita_context(ctx).empty(), which + ": " + check_morita_context(ctx));
  v.expect(inverse(F, ctx.phi).has_value(), which + ": phi is not bijective");
  v.expect(inverse(F, ctx.psi).has_value(), which + ": psi is not bijective");
  for (std::size_t m = 0; m < M.dim; ++m)
    for (std::size_t k = 0; k < Ms.dim; ++k) {
      Vec em = unit_vector(M.dim, m), fk = unit_vector(Ms.dim, k);
      for (std::size_t n = 0; n < M.dim; ++n) {
        Vec en = unit_vector(M.dim, n);
        v.expect(mul(F, M.left_of(ctx.psi_of(em, fk)), en) == mul(F, M.right_of(ctx.phi_of(fk, en)), em),
                 which + ": psi(m (x) f) n != m phi(f (x) n)");
      }
      for (std::size_t l = 0; l < Ms.dim; ++l) {
        Vec gl = unit_vector(Ms.dim, l);
        v.expect(mul(F, Ms.left_of(ctx.phi_of(fk, em)), gl) == mul(F, Ms.right_of(ctx.psi_of(em, gl)), fk),
                 which + ": phi(f (x) m) g != f psi(m (x) g)");
      }
    }
  Vec one_p(M.right->dim(), 0), one(M.left->dim(), 0);
  for (const auto& [f, m] : ctx.J)
    one_p = add(F, one_p, ctx.phi_of(f, m));
  for (const auto& [n, f] : ctx.I)
    one = add(F, one, ctx.psi_of(n, f));
  v.expect(one_p == M.right->unit(), which + ": sum over J of phi is not 1");
  v.expect(one == M.left->unit(), which + ": sum over I of psi is not 1");
}

Verdict morita_contexts() {
  Verdict v;
  MainFixture f = main_fixture();
  morita_identities(v, regular_bimodule(f.A.graded.one), "M = B");
  morita_identities(v, f.M, "simple M");
  return v;
}

Verdict theta_homomorphism() {
  Verdict v;
  MainFixture f = main_fixture();
  Module U = make_module(f.A.graded.one, 2, f.M.left_action);
  GradedEndAlgebra E = graded_end_algebra(f.A.graded, U);
  GradedCentralizer C = graded_centralizer(f.A.graded);
  const Algebra& a = *f.A.graded.algebra;
  const Algebra& e = *E.graded.algebra;
  Matrix th = theta_matrix(E, C);
  v.expect(theta(E, a.unit()) == e.unit(), "theta(1) != 1");
  for (std::size_t i = 0; i < C.dim(); ++i) {
    v.expect(E.graded.homogeneous_degree(th.col_vec(i)) == C.graded.degree[i], "theta moves a degree");
    for (std::size_t j = 0; j < C.dim(); ++j)
      v.expect(theta(E, a.mul(C.basis.row(i), C.basis.row(j))) == e.mul(th.col_vec(i), th.col_vec(j)),
               "theta(cd) != theta(c) theta(d)");
  }
  return v;
}

Verdict diagram() {
  Verdict v;
  Scenario ok = load_scenario_file(scenario("running_example.json"));
  auto [code, report] = verify_scenario(ok, {"diagram"}, RunOptions{});
  const Json& r = report["results"][0];
  v.expect(code == 0 && r["commutes"] == true, "fixture diagram does not commute");
  for (const Json& x : r["residuals"])
    v.expect(x == 0, "nonzero residual on the fixture");
  v.expect(r["residuals"].size() == r["dim_C"].get<std::size_t>(), "residuals do not cover a basis of C_A(B)");
  Scenario bad = load_scenario_file(scenario("twisted_diagram.json"));
  auto [bcode, breport] = verify_scenario(bad, {"diagram"}, RunOptions{});
  std::size_t total = 0;
  for (const Json& x : breport["results"][0]["residuals"])
    total += x.get<std::size_t>();
  v.expect(bcode == 1 && total > 0, "twisted witness did not produce a nonzero residual");
  return v;
}

BlockSetting running_setting() {
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  return BlockSetting{G, N.elements, c3_factor(G), PrimeField(2), defect_zero_block(G, N), group_element(G, 0)};
}

Bimodule simple_over(const BlockSetting& s, const AmbientAlgebras& amb) {
  auto rho = simple_rep(s.G, s.N(), perm(s.G, {1, 2, 0, 3, 4, 5}), perm(s.G, {1, 0, 2, 3, 4, 5}));
  return make_bimodule(amb.A.graded.one, amb.Ap.graded.one, 2, linear_extension(s.F, amb.A.beta, rho),
                       {Matrix::identity(2)});
}

Verdict centralizer_layer() {
  Verdict v;
  BlockSetting s = running_setting();
  AmbientAlgebras amb = ambient_algebras(s);
  CentralizerLayer L = extend_to_centralizer_layer(s, simple_over(s, amb));
  v.expect(L.grading_group.order() == 3, "layer is not C3-graded");
  GradedMoritaResult r =
      verify_graded_morita(L.C.graded, L.Cp.graded, L.witness.Mtilde.module, L.witness.Mtilde.components);
  v.expect(r.witness.has_value(), "layer not certified: " + r.reason);

  Scenario bad = load_scenario_file(scenario("central_mismatch.json"));
  auto [code, report] = verify_scenario(bad, {"centralizer-layer"}, RunOptions{});
  const Json& err = report["results"][0]["error"];
  v.expect(code == 1 && err.contains("message") &&
               err["message"].get<std::string>().find("z = (0 1)") != std::string::npos,
           "violation of the central-element hypothesis is not named");
  return v;
}

struct Certified {
  BlockSetting s;
  AmbientAlgebras amb;
  GradedMoritaWitness W;
};

Certified certified_running_example() {
  BlockSetting s = running_setting();
  AmbientAlgebras amb = ambient_algebras(s);
  Bimodule M = simple_over(s, amb);
  DeltaSearchResult d = find_delta_extension(amb.A.graded, amb.Ap.graded, M);
  require(d.structure.has_value(), ErrorKind::Inconsistent, "no Delta-structure on the running example");
  InducedBimodule ind = induce_graded(*d.structure);
  GradedMoritaResult r = verify_graded_morita(amb.A.graded, amb.Ap.graded, ind.graded.module, ind.graded.components);
  require(r.witness.has_value(), ErrorKind::Inconsistent, r.reason);
  return Certified{std::move(s), std::move(amb), std::move(*r.witness)};
}

Verdict butterfly() {
  Verdict v;
  Certified c = certified_running_example();
  const FiniteGroup& G = c.s.G;
  Elem r = perm(G, {1, 2, 0, 3, 4, 5}), t = perm(G, {1, 0, 2, 3, 4, 5});
  FiniteGroup targets[] = {s3(), s3xc2()};
  for (const FiniteGroup& H : targets) {
    Permutation hr{1, 2, 0}, ht{1, 0, 2};
    for (std::size_t k = 3; k < H.degree(); ++k) {
      hr.push_back(std::uint32_t(k));
      ht.push_back(std::uint32_t(k));
    }
    GroupEmbedding emb = make_embedding(G, c.s.N(), H, {{r, perm(H, hr)}, {t, perm(H, ht)}});
    TransportResult res = butterfly_transport(c.s, c.W, H, emb);
    const std::string tag = "|Ghat| = " + std::to_string(H.order());
    GradedMoritaResult again = verify_graded_morita(res.hat.A.graded, res.hat.Ap.graded, res.hat_witness.Mtilde.module,
                                                    res.hat_witness.Mtilde.components);
    v.expect(again.witness.has_value(), tag + ": hat witness not certified");
    const std::size_t q = H.order() / res.groups.N_hat.order();
    v.expect(res.Mhat.graded.module.dim == q * 2, tag + ": dim Mhat != |Ghat/N| * 2");
    v.expect(res.groups.centralizer_hat_in_Ghat_prime, tag + ": C_Ghat(N) not in G'hat");
    v.expect(res.groups.Ghat_is_N_Ghat_prime, tag + ": Ghat != N G'hat");
    v.expect(res.groups.N_prime_is_N_cap_Ghat_prime, tag + ": N' != N cap G'hat");
    v.expect(res.groups.outer_quotients_isomorphic, tag + ": outer quotients differ");
  }
  return v;
}

Verdict degenerate_cases() {
  Verdict v;
  // Trivial grading: S3 = N = G, M = B.
  FiniteGroup G = s3();
  BlockExtension A = block_extension(G, whole_group(G), PrimeField(2), defect_zero_block(G, whole_group(G)));
  const GradedAlgebra& gA = A.graded;
  const Algebra& a = *gA.algebra;
  const PrimeField F(2);
  Bimodule R = regular_bimodule(gA.one);
  DeltaSearchResult d = find_delta_extension(gA, gA, R);
  v.expect(d.structure.has_value(), "no Delta-structure for trivial grading");
  if (!d.structure)
    return v;
  EpsilonIso eps = epsilon_iso(*d.structure);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t b = 0; b < 4; ++b) {
      Vec em = unit_vector(4, m), eb = unit_vector(4, b);
      v.expect(mul(F, eps.map, eps.source.pure(em, eb)) == eps.target.tensor.pure(a.unit(), mul(F, R.right_of(eb), em)),
               "epsilon is not m (x) b -> 1 (x) mb");
    }
  GradedBimodule reg = regular_graded_bimodule(gA);
  GradedMoritaResult r = verify_graded_morita(gA, gA, reg.module, reg.components);
  v.expect(r.witness.has_value(), "regular bimodule not certified");
  if (!r.witness)
    return v;
  const GradedMoritaWitness& W = *r.witness;
  BetaIso beta = beta_iso(W);
  const Bimodule& Ms = W.context.Mstar.module;
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t k = 0; k < Ms.dim; ++k) {
      Vec eb = unit_vector(4, b), fk = unit_vector(Ms.dim, k);
      v.expect(mul(F, beta.map, beta.source.pure(eb, fk)) == beta.target.pure(mul(F, Ms.left_of(eb), fk), a.unit()),
               "beta is not b (x) f -> bf (x) 1");
    }
  Module U = regular_module(gA.one);
  GradedEndAlgebra E = graded_end_algebra(gA, U);
  GradedCentralizer C = graded_centralizer(gA);
  for (std::size_t i = 0; i < C.dim(); ++i) {
    Vec c = C.basis.row_vec(i);
    Matrix th = theta_map(E, c);
    for (std::size_t u = 0; u < 4; ++u) {
      Vec eu = unit_vector(4, u);
      Vec cu = mul(F, U.left_of(gA.restrict_one(c)), eu);
      v.expect(mul(F, th, E.induced.pure(a.unit(), eu)) == E.induced.pure(a.unit(), cu),
               "theta is not 1 (x) u -> 1 (x) cu");
    }
    v.expect(phi2(W, c) == c, "phi_2 is not the identity on Z(B)");
  }
  DiagramReport rep = verify_diagram(W, U);
  v.expect(rep.commutes, "diagram does not commute with trivial grading");
  Phi1 p1 = phi1(W, beta, U);
  v.expect(p1.apply(Matrix::identity(E.induced.module.dim)) == Matrix::identity(p1.Ep.induced.module.dim),
           "phi_1(1) != 1");

  // Ghat = G: transport reproduces the witness.
  Certified c = certified_running_example();
  TransportResult t = butterfly_transport(c.s, c.W, c.s.G, identity_embedding(c.s.N()));
  v.expect(t.delta_hat.unit_actions == t.delta.unit_actions, "Ghat = G changes the unit actions");
  v.expect(is_graded_isomorphic(t.hat_witness.Mtilde, c.W.Mtilde).found(), "Ghat = G changes Mtilde");
  return v;
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {"block decomposition of F2 S3", 1, blocks_of_s3},
      {"crossed-product structure of the fixture", 1, crossed_product},
      {"Morita context identities", 1, morita_contexts},
      {"theta is a graded algebra homomorphism", 1, theta_homomorphism},
      {"centralizer diagram commutes", 5, diagram},
      {"centralizer-layer extension", 5, centralizer_layer},
      {"butterfly transport end to end", 10, butterfly},
      {"degenerate cases", 1, degenerate_cases},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs > c.limit_s) {
      v.ok = false;
      v.note = "over the time limit";
    }
    std::printf("%s %d %s (%.3f s, limit %.0f s)%s%s\n", v.ok ? "PASS" : "FAIL", index, c.name, secs, c.limit_s,
                v.note.empty() ? "" : ": ", v.note.c_str());
    failed += !v.ok;
  }
  return failed == 0 ? 0 : 1;
}
