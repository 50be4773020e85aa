#include "doctest.h"

#include "fixtures.hpp"
#include "gmorita/error.hpp"
#include "gmorita/graded_morita.hpp"
#include "gmorita/oracle.hpp"

using namespace gmorita;
using namespace fixtures;

namespace {

struct Pipeline {
  MainFixture f;
  DeltaModuleStructure D;
  InducedBimodule ind;
  GradedMoritaWitness W;
  Module U;
};

Pipeline pipeline() {
  Pipeline p{main_fixture(), {}, {}, {}, {}};
  p.D = *find_delta_extension(p.f.A.graded, p.f.Ap.graded, p.f.M).structure;
  p.ind = induce_graded(p.D);
  GradedMoritaResult r = verify_graded_morita(p.f.A.graded, p.f.Ap.graded, p.ind.graded.module, p.ind.graded.components);
  REQUIRE_MESSAGE(r.witness.has_value(), r.reason);
  p.W = *r.witness;
  p.U = make_module(p.f.A.graded.one, 2, p.f.M.left_action);
  return p;
}

std::size_t count_degree(const GradedAlgebra& A, Elem g) { return A.components[g].size(); }

// The whole group S3 as its own normal subgroup: trivial grading.
BlockExtension ungraded_block() {
  FiniteGroup G = s3();
  return block_extension(G, whole_group(G), PrimeField(2), defect_zero_block(G, whole_group(G)));
}

} // namespace

TEST_CASE("graded endomorphism algebra of the simple module") {
  MainFixture f = main_fixture();
  Module U = make_module(f.A.graded.one, 2, f.M.left_action);
  GradedEndAlgebra E = graded_end_algebra(f.A.graded, U);
  CHECK(E.dim() == 3);
  for (Elem g = 0; g < 3; ++g)
    CHECK(count_degree(E.graded, g) == 1);
  CHECK_NOTHROW(validate_algebra(*E.graded.algebra));
  // opposite composition
  for (std::size_t i = 0; i < E.dim(); ++i)
    for (std::size_t j = 0; j < E.dim(); ++j) {
      Vec ij = E.graded.algebra->mul(E.graded.algebra->basis(i), E.graded.algebra->basis(j));
      CHECK(E.map_of(ij) == mul(f.F, E.basis_maps[j], E.basis_maps[i]));
    }
}

TEST_CASE("E(B) is A^op") {
  MainFixture f = main_fixture();
  Module U = regular_module(f.A.graded.one);
  GradedEndAlgebra E = graded_end_algebra(f.A.graded, U);
  CHECK(E.dim() == 12);
  for (Elem g = 0; g < 3; ++g)
    CHECK(count_degree(E.graded, g) == 4);
}

TEST_CASE("E(U) with trivial grading is End_B(U)^op") {
  BlockExtension A = ungraded_block();
  Module U = make_module(A.graded.one, 4, [&] {
    std::vector<Matrix> L;
    for (std::size_t i = 0; i < 4; ++i)
      L.push_back(A.graded.one->left_mult(A.graded.one->basis(i)));
    return L;
  }());
  GradedEndAlgebra E = graded_end_algebra(A.graded, U);
  CHECK(E.dim() == 4);
}

TEST_CASE("theta is a graded algebra homomorphism") {
  MainFixture f = main_fixture();
  Module U = make_module(f.A.graded.one, 2, f.M.left_action);
  GradedEndAlgebra E = graded_end_algebra(f.A.graded, U);
  GradedCentralizer C = graded_centralizer(f.A.graded);
  CHECK(C.dim() == 3);
  const Algebra& a = *f.A.graded.algebra;
  CHECK(theta_map(E, a.unit()) == Matrix::identity(6));
  Matrix th = theta_matrix(E, C);
  for (std::size_t i = 0; i < C.dim(); ++i) {
    CHECK(E.graded.homogeneous_degree(th.col_vec(i)) == C.graded.degree[i]);
    for (std::size_t j = 0; j < C.dim(); ++j) {
      Vec cc = a.mul(C.basis.row(i), C.basis.row(j));
      CHECK(theta(E, cc) == E.graded.algebra->mul(th.col_vec(i), th.col_vec(j)));
    }
  }
  // a non-central element of B
  Vec b = f.A.graded.embed_one(f.A.graded.one->basis(1));
  if (!C.from_parent(b))
    CHECK_THROWS_AS(theta_map(E, b), Error);
}

TEST_CASE("graded Morita verification") {
  SUBCASE("running example") {
    Pipeline p = pipeline();
    CHECK(p.W.Mtilde.module.dim == 6);
    CHECK(p.W.Mtilde_star.module.dim == 6);
    CHECK(p.W.context.M.dim == 2);
  }
  SUBCASE("regular bimodule") {
    MainFixture f = main_fixture();
    GradedBimodule R = regular_graded_bimodule(f.A.graded);
    GradedMoritaResult r = verify_graded_morita(f.A.graded, f.A.graded, R.module, R.components);
    REQUIRE_MESSAGE(r.witness.has_value(), r.reason);
    // phi~ is multiplication: phi~(iota(1) (x) 1) = 1
    CHECK(r.witness->tilde.phi.rows() == 12);
  }
  SUBCASE("a zeroed component is rejected") {
    Pipeline p = pipeline();
    std::vector<Matrix> comps = p.ind.graded.components;
    comps[1] = Matrix(0, 6);
    GradedMoritaResult r = verify_graded_morita(p.f.A.graded, p.f.Ap.graded, p.ind.graded.module, comps);
    CHECK_FALSE(r.witness.has_value());
    CHECK_FALSE(r.reason.empty());
  }
  SUBCASE("a supplied dual must match") {
    Pipeline p = pipeline();
    GradedMoritaResult ok = verify_graded_morita(p.f.A.graded, p.f.Ap.graded, p.ind.graded.module,
                                                 p.ind.graded.components, p.W.Mtilde_star);
    CHECK(ok.witness.has_value());
    GradedMoritaResult bad = verify_graded_morita(p.f.A.graded, p.f.Ap.graded, p.ind.graded.module,
                                                  p.ind.graded.components, regular_graded_bimodule(p.f.Ap.graded));
    CHECK_FALSE(bad.witness.has_value());
  }
}

TEST_CASE("epsilon and beta") {
  Pipeline p = pipeline();
  EpsilonIso eps = epsilon_iso(p.D);
  CHECK(eps.map.rows() == 6);
  CHECK(eps.map.cols() == 6);
  BetaIso beta = beta_iso(p.W);
  CHECK(beta.map.rows() == 6);
  CHECK(beta.map.cols() == 6);
}

TEST_CASE("epsilon and beta with trivial grading are the canonical maps") {
  BlockExtension A = ungraded_block();
  Bimodule R = regular_bimodule(A.graded.one);
  DeltaSearchResult d = find_delta_extension(A.graded, A.graded, R);
  REQUIRE(d.status == IsoStatus::Found);
  EpsilonIso eps = epsilon_iso(*d.structure);
  const PrimeField F(2);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t b = 0; b < 4; ++b) {
      Vec em = unit_vector(4, m), eb = unit_vector(4, b);
      Vec mb = mul(F, R.right_of(eb), em);
      CHECK(mul(F, eps.map, eps.source.pure(em, eb)) == eps.target.tensor.pure(A.graded.algebra->unit(), mb));
    }

  GradedBimodule G = regular_graded_bimodule(A.graded);
  GradedMoritaResult r = verify_graded_morita(A.graded, A.graded, G.module, G.components);
  REQUIRE(r.witness.has_value());
  BetaIso beta = beta_iso(*r.witness);
  const Bimodule& Ms = r.witness->context.Mstar.module;
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t k = 0; k < Ms.dim; ++k) {
      Vec eb = unit_vector(4, b), fk = unit_vector(Ms.dim, k);
      Vec bf = mul(F, Ms.left_of(eb), fk);
      CHECK(mul(F, beta.map, beta.source.pure(eb, fk)) == beta.target.pure(bf, A.graded.algebra->unit()));
    }
}

TEST_CASE("the centralizer diagram commutes") {
  Pipeline p = pipeline();
  DiagramReport rep = verify_diagram(p.W, p.U);
  for (const Check& c : rep.checks)
    CHECK_MESSAGE(c.ok, c.name);
  CHECK(rep.commutes);
  CHECK(rep.dim_E == 3);
  CHECK(rep.dim_C == 3);
  for (std::size_t r : rep.residuals)
    CHECK(r == 0);

  SUBCASE("phi_1 of the identity") {
    BetaIso beta = beta_iso(p.W);
    Phi1 p1 = phi1(p.W, beta, p.U);
    CHECK(p1.apply(Matrix::identity(6)) == Matrix::identity(p1.Ep.induced.module.dim));
  }
  SUBCASE("phi_2 of the unit") {
    CHECK(phi2(p.W, p.f.A.graded.algebra->unit()) == p.f.Ap.graded.algebra->unit());
  }
  SUBCASE("a twisted phi~ breaks commutativity") {
    const GradedAlgebra& Ap = p.f.Ap.graded;
    Vec w = Ap.units[1];
    REQUIRE(Ap.algebra->is_central(w));
    DiagramReport bad = verify_diagram(p.W, p.U, w);
    CHECK_FALSE(bad.commutes);
    std::size_t total = 0;
    for (std::size_t r : bad.residuals)
      total += r;
    CHECK(total > 0);
  }
}

TEST_CASE("diagram with trivial grading and M = B") {
  BlockExtension A = ungraded_block();
  GradedBimodule G = regular_graded_bimodule(A.graded);
  GradedMoritaResult r = verify_graded_morita(A.graded, A.graded, G.module, G.components);
  REQUIRE(r.witness.has_value());
  Module U = regular_module(A.graded.one);
  DiagramReport rep = verify_diagram(*r.witness, U);
  CHECK(rep.commutes);
  CHECK(rep.dim_C == 1);
}

TEST_CASE("dim E(U) matches a count of twisted homomorphisms") {
  MainFixture f = main_fixture();
  const GradedAlgebra& A = f.A.graded;
  const Algebra& a = *A.algebra;
  Module U = make_module(A.one, 2, f.M.left_action);
  std::size_t expected = 0;
  for (Elem g = 0; g < A.grading_group.order(); ++g) {
    std::vector<Matrix> src, dst;
    for (std::size_t i = 0; i < A.one->dim(); ++i) {
      src.push_back(U.left_action[i]);
      Vec c = a.mul(a.mul(A.unit_inverses[g], A.embed_one(A.one->basis(i))), A.units[g]);
      dst.push_back(U.left_of(A.restrict_one(c)));
    }
    auto n = oracle::count_intertwiners(f.F, src, dst, 2, 2);
    REQUIRE(n.has_value());
    std::size_t k = 0;
    for (std::uint64_t x = *n; x > 1; x /= 2)
      ++k;
    expected += k;
  }
  CHECK(graded_end_algebra(A, U).dim() == expected);
}
