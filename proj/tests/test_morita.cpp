#include "doctest.h"

#include "fixtures.hpp"
#include "gmorita/error.hpp"
#include "gmorita/morita.hpp"
#include "gmorita/oracle.hpp"

using namespace gmorita;
using namespace fixtures;

namespace {

FiniteGroup c2() { return FiniteGroup::from_permutations(2, {{1, 0}}); }

// Every element of B' by enumeration, to find b' with R(b') equal to a target map.
std::optional<Vec> brute_right_preimage(const Bimodule& M, const Matrix& target) {
  const PrimeField& F = M.field();
  const std::size_t n = M.right->dim();
  Vec c(n, 0);
  std::optional<Vec> found;
  for (;;) {
    if (M.right_of(c) == target) {
      if (found)
        return std::nullopt; // not unique
      found = c;
    }
    std::size_t pos = 0;
    while (pos < n && ++c[pos] == F.p())
      c[pos++] = 0;
    if (pos == n)
      break;
  }
  return found;
}

// Checks phi against brute force on every pair of basis vectors.
void check_phi_by_enumeration(const MoritaContext& ctx) {
  const PrimeField& F = ctx.M.field();
  const std::size_t dm = ctx.M.dim, r = ctx.Mstar.maps.size();
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t m = 0; m < dm; ++m) {
      Matrix target(dm, dm);
      for (std::size_t n = 0; n < dm; ++n) {
        Vec col = mul(F, ctx.M.left_of(ctx.Mstar.maps[k].col_vec(n)), unit_vector(dm, m));
        for (std::size_t t = 0; t < dm; ++t)
          target(t, n) = col[t];
      }
      auto expected = brute_right_preimage(ctx.M, target);
      REQUIRE(expected.has_value());
      CHECK(ctx.phi_of(unit_vector(r, k), unit_vector(dm, m)) == *expected);
    }
}

// The no-Delta example: G = S3 over F7 graded by S3/C3, M the 1-dimensional
// C3-module on which the 3-cycle acts by `root`.
struct CyclicFixture {
  FiniteGroup G;
  Subgroup N;
  PrimeField F{7};
  BlockExtension A;
  BlockExtension Ap;
  Bimodule M;
};

CyclicFixture cyclic_fixture(Scalar root) {
  CyclicFixture f;
  f.G = s3();
  Elem r = perm(f.G, {1, 2, 0});
  Elem s = perm(f.G, {1, 0, 2});
  f.N = generated_subgroup(f.G, {r});
  f.A = block_extension(f.G, f.N, f.F, group_element(f.G, f.G.identity()));
  QuotientGroup q = quotient(f.G, f.N);
  Subgroup H = generated_subgroup(f.G, {s});
  SubgroupAsGroup h = subgroup_as_group(f.G, H);
  f.Ap = block_extension(h.group, {h.group.identity()}, f.F, Vec{1},
                         grading_via(h.to_parent, q.projection, q.quotient));
  SubgroupAsGroup n = subgroup_as_group(f.G, f.N);
  Matrix x(1, 1);
  x(0, 0) = root;
  auto rho = extend_representation(n.group, {*n.to_local(r)}, {x}, f.F);
  f.M = make_bimodule(f.A.graded.one, f.Ap.graded.one, 1, linear_extension(f.F, f.A.beta, rho),
                      {Matrix::identity(1)});
  return f;
}

// (a (x) a')(c (x) c') = ac (x) c'a' checked directly on homogeneous basis pairs.
void check_diagonal_action(const DeltaModuleStructure& D) {
  const PrimeField& F = D.M.field();
  const Algebra& a = *D.A.algebra;
  const Algebra& ap = *D.Ap.algebra;
  const FiniteGroup& Q = D.A.grading_group;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < ap.dim(); ++j) {
      Elem g = D.A.degree[i];
      if (D.Ap.degree[j] != Q.inv(g))
        continue;
      for (std::size_t k = 0; k < a.dim(); ++k)
        for (std::size_t l = 0; l < ap.dim(); ++l) {
          Elem h = D.A.degree[k];
          if (D.Ap.degree[l] != Q.inv(h))
            continue;
          Matrix lhs = mul(F, D.act(g, a.basis(i), ap.basis(j)), D.act(h, a.basis(k), ap.basis(l)));
          Matrix rhs = D.act(Q.mul(g, h), a.mul(a.basis(i), a.basis(k)), ap.mul(ap.basis(l), ap.basis(j)));
          REQUIRE(lhs == rhs);
        }
    }
}

} // namespace

TEST_CASE("the regular bimodule gives a Morita context") {
  MainFixture f = main_fixture();
  Bimodule R = regular_bimodule(f.A.graded.one);
  MoritaContext ctx = build_morita_context(R);
  CHECK(ctx.phi.rows() == 4);
  CHECK(ctx.psi.rows() == 4);
  CHECK(check_morita_context(ctx).empty());
  check_phi_by_enumeration(ctx);
}

TEST_CASE("the simple module of the defect-zero block is Morita") {
  MainFixture f = main_fixture();
  MoritaContext ctx = build_morita_context(f.M);
  CHECK(ctx.Mstar.module.dim == 2);
  CHECK(ctx.MsM.module.dim == 1);
  CHECK(ctx.MMs.module.dim == 4);
  CHECK(ctx.J.size() <= 2);
  CHECK(ctx.I.size() <= 2);
  CHECK(check_morita_context(ctx).empty());
  check_phi_by_enumeration(ctx);

  SUBCASE("a corrupted psi is caught") {
    ctx.psi(0, 0) = f.F.add(ctx.psi(0, 0), 1);
    CHECK_FALSE(check_morita_context(ctx).empty());
  }
  SUBCASE("a corrupted dual basis is caught") {
    ctx.J.pop_back();
    if (!ctx.J.empty())
      ctx.J.pop_back();
    CHECK_FALSE(check_morita_context(ctx).empty());
  }
}

TEST_CASE("non-balanced and non-generator modules are rejected") {
  MainFixture f = main_fixture();
  SUBCASE("M + M over the ground field") {
    Bimodule MM = direct_sum(f.M, f.M);
    try {
      build_morita_context(MM);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotFaithfullyBalanced);
    }
  }
  SUBCASE("a proper summand of a semisimple algebra") {
    auto B = std::make_shared<const Algebra>(group_algebra(c2(), PrimeField(3)));
    // trivial module of F3 C2 = F3 x F3: balanced but not a generator
    Module T = make_module(B, 1, {Matrix::identity(1), Matrix::identity(1)});
    try {
      build_morita_context(T);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotMorita);
    }
  }
}

TEST_CASE("Delta-structure on the running example") {
  MainFixture f = main_fixture();
  DeltaSearchResult res = find_delta_extension(f.A.graded, f.Ap.graded, f.M);
  REQUIRE(res.status == IsoStatus::Found);
  REQUIRE(res.structure.has_value());
  const DeltaModuleStructure& D = *res.structure;
  CHECK(check_delta_structure(D).empty());
  CHECK(D.unit_actions[0] == Matrix::identity(2));
  check_diagonal_action(D);

  SUBCASE("a wrong unit action is rejected") {
    std::vector<Matrix> X = D.unit_actions;
    X[1] = mat2(1, 1, 0, 1);
    CHECK_FALSE(check_delta_structure(DeltaModuleStructure{D.A, D.Ap, D.M, X}).empty());
    CHECK_THROWS_AS(make_delta_structure(D.A, D.Ap, D.M, X), Error);
  }

  SUBCASE("induction to a graded bimodule") {
    InducedBimodule ind = induce_graded(D);
    CHECK(ind.graded.module.dim == 6);
    for (const Matrix& c : ind.graded.components)
      CHECK(c.rows() == 2);
    CHECK(ind.graded.module.right->dim() == 3);
  }
}

TEST_CASE("Delta-structure over F7 with a twist-stable module") {
  CyclicFixture f = cyclic_fixture(1);
  DeltaSearchResult res = find_delta_extension(f.A.graded, f.Ap.graded, f.M);
  REQUIRE(res.status == IsoStatus::Found);
  check_diagonal_action(*res.structure);
  InducedBimodule ind = induce_graded(*res.structure);
  CHECK(ind.graded.module.dim == 2);
}

TEST_CASE("no Delta-structure when the twist moves the module") {
  CyclicFixture f = cyclic_fixture(2);
  // Conjugating by the transposition sends the eigenvalue 2 to 4.
  const Algebra& B = *f.A.graded.one;
  std::vector<Matrix> src, dst;
  Elem s = perm(f.G, {1, 0, 2});
  Elem qs = f.A.degree_of[s];
  for (std::size_t i = 0; i < B.dim(); ++i) {
    src.push_back(f.M.left_action[i]);
    const Algebra& a = *f.A.graded.algebra;
    Vec c = a.mul(a.mul(f.A.graded.units[qs], f.A.graded.embed_one(B.basis(i))), f.A.graded.unit_inverses[qs]);
    dst.push_back(f.M.left_of(f.A.graded.restrict_one(c)));
  }
  CHECK(oracle::exists_invertible_intertwiner(f.F, src, dst, 1) == false);

  DeltaSearchResult res = find_delta_extension(f.A.graded, f.Ap.graded, f.M);
  CHECK(res.status == IsoStatus::ProvenNotIsomorphic);
  CHECK_FALSE(res.structure.has_value());
  CHECK(res.reason.find("twist") != std::string::npos);
}
