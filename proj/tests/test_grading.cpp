#include "doctest.h"

#include "fixtures.hpp"
#include "gmorita/error.hpp"

using namespace gmorita;
using namespace fixtures;

namespace {

// Strong grading recomputed independently: every product of components
// lands in the product degree and spans it.
bool strongly_graded(const GradedAlgebra& A) {
  const FiniteGroup& Q = A.grading_group;
  const PrimeField& F = A.field();
  for (Elem g = 0; g < Q.order(); ++g)
    for (Elem h = 0; h < Q.order(); ++h) {
      Matrix span(0, A.dim());
      for (std::size_t i : A.components[g])
        for (std::size_t j : A.components[h]) {
          Vec p = A.algebra->mul(A.algebra->basis(i), A.algebra->basis(j));
          if (!is_zero(p) && A.homogeneous_degree(p) != Q.mul(g, h))
            return false;
          span.append_row(p);
        }
      if (rank(F, span) != A.components[Q.mul(g, h)].size())
        return false;
    }
  return true;
}

} // namespace

TEST_CASE("block extension of the defect-zero block over S3 x C3") {
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  PrimeField F2(2);
  BlockExtension X = block_extension(G, N, F2, defect_zero_block(G, N));
  const GradedAlgebra& A = X.graded;
  CHECK(A.grading_group.order() == 3);
  CHECK(A.dim() == 12);
  CHECK(A.one->dim() == 4);
  for (const auto& c : A.components)
    CHECK(c.size() == 4);
  CHECK(strongly_graded(A));
  CHECK_NOTHROW(validate_algebra(*A.algebra));
  for (Elem q = 0; q < 3; ++q) {
    CHECK(A.homogeneous_degree(A.units[q]) == q);
    CHECK(A.algebra->mul(A.units[q], A.unit_inverses[q]) == A.algebra->unit());
  }
  // e*g multiplies like g.
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < G.order(); ++h)
      CHECK(A.algebra->mul(X.element(g), X.element(h)) == X.element(G.mul(g, h)));
  // The embedding into kG round-trips.
  for (std::size_t i = 0; i < A.dim(); ++i)
    CHECK(X.from_group_algebra(X.to_group_algebra(A.algebra->basis(i))) == A.algebra->basis(i));
}

TEST_CASE("trivial grading when G = N") {
  FiniteGroup S = s3();
  BlockExtension X = block_extension(S, whole_group(S), PrimeField(2), defect_zero_block(S, whole_group(S)));
  CHECK(X.graded.grading_group.order() == 1);
  CHECK(X.graded.components.size() == 1);
  CHECK(X.graded.one->same_structure(*X.graded.algebra));
}

TEST_CASE("the 1-component is canonical across ambient groups") {
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  FiniteGroup S = s3();
  BlockExtension XG = block_extension(G, N, PrimeField(2), defect_zero_block(G, N));
  // Transport N's order into S3 through the obvious isomorphism.
  std::vector<Elem> order;
  for (Elem n : N.elements) {
    Permutation p = G.permutation(n);
    order.push_back(perm(S, {p[0], p[1], p[2]}));
  }
  BlockExtension XS = block_extension(S, order, PrimeField(2), XG.idempotent);
  CHECK(XS.graded.one->same_structure(*XG.graded.one));
}

TEST_CASE("non-invariant idempotent is rejected") {
  FiniteGroup S = s3();
  Subgroup A3 = generated_subgroup(S, {perm(S, {1, 2, 0})});
  PrimeField F7(7);
  BlockDecomposition blocks = subgroup_blocks(S, A3, F7);
  int rejected = 0;
  for (const Vec& e : blocks.idempotents) {
    try {
      block_extension(S, A3, F7, e);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Precondition);
      ++rejected;
    }
  }
  CHECK(rejected == 2);
}

TEST_CASE("truncation") {
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  BlockExtension X = block_extension(G, N, PrimeField(2), defect_zero_block(G, N));
  const GradedAlgebra& A = X.graded;
  GradedAlgebra full = truncate(A, whole_group(A.grading_group));
  CHECK(full.algebra->same_structure(*A.algebra));
  GradedAlgebra one = truncate(A, trivial_subgroup(A.grading_group));
  CHECK(one.algebra->same_structure(*A.one));
  CHECK(one.grading_group.order() == 1);
  CHECK_NOTHROW(validate_graded(one));
}

TEST_CASE("diagonal subalgebra dimensions and structure") {
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  BlockExtension X = block_extension(G, N, PrimeField(2), defect_zero_block(G, N));
  DiagonalAlgebra D = diagonal_subalgebra(X.graded, X.graded);
  CHECK(D.graded.dim() == 48);
  CHECK_NOTHROW(validate_algebra(*D.graded.algebra));
  CHECK_NOTHROW(validate_graded(D.graded));
  // The 1-component is B (x) B^op.
  CHECK(D.graded.one->dim() == 16);

  FiniteGroup S = s3();
  BlockExtension Y = block_extension(S, whole_group(S), PrimeField(2), defect_zero_block(S, whole_group(S)));
  DiagonalAlgebra D1 = diagonal_subalgebra(Y.graded, Y.graded);
  CHECK(D1.graded.dim() == 16);
  CHECK(D1.graded.grading_group.order() == 1);
  CHECK_THROWS_AS(diagonal_subalgebra(X.graded, Y.graded), Error);
}
