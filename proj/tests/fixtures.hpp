#pragma once

// Shared groups and blocks used across the test binaries.

#include "gmorita/algebra.hpp"
#include "gmorita/bimodule.hpp"
#include "gmorita/grading.hpp"
#include "gmorita/group.hpp"

namespace fixtures {

using namespace gmorita;

inline FiniteGroup s3() { return FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}}); }
inline FiniteGroup c3() { return FiniteGroup::from_permutations(3, {{1, 2, 0}}); }
inline FiniteGroup c1() { return FiniteGroup::from_table({{0}}, {"e"}); }

/// S3 x C3 acting on {0,1,2} and {3,4,5}.
inline FiniteGroup s3xc3() {
  return FiniteGroup::from_permutations(6, {{1, 2, 0, 3, 4, 5}, {1, 0, 2, 3, 4, 5}, {0, 1, 2, 4, 5, 3}});
}

/// S3 x C2 acting on {0,1,2} and {3,4}.
inline FiniteGroup s3xc2() { return FiniteGroup::from_permutations(5, {{1, 2, 0, 3, 4}, {1, 0, 2, 3, 4}, {0, 1, 2, 4, 3}}); }

inline Elem perm(const FiniteGroup& G, const Permutation& p) { return *G.find_permutation(p); }

/// The S3 factor of s3xc3().
inline Subgroup s3_factor(const FiniteGroup& G) {
  return generated_subgroup(G, {perm(G, {1, 2, 0, 3, 4, 5}), perm(G, {1, 0, 2, 3, 4, 5})});
}
/// The C3 factor of s3xc3().
inline Subgroup c3_factor(const FiniteGroup& G) { return generated_subgroup(G, {perm(G, {0, 1, 2, 4, 5, 3})}); }

/// The 4-dimensional (defect-zero) block of F2 S3 as an idempotent of kG
/// supported on N, for N a copy of S3 inside G.
inline Vec defect_zero_block(const FiniteGroup& G, const Subgroup& N) {
  BlockDecomposition b = subgroup_blocks(G, N, PrimeField(2));
  return b.idempotents.at(1);
}

/// The running example: G = S3 x C3, N = S3, G' = 1 x C3, N' = 1, p = 2,
/// b the defect-zero block, b' = 1, M the 2-dimensional simple B-module.
struct MainFixture {
  FiniteGroup G;
  Subgroup N;
  Subgroup Gp;
  PrimeField F{2};
  BlockExtension A;
  BlockExtension Ap;
  Bimodule M;
};

inline Matrix mat2(Scalar a, Scalar b, Scalar c, Scalar d) { return Matrix::from_rows({{a, b}, {c, d}}, 2); }

/// The 2-dimensional simple module of the defect-zero block of F2 S3 as a
/// representation of N (indexed by position in N.elements).
inline std::vector<Matrix> simple_rep(const FiniteGroup& G, const Subgroup& N, Elem r, Elem s) {
  SubgroupAsGroup loc = subgroup_as_group(G, N);
  return extend_representation(loc.group, {*loc.to_local(r), *loc.to_local(s)},
                               {mat2(0, 1, 1, 1), mat2(0, 1, 1, 0)}, PrimeField(2));
}

inline MainFixture main_fixture() {
  MainFixture f;
  f.G = s3xc3();
  f.N = s3_factor(f.G);
  f.Gp = c3_factor(f.G);
  f.A = block_extension(f.G, f.N, f.F, defect_zero_block(f.G, f.N));
  QuotientGroup q = quotient(f.G, f.N);
  SubgroupAsGroup gp = subgroup_as_group(f.G, f.Gp);
  f.Ap = block_extension(gp.group, {gp.group.identity()}, f.F, Vec{1}, grading_via(gp.to_parent, q.projection, q.quotient));
  std::vector<Matrix> rho =
      simple_rep(f.G, f.N, perm(f.G, {1, 2, 0, 3, 4, 5}), perm(f.G, {1, 0, 2, 3, 4, 5}));
  f.M = make_bimodule(f.A.graded.one, f.Ap.graded.one, 2, linear_extension(f.F, f.A.beta, rho),
                      {Matrix::identity(2)});
  return f;
}

} // namespace fixtures
