#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmorita/algebra.hpp"
#include "gmorita/grading.hpp"
#include "gmorita/matrix.hpp"

namespace gmorita {

/// Extends matrices assigned to generators of G to all of G by breadth-first
/// search and checks the result is a representation. With `contravariant`
/// the result satisfies rho(gh) = rho(h) rho(g), as a right action does.
std::vector<Matrix> extend_representation(const FiniteGroup& G, const std::vector<Elem>& generators,
                                          const std::vector<Matrix>& images, const PrimeField& F,
                                          bool contravariant = false);

/// Action matrices of the elements given by the rows of `elements` (vectors
/// in kG coordinates) under a representation rho of G.
std::vector<Matrix> linear_extension(const PrimeField& F, const Matrix& elements, const std::vector<Matrix>& rho);

/// A finite-dimensional (L, R)-bimodule given by matrices.
///
/// `left_action[i]` is the matrix of m -> e_i m and `right_action[j]` the
/// matrix of m -> m e_j, both acting on column vectors; so the right action is
/// contravariant, R(ab) = R(b) R(a). A left module is a bimodule whose right
/// algebra is the 1-dimensional ground algebra.
struct Bimodule {
  AlgebraRef left;
  AlgebraRef right;
  std::size_t dim = 0;
  std::vector<Matrix> left_action;
  std::vector<Matrix> right_action;

  const PrimeField& field() const { return left->field(); }
  Matrix left_of(std::span<const Scalar> a) const;
  Matrix right_of(std::span<const Scalar> b) const;
};

using Module = Bimodule;

/// Checks sizes, unitality, multiplicativity on all basis pairs and that left
/// and right actions commute. Throws Error(InvalidInput) on failure.
void validate_bimodule(const Bimodule& M);

/// Assembles and validates.
Bimodule make_bimodule(AlgebraRef left, AlgebraRef right, std::size_t dim, std::vector<Matrix> left_action,
                       std::vector<Matrix> right_action);
Module make_module(AlgebraRef A, std::size_t dim, std::vector<Matrix> action);

/// A as an (A, A)-bimodule.
Bimodule regular_bimodule(AlgebraRef A);
/// A as a left A-module.
Module regular_module(AlgebraRef A);
Bimodule direct_sum(const Bimodule& M, const Bimodule& N);

/// Whether two algebras referenced by bimodules are the same algebra
/// (identical object or identical structure constants).
bool same_algebra(const AlgebraRef& a, const AlgebraRef& b);

/// M (x)_B N as a quotient of M (x)_k N; index m * dim N + n in the ambient
/// space corresponds to the pure tensor of basis vectors m and n.
struct TensorProduct {
  Bimodule module;
  PrimeField field{2};
  Quotient quotient;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;

  Vec pure(std::span<const Scalar> x, std::span<const Scalar> y) const;
  /// Pushes a linear map on M (x)_k N that respects the relations down to the quotient.
  Matrix descend(const Matrix& ambient_map) const;
};

TensorProduct tensor_over(const Bimodule& M, const Bimodule& N);

/// Basis of Hom between two left modules (right actions ignored).
std::vector<Matrix> hom_space(const Bimodule& M, const Bimodule& N);
/// Basis of bimodule homomorphisms.
std::vector<Matrix> bimodule_hom_space(const Bimodule& M, const Bimodule& N);

/// M* = Hom_B(M, B) for a (B, B')-bimodule M, as a (B', B)-bimodule with
/// (b' f)(m) = f(m b') and (f b)(m) = f(m) b. `maps[k]` is basis vector k as
/// a dim B x dim M matrix.
struct DualBimodule {
  Bimodule module;
  std::vector<Matrix> maps;
  Coordinatizer coords; // over the flattened maps

  Vec coords_of(const Matrix& f) const;
  Matrix map_of(std::span<const Scalar> x) const;
};

DualBimodule dual_bimodule(const Bimodule& M);

enum class IsoStatus { Found, ProvenNotIsomorphic, NotFoundHeuristic };

struct IsoResult {
  IsoStatus status = IsoStatus::ProvenNotIsomorphic;
  Matrix witness;
  std::string reason;
  bool found() const { return status == IsoStatus::Found; }
};

/// Maximum size of a Hom space searched exhaustively, in elements.
inline constexpr std::uint64_t kExhaustiveIsoLimit = 65536;
/// Random trials after the deterministic sweep when the search is not exhaustive.
inline constexpr int kIsoTrials = 4096;

/// Looks for an invertible f with f src[k] = dst[k] f for all k.
IsoResult find_isomorphism(const PrimeField& F, const std::vector<Matrix>& src, const std::vector<Matrix>& dst,
                           std::size_t dim_src, std::size_t dim_dst, std::uint64_t seed = 0);

/// Bimodule isomorphism test.
IsoResult is_isomorphic(const Bimodule& M, const Bimodule& N, std::uint64_t seed = 0);

/// A bimodule over two graded algebras with the same grading group, with a
/// direct-sum decomposition into components (row bases in module coordinates)
/// such that A_g M_h lies in M_gh and M_h A'_g lies in M_hg.
struct GradedBimodule {
  Bimodule module;
  GradedAlgebra left;
  GradedAlgebra right;
  std::vector<Matrix> components;
  /// Projection onto each component along the others.
  std::vector<Matrix> projections;

  const FiniteGroup& grading_group() const { return left.grading_group; }
};

/// Computes the projections and validates the graded bimodule invariants.
GradedBimodule make_graded_bimodule(Bimodule M, GradedAlgebra left, GradedAlgebra right,
                                    std::vector<Matrix> components);

/// Degree-preserving bimodule isomorphism test.
IsoResult is_graded_isomorphic(const GradedBimodule& M, const GradedBimodule& N, std::uint64_t seed = 0);

/// A graded algebra as a graded bimodule over itself.
GradedBimodule regular_graded_bimodule(const GradedAlgebra& A);

} // namespace gmorita
