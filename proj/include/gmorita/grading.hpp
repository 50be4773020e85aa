#pragma once

#include <optional>
#include <vector>

#include "gmorita/algebra.hpp"
#include "gmorita/group.hpp"

namespace gmorita {

/// An algebra whose basis vectors are homogeneous for a grading by a finite
/// group. For crossed products `units[g]` is an invertible element of the
/// degree-g component with inverse `unit_inverses[g]`.
struct GradedAlgebra {
  AlgebraRef algebra;
  FiniteGroup grading_group;
  std::vector<Elem> degree;                         // per basis vector
  std::vector<std::vector<std::size_t>> components; // basis indices per degree
  std::vector<Vec> units;
  std::vector<Vec> unit_inverses;
  /// The 1-component as an algebra; its basis is the basis vectors of degree 1 in order.
  AlgebraRef one;

  std::size_t dim() const { return algebra->dim(); }
  const PrimeField& field() const { return algebra->field(); }
  bool is_crossed_product() const { return !units.empty(); }

  /// The degree of x if it is nonzero and homogeneous.
  std::optional<Elem> homogeneous_degree(std::span<const Scalar> x) const;
  /// Diagonal 0/1 matrix projecting onto the degree-g component.
  Matrix component_projection(Elem g) const;
  /// Restriction of x to the degree-g component.
  Vec component_part(std::span<const Scalar> x, Elem g) const;

  /// 1-component coordinates to A coordinates and back.
  Vec embed_one(std::span<const Scalar> b) const;
  Vec restrict_one(std::span<const Scalar> a) const;
};

/// Builds the graded algebra from an algebra, a grading group and a degree per
/// basis vector. Units, when given, must be one per degree.
GradedAlgebra make_graded(AlgebraRef A, FiniteGroup grading_group, std::vector<Elem> degree,
                          std::vector<Vec> units = {});

/// Grading compatibility, strong grading (by rank) and the crossed-product
/// unit conditions. Throws Error(Inconsistent) naming the first failure.
void validate_graded(const GradedAlgebra& A);

/// The grading of a block extension e*kG by a group Q: `degree_of[g]` gives
/// the degree of each g in G and must induce an isomorphism G/K -> Q.
struct GradingTarget {
  FiniteGroup group;
  std::vector<Elem> degree_of;
};

/// Grading of a subgroup H (given by its elements `to_parent` in an ambient
/// group) pulled back from a degree map on the ambient group.
GradingTarget grading_via(const std::vector<Elem>& to_parent, const std::vector<Elem>& ambient_degree,
                          const FiniteGroup& target);

/// e*kG for a G-invariant central idempotent e of kK, K normal in G.
///
/// The basis is canonical: if beta_1..beta_r is the reduced row basis of
/// e*kK in the coordinates given by `normal_order`, then basis vector
/// q*r + i is beta_i * rep_q where rep_q is the smallest element of G of
/// degree q. Two ambient groups containing K with the same element order
/// therefore give literally the same 1-component algebra.
struct BlockExtension {
  GradedAlgebra graded;
  PrimeField field{2};
  FiniteGroup group;
  std::vector<Elem> normal_order;
  std::vector<Elem> degree_of;
  std::vector<Elem> representatives; // per degree
  Vec idempotent;                    // e in kK, local coordinates
  Matrix beta;                       // r x |K|
  Coordinatizer beta_coords;

  std::size_t block_dim() const { return beta.rows(); }
  /// Coordinates of e*g.
  Vec element(Elem g) const;
  /// Coordinates of e*x for x in kG; x must already lie in e*kG.
  Vec from_group_algebra(std::span<const Scalar> x) const;
  /// The kG vector of an element of e*kG.
  Vec to_group_algebra(std::span<const Scalar> a) const;
};

BlockExtension block_extension(const FiniteGroup& G, const std::vector<Elem>& normal_order, const PrimeField& F,
                               const Vec& e_local, std::optional<GradingTarget> target = std::nullopt);

/// Convenience for K given as a subgroup of G in its natural order, with e in
/// kG coordinates (supported on K) and the quotient grading.
BlockExtension block_extension(const FiniteGroup& G, const Subgroup& K, const PrimeField& F, const Vec& e_in_kG);

/// Truncation to the degrees in H (a subgroup of the grading group). The
/// result is graded by H as a group in its own right (local order); the kept
/// basis indices are returned through `kept` when non-null.
GradedAlgebra truncate(const GradedAlgebra& A, const Subgroup& H, std::vector<std::size_t>* kept = nullptr);

/// Delta = sum_g A_g (x) A'_{g^-1} inside A (x) A'^op. Basis element
/// `pairs[k] = (i, j)` is a_i (x) a'_j; (a (x) a')(c (x) c') = ac (x) c'a'.
struct DiagonalAlgebra {
  GradedAlgebra graded;
  PrimeField field{2};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::ptrdiff_t> index_of; // (i * dim A' + j) -> k or -1

  /// Coordinates of a (x) a' for a in A_g, a' in A'_{g^-1}.
  Vec pure(std::span<const Scalar> a, std::span<const Scalar> ap) const;
};

DiagonalAlgebra diagonal_subalgebra(const GradedAlgebra& A, const GradedAlgebra& Ap);

} // namespace gmorita
