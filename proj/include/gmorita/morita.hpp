#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmorita/bimodule.hpp"
#include "gmorita/grading.hpp"

namespace gmorita {

/// Data certifying that a (B, B')-bimodule M induces a Morita equivalence.
///
/// phi : M* (x)_B M -> B' sends f (x) m to the unique b' with n b' = f(n) m
/// for all n, and psi : M (x)_B' M* -> B is evaluation m (x) f -> f(m). The
/// dual bases are pairs of coordinate vectors: J holds (m_j*, m_j) and I holds
/// (n_i, n_i*).
struct MoritaContext {
  Bimodule M;
  DualBimodule Mstar;
  TensorProduct MsM; // M* (x)_B M
  TensorProduct MMs; // M (x)_B' M*
  Matrix phi;
  Matrix psi;
  std::vector<std::pair<Vec, Vec>> J;
  std::vector<std::pair<Vec, Vec>> I;

  Vec phi_of(std::span<const Scalar> f, std::span<const Scalar> m) const;
  Vec psi_of(std::span<const Scalar> m, std::span<const Scalar> f) const;
};

/// Throws Error(NotFaithfullyBalanced) when phi cannot be solved uniquely and
/// Error(NotMorita) when phi or psi is not bijective.
MoritaContext build_morita_context(const Bimodule& M);

/// Re-checks every context invariant: phi and psi are bimodule isomorphisms,
/// both compatibility identities on all basis triples, and both unit
/// equations. Returns the first failure, or an empty string.
std::string check_morita_context(const MoritaContext& ctx);

/// A Delta-module structure on a (B, B')-bimodule M, for crossed products A
/// and A' over the same grading group with 1-components B and B'.
/// `unit_actions[g]` is the action of u_g (x) u'_g^{-1}.
struct DeltaModuleStructure {
  GradedAlgebra A;
  GradedAlgebra Ap;
  Bimodule M;
  std::vector<Matrix> unit_actions;

  /// Action of a (x) a' for a in A_g and a' in A'_{g^-1}.
  Matrix act(Elem g, std::span<const Scalar> a, std::span<const Scalar> ap) const;
  /// Action of basis vector k of the diagonal algebra.
  Matrix act_basis(const DiagonalAlgebra& D, std::size_t k) const;
};

/// Checks unit_actions[1] = 1, the twisting relations against B (x) B'^op,
/// the product relations with the unit discrepancy elements, and that the
/// resulting map from the diagonal algebra is a representation. Returns the
/// first failure, or an empty string.
std::string check_delta_structure(const DeltaModuleStructure& D);

/// Validating constructor; throws Error(Inconsistent) naming the failure.
DeltaModuleStructure make_delta_structure(GradedAlgebra A, GradedAlgebra Ap, Bimodule M,
                                          std::vector<Matrix> unit_actions);

struct DeltaSearchResult {
  IsoStatus status = IsoStatus::ProvenNotIsomorphic;
  std::optional<DeltaModuleStructure> structure;
  std::string reason;
};

/// Searches for a Delta-module structure extending M, solving on a generating
/// set of the grading group and propagating along words.
DeltaSearchResult find_delta_extension(const GradedAlgebra& A, const GradedAlgebra& Ap, const Bimodule& M,
                                       std::uint64_t seed = 0);

/// A (x)_B M with its grading and right A'-action transported through the
/// Delta-structure: (a (x) m) a' = a u_h (x) (u_h^{-1} (x) a') m for a' in A'_h.
struct InducedBimodule {
  GradedBimodule graded;
  TensorProduct tensor;
  Bimodule A_as_AB; // A as an (A, B)-bimodule
};

InducedBimodule induce_graded(const DeltaModuleStructure& D);

} // namespace gmorita
