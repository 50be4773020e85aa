#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmorita/bimodule.hpp"
#include "gmorita/grading.hpp"
#include "gmorita/morita.hpp"

namespace gmorita {

/// A as a bimodule over itself (full) or over its 1-component on each side.
Bimodule algebra_bimodule(const GradedAlgebra& A, bool full_left, bool full_right);

/// Matrix of X on the invariant subspace with basis `sub`.
Matrix restrict_action(const PrimeField& F, const Matrix& X, const Coordinatizer& sub);

/// E(U) = End_A(A (x)_B U)^op with its grading: a map has degree h when it
/// sends A_g (x) U into A_gh (x) U for every g. The product is x * y = y o x,
/// so `basis_maps[i] * basis_maps[j]` as matrices is the map of j * i.
struct GradedEndAlgebra {
  GradedAlgebra graded;
  GradedAlgebra base;
  Module U;
  Bimodule A_as_AB;
  TensorProduct induced; // A (x)_B U
  std::vector<Matrix> basis_maps;
  Coordinatizer coords;

  std::size_t dim() const { return basis_maps.size(); }
  /// Throws Error(Inconsistent) if f is not an A-endomorphism.
  Vec coords_of(const Matrix& f) const;
  Matrix map_of(std::span<const Scalar> x) const;
};

GradedEndAlgebra graded_end_algebra(const GradedAlgebra& A, const Module& U);

/// C_A(B) with a homogeneous basis (rows of `basis`, in A coordinates).
struct GradedCentralizer {
  GradedAlgebra graded;
  Matrix basis;
  Coordinatizer coords;

  std::size_t dim() const { return basis.rows(); }
  Vec to_parent(std::span<const Scalar> x) const;
  std::optional<Vec> from_parent(std::span<const Scalar> a) const;
};

GradedCentralizer graded_centralizer(const GradedAlgebra& A);

/// The endomorphism a (x) u -> ac (x) u of A (x)_B U. Throws
/// Error(Precondition) when c does not commute with B.
Matrix theta_map(const GradedEndAlgebra& E, std::span<const Scalar> c);
/// theta(c) in E(U) coordinates.
Vec theta(const GradedEndAlgebra& E, std::span<const Scalar> c);
/// theta on the basis of C_A(B), as a dim E x dim C matrix.
Matrix theta_matrix(const GradedEndAlgebra& E, const GradedCentralizer& C);

/// Grading of a dual Hom_A(M, A) of a graded (A, A')-bimodule: f has degree
/// h when f(M_g) lies in A_gh for all g.
GradedBimodule grade_dual(const GradedBimodule& M, const DualBimodule& D);

/// Components of X (x) Y in the coordinates of T = tensor_over(X, Y).
std::vector<Matrix> tensor_components(const TensorProduct& T, const GradedBimodule& X, const GradedBimodule& Y);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// A certified graded Morita equivalence. `context` is the Morita context of
/// the 1-component M of Mtilde (coordinates given by the rows of `one_basis`)
/// and `iota` embeds M* = Hom_B(M, B) into the degree-1 part of Mtilde*.
struct GradedMoritaWitness {
  GradedBimodule Mtilde;
  GradedBimodule Mtilde_star;
  MoritaContext tilde;
  MoritaContext context;
  Matrix one_basis;
  Matrix iota; // dim Mtilde* x dim M*

  const GradedAlgebra& A() const { return Mtilde.left; }
  const GradedAlgebra& Ap() const { return Mtilde.right; }
  Vec embed_M(std::span<const Scalar> m) const;
  Vec embed_Mstar(std::span<const Scalar> f) const;
};

struct GradedMoritaResult {
  std::optional<GradedMoritaWitness> witness;
  std::vector<Check> checks;
  std::string reason; // first failed check when there is no witness
};

/// Checks the graded Morita conditions for Mtilde with the given components.
/// Mtilde* is derived as the graded dual; a supplied Mtilde* must be graded
/// isomorphic to it. Failures are reported, not thrown.
GradedMoritaResult verify_graded_morita(const GradedAlgebra& A, const GradedAlgebra& Ap, const Bimodule& Mtilde,
                                        const std::vector<Matrix>& components,
                                        const std::optional<GradedBimodule>& Mtilde_star = std::nullopt);

/// epsilon : M (x)_B' A' -> A (x)_B M, m (x) a' -> u_g (x) u_g^{-1} m a' for a' in A'_g.
struct EpsilonIso {
  Bimodule Ap_as_BpAp;
  TensorProduct source;
  InducedBimodule target;
  Matrix map;
};

/// Builds epsilon and checks it is invertible, B-linear on the left,
/// A'-linear on the right, degree-preserving and equal to m (x) a' -> (1 (x) m) a'.
EpsilonIso epsilon_iso(const DeltaModuleStructure& D);

/// beta : A' (x)_B' M* -> M* (x)_B A, a' (x) m* -> a' m* u_g^{-1} (x) u_g for a' in A'_g.
struct BetaIso {
  Bimodule Ap_as_ApBp;
  Bimodule A_as_BA;
  TensorProduct source;
  TensorProduct target;
  Matrix map;
};

/// Builds beta and checks it against the multiplication maps into Mtilde*.
BetaIso beta_iso(const GradedMoritaWitness& W);

/// phi_1(f) = (beta (x) id_U)^{-1} (id (x) f) (beta (x) id_U) on A' (x)_B' U'
/// with U' = M* (x)_B U.
struct Phi1 {
  GradedEndAlgebra E;
  GradedEndAlgebra Ep;
  TensorProduct Uprime; // M* (x)_B U
  TensorProduct W;      // M* (x)_B (A (x)_B U)
  Matrix transport;     // beta (x) id_U : A' (x)_B' U' -> W
  Matrix transport_inv;
  Matrix matrix; // dim E' x dim E

  /// phi_1 of an endomorphism of A (x)_B U, as an endomorphism of A' (x)_B' U'.
  Matrix apply(const Matrix& f) const;
};

Phi1 phi1(const GradedMoritaWitness& W, const BetaIso& beta, const Module& U);

/// phi_2(c) = phi~(sum_J m_j* c (x) m_j), in A' coordinates. With `twist`,
/// the result is multiplied on the right by that element of A'.
Vec phi2(const GradedMoritaWitness& W, std::span<const Scalar> c, const std::optional<Vec>& twist = std::nullopt);
/// phi_2 between homogeneous bases of the centralizers, dim C' x dim C.
Matrix phi2_matrix(const GradedMoritaWitness& W, const GradedCentralizer& C, const GradedCentralizer& Cp,
                   const std::optional<Vec>& twist = std::nullopt);

struct DiagramReport {
  bool commutes = false;
  std::size_t dim_E = 0, dim_Ep = 0, dim_C = 0, dim_Cp = 0;
  std::vector<std::size_t> residuals; // nonzero entries of theta' phi2 - phi1 theta, per basis of C_A(B)
  std::vector<Check> checks;
};

/// Checks theta' o phi_2 = phi_1 o theta on a basis of C_A(B), together with
/// the algebra and grading properties of the four maps.
DiagramReport verify_diagram(const GradedMoritaWitness& W, const Module& U,
                             const std::optional<Vec>& twist = std::nullopt);

} // namespace gmorita
