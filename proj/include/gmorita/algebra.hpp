#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmorita/field.hpp"
#include "gmorita/group.hpp"
#include "gmorita/matrix.hpp"

namespace gmorita {

using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Finite-dimensional associative unital algebra over F_p given by structure
/// constants: e_i * e_j = sum_k c_ijk e_k, stored sparsely per (i, j).
class Algebra {
public:
  Algebra(PrimeField F, std::size_t dim, std::vector<SparseVec> products, Vec unit,
          std::vector<std::string> labels = {});

  const PrimeField& field() const { return F_; }
  std::size_t dim() const { return dim_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }
  const Vec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vec zero() const { return Vec(dim_, 0); }
  Vec basis(std::size_t i) const { return unit_vector(dim_, i); }
  Vec mul(std::span<const Scalar> a, std::span<const Scalar> b) const;
  Vec pow(const Vec& a, std::uint64_t e) const;
  std::optional<Vec> inverse(const Vec& a) const;

  /// Matrix of x -> a x.
  Matrix left_mult(std::span<const Scalar> a) const;
  /// Matrix of x -> x a.
  Matrix right_mult(std::span<const Scalar> a) const;

  bool is_commutative() const;
  bool is_central(std::span<const Scalar> z) const;
  bool is_idempotent(std::span<const Scalar> e) const;

  /// Same field, dimension, structure constants and unit.
  bool same_structure(const Algebra& o) const;

  /// The opposite algebra (same basis, reversed multiplication).
  Algebra opposite() const;

private:
  PrimeField F_;
  std::size_t dim_;
  std::vector<SparseVec> products_;
  Vec unit_;
  std::vector<std::string> labels_;
};

using AlgebraRef = std::shared_ptr<const Algebra>;

/// Two-sided unit and associativity on basis triples (exhaustive up to
/// dimension 48, sampled above). Throws Error(InvalidInput).
void validate_algebra(const Algebra& A);

/// The 1-dimensional algebra F_p.
AlgebraRef ground_algebra(const PrimeField& F);

/// A subalgebra with its embedding: `basis` rows are the basis vectors in
/// parent coordinates.
struct Subalgebra {
  AlgebraRef algebra;
  Matrix basis;
  Coordinatizer coords;

  Vec to_parent(std::span<const Scalar> x) const;
  std::optional<Vec> from_parent(std::span<const Scalar> y) const;
};

/// Row-reduces the spanning set, checks closure and that `unit_in_parent`
/// lies in the span and acts as identity, and computes structure constants.
Subalgebra make_subalgebra(const Algebra& parent, const Matrix& spanning, std::span<const Scalar> unit_in_parent);

Algebra group_algebra(const FiniteGroup& G, const PrimeField& F);
Vec group_element(const FiniteGroup& G, Elem g);

/// Basis (rows) of Z(A).
Matrix center(const Algebra& A);

struct BlockDecomposition {
  std::vector<Vec> idempotents;
  /// dim(e A) for each idempotent.
  std::vector<std::size_t> block_dims;
};

/// All primitive central idempotents, sorted by block dimension and then by
/// coordinates.
BlockDecomposition primitive_central_idempotents(const Algebra& A);

/// Checks the BlockDecomposition invariants; returns a description of the
/// first violation, or an empty string.
std::string check_block_decomposition(const Algebra& A, const BlockDecomposition& blocks);

/// The algebra eA with unit e, for a central idempotent e.
Subalgebra block_cut(const Algebra& A, std::span<const Scalar> e);

/// C_A(B) for the unital subalgebra spanned by the rows of `B_basis`.
Subalgebra centralizer_subalgebra(const Algebra& A, const Matrix& B_basis);

/// Whether the central idempotent e of kN (given in kG coordinates) is fixed
/// by conjugation with every element of G.
bool is_invariant_block(const FiniteGroup& G, const Subgroup& N, const PrimeField& F, std::span<const Scalar> e);

/// The blocks of kN for a subgroup N of G, as kG-coordinate vectors.
BlockDecomposition subgroup_blocks(const FiniteGroup& G, const Subgroup& N, const PrimeField& F);

} // namespace gmorita
