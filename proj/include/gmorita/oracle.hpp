#pragma once

// Brute-force reference computations. These deliberately avoid the library's
// linear-algebra kernel where practical (enumeration instead of row reduction)
// so they can serve as independent cross-checks in tests and `--oracle` runs.

#include <optional>
#include <vector>

#include "gmorita/algebra.hpp"
#include "gmorita/group.hpp"
#include "gmorita/matrix.hpp"

namespace gmorita::oracle {

/// Upper bound on the number of candidates any enumeration below will visit.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t(1) << 20;

/// All permutations generated by `generators`, by naive closure under
/// composition, sorted.
std::vector<Permutation> permutation_closure(std::size_t degree, const std::vector<Permutation>& generators);

/// Elements of G commuting with every element of N, by direct test.
std::vector<Elem> commuting_elements(const FiniteGroup& G, const std::vector<Elem>& N);

/// Number of left cosets of N in G, by explicit enumeration.
std::size_t coset_count(const FiniteGroup& G, const std::vector<Elem>& N);

/// Conjugacy class sums of G as vectors in kG.
std::vector<Vec> class_sums(const FiniteGroup& G);

/// Primitive central idempotents of A by enumerating every element of Z(A)
/// (or of A itself when small enough). Ordered like the library output.
/// Returns nullopt when the enumeration would exceed kEnumerationLimit.
std::optional<std::vector<Vec>> enumerate_block_idempotents(const Algebra& A);

/// Number of maps f with f * src[k] = dst[k] * f for all k, counted by
/// enumerating every dst x src matrix. nullopt when too large.
std::optional<std::uint64_t> count_intertwiners(const PrimeField& F, const std::vector<Matrix>& src,
                                                const std::vector<Matrix>& dst, std::size_t dim_src,
                                                std::size_t dim_dst);

/// Whether an invertible intertwiner exists, by enumerating every square matrix.
std::optional<bool> exists_invertible_intertwiner(const PrimeField& F, const std::vector<Matrix>& src,
                                                  const std::vector<Matrix>& dst, std::size_t dim);

/// Determinant by Laplace-free Gaussian elimination on a copy. Used to decide
/// invertibility without the library's echelon routine.
Scalar determinant(const PrimeField& F, Matrix m);

} // namespace gmorita::oracle
