#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gmorita/field.hpp"

namespace gmorita {

/// Dense row-major matrix over F_p. Matrices act on column vectors; a list of
/// vectors (a spanning set, a basis) is stored as the rows of a Matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
  Vec col_vec(std::size_t c) const;
  void append_row(std::span<const Scalar> v);

  const std::vector<Scalar>& data() const { return data_; }
  bool is_zero() const;
  std::size_t count_nonzero() const;

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix mul(const PrimeField& F, const Matrix& a, const Matrix& b);
Vec mul(const PrimeField& F, const Matrix& a, std::span<const Scalar> v);
/// Row vector times matrix.
Vec mul(const PrimeField& F, std::span<const Scalar> v, const Matrix& a);
Matrix add(const PrimeField& F, const Matrix& a, const Matrix& b);
Matrix sub(const PrimeField& F, const Matrix& a, const Matrix& b);
Matrix scale(const PrimeField& F, Scalar s, const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix kron(const PrimeField& F, const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix select_rows(const Matrix& a, std::span<const std::size_t> rows);
Matrix select_cols(const Matrix& a, std::span<const std::size_t> cols);

Vec add(const PrimeField& F, std::span<const Scalar> a, std::span<const Scalar> b);
Vec sub(const PrimeField& F, std::span<const Scalar> a, std::span<const Scalar> b);
Vec scale(const PrimeField& F, Scalar s, std::span<const Scalar> a);
void axpy(const PrimeField& F, Scalar s, std::span<const Scalar> x, std::span<Scalar> y);
Vec kron(const PrimeField& F, std::span<const Scalar> a, std::span<const Scalar> b);
Vec unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);

/// Flattens a matrix row-major into a vector, and back.
Vec flatten(const Matrix& m);
Matrix unflatten(std::span<const Scalar> v, std::size_t rows, std::size_t cols);

/// Reduced row echelon form. `pivots[k]` is the pivot column of row k of `reduced`;
/// only the first `pivots.size()` rows of `reduced` are kept.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Echelon echelon(const PrimeField& F, Matrix m);
std::size_t rank(const PrimeField& F, const Matrix& m);

/// Rows form a basis of {x : a x = 0}.
Matrix nullspace(const PrimeField& F, const Matrix& a);

/// A solution of a x = b with every free variable set to zero, or nullopt.
std::optional<Vec> solve(const PrimeField& F, const Matrix& a, std::span<const Scalar> b);
std::optional<Matrix> inverse(const PrimeField& F, const Matrix& a);

/// Reduced basis (as rows) of the row space of `m`.
Matrix row_basis(const PrimeField& F, const Matrix& m);

/// Coordinates relative to a fixed list of linearly independent row vectors.
class Coordinatizer {
public:
  Coordinatizer() = default;
  Coordinatizer(const PrimeField& F, Matrix basis);

  std::size_t size() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  std::optional<Vec> coords(std::span<const Scalar> v) const;
  /// Throws Error(Inconsistent) if v is not in the span.
  Vec coords_or_throw(std::span<const Scalar> v, const char* what) const;
  bool contains(std::span<const Scalar> v) const { return coords(v).has_value(); }
  Vec combine(std::span<const Scalar> c) const;

private:
  PrimeField F_{2};
  Matrix basis_;
  std::vector<std::size_t> pivots_;
  Matrix pivot_inverse_;
};

/// Quotient of F_p^n by the span of a set of relation rows. `projection` (q x n)
/// maps a vector to its class; `section` (n x q) picks the representative
/// supported on the non-pivot coordinates, so projection * section = I.
struct Quotient {
  std::size_t ambient = 0;
  Matrix projection;
  Matrix section;
  std::size_t dim() const { return projection.rows(); }
};

Quotient quotient_by(const PrimeField& F, std::size_t n, const Matrix& relations);

/// True when `map` (m x n) vanishes on the kernel of q.projection, i.e. it
/// descends to the quotient. The descended map is map * q.section.
bool descends(const PrimeField& F, const Matrix& map, const Quotient& q);

/// A linear constraint left * f * right = 0 on an unknown map f.
struct Sandwich {
  Matrix left;
  Matrix right;
};

/// Basis of the maps f (dim_dst x dim_src) with f * src[k] = dst[k] * f for all k
/// and left * f * right = 0 for every extra sandwich constraint.
std::vector<Matrix> intertwiners(const PrimeField& F, std::span<const Matrix> src, std::span<const Matrix> dst,
                                 std::size_t dim_src, std::size_t dim_dst,
                                 std::span<const Sandwich> constraints = {});

} // namespace gmorita
