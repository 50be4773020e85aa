#include "gmorita/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "gmorita/error.hpp"

namespace gmorita {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    assert(rows[r].size() == cols);
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    assert(cols[c].size() == rows);
    for (std::size_t r = 0; r < rows; ++r)
      m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::col_vec(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    v[r] = (*this)(r, c);
  return v;
}

void Matrix::append_row(std::span<const Scalar> v) {
  if (rows_ == 0 && cols_ == 0)
    cols_ = v.size();
  assert(v.size() == cols_);
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

std::size_t Matrix::count_nonzero() const {
  return std::size_t(std::count_if(data_.begin(), data_.end(), [](Scalar x) { return x != 0; }));
}

Matrix mul(const PrimeField& F, const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  const std::uint64_t p = F.p();
  Matrix c(a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t x = a(i, k);
      if (x == 0)
        continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (brow[j])
          acc[j] = (acc[j] + x * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols(); ++j)
      c(i, j) = Scalar(acc[j]);
  }
  return c;
}

Vec mul(const PrimeField& F, const Matrix& a, std::span<const Scalar> v) {
  assert(a.cols() == v.size());
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t acc = 0;
    auto r = a.row(i);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (r[k] && v[k])
        acc = (acc + std::uint64_t(r[k]) * v[k]) % F.p();
    out[i] = Scalar(acc);
  }
  return out;
}

Vec mul(const PrimeField& F, std::span<const Scalar> v, const Matrix& a) {
  assert(a.rows() == v.size());
  Vec out(a.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k])
      axpy(F, v[k], a.row(k), out);
  return out;
}

Matrix add(const PrimeField& F, const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = F.add(a(i, j), b(i, j));
  return c;
}

Matrix sub(const PrimeField& F, const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = F.sub(a(i, j), b(i, j));
  return c;
}

Matrix scale(const PrimeField& F, Scalar s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = F.mul(s, a(i, j));
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

Matrix kron(const PrimeField& F, const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar x = a(i, j);
      if (x == 0)
        continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = F.mul(x, b(r, c));
    }
  return k;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0)
    return b;
  if (b.rows() == 0)
    return a;
  assert(a.cols() == b.cols());
  Matrix c = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    c.append_row(b.row(r));
  return c;
}

Matrix select_rows(const Matrix& a, std::span<const std::size_t> rows) {
  Matrix m(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(a.row(rows[i]).begin(), a.row(rows[i]).end(), m.row(i).begin());
  return m;
}

Matrix select_cols(const Matrix& a, std::span<const std::size_t> cols) {
  Matrix m(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = a(i, cols[j]);
  return m;
}

Vec add(const PrimeField& F, std::span<const Scalar> a, std::span<const Scalar> b) {
  assert(a.size() == b.size());
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = F.add(a[i], b[i]);
  return c;
}

Vec sub(const PrimeField& F, std::span<const Scalar> a, std::span<const Scalar> b) {
  assert(a.size() == b.size());
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = F.sub(a[i], b[i]);
  return c;
}

Vec scale(const PrimeField& F, Scalar s, std::span<const Scalar> a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = F.mul(s, a[i]);
  return c;
}

void axpy(const PrimeField& F, Scalar s, std::span<const Scalar> x, std::span<Scalar> y) {
  assert(x.size() == y.size());
  if (s == 0)
    return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i])
      y[i] = F.add(y[i], F.mul(s, x[i]));
}

Vec kron(const PrimeField& F, std::span<const Scalar> a, std::span<const Scalar> b) {
  Vec k(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j)
        k[i * b.size() + j] = F.mul(a[i], b[j]);
  return k;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

Vec flatten(const Matrix& m) { return m.data(); }

Matrix unflatten(std::span<const Scalar> v, std::size_t rows, std::size_t cols) {
  assert(v.size() == rows * cols);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    std::copy(v.begin() + r * cols, v.begin() + (r + 1) * cols, m.row(r).begin());
  return m;
}

Echelon echelon(const PrimeField& F, Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t r = lead;
    while (r < rows && m(r, c) == 0)
      ++r;
    if (r == rows)
      continue;
    if (r != lead)
      std::swap_ranges(m.row(r).begin(), m.row(r).end(), m.row(lead).begin());
    const Scalar s = F.inv(m(lead, c));
    for (std::size_t j = c; j < cols; ++j)
      m(lead, j) = F.mul(m(lead, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || m(i, c) == 0)
        continue;
      const Scalar f = F.neg(m(i, c));
      auto src = m.row(lead);
      auto dst = m.row(i);
      for (std::size_t j = c; j < cols; ++j)
        if (src[j])
          dst[j] = F.add(dst[j], F.mul(f, src[j]));
    }
    pivots.push_back(c);
    ++lead;
  }
  Matrix reduced(pivots.size(), cols);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    std::copy(m.row(r).begin(), m.row(r).end(), reduced.row(r).begin());
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const PrimeField& F, const Matrix& m) { return echelon(F, m).rank(); }

Matrix nullspace(const PrimeField& F, const Matrix& a) {
  const std::size_t n = a.cols();
  Echelon e = echelon(F, a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots)
    is_pivot[p] = true;
  Matrix basis(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      v[e.pivots[k]] = F.neg(e.reduced(k, free));
    basis.append_row(v);
  }
  return basis;
}

std::optional<Vec> solve(const PrimeField& F, const Matrix& a, std::span<const Scalar> b) {
  assert(a.rows() == b.size());
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, a.cols()) = b[i];
  }
  Echelon e = echelon(F, std::move(aug));
  Vec x(a.cols(), 0);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == a.cols())
      return std::nullopt;
    x[e.pivots[k]] = e.reduced(k, a.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const PrimeField& F, const Matrix& a) {
  if (a.rows() != a.cols())
    return std::nullopt;
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, n + i) = 1;
  }
  Echelon e = echelon(F, std::move(aug));
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = e.reduced(i, n + j);
  return inv;
}

Matrix row_basis(const PrimeField& F, const Matrix& m) { return echelon(F, m).reduced; }

Coordinatizer::Coordinatizer(const PrimeField& F, Matrix basis) : F_(F), basis_(std::move(basis)) {
  Echelon e = echelon(F_, basis_);
  require(e.rank() == basis_.rows(), ErrorKind::Inconsistent, "coordinatizer basis is not linearly independent");
  pivots_ = e.pivots;
  auto inv = inverse(F_, select_cols(basis_, pivots_));
  assert(inv);
  pivot_inverse_ = std::move(*inv);
}

std::optional<Vec> Coordinatizer::coords(std::span<const Scalar> v) const {
  assert(v.size() == basis_.cols());
  Vec vp(pivots_.size());
  for (std::size_t k = 0; k < pivots_.size(); ++k)
    vp[k] = v[pivots_[k]];
  Vec c = mul(F_, vp, pivot_inverse_);
  Vec back = mul(F_, c, basis_);
  if (!std::equal(back.begin(), back.end(), v.begin()))
    return std::nullopt;
  return c;
}

Vec Coordinatizer::coords_or_throw(std::span<const Scalar> v, const char* what) const {
  auto c = coords(v);
  if (!c)
    fail(ErrorKind::Inconsistent, std::string("vector outside expected span: ") + what);
  return *c;
}

Vec Coordinatizer::combine(std::span<const Scalar> c) const { return mul(F_, c, basis_); }

Quotient quotient_by(const PrimeField& F, std::size_t n, const Matrix& relations) {
  Echelon e = relations.rows() ? echelon(F, relations) : Echelon{Matrix(0, n), {}};
  std::vector<std::ptrdiff_t> pivot_row(n, -1);
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    pivot_row[e.pivots[k]] = std::ptrdiff_t(k);
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_row[c] < 0)
      free.push_back(c);

  Quotient q;
  q.ambient = n;
  q.projection = Matrix(free.size(), n);
  q.section = Matrix(n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    q.section(free[j], j) = 1;
    q.projection(j, free[j]) = 1;
  }
  // v - sum_k v[pivot_k] * row_k, read off at the free columns.
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_row[c] < 0)
      continue;
    const std::size_t k = std::size_t(pivot_row[c]);
    for (std::size_t j = 0; j < free.size(); ++j)
      q.projection(j, c) = F.neg(e.reduced(k, free[j]));
  }
  return q;
}

bool descends(const PrimeField& F, const Matrix& map, const Quotient& q) {
  return mul(F, mul(F, map, q.section), q.projection) == map;
}

std::vector<Matrix> intertwiners(const PrimeField& F, std::span<const Matrix> src, std::span<const Matrix> dst,
                                 std::size_t dim_src, std::size_t dim_dst, std::span<const Sandwich> constraints) {
  assert(src.size() == dst.size());
  const std::size_t unknowns = dim_dst * dim_src;
  auto var = [dim_src](std::size_t r, std::size_t c) { return r * dim_src + c; };

  Matrix acc(0, unknowns);
  auto absorb = [&](Matrix& block) {
    acc = row_basis(F, vstack(acc, block));
    block = Matrix(0, unknowns);
  };

  Matrix block(0, unknowns);
  Vec eq(unknowns);
  for (std::size_t k = 0; k < src.size(); ++k) {
    const Matrix& S = src[k];
    const Matrix& D = dst[k];
    // (f S - D f)(r, c) = sum_l f(r,l) S(l,c) - sum_l D(r,l) f(l,c)
    for (std::size_t r = 0; r < dim_dst; ++r)
      for (std::size_t c = 0; c < dim_src; ++c) {
        std::fill(eq.begin(), eq.end(), 0);
        for (std::size_t l = 0; l < dim_src; ++l)
          eq[var(r, l)] = F.add(eq[var(r, l)], S(l, c));
        for (std::size_t l = 0; l < dim_dst; ++l)
          eq[var(l, c)] = F.sub(eq[var(l, c)], D(r, l));
        if (!is_zero(eq))
          block.append_row(eq);
      }
    if (block.rows() >= unknowns)
      absorb(block);
  }
  for (const auto& s : constraints) {
    // (L f R)(i, j) = sum_{r,c} L(i,r) f(r,c) R(c,j)
    for (std::size_t i = 0; i < s.left.rows(); ++i)
      for (std::size_t j = 0; j < s.right.cols(); ++j) {
        std::fill(eq.begin(), eq.end(), 0);
        for (std::size_t r = 0; r < dim_dst; ++r) {
          if (s.left(i, r) == 0)
            continue;
          for (std::size_t c = 0; c < dim_src; ++c)
            if (s.right(c, j))
              eq[var(r, c)] = F.add(eq[var(r, c)], F.mul(s.left(i, r), s.right(c, j)));
        }
        if (!is_zero(eq))
          block.append_row(eq);
      }
    if (block.rows() >= unknowns)
      absorb(block);
  }
  absorb(block);

  Matrix ns = nullspace(F, acc);
  std::vector<Matrix> out;
  out.reserve(ns.rows());
  for (std::size_t i = 0; i < ns.rows(); ++i)
    out.push_back(unflatten(ns.row(i), dim_dst, dim_src));
  return out;
}

} // namespace gmorita
