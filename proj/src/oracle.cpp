#include "gmorita/oracle.hpp"

#include <algorithm>
#include <set>

#include "gmorita/error.hpp"

namespace gmorita::oracle {

namespace {

// p^n, saturating at limit + 1.
std::uint64_t bounded_power(std::uint64_t p, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    r *= p;
    if (r > kEnumerationLimit)
      return kEnumerationLimit + 1;
  }
  return r;
}

// Advances a base-p counter; returns false after wrapping to zero.
bool next_vector(Vec& v, Scalar p) {
  for (auto& x : v) {
    if (++x < p)
      return true;
    x = 0;
  }
  return false;
}

std::size_t elimination_rank(const PrimeField& F, Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::swap(m(piv, j), m(r, j));
    Scalar inv = F.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      Scalar f = F.mul(m(i, c), inv);
      if (f == 0)
        continue;
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    ++r;
  }
  return r;
}

} // namespace

std::vector<Permutation> permutation_closure(std::size_t degree, const std::vector<Permutation>& generators) {
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i)
    id[i] = std::uint32_t(i);
  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& a : frontier)
      for (const auto& g : generators) {
        Permutation c(degree);
        for (std::size_t x = 0; x < degree; ++x)
          c[x] = g[a[x]];
        if (seen.insert(c).second)
          next.push_back(c);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Elem> commuting_elements(const FiniteGroup& G, const std::vector<Elem>& N) {
  std::vector<Elem> out;
  for (Elem g = 0; g < G.order(); ++g)
    if (std::all_of(N.begin(), N.end(), [&](Elem n) { return G.mul(g, n) == G.mul(n, g); }))
      out.push_back(g);
  return out;
}

std::size_t coset_count(const FiniteGroup& G, const std::vector<Elem>& N) {
  std::set<std::vector<Elem>> cosets;
  for (Elem g = 0; g < G.order(); ++g) {
    std::vector<Elem> c;
    for (Elem n : N)
      c.push_back(G.mul(g, n));
    std::sort(c.begin(), c.end());
    cosets.insert(c);
  }
  return cosets.size();
}

std::vector<Vec> class_sums(const FiniteGroup& G) {
  std::vector<bool> done(G.order(), false);
  std::vector<Vec> sums;
  for (Elem x = 0; x < G.order(); ++x) {
    if (done[x])
      continue;
    Vec s(G.order(), 0);
    for (Elem g = 0; g < G.order(); ++g) {
      Elem y = G.conj(g, x);
      if (!done[y]) {
        done[y] = true;
        s[y] = 1;
      }
    }
    sums.push_back(s);
  }
  return sums;
}

std::optional<std::vector<Vec>> enumerate_block_idempotents(const Algebra& A) {
  const PrimeField& F = A.field();
  const std::size_t n = A.dim();

  // Candidate generator: either all of A or all of span(center basis).
  Matrix span_basis;
  if (bounded_power(F.p(), n) <= kEnumerationLimit) {
    span_basis = Matrix::identity(n);
  } else {
    span_basis = center(A);
    if (bounded_power(F.p(), span_basis.rows()) > kEnumerationLimit)
      return std::nullopt;
  }

  std::vector<Vec> idempotents;
  Vec c(span_basis.rows(), 0);
  while (next_vector(c, F.p())) {
    Vec z(n, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i])
        for (std::size_t k = 0; k < n; ++k)
          z[k] = F.add(z[k], F.mul(c[i], span_basis(i, k)));
    if (A.is_idempotent(z) && A.is_central(z))
      idempotents.push_back(std::move(z));
  }

  std::vector<std::pair<std::size_t, Vec>> primitive;
  for (const Vec& e : idempotents) {
    bool prim = std::none_of(idempotents.begin(), idempotents.end(),
                             [&](const Vec& f) { return f != e && A.mul(e, f) == f; });
    if (prim)
      primitive.push_back({elimination_rank(F, A.left_mult(e)), e});
  }
  std::sort(primitive.begin(), primitive.end());
  std::vector<Vec> out;
  for (auto& pe : primitive)
    out.push_back(std::move(pe.second));
  return out;
}

std::optional<std::uint64_t> count_intertwiners(const PrimeField& F, const std::vector<Matrix>& src,
                                                const std::vector<Matrix>& dst, std::size_t dim_src,
                                                std::size_t dim_dst) {
  if (bounded_power(F.p(), dim_src * dim_dst) > kEnumerationLimit)
    return std::nullopt;
  std::uint64_t count = 0;
  Vec entries(dim_src * dim_dst, 0);
  do {
    Matrix f = unflatten(entries, dim_dst, dim_src);
    bool ok = true;
    for (std::size_t k = 0; k < src.size() && ok; ++k)
      ok = mul(F, f, src[k]) == mul(F, dst[k], f);
    count += ok;
  } while (next_vector(entries, F.p()));
  return count;
}

std::optional<bool> exists_invertible_intertwiner(const PrimeField& F, const std::vector<Matrix>& src,
                                                  const std::vector<Matrix>& dst, std::size_t dim) {
  if (bounded_power(F.p(), dim * dim) > kEnumerationLimit)
    return std::nullopt;
  Vec entries(dim * dim, 0);
  while (next_vector(entries, F.p())) {
    Matrix f = unflatten(entries, dim, dim);
    if (determinant(F, f) == 0)
      continue;
    bool ok = true;
    for (std::size_t k = 0; k < src.size() && ok; ++k)
      ok = mul(F, f, src[k]) == mul(F, dst[k], f);
    if (ok)
      return true;
  }
  return dim == 0;
}

Scalar determinant(const PrimeField& F, Matrix m) {
  require(m.rows() == m.cols(), ErrorKind::InvalidInput, "determinant of a non-square matrix");
  Scalar det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m(piv, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    Scalar inv = F.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      Scalar f = F.mul(m(i, c), inv);
      if (f)
        for (std::size_t j = c; j < n; ++j)
          m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

} // namespace gmorita::oracle
