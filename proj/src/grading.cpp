#include "gmorita/grading.hpp"

#include <algorithm>

#include "gmorita/error.hpp"

namespace gmorita {

std::optional<Elem> GradedAlgebra::homogeneous_degree(std::span<const Scalar> x) const {
  std::optional<Elem> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0)
      continue;
    if (d && *d != degree[i])
      return std::nullopt;
    d = degree[i];
  }
  return d;
}

Matrix GradedAlgebra::component_projection(Elem g) const {
  Matrix P(dim(), dim());
  for (std::size_t i : components[g])
    P(i, i) = 1;
  return P;
}

Vec GradedAlgebra::component_part(std::span<const Scalar> x, Elem g) const {
  Vec r(dim(), 0);
  for (std::size_t i : components[g])
    r[i] = x[i];
  return r;
}

Vec GradedAlgebra::embed_one(std::span<const Scalar> b) const {
  Vec a(dim(), 0);
  for (std::size_t k = 0; k < components[0].size(); ++k)
    a[components[0][k]] = b[k];
  return a;
}

Vec GradedAlgebra::restrict_one(std::span<const Scalar> a) const {
  Vec b(components[0].size());
  for (std::size_t k = 0; k < b.size(); ++k)
    b[k] = a[components[0][k]];
  return b;
}

namespace {

// Structure constants of the subalgebra on the basis indices `kept`, which
// must be closed under multiplication.
Algebra restrict_to_indices(const Algebra& A, const std::vector<std::size_t>& kept, const Vec& unit,
                            const char* what) {
  std::vector<std::ptrdiff_t> local(A.dim(), -1);
  for (std::size_t k = 0; k < kept.size(); ++k)
    local[kept[k]] = std::ptrdiff_t(k);
  const std::size_t d = kept.size();
  std::vector<SparseVec> prods(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (auto [k, s] : A.product(kept[i], kept[j])) {
        require(local[k] >= 0, ErrorKind::Inconsistent, std::string(what) + " is not closed under multiplication");
        prods[i * d + j].push_back({std::uint32_t(local[k]), s});
      }
  Vec u(d);
  for (std::size_t k = 0; k < d; ++k)
    u[k] = unit[kept[k]];
  for (std::size_t i = 0; i < A.dim(); ++i)
    require(unit[i] == 0 || local[i] >= 0, ErrorKind::Inconsistent, std::string(what) + " does not contain the unit");
  std::vector<std::string> labels;
  for (std::size_t k : kept)
    labels.push_back(A.labels()[k]);
  return Algebra(A.field(), d, std::move(prods), std::move(u), std::move(labels));
}

} // namespace

GradedAlgebra make_graded(AlgebraRef A, FiniteGroup grading_group, std::vector<Elem> degree, std::vector<Vec> units) {
  require(degree.size() == A->dim(), ErrorKind::InvalidInput, "one degree per basis vector required");
  GradedAlgebra G{std::move(A), std::move(grading_group), std::move(degree), {}, {}, {}, {}};
  const std::size_t q = G.grading_group.order();
  G.components.resize(q);
  for (std::size_t i = 0; i < G.degree.size(); ++i) {
    require(G.degree[i] < q, ErrorKind::InvalidInput, "degree out of range");
    G.components[G.degree[i]].push_back(i);
  }
  G.one = std::make_shared<const Algebra>(restrict_to_indices(*G.algebra, G.components[0], G.algebra->unit(),
                                                              "the 1-component"));
  if (!units.empty()) {
    require(units.size() == q, ErrorKind::InvalidInput, "one unit per degree required");
    for (Elem g = 0; g < q; ++g) {
      auto inv = G.algebra->inverse(units[g]);
      require(inv.has_value(), ErrorKind::Inconsistent,
              "unit of degree " + G.grading_group.label(g) + " is not invertible");
      G.unit_inverses.push_back(std::move(*inv));
    }
    G.units = std::move(units);
  }
  return G;
}

void validate_graded(const GradedAlgebra& A) {
  const Algebra& alg = *A.algebra;
  const FiniteGroup& Q = A.grading_group;
  const PrimeField& F = A.field();
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Elem d = Q.mul(A.degree[i], A.degree[j]);
      for (auto [k, s] : alg.product(i, j)) {
        (void)s;
        require(A.degree[k] == d, ErrorKind::Inconsistent,
                "product of basis vectors " + alg.labels()[i] + " and " + alg.labels()[j] + " is not in degree " +
                    Q.label(d));
      }
    }
  for (Elem g = 0; g < Q.order(); ++g)
    for (Elem h = 0; h < Q.order(); ++h) {
      Elem gh = Q.mul(g, h);
      Matrix span(0, A.components[gh].size());
      Vec row(A.components[gh].size());
      for (std::size_t i : A.components[g])
        for (std::size_t j : A.components[h]) {
          Vec p = alg.mul(alg.basis(i), alg.basis(j));
          for (std::size_t k = 0; k < row.size(); ++k)
            row[k] = p[A.components[gh][k]];
          span.append_row(row);
        }
      require(rank(F, span) == A.components[gh].size(), ErrorKind::Inconsistent,
              "grading is not strong: A_" + Q.label(g) + " A_" + Q.label(h) + " does not span A_" + Q.label(gh));
    }
  if (!A.is_crossed_product())
    return;
  require(A.units[0] == alg.unit(), ErrorKind::Inconsistent, "unit of degree 1 must be the identity");
  for (Elem g = 0; g < Q.order(); ++g) {
    require(A.homogeneous_degree(A.units[g]) == g, ErrorKind::Inconsistent,
            "unit of degree " + Q.label(g) + " is not homogeneous of that degree");
    require(A.homogeneous_degree(A.unit_inverses[g]) == Q.inv(g), ErrorKind::Inconsistent,
            "inverse of the unit of degree " + Q.label(g) + " is not in the inverse degree");
    require(alg.mul(A.units[g], A.unit_inverses[g]) == alg.unit() &&
                alg.mul(A.unit_inverses[g], A.units[g]) == alg.unit(),
            ErrorKind::Inconsistent, "unit of degree " + Q.label(g) + " has a wrong inverse");
  }
}

GradingTarget grading_via(const std::vector<Elem>& to_parent, const std::vector<Elem>& ambient_degree,
                          const FiniteGroup& target) {
  GradingTarget t{target, {}};
  for (Elem g : to_parent) {
    require(g < ambient_degree.size() && ambient_degree[g] < target.order(), ErrorKind::InvalidInput,
            "element outside the domain of the degree map");
    t.degree_of.push_back(ambient_degree[g]);
  }
  return t;
}

Vec BlockExtension::to_group_algebra(std::span<const Scalar> a) const {
  const PrimeField& F = field;
  const std::size_t r = block_dim();
  Vec y(group.order(), 0);
  for (std::size_t q = 0; q < representatives.size(); ++q)
    for (std::size_t i = 0; i < r; ++i) {
      Scalar c = a[q * r + i];
      if (c == 0)
        continue;
      for (std::size_t m = 0; m < normal_order.size(); ++m)
        if (beta(i, m)) {
          Elem g = group.mul(normal_order[m], representatives[q]);
          y[g] = F.add(y[g], F.mul(c, beta(i, m)));
        }
    }
  return y;
}

Vec BlockExtension::from_group_algebra(std::span<const Scalar> y) const {
  const std::size_t r = block_dim();
  Vec a(representatives.size() * r, 0);
  Vec local(normal_order.size());
  for (std::size_t q = 0; q < representatives.size(); ++q) {
    for (std::size_t m = 0; m < normal_order.size(); ++m)
      local[m] = y[group.mul(normal_order[m], representatives[q])];
    Vec c = beta_coords.coords_or_throw(local, "group algebra element outside the block extension");
    std::copy(c.begin(), c.end(), a.begin() + std::ptrdiff_t(q * r));
  }
  return a;
}

Vec BlockExtension::element(Elem g) const {
  const PrimeField& F = field;
  Vec y(group.order(), 0);
  for (std::size_t m = 0; m < normal_order.size(); ++m) {
    Elem x = group.mul(normal_order[m], g);
    y[x] = F.add(y[x], idempotent[m]);
  }
  return from_group_algebra(y);
}

BlockExtension block_extension(const FiniteGroup& G, const std::vector<Elem>& normal_order, const PrimeField& F,
                               const Vec& e_local, std::optional<GradingTarget> target) {
  const std::size_t nk = normal_order.size();
  require(e_local.size() == nk, ErrorKind::InvalidInput, "idempotent length differs from |K|");
  Subgroup K = make_subgroup(G, normal_order);
  require(K.order() == nk, ErrorKind::InvalidInput, "normal subgroup order list has repeated elements");
  require(is_normal(G, K), ErrorKind::Precondition, "K is not normal in G");

  std::vector<std::ptrdiff_t> pos(G.order(), -1);
  for (std::size_t m = 0; m < nk; ++m)
    pos[normal_order[m]] = std::ptrdiff_t(m);

  // e * k in local coordinates.
  auto times = [&](const Vec& x, Elem k) {
    Vec y(nk, 0);
    for (std::size_t m = 0; m < nk; ++m)
      if (x[m]) {
        std::size_t t = std::size_t(pos[G.mul(normal_order[m], k)]);
        y[t] = F.add(y[t], x[m]);
      }
    return y;
  };
  auto left_times = [&](Elem k, const Vec& x) {
    Vec y(nk, 0);
    for (std::size_t m = 0; m < nk; ++m)
      if (x[m]) {
        std::size_t t = std::size_t(pos[G.mul(k, normal_order[m])]);
        y[t] = F.add(y[t], x[m]);
      }
    return y;
  };
  {
    // e^2 = sum_m e_m (k_m e).
    Vec sq(nk, 0);
    for (std::size_t m = 0; m < nk; ++m)
      if (e_local[m]) {
        Vec em = left_times(normal_order[m], e_local);
        for (std::size_t t = 0; t < nk; ++t)
          sq[t] = F.add(sq[t], F.mul(e_local[m], em[t]));
      }
    require(sq == e_local, ErrorKind::Precondition, "block extension: e is not idempotent");
  }
  for (Elem k : normal_order)
    require(times(e_local, k) == left_times(k, e_local), ErrorKind::Precondition,
            "block extension: e is not central in kK");
  for (Elem g = 0; g < G.order(); ++g)
    for (std::size_t m = 0; m < nk; ++m)
      require(e_local[std::size_t(pos[G.conj(g, normal_order[m])])] == e_local[m], ErrorKind::Precondition,
              "block extension: e is not G-invariant");

  BlockExtension X{};
  X.field = F;
  X.group = G;
  X.normal_order = normal_order;
  X.idempotent = e_local;
  Matrix span(0, nk);
  for (Elem k : normal_order)
    span.append_row(times(e_local, k));
  X.beta = row_basis(F, span);
  X.beta_coords = Coordinatizer(F, X.beta);
  const std::size_t r = X.beta.rows();

  FiniteGroup Q = FiniteGroup::from_table({{0}}, {"1"});
  if (target) {
    require(target->degree_of.size() == G.order(), ErrorKind::InvalidInput, "grading map has wrong length");
    for (Elem a = 0; a < G.order(); ++a) {
      require((target->degree_of[a] == 0) == (pos[a] >= 0), ErrorKind::InvalidInput,
              "grading map kernel differs from K");
      for (Elem b = 0; b < G.order(); ++b)
        require(target->degree_of[G.mul(a, b)] ==
                    target->group.mul(target->degree_of[a], target->degree_of[b]),
                ErrorKind::InvalidInput, "grading map is not a homomorphism");
    }
    require(target->group.order() * nk == G.order(), ErrorKind::InvalidInput, "grading map is not surjective");
    Q = target->group;
    X.degree_of = target->degree_of;
  } else {
    QuotientGroup qg = quotient(G, K);
    Q = qg.quotient;
    X.degree_of = qg.projection;
  }
  X.representatives.assign(Q.order(), Elem(G.order()));
  for (Elem g = 0; g < G.order(); ++g)
    X.representatives[X.degree_of[g]] = std::min(X.representatives[X.degree_of[g]], g);

  const std::size_t n = Q.order() * r;
  // Sparse kG images of the basis, then products computed in kG.
  std::vector<SparseVec> images(n);
  for (std::size_t b = 0; b < n; ++b) {
    Vec y = X.to_group_algebra(unit_vector(n, b));
    for (Elem g = 0; g < G.order(); ++g)
      if (y[g])
        images[b].push_back({g, y[g]});
  }
  std::vector<SparseVec> prods(n * n);
  Vec y(G.order());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::fill(y.begin(), y.end(), 0);
      for (auto [g, s] : images[a])
        for (auto [h, t] : images[b]) {
          Elem gh = G.mul(g, h);
          y[gh] = F.add(y[gh], F.mul(s, t));
        }
      Vec c = X.from_group_algebra(y);
      for (std::size_t k = 0; k < n; ++k)
        if (c[k])
          prods[a * n + b].push_back({std::uint32_t(k), c[k]});
    }
  std::vector<std::string> labels;
  std::vector<Elem> degree(n);
  for (std::size_t q = 0; q < Q.order(); ++q)
    for (std::size_t i = 0; i < r; ++i) {
      labels.push_back("b" + std::to_string(i) + "*" + G.label(X.representatives[q]));
      degree[q * r + i] = Elem(q);
    }
  Vec unit = X.element(G.identity());
  auto alg = std::make_shared<const Algebra>(F, n, std::move(prods), unit, std::move(labels));
  std::vector<Vec> units;
  for (Elem q = 0; q < Q.order(); ++q)
    units.push_back(X.element(X.representatives[q]));
  X.graded = make_graded(alg, Q, std::move(degree), std::move(units));
  validate_graded(X.graded);
  return X;
}

BlockExtension block_extension(const FiniteGroup& G, const Subgroup& K, const PrimeField& F, const Vec& e_in_kG) {
  require(e_in_kG.size() == G.order(), ErrorKind::InvalidInput, "idempotent has wrong length");
  Vec local(K.order());
  for (std::size_t m = 0; m < K.order(); ++m)
    local[m] = e_in_kG[K.elements[m]];
  for (Elem g = 0; g < G.order(); ++g)
    require(e_in_kG[g] == 0 || K.contains(g), ErrorKind::Precondition, "idempotent is not supported on K");
  return block_extension(G, K.elements, F, local);
}

GradedAlgebra truncate(const GradedAlgebra& A, const Subgroup& H, std::vector<std::size_t>* kept_out) {
  require(is_subgroup(A.grading_group, H.elements), ErrorKind::Precondition, "truncation to a non-subgroup");
  SubgroupAsGroup local = subgroup_as_group(A.grading_group, H);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < A.dim(); ++i)
    if (H.contains(A.degree[i]))
      kept.push_back(i);
  auto alg = std::make_shared<const Algebra>(restrict_to_indices(*A.algebra, kept, A.algebra->unit(), "truncation"));
  std::vector<Elem> degree;
  for (std::size_t i : kept)
    degree.push_back(*local.to_local(A.degree[i]));
  std::vector<Vec> units;
  if (A.is_crossed_product())
    for (Elem h : local.to_parent) {
      Vec u;
      for (std::size_t i : kept)
        u.push_back(A.units[h][i]);
      units.push_back(std::move(u));
    }
  GradedAlgebra T = make_graded(alg, local.group, std::move(degree), std::move(units));
  if (kept_out)
    *kept_out = std::move(kept);
  return T;
}

Vec DiagonalAlgebra::pure(std::span<const Scalar> a, std::span<const Scalar> ap) const {
  const PrimeField& F = field;
  Vec v(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k)
    v[k] = F.mul(a[pairs[k].first], ap[pairs[k].second]);
  return v;
}

DiagonalAlgebra diagonal_subalgebra(const GradedAlgebra& A, const GradedAlgebra& Ap) {
  require(A.grading_group == Ap.grading_group, ErrorKind::Precondition, "diagonal: grading groups differ");
  require(A.field() == Ap.field(), ErrorKind::Precondition, "diagonal: fields differ");
  const FiniteGroup& Q = A.grading_group;
  const PrimeField& F = A.field();
  const std::size_t na = A.dim(), nb = Ap.dim();

  DiagonalAlgebra D;
  D.field = F;
  D.index_of.assign(na * nb, -1);
  std::vector<Elem> degree;
  for (Elem g = 0; g < Q.order(); ++g)
    for (std::size_t i : A.components[g])
      for (std::size_t j : Ap.components[Q.inv(g)]) {
        D.index_of[i * nb + j] = std::ptrdiff_t(D.pairs.size());
        D.pairs.push_back({i, j});
        degree.push_back(g);
      }
  const std::size_t n = D.pairs.size();
  std::vector<SparseVec> prods(n * n);
  Vec acc(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto [i, j] = D.pairs[x];
      auto [c, d] = D.pairs[y];
      std::fill(acc.begin(), acc.end(), 0);
      for (auto [s, u] : A.algebra->product(i, c))
        for (auto [t, v] : Ap.algebra->product(d, j)) {
          std::ptrdiff_t k = D.index_of[s * nb + t];
          require(k >= 0, ErrorKind::Inconsistent, "diagonal: product left the diagonal");
          acc[std::size_t(k)] = F.add(acc[std::size_t(k)], F.mul(u, v));
        }
      for (std::size_t k = 0; k < n; ++k)
        if (acc[k])
          prods[x * n + y].push_back({std::uint32_t(k), acc[k]});
    }
  std::vector<std::string> labels;
  for (auto [i, j] : D.pairs)
    labels.push_back(A.algebra->labels()[i] + "(x)" + Ap.algebra->labels()[j]);

  Vec unit = D.pure(A.algebra->unit(), Ap.algebra->unit());
  auto alg = std::make_shared<const Algebra>(F, n, std::move(prods), std::move(unit), std::move(labels));
  std::vector<Vec> units;
  if (A.is_crossed_product() && Ap.is_crossed_product())
    for (Elem g = 0; g < Q.order(); ++g)
      units.push_back(D.pure(A.units[g], Ap.unit_inverses[g]));
  D.graded = make_graded(alg, Q, std::move(degree), std::move(units));
  return D;
}

} // namespace gmorita
