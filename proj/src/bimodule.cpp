#include "gmorita/bimodule.hpp"

#include <random>

#include "gmorita/error.hpp"

namespace gmorita {

namespace {

Matrix combine(const PrimeField& F, const std::vector<Matrix>& mats, std::span<const Scalar> coeffs, std::size_t dim) {
  Matrix r(dim, dim);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i])
      r = add(F, r, scale(F, coeffs[i], mats[i]));
  return r;
}

Matrix combine_sparse(const PrimeField& F, const std::vector<Matrix>& mats, const SparseVec& v, std::size_t dim) {
  Matrix r(dim, dim);
  for (auto [k, s] : v)
    r = add(F, r, scale(F, s, mats[k]));
  return r;
}

} // namespace

std::vector<Matrix> extend_representation(const FiniteGroup& G, const std::vector<Elem>& generators,
                                          const std::vector<Matrix>& images, const PrimeField& F,
                                          bool contravariant) {
  require(generators.size() == images.size(), ErrorKind::InvalidInput, "one matrix per generator required");
  require(!images.empty() || G.order() == 1, ErrorKind::InvalidInput, "no generators given");
  const std::size_t d = images.empty() ? 0 : images[0].rows();
  for (const auto& m : images)
    require(m.rows() == d && m.cols() == d, ErrorKind::InvalidInput, "generator matrices must be square of equal size");
  std::vector<Matrix> rho(G.order());
  std::vector<bool> known(G.order(), false);
  rho[G.identity()] = Matrix::identity(d);
  known[G.identity()] = true;
  std::vector<Elem> frontier{G.identity()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier)
      for (std::size_t s = 0; s < generators.size(); ++s) {
        Elem y = G.mul(x, generators[s]);
        if (known[y])
          continue;
        rho[y] = contravariant ? mul(F, images[s], rho[x]) : mul(F, rho[x], images[s]);
        known[y] = true;
        next.push_back(y);
      }
    frontier = std::move(next);
  }
  for (Elem g = 0; g < G.order(); ++g)
    require(known[g], ErrorKind::InvalidInput, "generators do not generate the group");
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b) {
      Matrix ab = contravariant ? mul(F, rho[b], rho[a]) : mul(F, rho[a], rho[b]);
      require(rho[G.mul(a, b)] == ab, ErrorKind::InvalidInput,
              "generator matrices do not define a representation (fails on " + G.label(a) + ", " + G.label(b) + ")");
    }
  return rho;
}

std::vector<Matrix> linear_extension(const PrimeField& F, const Matrix& elements, const std::vector<Matrix>& rho) {
  require(elements.cols() == rho.size(), ErrorKind::InvalidInput, "element vectors do not match the group order");
  const std::size_t d = rho.empty() ? 0 : rho[0].rows();
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < elements.rows(); ++i)
    out.push_back(combine(F, rho, elements.row(i), d));
  return out;
}

Matrix Bimodule::left_of(std::span<const Scalar> a) const { return combine(field(), left_action, a, dim); }
Matrix Bimodule::right_of(std::span<const Scalar> b) const { return combine(field(), right_action, b, dim); }

void validate_bimodule(const Bimodule& M) {
  require(M.left && M.right, ErrorKind::InvalidInput, "bimodule without algebras");
  require(M.left->field() == M.right->field(), ErrorKind::InvalidInput, "bimodule algebras over different fields");
  const PrimeField& F = M.field();
  const Algebra& L = *M.left;
  const Algebra& R = *M.right;
  require(M.left_action.size() == L.dim(), ErrorKind::InvalidInput, "need one left action matrix per basis vector");
  require(M.right_action.size() == R.dim(), ErrorKind::InvalidInput, "need one right action matrix per basis vector");
  for (const auto& m : M.left_action)
    require(m.rows() == M.dim && m.cols() == M.dim, ErrorKind::InvalidInput, "left action matrix has wrong shape");
  for (const auto& m : M.right_action)
    require(m.rows() == M.dim && m.cols() == M.dim, ErrorKind::InvalidInput, "right action matrix has wrong shape");
  const Matrix I = Matrix::identity(M.dim);
  require(M.left_of(L.unit()) == I, ErrorKind::InvalidInput, "left action is not unital");
  require(M.right_of(R.unit()) == I, ErrorKind::InvalidInput, "right action is not unital");
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j)
      require(mul(F, M.left_action[i], M.left_action[j]) == combine_sparse(F, M.left_action, L.product(i, j), M.dim),
              ErrorKind::InvalidInput,
              "left action is not multiplicative on (" + L.labels()[i] + ", " + L.labels()[j] + ")");
  for (std::size_t i = 0; i < R.dim(); ++i)
    for (std::size_t j = 0; j < R.dim(); ++j)
      require(mul(F, M.right_action[j], M.right_action[i]) ==
                  combine_sparse(F, M.right_action, R.product(i, j), M.dim),
              ErrorKind::InvalidInput,
              "right action is not multiplicative on (" + R.labels()[i] + ", " + R.labels()[j] + ")");
  for (const auto& l : M.left_action)
    for (const auto& r : M.right_action)
      require(mul(F, l, r) == mul(F, r, l), ErrorKind::InvalidInput, "left and right actions do not commute");
}

Bimodule make_bimodule(AlgebraRef left, AlgebraRef right, std::size_t dim, std::vector<Matrix> left_action,
                       std::vector<Matrix> right_action) {
  Bimodule M{std::move(left), std::move(right), dim, std::move(left_action), std::move(right_action)};
  validate_bimodule(M);
  return M;
}

Module make_module(AlgebraRef A, std::size_t dim, std::vector<Matrix> action) {
  AlgebraRef k = ground_algebra(A->field());
  return make_bimodule(std::move(A), std::move(k), dim, std::move(action), {Matrix::identity(dim)});
}

Bimodule regular_bimodule(AlgebraRef A) {
  std::vector<Matrix> L, R;
  for (std::size_t i = 0; i < A->dim(); ++i) {
    Vec e = A->basis(i);
    L.push_back(A->left_mult(e));
    R.push_back(A->right_mult(e));
  }
  std::size_t d = A->dim();
  return make_bimodule(A, A, d, std::move(L), std::move(R));
}

Module regular_module(AlgebraRef A) {
  std::vector<Matrix> L;
  for (std::size_t i = 0; i < A->dim(); ++i)
    L.push_back(A->left_mult(A->basis(i)));
  std::size_t d = A->dim();
  return make_module(std::move(A), d, std::move(L));
}

Bimodule direct_sum(const Bimodule& M, const Bimodule& N) {
  require(same_algebra(M.left, N.left) && same_algebra(M.right, N.right), ErrorKind::InvalidInput,
          "direct sum of bimodules over different algebras");
  auto blockdiag = [&](const Matrix& a, const Matrix& b) {
    Matrix r(M.dim + N.dim, M.dim + N.dim);
    for (std::size_t i = 0; i < M.dim; ++i)
      for (std::size_t j = 0; j < M.dim; ++j)
        r(i, j) = a(i, j);
    for (std::size_t i = 0; i < N.dim; ++i)
      for (std::size_t j = 0; j < N.dim; ++j)
        r(M.dim + i, M.dim + j) = b(i, j);
    return r;
  };
  std::vector<Matrix> L, R;
  for (std::size_t i = 0; i < M.left_action.size(); ++i)
    L.push_back(blockdiag(M.left_action[i], N.left_action[i]));
  for (std::size_t i = 0; i < M.right_action.size(); ++i)
    R.push_back(blockdiag(M.right_action[i], N.right_action[i]));
  return make_bimodule(M.left, M.right, M.dim + N.dim, std::move(L), std::move(R));
}

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) { return a == b || a->same_structure(*b); }

Vec TensorProduct::pure(std::span<const Scalar> x, std::span<const Scalar> y) const {
  const PrimeField& F = field;
  return mul(F, quotient.projection, kron(F, x, y));
}

Matrix TensorProduct::descend(const Matrix& ambient_map) const {
  const PrimeField& F = field;
  Matrix pm = mul(F, quotient.projection, ambient_map);
  require(descends(F, pm, quotient), ErrorKind::Inconsistent, "map does not respect the tensor relations");
  return mul(F, pm, quotient.section);
}

TensorProduct tensor_over(const Bimodule& M, const Bimodule& N) {
  require(same_algebra(M.right, N.left), ErrorKind::Precondition, "tensor product over mismatched algebras");
  const PrimeField& F = M.field();
  const std::size_t dm = M.dim, dn = N.dim, n = dm * dn;
  const Matrix Im = Matrix::identity(dm), In = Matrix::identity(dn);

  Matrix rel(0, n);
  for (std::size_t b = 0; b < M.right->dim(); ++b) {
    // Column (m, k) is m b (x) n_k - m (x) b n_k.
    Matrix r = sub(F, kron(F, M.right_action[b], In), kron(F, Im, N.left_action[b]));
    rel = row_basis(F, vstack(rel, transpose(r)));
  }
  TensorProduct T;
  T.field = F;
  T.left_dim = dm;
  T.right_dim = dn;
  T.quotient = quotient_by(F, n, rel);
  std::vector<Matrix> L, R;
  for (const auto& a : M.left_action)
    L.push_back(T.descend(kron(F, a, In)));
  for (const auto& c : N.right_action)
    R.push_back(T.descend(kron(F, Im, c)));
  T.module = make_bimodule(M.left, N.right, T.quotient.dim(), std::move(L), std::move(R));
  return T;
}

std::vector<Matrix> hom_space(const Bimodule& M, const Bimodule& N) {
  require(same_algebra(M.left, N.left), ErrorKind::Precondition, "Hom between modules over different algebras");
  return intertwiners(M.field(), M.left_action, N.left_action, M.dim, N.dim);
}

std::vector<Matrix> bimodule_hom_space(const Bimodule& M, const Bimodule& N) {
  require(same_algebra(M.left, N.left) && same_algebra(M.right, N.right), ErrorKind::Precondition,
          "Hom between bimodules over different algebras");
  std::vector<Matrix> src = M.left_action, dst = N.left_action;
  src.insert(src.end(), M.right_action.begin(), M.right_action.end());
  dst.insert(dst.end(), N.right_action.begin(), N.right_action.end());
  return intertwiners(M.field(), src, dst, M.dim, N.dim);
}

Vec DualBimodule::coords_of(const Matrix& f) const { return coords.coords_or_throw(flatten(f), "map outside M*"); }

Matrix DualBimodule::map_of(std::span<const Scalar> x) const {
  const Matrix& f0 = maps.front();
  return unflatten(coords.combine(x), f0.rows(), f0.cols());
}

DualBimodule dual_bimodule(const Bimodule& M) {
  const PrimeField& F = M.field();
  const Algebra& B = *M.left;
  std::vector<Matrix> regular;
  for (std::size_t i = 0; i < B.dim(); ++i)
    regular.push_back(B.left_mult(B.basis(i)));
  DualBimodule D;
  D.maps = intertwiners(F, M.left_action, regular, M.dim, B.dim());
  Matrix flat(0, M.dim * B.dim());
  for (const auto& f : D.maps)
    flat.append_row(flatten(f));
  D.coords = Coordinatizer(F, flat);
  const std::size_t r = D.maps.size();

  std::vector<Matrix> L, R;
  for (std::size_t j = 0; j < M.right->dim(); ++j) {
    Matrix a(r, r);
    for (std::size_t k = 0; k < r; ++k) {
      Vec c = D.coords_of(mul(F, D.maps[k], M.right_action[j]));
      for (std::size_t t = 0; t < r; ++t)
        a(t, k) = c[t];
    }
    L.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < B.dim(); ++i) {
    Matrix rb = B.right_mult(B.basis(i));
    Matrix a(r, r);
    for (std::size_t k = 0; k < r; ++k) {
      Vec c = D.coords_of(mul(F, rb, D.maps[k]));
      for (std::size_t t = 0; t < r; ++t)
        a(t, k) = c[t];
    }
    R.push_back(std::move(a));
  }
  D.module = make_bimodule(M.right, M.left, r, std::move(L), std::move(R));
  return D;
}

IsoResult find_isomorphism(const PrimeField& F, const std::vector<Matrix>& src, const std::vector<Matrix>& dst,
                           std::size_t dim_src, std::size_t dim_dst, std::uint64_t seed) {
  IsoResult res;
  if (dim_src != dim_dst) {
    res.reason = "dimensions differ (" + std::to_string(dim_src) + " vs " + std::to_string(dim_dst) + ")";
    return res;
  }
  const std::size_t d = dim_src;
  if (d == 0) {
    res.status = IsoStatus::Found;
    return res;
  }
  std::vector<Matrix> hom = intertwiners(F, src, dst, d, d);
  if (hom.empty()) {
    res.reason = "Hom space is zero";
    return res;
  }
  std::size_t end_dim = intertwiners(F, dst, dst, d, d).size();
  if (end_dim != hom.size()) {
    res.reason = "dim Hom = " + std::to_string(hom.size()) + " differs from dim End = " + std::to_string(end_dim);
    return res;
  }

  const std::size_t k = hom.size();
  std::vector<Vec> flat;
  for (const auto& h : hom)
    flat.push_back(flatten(h));
  auto try_coeffs = [&](const Vec& c) -> bool {
    Vec v(d * d, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (c[i])
        axpy(F, c[i], flat[i], v);
    Matrix f = unflatten(v, d, d);
    if (rank(F, f) != d)
      return false;
    res.status = IsoStatus::Found;
    res.witness = std::move(f);
    return true;
  };

  std::uint64_t space = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < k && exhaustive; ++i) {
    space *= F.p();
    exhaustive = space <= kExhaustiveIsoLimit;
  }
  if (exhaustive) {
    Vec c(k, 0);
    while (true) {
      std::size_t pos = 0;
      while (pos < k && ++c[pos] == F.p())
        c[pos++] = 0;
      if (pos == k)
        break;
      if (try_coeffs(c))
        return res;
    }
    res.reason = "no invertible element in the " + std::to_string(k) + "-dimensional Hom space (exhaustive)";
    return res;
  }

  for (std::size_t i = 0; i < k; ++i)
    if (try_coeffs(unit_vector(k, i)))
      return res;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Vec c = unit_vector(k, i);
      c[j] = 1;
      if (try_coeffs(c))
        return res;
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Scalar> coeff(0, F.p() - 1);
  for (int t = 0; t < kIsoTrials; ++t) {
    Vec c(k);
    for (auto& x : c)
      x = coeff(rng);
    if (try_coeffs(c))
      return res;
  }
  res.status = IsoStatus::NotFoundHeuristic;
  res.reason = "no invertible element found in " + std::to_string(kIsoTrials) + " seeded trials";
  return res;
}

IsoResult is_isomorphic(const Bimodule& M, const Bimodule& N, std::uint64_t seed) {
  require(same_algebra(M.left, N.left) && same_algebra(M.right, N.right), ErrorKind::Precondition,
          "isomorphism test between bimodules over different algebras");
  std::vector<Matrix> src = M.left_action, dst = N.left_action;
  src.insert(src.end(), M.right_action.begin(), M.right_action.end());
  dst.insert(dst.end(), N.right_action.begin(), N.right_action.end());
  return find_isomorphism(M.field(), src, dst, M.dim, N.dim, seed);
}

GradedBimodule make_graded_bimodule(Bimodule M, GradedAlgebra left, GradedAlgebra right,
                                    std::vector<Matrix> components) {
  require(left.grading_group == right.grading_group, ErrorKind::InvalidInput,
          "graded bimodule over algebras with different grading groups");
  require(same_algebra(M.left, left.algebra) && same_algebra(M.right, right.algebra), ErrorKind::InvalidInput,
          "graded bimodule algebras do not match its actions");
  const FiniteGroup& Q = left.grading_group;
  require(components.size() == Q.order(), ErrorKind::InvalidInput, "need one component per degree");
  const PrimeField& F = M.field();
  const std::size_t d = M.dim;

  Matrix stacked(0, d);
  std::vector<std::size_t> offsets;
  for (const auto& c : components) {
    require(c.cols() == d, ErrorKind::InvalidInput, "component basis has wrong width");
    offsets.push_back(stacked.rows());
    stacked = vstack(stacked, c);
  }
  require(stacked.rows() == d && rank(F, stacked) == d, ErrorKind::Inconsistent,
          "components do not form a direct-sum decomposition");
  Matrix C = transpose(stacked);
  Matrix Cinv = *inverse(F, C);
  std::vector<Matrix> proj;
  for (std::size_t g = 0; g < Q.order(); ++g) {
    Matrix D(d, d);
    for (std::size_t k = 0; k < components[g].rows(); ++k)
      D(offsets[g] + k, offsets[g] + k) = 1;
    proj.push_back(mul(F, mul(F, C, D), Cinv));
  }

  for (Elem g = 0; g < Q.order(); ++g)
    for (Elem h = 0; h < Q.order(); ++h) {
      for (std::size_t i : left.components[g]) {
        Matrix x = mul(F, M.left_action[i], proj[h]);
        require(mul(F, proj[Q.mul(g, h)], x) == x, ErrorKind::Inconsistent,
                "A_" + Q.label(g) + " M_" + Q.label(h) + " is not contained in M_" + Q.label(Q.mul(g, h)));
      }
      for (std::size_t j : right.components[g]) {
        Matrix x = mul(F, M.right_action[j], proj[h]);
        require(mul(F, proj[Q.mul(h, g)], x) == x, ErrorKind::Inconsistent,
                "M_" + Q.label(h) + " A'_" + Q.label(g) + " is not contained in M_" + Q.label(Q.mul(h, g)));
      }
    }
  return GradedBimodule{std::move(M), std::move(left), std::move(right), std::move(components), std::move(proj)};
}

IsoResult is_graded_isomorphic(const GradedBimodule& M, const GradedBimodule& N, std::uint64_t seed) {
  require(M.grading_group() == N.grading_group(), ErrorKind::Precondition,
          "graded isomorphism test across different grading groups");
  require(same_algebra(M.module.left, N.module.left) && same_algebra(M.module.right, N.module.right),
          ErrorKind::Precondition, "isomorphism test between bimodules over different algebras");
  std::vector<Matrix> src = M.module.left_action, dst = N.module.left_action;
  src.insert(src.end(), M.module.right_action.begin(), M.module.right_action.end());
  dst.insert(dst.end(), N.module.right_action.begin(), N.module.right_action.end());
  src.insert(src.end(), M.projections.begin(), M.projections.end());
  dst.insert(dst.end(), N.projections.begin(), N.projections.end());
  return find_isomorphism(M.module.field(), src, dst, M.module.dim, N.module.dim, seed);
}

GradedBimodule regular_graded_bimodule(const GradedAlgebra& A) {
  std::vector<Matrix> comps;
  for (const auto& idx : A.components) {
    Matrix c(0, A.dim());
    for (std::size_t i : idx)
      c.append_row(unit_vector(A.dim(), i));
    comps.push_back(std::move(c));
  }
  return make_graded_bimodule(regular_bimodule(A.algebra), A, A, std::move(comps));
}

} // namespace gmorita
