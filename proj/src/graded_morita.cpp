#include "gmorita/graded_morita.hpp"

#include "gmorita/error.hpp"

namespace gmorita {

namespace {

// Pushes a map defined on the ambient space of `src` down to its quotient.
Matrix descend_from(const PrimeField& F, const Matrix& ambient, const Quotient& src, const std::string& what) {
  require(descends(F, ambient, src), ErrorKind::Inconsistent, what + " is not well defined on the tensor product");
  return mul(F, ambient, src.section);
}

// Projections onto the pieces of a direct-sum decomposition given by row bases.
std::vector<Matrix> projections_of(const PrimeField& F, const std::vector<Matrix>& comps, std::size_t d) {
  Matrix stacked(0, d);
  std::vector<std::size_t> offsets;
  for (const auto& c : comps) {
    offsets.push_back(stacked.rows());
    stacked = vstack(stacked, c);
  }
  Matrix C = transpose(stacked);
  auto Cinv = inverse(F, C);
  require(Cinv.has_value(), ErrorKind::Inconsistent, "components do not form a direct-sum decomposition");
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < comps.size(); ++g) {
    Matrix D(d, d);
    for (std::size_t k = 0; k < comps[g].rows(); ++k)
      D(offsets[g] + k, offsets[g] + k) = 1;
    out.push_back(mul(F, mul(F, C, D), *Cinv));
  }
  return out;
}

bool in_centralizer(const GradedAlgebra& A, std::span<const Scalar> c) {
  const Algebra& alg = *A.algebra;
  for (std::size_t j = 0; j < A.one->dim(); ++j) {
    Vec b = A.embed_one(A.one->basis(j));
    if (alg.mul(b, c) != alg.mul(c, b))
      return false;
  }
  return true;
}

std::string degree_failure(const GradedAlgebra& target, const Matrix& map, const std::vector<Matrix>& src_comps,
                           const std::string& what) {
  const FiniteGroup& Q = target.grading_group;
  const PrimeField& F = target.field();
  for (Elem g = 0; g < Q.order(); ++g) {
    Matrix P = target.component_projection(g);
    for (std::size_t r = 0; r < src_comps[g].rows(); ++r) {
      Vec y = mul(F, map, src_comps[g].row(r));
      if (mul(F, P, y) != y)
        return what + " does not preserve degree " + Q.label(g);
    }
  }
  return {};
}

} // namespace

Bimodule algebra_bimodule(const GradedAlgebra& A, bool full_left, bool full_right) {
  const Algebra& alg = *A.algebra;
  std::vector<Matrix> L, R;
  if (full_left)
    for (std::size_t i = 0; i < alg.dim(); ++i)
      L.push_back(alg.left_mult(alg.basis(i)));
  else
    for (std::size_t i = 0; i < A.one->dim(); ++i)
      L.push_back(alg.left_mult(A.embed_one(A.one->basis(i))));
  if (full_right)
    for (std::size_t j = 0; j < alg.dim(); ++j)
      R.push_back(alg.right_mult(alg.basis(j)));
  else
    for (std::size_t j = 0; j < A.one->dim(); ++j)
      R.push_back(alg.right_mult(A.embed_one(A.one->basis(j))));
  return make_bimodule(full_left ? A.algebra : A.one, full_right ? A.algebra : A.one, alg.dim(), std::move(L),
                       std::move(R));
}

Matrix restrict_action(const PrimeField& F, const Matrix& X, const Coordinatizer& sub) {
  const std::size_t k = sub.size();
  Matrix Y(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    Vec c = sub.coords_or_throw(mul(F, X, sub.basis().row(i)), "restricted action");
    for (std::size_t j = 0; j < k; ++j)
      Y(j, i) = c[j];
  }
  return Y;
}

Vec GradedEndAlgebra::coords_of(const Matrix& f) const { return coords.coords_or_throw(flatten(f), "E(U) element"); }

Matrix GradedEndAlgebra::map_of(std::span<const Scalar> x) const {
  const std::size_t d = induced.module.dim;
  return unflatten(coords.combine(x), d, d);
}

GradedEndAlgebra graded_end_algebra(const GradedAlgebra& A, const Module& U) {
  require(same_algebra(U.left, A.one), ErrorKind::Precondition, "E(U) needs a module over the 1-component");
  const PrimeField& F = A.field();
  const FiniteGroup& Q = A.grading_group;
  const Algebra& alg = *A.algebra;

  GradedEndAlgebra E;
  E.base = A;
  E.U = U;
  E.A_as_AB = algebra_bimodule(A, true, false);
  E.induced = tensor_over(E.A_as_AB, U);
  const std::size_t d = E.induced.module.dim;

  std::vector<Matrix> comps;
  for (Elem g = 0; g < Q.order(); ++g) {
    Matrix span(0, d);
    for (std::size_t i : A.components[g])
      for (std::size_t u = 0; u < U.dim; ++u)
        span.append_row(E.induced.pure(alg.basis(i), unit_vector(U.dim, u)));
    comps.push_back(row_basis(F, span));
  }
  std::vector<Matrix> proj = projections_of(F, comps, d);

  const auto& act = E.induced.module.left_action;
  std::vector<Elem> degree;
  for (Elem h = 0; h < Q.order(); ++h) {
    std::vector<Sandwich> cons;
    for (Elem g = 0; g < Q.order(); ++g)
      cons.push_back({sub(F, Matrix::identity(d), proj[Q.mul(g, h)]), proj[g]});
    for (Matrix& f : intertwiners(F, act, act, d, d, cons)) {
      E.basis_maps.push_back(std::move(f));
      degree.push_back(h);
    }
  }
  require(E.basis_maps.size() == intertwiners(F, act, act, d, d).size(), ErrorKind::Inconsistent,
          "End_A(A (x)_B U) is not the sum of its graded parts");

  Matrix flat(0, d * d);
  for (const Matrix& f : E.basis_maps)
    flat.append_row(flatten(f));
  E.coords = Coordinatizer(F, flat);
  const std::size_t n = E.basis_maps.size();
  std::vector<SparseVec> prods(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec c = E.coords_of(mul(F, E.basis_maps[j], E.basis_maps[i]));
      for (std::size_t k = 0; k < n; ++k)
        if (c[k])
          prods[i * n + j].push_back({std::uint32_t(k), c[k]});
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back("f" + std::to_string(i) + "@" + Q.label(degree[i]));
  auto carrier = std::make_shared<const Algebra>(F, n, std::move(prods), E.coords_of(Matrix::identity(d)),
                                                 std::move(labels));
  E.graded = make_graded(carrier, Q, std::move(degree));
  return E;
}

Vec GradedCentralizer::to_parent(std::span<const Scalar> x) const { return coords.combine(x); }

std::optional<Vec> GradedCentralizer::from_parent(std::span<const Scalar> a) const { return coords.coords(a); }

GradedCentralizer graded_centralizer(const GradedAlgebra& A) {
  const PrimeField& F = A.field();
  const FiniteGroup& Q = A.grading_group;
  const Algebra& alg = *A.algebra;
  std::vector<Matrix> comm;
  for (std::size_t j = 0; j < A.one->dim(); ++j) {
    Vec b = A.embed_one(A.one->basis(j));
    comm.push_back(sub(F, alg.right_mult(b), alg.left_mult(b)));
  }
  Matrix spanning(0, alg.dim());
  for (Elem h = 0; h < Q.order(); ++h) {
    const auto& idx = A.components[h];
    Matrix sys(0, idx.size());
    for (const Matrix& c : comm) {
      Matrix part = select_cols(c, idx);
      sys = vstack(sys, part);
    }
    Matrix ker = nullspace(F, sys);
    for (std::size_t r = 0; r < ker.rows(); ++r) {
      Vec x(alg.dim(), 0);
      for (std::size_t t = 0; t < idx.size(); ++t)
        x[idx[t]] = ker(r, t);
      spanning.append_row(x);
    }
  }
  Subalgebra S = make_subalgebra(alg, spanning, alg.unit());
  std::vector<Elem> degree;
  for (std::size_t r = 0; r < S.basis.rows(); ++r) {
    auto g = A.homogeneous_degree(S.basis.row(r));
    require(g.has_value(), ErrorKind::Inconsistent, "centralizer basis vector is not homogeneous");
    degree.push_back(*g);
  }
  return GradedCentralizer{make_graded(S.algebra, Q, std::move(degree)), S.basis, S.coords};
}

Matrix theta_map(const GradedEndAlgebra& E, std::span<const Scalar> c) {
  require(in_centralizer(E.base, c), ErrorKind::Precondition, "theta: element does not centralize B");
  const PrimeField& F = E.base.field();
  Matrix amb = kron(F, E.base.algebra->right_mult(c), Matrix::identity(E.U.dim));
  return E.induced.descend(amb);
}

Vec theta(const GradedEndAlgebra& E, std::span<const Scalar> c) { return E.coords_of(theta_map(E, c)); }

Matrix theta_matrix(const GradedEndAlgebra& E, const GradedCentralizer& C) {
  Matrix out(E.dim(), C.dim());
  for (std::size_t i = 0; i < C.dim(); ++i) {
    Vec t = theta(E, C.basis.row(i));
    for (std::size_t k = 0; k < t.size(); ++k)
      out(k, i) = t[k];
  }
  return out;
}

GradedBimodule grade_dual(const GradedBimodule& M, const DualBimodule& D) {
  const PrimeField& F = M.module.field();
  const FiniteGroup& Q = M.grading_group();
  const std::size_t r = D.maps.size();
  std::vector<Matrix> comps;
  for (Elem h = 0; h < Q.order(); ++h) {
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < r; ++k) {
      Vec col;
      for (Elem g = 0; g < Q.order(); ++g) {
        Matrix outside = sub(F, Matrix::identity(M.left.dim()), M.left.component_projection(Q.mul(g, h)));
        Vec v = flatten(mul(F, mul(F, outside, D.maps[k]), M.projections[g]));
        col.insert(col.end(), v.begin(), v.end());
      }
      cols.push_back(std::move(col));
    }
    std::size_t rows = cols.empty() ? 0 : cols[0].size();
    comps.push_back(nullspace(F, Matrix::from_columns(cols, rows)));
  }
  return make_graded_bimodule(D.module, M.right, M.left, std::move(comps));
}

std::vector<Matrix> tensor_components(const TensorProduct& T, const GradedBimodule& X, const GradedBimodule& Y) {
  const PrimeField& F = X.module.field();
  const FiniteGroup& Q = X.grading_group();
  std::vector<Matrix> comps;
  for (Elem g = 0; g < Q.order(); ++g) {
    Matrix span(0, T.module.dim);
    for (Elem h = 0; h < Q.order(); ++h) {
      Elem k = Q.mul(Q.inv(h), g);
      for (std::size_t a = 0; a < X.components[h].rows(); ++a)
        for (std::size_t b = 0; b < Y.components[k].rows(); ++b)
          span.append_row(T.pure(X.components[h].row(a), Y.components[k].row(b)));
    }
    comps.push_back(row_basis(F, span));
  }
  return comps;
}

Vec GradedMoritaWitness::embed_M(std::span<const Scalar> m) const {
  return mul(Mtilde.module.field(), m, one_basis);
}

Vec GradedMoritaWitness::embed_Mstar(std::span<const Scalar> f) const {
  return mul(Mtilde.module.field(), iota, f);
}

GradedMoritaResult verify_graded_morita(const GradedAlgebra& A, const GradedAlgebra& Ap, const Bimodule& Mtilde,
                                        const std::vector<Matrix>& components,
                                        const std::optional<GradedBimodule>& Mtilde_star) {
  GradedMoritaResult res;
  auto record = [&](std::string name, bool ok, std::string detail = {}) {
    res.checks.push_back({name, ok, detail});
    if (!ok && res.reason.empty())
      res.reason = name + (detail.empty() ? "" : ": " + detail);
    return ok;
  };
  auto attempt = [&](const std::string& name, auto&& fn) {
    try {
      fn();
      return record(name, true);
    } catch (const Error& e) {
      return record(name, false, e.what());
    }
  };

  GradedMoritaWitness W;
  if (!attempt("graded bimodule", [&] { W.Mtilde = make_graded_bimodule(Mtilde, A, Ap, components); }))
    return res;
  if (!attempt("Morita context of Mtilde", [&] { W.tilde = build_morita_context(W.Mtilde.module); }))
    return res;
  if (!attempt("grading of Mtilde*", [&] { W.Mtilde_star = grade_dual(W.Mtilde, W.tilde.Mstar); }))
    return res;
  const PrimeField& F = Mtilde.field();

  if (Mtilde_star) {
    IsoResult iso;
    try {
      iso = is_graded_isomorphic(*Mtilde_star, W.Mtilde_star);
    } catch (const Error& e) {
      iso.reason = e.what();
    }
    if (!record("supplied Mtilde* matches the graded dual", iso.found(), iso.reason))
      return res;
  }

  GradedBimodule T1, T2;
  bool built = attempt("graded tensor products", [&] {
    T1 = make_graded_bimodule(W.tilde.MMs.module, A, A, tensor_components(W.tilde.MMs, W.Mtilde, W.Mtilde_star));
    T2 = make_graded_bimodule(W.tilde.MsM.module, Ap, Ap, tensor_components(W.tilde.MsM, W.Mtilde_star, W.Mtilde));
  });
  if (!built)
    return res;
  {
    IsoResult i1 = is_graded_isomorphic(T1, regular_graded_bimodule(A));
    if (!record("Mtilde (x)_A' Mtilde* = A as graded bimodules", i1.found(), i1.reason))
      return res;
    IsoResult i2 = is_graded_isomorphic(T2, regular_graded_bimodule(Ap));
    if (!record("Mtilde* (x)_A Mtilde = A' as graded bimodules", i2.found(), i2.reason))
      return res;
  }
  {
    std::string p = degree_failure(Ap, W.tilde.phi, T2.components, "phi~");
    if (!record("phi~ preserves degrees", p.empty(), p))
      return res;
    p = degree_failure(A, W.tilde.psi, T1.components, "psi~");
    if (!record("psi~ preserves degrees", p.empty(), p))
      return res;
  }

  // The 1-component as a (B, B')-bimodule.
  W.one_basis = W.Mtilde.components[0];
  Coordinatizer one(F, W.one_basis);
  bool one_ok = attempt("Morita context of the 1-component", [&] {
    std::vector<Matrix> L, R;
    for (std::size_t i = 0; i < A.one->dim(); ++i)
      L.push_back(restrict_action(F, W.Mtilde.module.left_of(A.embed_one(A.one->basis(i))), one));
    for (std::size_t j = 0; j < Ap.one->dim(); ++j)
      R.push_back(restrict_action(F, W.Mtilde.module.right_of(Ap.embed_one(Ap.one->basis(j))), one));
    Bimodule M1 = make_bimodule(A.one, Ap.one, one.size(), std::move(L), std::move(R));
    W.context = build_morita_context(M1);
  });
  if (!one_ok)
    return res;

  // iota(f) is the degree-1 map of Mtilde* restricting to f on the 1-component.
  const std::size_t dM = W.one_basis.rows(), r = W.context.Mstar.maps.size();
  const std::size_t rt = W.tilde.Mstar.maps.size();
  const Matrix& star1 = W.Mtilde_star.components[0];
  Matrix restrict(A.dim() * dM, star1.rows());
  for (std::size_t t = 0; t < star1.rows(); ++t) {
    Matrix f = W.tilde.Mstar.map_of(star1.row(t));
    Vec v = flatten(mul(F, f, transpose(W.one_basis)));
    for (std::size_t s = 0; s < v.size(); ++s)
      restrict(s, t) = v[s];
  }
  W.iota = Matrix(rt, r);
  bool iota_ok = true;
  for (std::size_t k = 0; k < r && iota_ok; ++k) {
    Matrix target(A.dim(), dM);
    for (std::size_t m = 0; m < dM; ++m) {
      Vec col = A.embed_one(W.context.Mstar.maps[k].col_vec(m));
      for (std::size_t s = 0; s < A.dim(); ++s)
        target(s, m) = col[s];
    }
    auto c = solve(F, restrict, flatten(target));
    iota_ok = c.has_value();
    if (iota_ok) {
      Vec x = mul(F, *c, star1);
      for (std::size_t s = 0; s < rt; ++s)
        W.iota(s, k) = x[s];
    }
  }
  if (!record("M* embeds in the degree-1 part of Mtilde*", iota_ok && rank(F, W.iota) == r &&
                                                                star1.rows() == r))
    return res;

  bool agree = true;
  for (std::size_t k = 0; k < r && agree; ++k)
    for (std::size_t m = 0; m < dM && agree; ++m) {
      Vec fk = unit_vector(r, k), em = unit_vector(dM, m);
      agree = W.tilde.phi_of(W.embed_Mstar(fk), W.embed_M(em)) == Ap.embed_one(W.context.phi_of(fk, em)) &&
              W.tilde.psi_of(W.embed_M(em), W.embed_Mstar(fk)) == A.embed_one(W.context.psi_of(em, fk));
    }
  if (!record("phi~ and psi~ restrict to phi and psi", agree))
    return res;

  Vec sj(Ap.dim(), 0), si(A.dim(), 0);
  for (const auto& [f, m] : W.context.J)
    sj = add(F, sj, W.tilde.phi_of(W.embed_Mstar(f), W.embed_M(m)));
  for (const auto& [m, f] : W.context.I)
    si = add(F, si, W.tilde.psi_of(W.embed_M(m), W.embed_Mstar(f)));
  if (!record("dual bases of the 1-component serve the graded maps", sj == Ap.algebra->unit() &&
                                                                        si == A.algebra->unit()))
    return res;
  res.witness = std::move(W);
  return res;
}

EpsilonIso epsilon_iso(const DeltaModuleStructure& D) {
  const PrimeField& F = D.M.field();
  const GradedAlgebra& A = D.A;
  const GradedAlgebra& Ap = D.Ap;
  const FiniteGroup& Q = A.grading_group;
  const std::size_t dm = D.M.dim;

  EpsilonIso out;
  out.target = induce_graded(D);
  out.Ap_as_BpAp = algebra_bimodule(Ap, false, true);
  out.source = tensor_over(D.M, out.Ap_as_BpAp);
  const TensorProduct& T = out.target.tensor;

  Matrix amb(T.module.dim, dm * Ap.dim());
  Matrix mu_amb(T.module.dim, dm * Ap.dim());
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t j = 0; j < Ap.dim(); ++j) {
      Elem g = Ap.degree[j];
      Vec em = unit_vector(dm, m), aj = Ap.algebra->basis(j);
      Vec inner = mul(F, D.act(Q.inv(g), A.unit_inverses[g], aj), em);
      Vec img = T.pure(A.units[g], inner);
      Vec mu = mul(F, out.target.graded.module.right_of(aj), T.pure(A.algebra->unit(), em));
      for (std::size_t s = 0; s < img.size(); ++s) {
        amb(s, m * Ap.dim() + j) = img[s];
        mu_amb(s, m * Ap.dim() + j) = mu[s];
      }
    }
  out.map = descend_from(F, amb, out.source.quotient, "epsilon");
  Matrix mu = descend_from(F, mu_amb, out.source.quotient, "multiplication map");
  require(out.map == mu, ErrorKind::Inconsistent, "epsilon differs from m (x) a' -> (1 (x) m) a'");
  require(out.map.rows() == out.map.cols() && inverse(F, out.map).has_value(), ErrorKind::Inconsistent,
          "epsilon is not invertible");

  const Bimodule& Mt = out.target.graded.module;
  for (std::size_t i = 0; i < A.one->dim(); ++i)
    require(mul(F, out.map, out.source.module.left_action[i]) ==
                mul(F, Mt.left_of(A.embed_one(A.one->basis(i))), out.map),
            ErrorKind::Inconsistent, "epsilon is not left B-linear");
  for (std::size_t j = 0; j < Ap.dim(); ++j)
    require(mul(F, out.map, out.source.module.right_action[j]) == mul(F, Mt.right_action[j], out.map),
            ErrorKind::Inconsistent, "epsilon is not right A'-linear");
  for (Elem g = 0; g < Q.order(); ++g) {
    const Matrix& P = out.target.graded.projections[g];
    for (std::size_t j : Ap.components[g])
      for (std::size_t m = 0; m < dm; ++m) {
        Vec y = mul(F, out.map, out.source.pure(unit_vector(dm, m), Ap.algebra->basis(j)));
        require(mul(F, P, y) == y, ErrorKind::Inconsistent, "epsilon does not preserve degree " + Q.label(g));
      }
  }
  return out;
}

BetaIso beta_iso(const GradedMoritaWitness& W) {
  const PrimeField& F = W.Mtilde.module.field();
  const GradedAlgebra& A = W.A();
  const GradedAlgebra& Ap = W.Ap();
  const FiniteGroup& Q = A.grading_group;
  const Bimodule& Ms = W.context.Mstar.module;
  const Bimodule& Mts = W.Mtilde_star.module;
  const std::size_t r = Ms.dim;

  BetaIso out;
  out.Ap_as_ApBp = algebra_bimodule(Ap, true, false);
  out.A_as_BA = algebra_bimodule(A, false, true);
  out.source = tensor_over(out.Ap_as_ApBp, Ms);
  out.target = tensor_over(Ms, out.A_as_BA);

  Matrix amb(out.target.module.dim, Ap.dim() * r);
  Matrix muL(Mts.dim, Ap.dim() * r);
  for (std::size_t j = 0; j < Ap.dim(); ++j)
    for (std::size_t k = 0; k < r; ++k) {
      Elem g = Ap.degree[j];
      Vec aj = Ap.algebra->basis(j);
      Vec x = W.embed_Mstar(unit_vector(r, k));
      Vec l = mul(F, Mts.left_of(aj), x);
      Vec y = mul(F, Mts.right_of(A.unit_inverses[g]), l);
      auto f = solve(F, W.iota, y);
      require(f.has_value(), ErrorKind::Inconsistent, "a' m* u^{-1} is not in the degree-1 part of Mtilde*");
      Vec img = out.target.pure(*f, A.units[g]);
      for (std::size_t s = 0; s < img.size(); ++s)
        amb(s, j * r + k) = img[s];
      for (std::size_t s = 0; s < l.size(); ++s)
        muL(s, j * r + k) = l[s];
    }
  out.map = descend_from(F, amb, out.source.quotient, "beta");

  Matrix muR_amb(Mts.dim, r * A.dim());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < A.dim(); ++i) {
      Vec v = mul(F, Mts.right_of(A.algebra->basis(i)), W.embed_Mstar(unit_vector(r, k)));
      for (std::size_t s = 0; s < v.size(); ++s)
        muR_amb(s, k * A.dim() + i) = v[s];
    }
  Matrix muR = descend_from(F, muR_amb, out.target.quotient, "multiplication map");
  Matrix muLq = descend_from(F, muL, out.source.quotient, "multiplication map");
  require(mul(F, muR, out.map) == muLq, ErrorKind::Inconsistent,
          "beta does not match the multiplication maps into Mtilde*");
  require(out.map.rows() == out.map.cols() && inverse(F, out.map).has_value(), ErrorKind::Inconsistent,
          "beta is not invertible");
  for (std::size_t j = 0; j < Ap.one->dim(); ++j)
    require(mul(F, out.map, out.source.module.left_of(Ap.embed_one(Ap.one->basis(j)))) ==
                mul(F, out.target.module.left_action[j], out.map),
            ErrorKind::Inconsistent, "beta is not left B'-linear");
  for (std::size_t i = 0; i < A.one->dim(); ++i)
    require(mul(F, out.map, out.source.module.right_action[i]) ==
                mul(F, out.target.module.right_of(A.embed_one(A.one->basis(i))), out.map),
            ErrorKind::Inconsistent, "beta is not right B-linear");
  for (Elem g = 0; g < Q.order(); ++g)
    for (std::size_t j : Ap.components[g])
      for (std::size_t k = 0; k < r; ++k) {
        Vec y = mul(F, out.map, out.source.pure(Ap.algebra->basis(j), unit_vector(r, k)));
        Vec lifted = mul(F, out.target.quotient.section, y);
        // Lifts are supported on M* (x) A_g, checked coordinatewise in the ambient space.
        for (std::size_t kk = 0; kk < r; ++kk)
          for (std::size_t i = 0; i < A.dim(); ++i)
            require(lifted[kk * A.dim() + i] == 0 || A.degree[i] == g, ErrorKind::Inconsistent,
                    "beta does not preserve degree " + Q.label(g));
      }
  return out;
}

Matrix Phi1::apply(const Matrix& f) const {
  const PrimeField& F = E.base.field();
  Matrix idf = W.descend(kron(F, Matrix::identity(W.left_dim), f));
  return mul(F, transport_inv, mul(F, idf, transport));
}

Phi1 phi1(const GradedMoritaWitness& Wt, const BetaIso& beta, const Module& U) {
  const PrimeField& F = U.field();
  const GradedAlgebra& A = Wt.A();
  const GradedAlgebra& Ap = Wt.Ap();
  const Bimodule& Ms = Wt.context.Mstar.module;
  const std::size_t r = Ms.dim;

  Phi1 out;
  out.E = graded_end_algebra(A, U);
  out.Uprime = tensor_over(Ms, U);
  out.Ep = graded_end_algebra(Ap, out.Uprime.module);

  // A (x)_B U as a left B-module, then W = M* (x)_B (A (x)_B U).
  const Bimodule& AU = out.E.induced.module;
  std::vector<Matrix> L;
  for (std::size_t i = 0; i < A.one->dim(); ++i)
    L.push_back(AU.left_of(A.embed_one(A.one->basis(i))));
  Module AUb = make_module(A.one, AU.dim, std::move(L));
  out.W = tensor_over(Ms, AUb);

  const TensorProduct& V = out.Ep.induced; // A' (x)_B' U'
  const std::size_t du = U.dim, dup = out.Uprime.module.dim;
  Matrix amb(out.W.module.dim, Ap.dim() * dup);
  for (std::size_t j = 0; j < Ap.dim(); ++j)
    for (std::size_t q = 0; q < dup; ++q) {
      Vec col(out.W.module.dim, 0);
      Vec up = out.Uprime.quotient.section.col_vec(q);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < du; ++l) {
          Scalar c = up[k * du + l];
          if (!c)
            continue;
          Vec bq = mul(F, beta.map, beta.source.pure(Ap.algebra->basis(j), unit_vector(r, k)));
          Vec lifted = mul(F, beta.target.quotient.section, bq);
          for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < A.dim(); ++y) {
              Scalar d = lifted[x * A.dim() + y];
              if (!d)
                continue;
              Vec w = out.W.pure(unit_vector(r, x), out.E.induced.pure(A.algebra->basis(y), unit_vector(du, l)));
              axpy(F, F.mul(c, d), w, col);
            }
        }
      for (std::size_t s = 0; s < col.size(); ++s)
        amb(s, j * dup + q) = col[s];
    }
  out.transport = descend_from(F, amb, V.quotient, "beta (x) id_U");
  auto inv = out.transport.rows() == out.transport.cols() ? inverse(F, out.transport) : std::nullopt;
  require(inv.has_value(), ErrorKind::Inconsistent, "beta (x) id_U is not invertible");
  out.transport_inv = *inv;

  out.matrix = Matrix(out.Ep.dim(), out.E.dim());
  for (std::size_t i = 0; i < out.E.dim(); ++i) {
    Vec c = out.Ep.coords_of(out.apply(out.E.basis_maps[i]));
    for (std::size_t k = 0; k < c.size(); ++k)
      out.matrix(k, i) = c[k];
  }
  return out;
}

Vec phi2(const GradedMoritaWitness& W, std::span<const Scalar> c, const std::optional<Vec>& twist) {
  require(in_centralizer(W.A(), c), ErrorKind::Precondition, "phi_2: element does not centralize B");
  const PrimeField& F = W.Mtilde.module.field();
  const Bimodule& Mts = W.Mtilde_star.module;
  Vec out(W.Ap().dim(), 0);
  for (const auto& [f, m] : W.context.J) {
    Vec fc = mul(F, Mts.right_of(c), W.embed_Mstar(f));
    out = add(F, out, W.tilde.phi_of(fc, W.embed_M(m)));
  }
  if (twist)
    out = W.Ap().algebra->mul(out, *twist);
  return out;
}

Matrix phi2_matrix(const GradedMoritaWitness& W, const GradedCentralizer& C, const GradedCentralizer& Cp,
                   const std::optional<Vec>& twist) {
  Matrix out(Cp.dim(), C.dim());
  for (std::size_t i = 0; i < C.dim(); ++i) {
    Vec img = phi2(W, C.basis.row(i), twist);
    auto x = Cp.from_parent(img);
    require(x.has_value(), ErrorKind::Inconsistent, "phi_2 leaves the centralizer of B'");
    for (std::size_t k = 0; k < x->size(); ++k)
      out(k, i) = (*x)[k];
  }
  return out;
}

DiagramReport verify_diagram(const GradedMoritaWitness& W, const Module& U, const std::optional<Vec>& twist) {
  const PrimeField& F = U.field();
  DiagramReport rep;
  auto record = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  BetaIso beta = beta_iso(W);
  Phi1 p1 = phi1(W, beta, U);
  GradedCentralizer C = graded_centralizer(W.A());
  GradedCentralizer Cp = graded_centralizer(W.Ap());
  rep.dim_E = p1.E.dim();
  rep.dim_Ep = p1.Ep.dim();
  rep.dim_C = C.dim();
  rep.dim_Cp = Cp.dim();

  const Algebra& c_alg = *C.graded.algebra;
  const Algebra& e_alg = *p1.E.graded.algebra;
  const Algebra& ep_alg = *p1.Ep.graded.algebra;
  Matrix th = theta_matrix(p1.E, C);

  bool theta_ok = true;
  for (std::size_t i = 0; i < C.dim(); ++i)
    for (std::size_t j = 0; j < C.dim(); ++j)
      theta_ok = theta_ok && mul(F, th, c_alg.mul(c_alg.basis(i), c_alg.basis(j))) ==
                                 e_alg.mul(th.col_vec(i), th.col_vec(j));
  theta_ok = theta_ok && mul(F, th, c_alg.unit()) == e_alg.unit();
  for (std::size_t i = 0; i < C.dim() && theta_ok; ++i)
    theta_ok = p1.E.graded.homogeneous_degree(th.col_vec(i)) == C.graded.degree[i] || is_zero(th.col_vec(i));
  record("theta is a graded algebra map", theta_ok);

  bool phi1_ok = rank(F, p1.matrix) == p1.E.dim() && p1.E.dim() == p1.Ep.dim() &&
                 mul(F, p1.matrix, e_alg.unit()) == ep_alg.unit();
  for (std::size_t i = 0; i < p1.E.dim() && phi1_ok; ++i) {
    phi1_ok = p1.Ep.graded.homogeneous_degree(p1.matrix.col_vec(i)) == p1.E.graded.degree[i];
    for (std::size_t j = 0; j < p1.E.dim() && phi1_ok; ++j)
      phi1_ok = mul(F, p1.matrix, e_alg.mul(e_alg.basis(i), e_alg.basis(j))) ==
                ep_alg.mul(p1.matrix.col_vec(i), p1.matrix.col_vec(j));
  }
  record("phi_1 is a graded algebra isomorphism", phi1_ok);

  std::vector<Vec> images;
  bool in_cp = true;
  for (std::size_t i = 0; i < C.dim(); ++i) {
    images.push_back(phi2(W, C.basis.row(i), twist));
    in_cp = in_cp && Cp.from_parent(images.back()).has_value();
  }
  record("phi_2 lands in C_A'(B')", in_cp);
  if (in_cp) {
    Matrix p2 = phi2_matrix(W, C, Cp, twist);
    const Algebra& cp_alg = *Cp.graded.algebra;
    bool ok = rank(F, p2) == C.dim() && C.dim() == Cp.dim() && mul(F, p2, c_alg.unit()) == cp_alg.unit();
    for (std::size_t i = 0; i < C.dim() && ok; ++i) {
      ok = Cp.graded.homogeneous_degree(p2.col_vec(i)) == C.graded.degree[i];
      for (std::size_t j = 0; j < C.dim() && ok; ++j)
        ok = mul(F, p2, c_alg.mul(c_alg.basis(i), c_alg.basis(j))) ==
             cp_alg.mul(p2.col_vec(i), p2.col_vec(j));
    }
    record("phi_2 is a graded algebra isomorphism", ok);
  }

  rep.commutes = true;
  for (std::size_t i = 0; i < C.dim(); ++i) {
    Matrix lhs = p1.apply(theta_map(p1.E, C.basis.row(i)));
    std::size_t res;
    if (in_centralizer(W.Ap(), images[i]))
      res = sub(F, theta_map(p1.Ep, images[i]), lhs).count_nonzero();
    else
      res = lhs.rows() * lhs.cols();
    rep.residuals.push_back(res);
    rep.commutes = rep.commutes && res == 0;
  }
  record("theta' phi_2 = phi_1 theta", rep.commutes);
  return rep;
}

} // namespace gmorita
