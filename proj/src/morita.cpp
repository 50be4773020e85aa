#include "gmorita/morita.hpp"

#include <random>

#include "gmorita/error.hpp"

namespace gmorita {

Vec MoritaContext::phi_of(std::span<const Scalar> f, std::span<const Scalar> m) const {
  return mul(M.field(), phi, MsM.pure(f, m));
}

Vec MoritaContext::psi_of(std::span<const Scalar> m, std::span<const Scalar> f) const {
  return mul(M.field(), psi, MMs.pure(m, f));
}

namespace {

// Groups a lifted tensor (index a * width + b) into pairs (e_a, sum_b c_ab e_b).
std::vector<std::pair<Vec, Vec>> split_tensor(std::span<const Scalar> t, std::size_t height, std::size_t width) {
  std::vector<std::pair<Vec, Vec>> out;
  for (std::size_t a = 0; a < height; ++a) {
    Vec second(t.begin() + std::ptrdiff_t(a * width), t.begin() + std::ptrdiff_t((a + 1) * width));
    if (!is_zero(second))
      out.push_back({unit_vector(height, a), std::move(second)});
  }
  return out;
}

} // namespace

MoritaContext build_morita_context(const Bimodule& M) {
  const PrimeField& F = M.field();
  const Algebra& B = *M.left;
  const Algebra& Bp = *M.right;
  const std::size_t dm = M.dim;

  MoritaContext ctx;
  ctx.M = M;
  ctx.Mstar = dual_bimodule(M);
  const std::size_t r = ctx.Mstar.maps.size();
  require(r > 0, ErrorKind::NotMorita, "not a Morita bimodule: M* = Hom_B(M, B) is zero");
  ctx.MsM = tensor_over(ctx.Mstar.module, M);
  ctx.MMs = tensor_over(M, ctx.Mstar.module);

  // psi on M (x)_k M*: column (m, k) is f_k(m).
  Matrix psi_amb(B.dim(), dm * r);
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < B.dim(); ++i)
        psi_amb(i, m * r + k) = ctx.Mstar.maps[k](i, m);
  require(descends(F, psi_amb, ctx.MMs.quotient), ErrorKind::Inconsistent, "evaluation is not B'-balanced");
  ctx.psi = mul(F, psi_amb, ctx.MMs.quotient.section);

  // phi: solve R_M(b') = [n -> f(n) m] for b'.
  Matrix K(dm * dm, Bp.dim());
  for (std::size_t j = 0; j < Bp.dim(); ++j) {
    Vec v = flatten(M.right_action[j]);
    for (std::size_t t = 0; t < v.size(); ++t)
      K(t, j) = v[t];
  }
  require(rank(F, K) == Bp.dim(), ErrorKind::NotFaithfullyBalanced,
          "M not faithfully balanced: B' does not act faithfully on M, so phi is not unique");
  Matrix phi_amb(Bp.dim(), r * dm);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t m = 0; m < dm; ++m) {
      Matrix rhs(dm, dm);
      for (std::size_t n = 0; n < dm; ++n) {
        Vec fn = ctx.Mstar.maps[k].col_vec(n);
        Vec col = mul(F, M.left_of(fn), unit_vector(dm, m));
        for (std::size_t t = 0; t < dm; ++t)
          rhs(t, n) = col[t];
      }
      auto b = solve(F, K, flatten(rhs));
      require(b.has_value(), ErrorKind::NotFaithfullyBalanced,
              "M not faithfully balanced: End_B(M) is larger than the image of B'");
      for (std::size_t j = 0; j < Bp.dim(); ++j)
        phi_amb(j, k * dm + m) = (*b)[j];
    }
  }
  require(descends(F, phi_amb, ctx.MsM.quotient), ErrorKind::Inconsistent, "phi is not B-balanced");
  ctx.phi = mul(F, phi_amb, ctx.MsM.quotient.section);

  auto phi_inv = ctx.phi.rows() == ctx.phi.cols() ? inverse(F, ctx.phi) : std::nullopt;
  require(phi_inv.has_value(), ErrorKind::NotMorita, "not a Morita bimodule: phi is not bijective");
  auto psi_inv = ctx.psi.rows() == ctx.psi.cols() ? inverse(F, ctx.psi) : std::nullopt;
  require(psi_inv.has_value(), ErrorKind::NotMorita, "not a Morita bimodule: psi is not bijective");

  Vec x = mul(F, ctx.MsM.quotient.section, mul(F, *phi_inv, Bp.unit()));
  ctx.J = split_tensor(x, r, dm);
  Vec y = mul(F, ctx.MMs.quotient.section, mul(F, *psi_inv, B.unit()));
  ctx.I = split_tensor(y, dm, r);

  std::string problem = check_morita_context(ctx);
  require(problem.empty(), ErrorKind::Inconsistent, "Morita context failed certification: " + problem);
  return ctx;
}

std::string check_morita_context(const MoritaContext& ctx) {
  const Bimodule& M = ctx.M;
  const PrimeField& F = M.field();
  const Algebra& B = *M.left;
  const Algebra& Bp = *M.right;
  const Bimodule& Ms = ctx.Mstar.module;
  const std::size_t dm = M.dim, r = Ms.dim;

  if (ctx.phi.rows() != ctx.phi.cols() || !inverse(F, ctx.phi))
    return "phi is not bijective";
  if (ctx.psi.rows() != ctx.psi.cols() || !inverse(F, ctx.psi))
    return "psi is not bijective";
  for (std::size_t j = 0; j < Bp.dim(); ++j) {
    Vec e = Bp.basis(j);
    if (mul(F, ctx.phi, ctx.MsM.module.left_action[j]) != mul(F, Bp.left_mult(e), ctx.phi) ||
        mul(F, ctx.phi, ctx.MsM.module.right_action[j]) != mul(F, Bp.right_mult(e), ctx.phi))
      return "phi is not a B'-bimodule map";
  }
  for (std::size_t i = 0; i < B.dim(); ++i) {
    Vec e = B.basis(i);
    if (mul(F, ctx.psi, ctx.MMs.module.left_action[i]) != mul(F, B.left_mult(e), ctx.psi) ||
        mul(F, ctx.psi, ctx.MMs.module.right_action[i]) != mul(F, B.right_mult(e), ctx.psi))
      return "psi is not a B-bimodule map";
  }
  for (std::size_t m = 0; m < dm; ++m)
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t n = 0; n < dm; ++n) {
        Vec em = unit_vector(dm, m), en = unit_vector(dm, n), fk = unit_vector(r, k);
        Vec lhs = mul(F, M.left_of(ctx.psi_of(em, fk)), en);
        Vec rhs = mul(F, M.right_of(ctx.phi_of(fk, en)), em);
        if (lhs != rhs)
          return "psi(m (x) m*) n = m phi(m* (x) n) fails";
      }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t m = 0; m < dm; ++m)
      for (std::size_t l = 0; l < r; ++l) {
        Vec fk = unit_vector(r, k), em = unit_vector(dm, m), fl = unit_vector(r, l);
        Vec lhs = mul(F, Ms.left_of(ctx.phi_of(fk, em)), fl);
        Vec rhs = mul(F, Ms.right_of(ctx.psi_of(em, fl)), fk);
        if (lhs != rhs)
          return "phi(m* (x) m) n* = m* psi(m (x) n*) fails";
      }
  Vec sj(Bp.dim(), 0), si(B.dim(), 0);
  for (const auto& [f, m] : ctx.J)
    sj = add(F, sj, ctx.phi_of(f, m));
  for (const auto& [m, f] : ctx.I)
    si = add(F, si, ctx.psi_of(m, f));
  if (sj != Bp.unit())
    return "phi(sum_J m_j* (x) m_j) != 1";
  if (si != B.unit())
    return "psi(sum_I n_i (x) n_i*) != 1";
  return {};
}

Matrix DeltaModuleStructure::act(Elem g, std::span<const Scalar> a, std::span<const Scalar> ap) const {
  const PrimeField& F = M.field();
  Vec b = A.restrict_one(A.algebra->mul(A.unit_inverses[g], a));
  Vec bp = Ap.restrict_one(Ap.algebra->mul(ap, Ap.units[g]));
  return mul(F, unit_actions[g], mul(F, M.left_of(b), M.right_of(bp)));
}

Matrix DeltaModuleStructure::act_basis(const DiagonalAlgebra& D, std::size_t k) const {
  auto [i, j] = D.pairs[k];
  return act(D.graded.degree[k], A.algebra->basis(i), Ap.algebra->basis(j));
}

namespace {

struct Twists {
  // Per degree g: conjugation of B and B' basis vectors, as action matrices.
  std::vector<std::vector<Matrix>> left, right;
};

Vec conj_one(const GradedAlgebra& A, Elem g, std::span<const Scalar> b) {
  const Algebra& alg = *A.algebra;
  return A.restrict_one(alg.mul(alg.mul(A.units[g], A.embed_one(b)), A.unit_inverses[g]));
}

// u_g u_h u_gh^{-1}, restricted to the 1-component.
Vec discrepancy(const GradedAlgebra& A, Elem g, Elem h) {
  const Algebra& alg = *A.algebra;
  Elem gh = A.grading_group.mul(g, h);
  return A.restrict_one(alg.mul(alg.mul(A.units[g], A.units[h]), A.unit_inverses[gh]));
}

// u_gh u_h^{-1} u_g^{-1}, the inverse of the discrepancy.
Vec discrepancy_inverse(const GradedAlgebra& A, Elem g, Elem h) {
  const Algebra& alg = *A.algebra;
  Elem gh = A.grading_group.mul(g, h);
  return A.restrict_one(alg.mul(alg.mul(A.units[gh], A.unit_inverses[h]), A.unit_inverses[g]));
}

std::string check_compatible(const GradedAlgebra& A, const GradedAlgebra& Ap, const Bimodule& M) {
  if (!A.is_crossed_product() || !Ap.is_crossed_product())
    return "Delta-structures need crossed products with chosen units";
  if (!(A.grading_group == Ap.grading_group))
    return "grading groups differ";
  if (!same_algebra(M.left, A.one) || !same_algebra(M.right, Ap.one))
    return "M is not a bimodule over the 1-components";
  return {};
}

} // namespace

std::string check_delta_structure(const DeltaModuleStructure& D) {
  if (auto p = check_compatible(D.A, D.Ap, D.M); !p.empty())
    return p;
  const PrimeField& F = D.M.field();
  const FiniteGroup& Q = D.A.grading_group;
  const std::size_t d = D.M.dim;
  const Algebra& B = *D.A.one;
  const Algebra& Bp = *D.Ap.one;
  if (D.unit_actions.size() != Q.order())
    return "need one unit action per degree";
  for (const auto& X : D.unit_actions)
    if (X.rows() != d || X.cols() != d || !inverse(F, X))
      return "unit actions must be invertible " + std::to_string(d) + "x" + std::to_string(d) + " matrices";
  if (D.unit_actions[0] != Matrix::identity(d))
    return "the unit action of degree 1 is not the identity";
  for (Elem g = 0; g < Q.order(); ++g) {
    const Matrix& X = D.unit_actions[g];
    for (std::size_t i = 0; i < B.dim(); ++i)
      if (mul(F, X, D.M.left_action[i]) != mul(F, D.M.left_of(conj_one(D.A, g, B.basis(i))), X))
        return "unit action of degree " + Q.label(g) + " does not twist the left B-action by conjugation";
    for (std::size_t j = 0; j < Bp.dim(); ++j)
      if (mul(F, X, D.M.right_action[j]) != mul(F, D.M.right_of(conj_one(D.Ap, g, Bp.basis(j))), X))
        return "unit action of degree " + Q.label(g) + " does not twist the right B'-action by conjugation";
  }
  for (Elem g = 0; g < Q.order(); ++g)
    for (Elem h = 0; h < Q.order(); ++h) {
      Matrix lhs = mul(F, D.unit_actions[g], D.unit_actions[h]);
      Matrix c = mul(F, D.M.left_of(discrepancy(D.A, g, h)), D.M.right_of(discrepancy_inverse(D.Ap, g, h)));
      if (lhs != mul(F, c, D.unit_actions[Q.mul(g, h)]))
        return "unit actions of degrees " + Q.label(g) + " and " + Q.label(h) +
               " do not multiply through the unit discrepancy";
    }
  DiagonalAlgebra Delta = diagonal_subalgebra(D.A, D.Ap);
  const Algebra& alg = *Delta.graded.algebra;
  std::vector<Matrix> rep;
  for (std::size_t k = 0; k < alg.dim(); ++k)
    rep.push_back(D.act_basis(Delta, k));
  Matrix unit_action(d, d);
  for (std::size_t k = 0; k < alg.dim(); ++k)
    if (alg.unit()[k])
      unit_action = add(F, unit_action, scale(F, alg.unit()[k], rep[k]));
  if (unit_action != Matrix::identity(d))
    return "the diagonal algebra's unit does not act as the identity";
  for (std::size_t x = 0; x < alg.dim(); ++x)
    for (std::size_t y = 0; y < alg.dim(); ++y) {
      Matrix p(d, d);
      for (auto [k, s] : alg.product(x, y))
        p = add(F, p, scale(F, s, rep[k]));
      if (mul(F, rep[x], rep[y]) != p)
        return "the induced action of the diagonal algebra is not multiplicative";
    }
  return {};
}

DeltaModuleStructure make_delta_structure(GradedAlgebra A, GradedAlgebra Ap, Bimodule M,
                                          std::vector<Matrix> unit_actions) {
  DeltaModuleStructure D{std::move(A), std::move(Ap), std::move(M), std::move(unit_actions)};
  std::string problem = check_delta_structure(D);
  require(problem.empty(), ErrorKind::Inconsistent, "invalid Delta-structure: " + problem);
  return D;
}

DeltaSearchResult find_delta_extension(const GradedAlgebra& A, const GradedAlgebra& Ap, const Bimodule& M,
                                       std::uint64_t seed) {
  DeltaSearchResult res;
  if (auto p = check_compatible(A, Ap, M); !p.empty())
    fail(ErrorKind::Precondition, p);
  const PrimeField& F = M.field();
  const FiniteGroup& Q = A.grading_group;
  const std::size_t d = M.dim;
  const Algebra& B = *A.one;
  const Algebra& Bp = *Ap.one;
  const std::vector<Elem> gens = generating_set(Q);

  // Invertible intertwiners for each generator.
  constexpr std::size_t kMaxCandidates = 64;
  std::vector<std::vector<Matrix>> candidates;
  bool complete = true;
  std::mt19937_64 rng(seed);
  for (Elem s : gens) {
    std::vector<Matrix> src, dst;
    for (std::size_t i = 0; i < B.dim(); ++i) {
      src.push_back(M.left_action[i]);
      dst.push_back(M.left_of(conj_one(A, s, B.basis(i))));
    }
    for (std::size_t j = 0; j < Bp.dim(); ++j) {
      src.push_back(M.right_action[j]);
      dst.push_back(M.right_of(conj_one(Ap, s, Bp.basis(j))));
    }
    std::vector<Matrix> space = intertwiners(F, src, dst, d, d);
    const std::size_t k = space.size();
    std::uint64_t size = 1;
    bool exhaustive = true;
    for (std::size_t i = 0; i < k && exhaustive; ++i) {
      size *= F.p();
      exhaustive = size <= kExhaustiveIsoLimit;
    }
    std::vector<Matrix> cands;
    auto consider = [&](const Vec& c) {
      Matrix X(d, d);
      for (std::size_t i = 0; i < k; ++i)
        if (c[i])
          X = add(F, X, scale(F, c[i], space[i]));
      if (rank(F, X) == d && cands.size() < kMaxCandidates)
        cands.push_back(std::move(X));
    };
    if (exhaustive) {
      Vec c(k, 0);
      while (cands.size() < kMaxCandidates) {
        std::size_t pos = 0;
        while (pos < k && ++c[pos] == F.p())
          c[pos++] = 0;
        if (pos == k)
          break;
        consider(c);
      }
      if (cands.size() == kMaxCandidates)
        complete = false;
    } else {
      complete = false;
      std::uniform_int_distribution<Scalar> coeff(0, F.p() - 1);
      for (std::size_t i = 0; i < k; ++i)
        consider(unit_vector(k, i));
      for (int t = 0; t < kIsoTrials && cands.size() < kMaxCandidates; ++t) {
        Vec c(k);
        for (auto& x : c)
          x = coeff(rng);
        consider(c);
      }
    }
    if (cands.empty()) {
      res.status = exhaustive ? IsoStatus::ProvenNotIsomorphic : IsoStatus::NotFoundHeuristic;
      res.reason = "no invertible intertwiner between M and its twist by degree " + Q.label(s);
      return res;
    }
    candidates.push_back(std::move(cands));
  }

  // Propagate a choice of generator actions to all degrees along a BFS tree.
  auto propagate = [&](const std::vector<std::size_t>& choice) {
    std::vector<Matrix> X(Q.order());
    std::vector<bool> known(Q.order(), false);
    X[0] = Matrix::identity(d);
    known[0] = true;
    std::vector<Elem> frontier{0};
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem x : frontier)
        for (std::size_t t = 0; t < gens.size(); ++t) {
          Elem y = Q.mul(x, gens[t]);
          if (known[y])
            continue;
          // X_x X_s = L(alpha) R(alpha'^{-1}) X_xs.
          Matrix c = mul(F, M.left_of(discrepancy_inverse(A, x, gens[t])), M.right_of(discrepancy(Ap, x, gens[t])));
          X[y] = mul(F, c, mul(F, X[x], candidates[t][choice[t]]));
          known[y] = true;
          next.push_back(y);
        }
      frontier = std::move(next);
    }
    return X;
  };

  constexpr std::uint64_t kMaxCombos = 4096;
  std::uint64_t combos = 1;
  for (const auto& c : candidates) {
    combos *= c.size();
    if (combos > kMaxCombos) {
      complete = false;
      combos = kMaxCombos;
      break;
    }
  }
  std::vector<std::size_t> choice(gens.size(), 0);
  for (std::uint64_t t = 0; t < combos; ++t) {
    DeltaModuleStructure D{A, Ap, M, propagate(choice)};
    if (check_delta_structure(D).empty()) {
      res.status = IsoStatus::Found;
      res.structure = std::move(D);
      return res;
    }
    for (std::size_t pos = 0; pos < choice.size(); ++pos) {
      if (++choice[pos] < candidates[pos].size())
        break;
      choice[pos] = 0;
    }
  }
  res.status = complete ? IsoStatus::ProvenNotIsomorphic : IsoStatus::NotFoundHeuristic;
  res.reason = complete ? "no choice of generator actions satisfies the product relations"
                        : "no Delta-structure found within the search bounds";
  return res;
}

InducedBimodule induce_graded(const DeltaModuleStructure& D) {
  std::string problem = check_delta_structure(D);
  require(problem.empty(), ErrorKind::Inconsistent, "induce_graded: invalid Delta-structure: " + problem);
  const PrimeField& F = D.M.field();
  const GradedAlgebra& A = D.A;
  const GradedAlgebra& Ap = D.Ap;
  const Algebra& alg = *A.algebra;
  const FiniteGroup& Q = A.grading_group;

  InducedBimodule out;
  {
    std::vector<Matrix> L, R;
    for (std::size_t i = 0; i < alg.dim(); ++i)
      L.push_back(alg.left_mult(alg.basis(i)));
    for (std::size_t j = 0; j < A.one->dim(); ++j)
      R.push_back(alg.right_mult(A.embed_one(A.one->basis(j))));
    out.A_as_AB = make_bimodule(A.algebra, A.one, alg.dim(), std::move(L), std::move(R));
  }
  out.tensor = tensor_over(out.A_as_AB, D.M);
  const TensorProduct& T = out.tensor;

  std::vector<Matrix> right;
  for (std::size_t j = 0; j < Ap.dim(); ++j) {
    Elem h = Ap.degree[j];
    Matrix amb = kron(F, alg.right_mult(A.units[h]), D.act(Q.inv(h), A.unit_inverses[h], Ap.algebra->basis(j)));
    right.push_back(T.descend(amb));
  }
  Bimodule Mt = make_bimodule(A.algebra, Ap.algebra, T.module.dim, T.module.left_action, std::move(right));

  std::vector<Matrix> comps;
  for (Elem g = 0; g < Q.order(); ++g) {
    Matrix span(0, Mt.dim);
    for (std::size_t i : A.components[g])
      for (std::size_t m = 0; m < D.M.dim; ++m)
        span.append_row(T.pure(alg.basis(i), unit_vector(D.M.dim, m)));
    comps.push_back(row_basis(F, span));
  }
  out.graded = make_graded_bimodule(std::move(Mt), A, Ap, std::move(comps));
  return out;
}

} // namespace gmorita
