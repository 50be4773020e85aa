#include "gmorita/butterfly.hpp"

#include <algorithm>

#include "gmorita/error.hpp"

namespace gmorita {

namespace {

Elem local_of(const SubgroupAsGroup& h, Elem g, const char* what) {
  auto l = h.to_local(g);
  require(l.has_value(), ErrorKind::Inconsistent, std::string(what) + ": element outside the subgroup");
  return *l;
}

std::vector<Elem> center_part(const Subgroup& centralizer, const Subgroup& N) {
  return intersection(centralizer, N).elements;
}

// b kK with the trivial grading; its coordinates are those of the
// 1-components of the ambient algebras.
BlockExtension ungraded_block(const BlockSetting& s, const std::vector<Elem>& K_order, const Vec& e) {
  FiniteGroup trivial = FiniteGroup::from_table({{0}}, {"1"});
  return sub_extension(s.G, make_subgroup(s.G, K_order), K_order, s.F, e, std::vector<Elem>(s.G.order(), 0),
                       trivial);
}

} // namespace

Subgroup BlockSetting::N() const { return make_subgroup(G, N_order); }

std::vector<Elem> BlockSetting::Np_order() const {
  std::vector<Elem> out;
  for (Elem n : N_order)
    if (Gp.contains(n))
      out.push_back(n);
  return out;
}

BlockExtension sub_extension(const FiniteGroup& G, const Subgroup& H, const std::vector<Elem>& K_order,
                             const PrimeField& F, const Vec& e_kG, const std::vector<Elem>& degree,
                             const FiniteGroup& target) {
  SubgroupAsGroup hl = subgroup_as_group(G, H);
  std::vector<Elem> normal_order;
  Vec e_local(K_order.size(), 0);
  for (std::size_t m = 0; m < K_order.size(); ++m) {
    normal_order.push_back(local_of(hl, K_order[m], "normal subgroup"));
    e_local[m] = e_kG[K_order[m]];
  }
  return block_extension(hl.group, normal_order, F, e_local, grading_via(hl.to_parent, degree, target));
}

AmbientAlgebras ambient_algebras(const BlockSetting& s) {
  require(s.b.size() == s.G.order() && s.bp.size() == s.G.order(), ErrorKind::InvalidInput,
          "blocks must be given in kG coordinates");
  QuotientGroup q = quotient(s.G, s.N());
  require(product(s.G, s.Gp, q.kernel).order() == s.G.order(), ErrorKind::Precondition, "G is not G'N");
  BlockExtension A = sub_extension(s.G, whole_group(s.G), s.N_order, s.F, s.b, q.projection, q.quotient);
  BlockExtension Ap = sub_extension(s.G, s.Gp, s.Np_order(), s.F, s.bp, q.projection, q.quotient);
  SubgroupAsGroup gl = subgroup_as_group(s.G, s.Gp);
  return AmbientAlgebras{std::move(q), std::move(A), std::move(Ap), std::move(gl)};
}

std::optional<Elem> commuting_violation(const BlockSetting& s, const Bimodule& M) {
  const Subgroup N = s.N();
  const std::vector<Elem> Np_order = s.Np_order();
  const Subgroup Np = make_subgroup(s.G, Np_order);
  BlockExtension B = ungraded_block(s, s.N_order, s.b);
  BlockExtension Bp = ungraded_block(s, Np_order, s.bp);
  require(same_algebra(M.left, B.graded.algebra) && same_algebra(M.right, Bp.graded.algebra), ErrorKind::InvalidInput,
          "M is not a bimodule over b kN and b' kN'");
  SubgroupAsGroup nl = subgroup_as_group(s.G, N), npl = subgroup_as_group(s.G, Np);
  for (Elem z : center_part(centralizer_in_group(s.G, N), N)) {
    if (!Np.contains(z))
      return z;
    if (M.left_of(B.element(*nl.to_local(z))) != M.right_of(Bp.element(*npl.to_local(z))))
      return z;
  }
  return std::nullopt;
}

CentralizerLayer extend_to_centralizer_layer(const BlockSetting& s, const Bimodule& M) {
  const FiniteGroup& G = s.G;
  const PrimeField& F = s.F;
  const Subgroup N = s.N();
  CentralizerLayer out;
  out.centralizer = centralizer_in_group(G, N);
  for (Elem c : out.centralizer.elements)
    require(s.Gp.contains(c), ErrorKind::Precondition,
            "hypothesis (1) fails: " + G.label(c) + " centralizes N but is not in G'");
  try {
    build_morita_context(M);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("hypothesis (2) fails: ") + e.what());
  }
  if (auto z = commuting_violation(s, M))
    fail(ErrorKind::Precondition,
         "hypothesis (3) fails: z = " + G.label(*z) + " in Z(N) acts differently on the two sides of M");

  const std::vector<Elem> Np_order = s.Np_order();
  const Subgroup Np = make_subgroup(G, Np_order);
  out.NC = product(G, N, out.centralizer);
  out.NpC = product(G, Np, out.centralizer);

  QuotientGroup q = quotient(G, N);
  std::vector<Elem> bar;
  for (Elem g : out.NC.elements)
    bar.push_back(q.projection[g]);
  std::sort(bar.begin(), bar.end());
  bar.erase(std::unique(bar.begin(), bar.end()), bar.end());
  SubgroupAsGroup cbar = subgroup_as_group(q.quotient, make_subgroup(q.quotient, bar));
  out.grading_group = cbar.group;
  std::vector<Elem> degree(G.order(), 0);
  for (Elem g = 0; g < G.order(); ++g)
    if (auto l = cbar.to_local(q.projection[g]))
      degree[g] = *l;

  out.C = sub_extension(G, out.NC, s.N_order, F, s.b, degree, out.grading_group);
  out.Cp = sub_extension(G, out.NpC, Np_order, F, s.bp, degree, out.grading_group);
  require(same_algebra(M.left, out.C.graded.one) && same_algebra(M.right, out.Cp.graded.one),
          ErrorKind::InvalidInput, "M is not a bimodule over b kN and b' kN'");

  out.C_as_CB = algebra_bimodule(out.C.graded, true, false);
  out.tensor = tensor_over(out.C_as_CB, M);

  const SubgroupAsGroup ncl = subgroup_as_group(G, out.NC);
  const SubgroupAsGroup npcl = subgroup_as_group(G, out.NpC);
  const Algebra& calg = *out.C.graded.algebra;
  const std::vector<Elem> Z = center_part(out.centralizer, N);

  // (c' (x) m) cn = c'c (x) mn for c in C_G(N) and n in N'.
  auto pair_action = [&](Elem c, Elem n) {
    Matrix Rc = calg.right_mult(out.C.element(*ncl.to_local(c)));
    Matrix Rn = M.right_of(out.Cp.graded.restrict_one(out.Cp.element(*npcl.to_local(n))));
    return out.tensor.descend(kron(F, Rc, Rn));
  };
  std::vector<Matrix> per_element(G.order());
  for (Elem x : out.NpC.elements) {
    std::optional<std::pair<Elem, Elem>> split;
    for (Elem c : out.centralizer.elements) {
      Elem n = G.mul(G.inv(c), x);
      if (Np.contains(n)) {
        split = {c, n};
        break;
      }
    }
    require(split.has_value(), ErrorKind::Inconsistent, G.label(x) + " does not factor as cn");
    Matrix R = pair_action(split->first, split->second);
    for (Elem z : Z) {
      Matrix alt = pair_action(G.mul(split->first, z), G.mul(G.inv(z), split->second));
      require(alt == R, ErrorKind::Inconsistent,
              "right action of " + G.label(x) + " depends on its factorization through Z(N)");
    }
    per_element[x] = std::move(R);
  }

  const std::size_t d = out.tensor.module.dim;
  const Algebra& cpalg = *out.Cp.graded.algebra;
  std::vector<Matrix> right;
  for (std::size_t k = 0; k < cpalg.dim(); ++k) {
    Vec y = out.Cp.to_group_algebra(cpalg.basis(k));
    Matrix R(d, d);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i])
        R = add(F, R, scale(F, y[i], per_element[npcl.to_parent[i]]));
    right.push_back(std::move(R));
  }
  Bimodule Mhat = make_bimodule(out.C.graded.algebra, out.Cp.graded.algebra, out.tensor.module.dim,
                                out.tensor.module.left_action, std::move(right));

  std::vector<Matrix> comps;
  for (Elem g = 0; g < out.grading_group.order(); ++g) {
    Matrix span(0, Mhat.dim);
    for (std::size_t i : out.C.graded.components[g])
      for (std::size_t m = 0; m < M.dim; ++m)
        span.append_row(out.tensor.pure(calg.basis(i), unit_vector(M.dim, m)));
    comps.push_back(row_basis(F, span));
  }
  GradedMoritaResult r = verify_graded_morita(out.C.graded, out.Cp.graded, Mhat, comps);
  require(r.witness.has_value(), ErrorKind::Inconsistent,
          "centralizer layer is not a graded Morita equivalence: " + r.reason);
  out.witness = std::move(*r.witness);
  return out;
}

DeltaModuleStructure delta_from_witness(const GradedMoritaWitness& W) {
  const GradedAlgebra& A = W.A();
  const GradedAlgebra& Ap = W.Ap();
  require(A.is_crossed_product() && Ap.is_crossed_product(), ErrorKind::Precondition,
          "both algebras must be crossed products");
  const PrimeField& F = A.field();
  Coordinatizer one(F, W.one_basis);
  std::vector<Matrix> X;
  for (Elem g = 0; g < A.grading_group.order(); ++g) {
    Matrix L = W.Mtilde.module.left_of(A.units[g]);
    Matrix R = W.Mtilde.module.right_of(Ap.unit_inverses[g]);
    X.push_back(restrict_action(F, mul(F, L, R), one));
  }
  return make_delta_structure(A, Ap, W.context.M, std::move(X));
}

BlockSetting transported_setting(const BlockSetting& s, const FiniteGroup& Ghat, const GroupEmbedding& emb,
                                 const ButterflyGroupData& data) {
  BlockSetting out;
  out.G = Ghat;
  out.F = s.F;
  out.Gp = data.Ghat_prime;
  out.b.assign(Ghat.order(), 0);
  out.bp.assign(Ghat.order(), 0);
  for (Elem n : s.N_order) {
    Elem h = emb(n);
    out.N_order.push_back(h);
    out.b[h] = s.b[n];
    out.bp[h] = s.bp[n];
  }
  return out;
}

DeltaModuleStructure delta_hat_structure(const BlockSetting& s, const AmbientAlgebras& base,
                                         const DeltaModuleStructure& D, const FiniteGroup& Ghat,
                                         const GroupEmbedding& emb, const ButterflyGroupData& data,
                                         const AmbientAlgebras& hat) {
  const FiniteGroup& G = s.G;
  const PrimeField& F = D.M.field();
  std::vector<std::optional<Elem>> back(Ghat.order());
  for (std::size_t i = 0; i < emb.source.elements.size(); ++i)
    back[emb.image[i]] = emb.source.elements[i];
  auto to_N = [&](Elem h) {
    require(back[h].has_value(), ErrorKind::Inconsistent, Ghat.label(h) + " is outside the image of N");
    return *back[h];
  };

  const GradedAlgebra& A = base.A.graded;
  const GradedAlgebra& Ap = base.Ap.graded;
  const Subgroup NC_hat = product(Ghat, data.N_hat, data.centralizer_hat);
  const Subgroup Np_hat = intersection(data.N_hat, data.Ghat_prime);
  const std::vector<Elem> Z_hat = center_part(data.centralizer_hat, data.N_hat);

  auto Y = [&](Elem t) {
    Vec a = base.A.element(t);
    Vec ap = base.Ap.element(local_of(base.Gp_local, G.inv(t), "G'"));
    return D.act(base.quotient.projection[t], a, ap);
  };
  auto L_of = [&](Elem n) { return D.M.left_of(A.restrict_one(base.A.element(n))); };
  auto R_of = [&](Elem n) {
    return D.M.right_of(Ap.restrict_one(base.Ap.element(local_of(base.Gp_local, n, "N'"))));
  };
  // u = n c t_hat and u' = n'' c'' t_hat, so n' = n''^-1 and z = c c''^-1.
  auto action = [&](Elem n, Elem c, Elem n2, Elem c2, std::size_t ti) {
    Elem z = Ghat.mul(c, Ghat.inv(c2));
    Elem zn = Ghat.mul(z, Ghat.inv(n2));
    return mul(F, mul(F, L_of(to_N(n)), R_of(to_N(zn))), Y(data.T[ti]));
  };
  auto factor = [&](Elem v, const Subgroup& K) -> std::pair<Elem, Elem> {
    for (Elem c : data.centralizer_hat.elements) {
      Elem n = Ghat.mul(v, Ghat.inv(c));
      if (K.contains(n))
        return {n, c};
    }
    fail(ErrorKind::Inconsistent, Ghat.label(v) + " does not factor through the centralizer");
  };

  const FiniteGroup& Q = hat.A.graded.grading_group;
  std::vector<Matrix> X;
  for (Elem q = 0; q < Q.order(); ++q) {
    Elem x = hat.A.representatives[q];
    Elem xp = hat.Gp_local.to_parent[hat.Ap.representatives[q]];
    std::optional<std::size_t> ti;
    for (std::size_t i = 0; i < data.T_hat.size() && !ti; ++i)
      if (NC_hat.contains(Ghat.mul(x, Ghat.inv(data.T_hat[i]))))
        ti = i;
    require(ti.has_value(), ErrorKind::Inconsistent, "no transversal element for degree " + Q.label(q));
    Elem th_inv = Ghat.inv(data.T_hat[*ti]);
    auto [n, c] = factor(Ghat.mul(x, th_inv), data.N_hat);
    auto [n2, c2] = factor(Ghat.mul(xp, th_inv), Np_hat);
    Matrix Xq = action(n, c, n2, c2, *ti);
    for (Elem z0 : Z_hat) {
      Matrix a1 = action(Ghat.mul(n, z0), Ghat.mul(Ghat.inv(z0), c), n2, c2, *ti);
      Matrix a2 = action(n, c, Ghat.mul(n2, z0), Ghat.mul(Ghat.inv(z0), c2), *ti);
      require(a1 == Xq && a2 == Xq, ErrorKind::Inconsistent,
              "action in degree " + Q.label(q) + " depends on the factorization");
    }
    X.push_back(std::move(Xq));
  }
  DeltaModuleStructure out{hat.A.graded, hat.Ap.graded, D.M, std::move(X)};
  std::string why = check_delta_structure(out);
  require(why.empty(), ErrorKind::Inconsistent, "transported Delta-structure is invalid: " + why);
  return out;
}

TransportResult butterfly_transport(const BlockSetting& s, const GradedMoritaWitness& W, const FiniteGroup& Ghat,
                                    const GroupEmbedding& emb) {
  TransportResult out;
  auto record = [&](std::string name, bool ok, std::string detail = {}) {
    out.checks.push_back(Check{std::move(name), ok, std::move(detail)});
  };
  out.groups = butterfly_group_data(s.G, s.N(), s.Gp, Ghat, emb);
  record("C_Ghat(N) <= G'hat", out.groups.centralizer_hat_in_Ghat_prime);
  record("Ghat = N G'hat", out.groups.Ghat_is_N_Ghat_prime);
  record("N' = N cap G'hat", out.groups.N_prime_is_N_cap_Ghat_prime);
  record("G/N'C_G(N) = Ghat/N'C_Ghat(N)", out.groups.outer_quotients_isomorphic);

  AmbientAlgebras base = ambient_algebras(s);
  require(W.A().algebra->same_structure(*base.A.graded.algebra) &&
              W.Ap().algebra->same_structure(*base.Ap.graded.algebra) &&
              W.A().grading_group == base.A.graded.grading_group,
          ErrorKind::InvalidInput, "the witness is not over b kG and b' kG' graded by G/N");

  out.delta = delta_from_witness(W);
  const Bimodule& M = W.context.M;
  out.layer = extend_to_centralizer_layer(s, M);

  for (Elem c : out.layer.centralizer.elements) {
    Matrix Yc = out.delta.act(base.quotient.projection[c], base.A.element(c),
                              base.Ap.element(local_of(base.Gp_local, s.G.inv(c), "G'")));
    require(Yc == Matrix::identity(M.dim), ErrorKind::Precondition,
            "c (x) c^-1 acts nontrivially on M for c = " + s.G.label(c) + " in C_G(N)");
  }
  record("C_G(N) acts trivially through the diagonal", true);

  BlockSetting sh = transported_setting(s, Ghat, emb, out.groups);
  require(is_invariant_block(Ghat, out.groups.N_hat, s.F, sh.b), ErrorKind::Precondition, "b is not Ghat-invariant");
  out.hat = ambient_algebras(sh);
  out.hat_layer = extend_to_centralizer_layer(sh, M);
  out.delta_hat = delta_hat_structure(s, base, out.delta, Ghat, emb, out.groups, out.hat);
  out.Mhat = induce_graded(out.delta_hat);

  GradedMoritaResult r =
      verify_graded_morita(out.hat.A.graded, out.hat.Ap.graded, out.Mhat.graded.module, out.Mhat.graded.components);
  record("Mhat is a graded Morita equivalence", r.witness.has_value(), r.reason);
  require(r.witness.has_value(), ErrorKind::Inconsistent, "transported bimodule failed certification: " + r.reason);
  out.hat_witness = std::move(*r.witness);
  const std::size_t expected = out.hat.A.graded.grading_group.order() * M.dim;
  const std::size_t got = out.Mhat.graded.module.dim;
  record("dim Mhat = |Ghat/N| dim M", got == expected, std::to_string(got) + " vs " + std::to_string(expected));
  for (const Check& c : out.checks)
    require(c.ok, ErrorKind::Inconsistent, "butterfly transport check failed: " + c.name);
  return out;
}

} // namespace gmorita
