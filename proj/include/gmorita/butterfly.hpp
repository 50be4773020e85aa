#pragma once

#include <optional>
#include <vector>

#include "gmorita/graded_morita.hpp"
#include "gmorita/group.hpp"
#include "gmorita/morita.hpp"

namespace gmorita {

/// G with a normal subgroup N (listed in a fixed order that fixes the basis
/// of B), a subgroup G' with G = G'N, and blocks b of kN and b' of kN'
/// (N' = G' cap N), both in kG coordinates.
struct BlockSetting {
  FiniteGroup G;
  std::vector<Elem> N_order;
  Subgroup Gp;
  PrimeField F{2};
  Vec b;
  Vec bp;

  Subgroup N() const;
  /// N' in the order induced from N_order.
  std::vector<Elem> Np_order() const;
};

/// e*kH for H <= G with normal subgroup K (in the given order), graded through
/// a degree map on G with values in `target`.
BlockExtension sub_extension(const FiniteGroup& G, const Subgroup& H, const std::vector<Elem>& K_order,
                             const PrimeField& F, const Vec& e_kG, const std::vector<Elem>& degree,
                             const FiniteGroup& target);

/// A = b kG and A' = b' kG', both graded by G/N.
struct AmbientAlgebras {
  QuotientGroup quotient;
  BlockExtension A;
  BlockExtension Ap;
  SubgroupAsGroup Gp_local;
};

AmbientAlgebras ambient_algebras(const BlockSetting& s);

/// The z in Z(N) whose left and right actions on M differ, if any.
std::optional<Elem> commuting_violation(const BlockSetting& s, const Bimodule& M);

/// C (x)_B M as a graded (C, C')-bimodule over NC_G(N)/N, where
/// C = b k[N C_G(N)] and C' = b' k[N' C_G(N)].
struct CentralizerLayer {
  Subgroup centralizer; // C_G(N)
  Subgroup NC;
  Subgroup NpC;
  FiniteGroup grading_group;
  BlockExtension C;
  BlockExtension Cp;
  Bimodule C_as_CB;
  TensorProduct tensor;
  GradedMoritaWitness witness;
};

/// Throws Error(Precondition) naming the failed hypothesis: C_G(N) not inside
/// G', M not Morita, or an element z of Z(N) with zm != mz.
CentralizerLayer extend_to_centralizer_layer(const BlockSetting& s, const Bimodule& M);

/// The Delta-structure carried by the degree-1 part of a graded Morita
/// witness: u_g (x) u'_g^{-1} acts by m -> u_g m u'_g^{-1} inside Mtilde.
DeltaModuleStructure delta_from_witness(const GradedMoritaWitness& W);

/// The setting transported along N -> Ghat: N in the image order, G'hat as
/// computed by the group data, and the blocks moved over.
BlockSetting transported_setting(const BlockSetting& s, const FiniteGroup& Ghat, const GroupEmbedding& emb,
                                 const ButterflyGroupData& data);

/// Unit actions over Ghat/N. For each degree the unit of Ahat is factored as
/// n c t_hat and that of Ahat' as n' c' t_hat, and u (x) u'^{-1} acts by
/// L(b n) R(b' z n') Y(t) with z = c c'^{-1} in Z(N) and Y(t) the action of
/// t (x) t^{-1} from D. Every alternative factorization is recomputed and
/// compared; the result is validated and a failure throws Error(Inconsistent).
DeltaModuleStructure delta_hat_structure(const BlockSetting& s, const AmbientAlgebras& base,
                                         const DeltaModuleStructure& D, const FiniteGroup& Ghat, const GroupEmbedding& emb,
                                         const ButterflyGroupData& data, const AmbientAlgebras& hat);

struct TransportResult {
  ButterflyGroupData groups;
  AmbientAlgebras hat;
  CentralizerLayer layer;
  CentralizerLayer hat_layer;
  DeltaModuleStructure delta;
  DeltaModuleStructure delta_hat;
  InducedBimodule Mhat;
  GradedMoritaWitness hat_witness;
  std::vector<Check> checks;
};

/// Transports the graded Morita equivalence certified by W (over G/N, with A
/// and A' the ambient algebras of s) to Ghat/N.
TransportResult butterfly_transport(const BlockSetting& s, const GradedMoritaWitness& W, const FiniteGroup& Ghat,
                                    const GroupEmbedding& emb);

} // namespace gmorita
