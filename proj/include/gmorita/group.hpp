#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmorita {

using Elem = std::uint32_t;
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultOrderBound = 10000;

/// A finite group as a multiplication table. Element 0 is always the identity;
/// the remaining elements are in canonical order (sorted image tuples for
/// permutation groups, sorted labels for table groups).
class FiniteGroup {
public:
  /// An empty placeholder (order 0); real groups come from the factories.
  FiniteGroup() = default;
  static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table, const std::vector<std::string>& labels);
  static FiniteGroup from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                       std::size_t order_bound = kDefaultOrderBound);
  /// Keeps the given element order; the identity must already be element 0.
  static FiniteGroup from_table_in_order(std::vector<Elem> table, std::vector<std::string> labels);

  std::size_t order() const { return order_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[std::size_t(a) * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find_label(const std::string& label) const;

  bool is_permutation_group() const { return !perms_.empty(); }
  std::size_t degree() const { return degree_; }
  const Permutation& permutation(Elem a) const { return perms_[a]; }
  std::optional<Elem> find_permutation(const Permutation& p) const;

  std::size_t element_order(Elem a) const;
  bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

private:
  void finish();

  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> labels_;
  std::size_t degree_ = 0;
  std::vector<Permutation> perms_;
};

/// Verifies the group axioms of a raw table: Latin square, a two-sided
/// identity, and associativity (exhaustive up to order 64, sampled above).
void validate_table(const std::vector<std::vector<Elem>>& table);

std::string cycle_notation(const Permutation& p);

/// A subgroup, stored as the sorted list of its elements in the parent.
struct Subgroup {
  std::vector<Elem> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem g) const;
  bool operator==(const Subgroup&) const = default;
};

Subgroup make_subgroup(const FiniteGroup& G, std::vector<Elem> elements);
Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<Elem>& generators);
Subgroup whole_group(const FiniteGroup& G);
Subgroup trivial_subgroup(const FiniteGroup& G);
bool is_subgroup(const FiniteGroup& G, const std::vector<Elem>& elements);
bool is_normal(const FiniteGroup& G, const Subgroup& N);
bool is_subset(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
/// The product set HK; throws if it is not a subgroup.
Subgroup product(const FiniteGroup& G, const Subgroup& H, const Subgroup& K);

/// {g in G : gn = ng for all n in N}. With G = N this is the center.
Subgroup centralizer_in_group(const FiniteGroup& G, const Subgroup& N);

/// The subgroup H as a group in its own right; `to_parent[i]` is the parent
/// element of local element i. Local order follows the parent order.
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<Elem> to_parent;
  std::optional<Elem> to_local(Elem g) const;
};
SubgroupAsGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H);

struct QuotientGroup {
  Subgroup kernel;
  /// Cosets ordered by their smallest element; coset 0 is the kernel.
  std::vector<std::vector<Elem>> cosets;
  /// Smallest element of each coset.
  std::vector<Elem> representatives;
  /// projection[g] = index of the coset containing g.
  std::vector<Elem> projection;
  FiniteGroup quotient;
};

QuotientGroup quotient(const FiniteGroup& G, const Subgroup& N);

/// g -> (n -> g n g^-1) restricted to a normal subgroup N. Images are
/// permutations of positions in N.elements.
struct ConjugationMap {
  Subgroup normal;
  std::vector<Permutation> images;
  Subgroup kernel;

  /// Distinct images, sorted.
  std::vector<Permutation> image_set() const;
};

ConjugationMap conjugation_map(const FiniteGroup& G, const Subgroup& N);

/// Injective homomorphism of a subgroup N of G into another group; image[i]
/// is the target of N.elements[i].
struct GroupEmbedding {
  Subgroup source;
  std::vector<Elem> image;

  Elem operator()(Elem n) const;
  Subgroup image_subgroup() const;
};

/// Extends generator assignments to a homomorphism on <generators> = N and
/// checks it is a well-defined injective homomorphism.
GroupEmbedding make_embedding(const FiniteGroup& G, const Subgroup& N, const FiniteGroup& H,
                              const std::vector<std::pair<Elem, Elem>>& generator_images);

GroupEmbedding identity_embedding(const Subgroup& N);

/// Group-theoretic data for transporting an equivalence from G to Ghat.
struct ButterflyGroupData {
  Subgroup N_hat;            // image of N in Ghat
  Subgroup Ghat_prime;       // preimage under eps_hat of eps(G')
  Subgroup N_prime;          // G' intersect N
  Subgroup centralizer;      // C_G(N)
  Subgroup centralizer_hat;  // C_Ghat(N)
  std::vector<Elem> T;       // transversal of N'C_G(N) in G'
  std::vector<Elem> T_hat;   // matched: eps(t) = eps_hat(t_hat)

  // Derived facts, each checked explicitly.
  bool centralizer_hat_in_Ghat_prime = false;
  bool Ghat_is_N_Ghat_prime = false;
  bool N_prime_is_N_cap_Ghat_prime = false;
  bool outer_quotients_isomorphic = false;
};

ButterflyGroupData butterfly_group_data(const FiniteGroup& G, const Subgroup& N, const Subgroup& Gp,
                                        const FiniteGroup& Ghat, const GroupEmbedding& embedding);

/// Greedy generating set: walks elements in order, keeping each one not yet generated.
std::vector<Elem> generating_set(const FiniteGroup& G);

/// Either an explicit multiplication table or permutation generators (0-indexed image arrays).
struct GroupSpec {
  enum class Kind { Table, Permutation } kind = Kind::Table;
  std::vector<std::vector<Elem>> table;
  std::vector<std::string> labels;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::size_t order_bound = kDefaultOrderBound;
};

FiniteGroup load_group(const GroupSpec& spec);

} // namespace gmorita
