#include "gmorita/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "gmorita/error.hpp"

namespace gmorita {

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  // (ab)(x) = a(b(x))
  Permutation c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    c[x] = a[b[x]];
  return c;
}

bool is_permutation(const Permutation& p, std::size_t degree) {
  if (p.size() != degree)
    return false;
  std::vector<bool> seen(degree, false);
  for (auto x : p) {
    if (x >= degree || seen[x])
      return false;
    seen[x] = true;
  }
  return true;
}

} // namespace

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (done[start] || p[start] == start)
      continue;
    out += "(";
    std::size_t x = start;
    bool first = true;
    while (!done[x]) {
      done[x] = true;
      if (!first)
        out += " ";
      out += std::to_string(x);
      first = false;
      x = p[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

void validate_table(const std::vector<std::vector<Elem>>& table) {
  const std::size_t n = table.size();
  require(n > 0, ErrorKind::InvalidInput, "group table is empty");
  for (const auto& row : table) {
    require(row.size() == n, ErrorKind::InvalidInput, "group table is not square");
    std::vector<bool> seen(n, false);
    for (auto x : row) {
      require(x < n, ErrorKind::InvalidInput, "group table entry out of range");
      require(!seen[x], ErrorKind::InvalidInput, "group table is not a Latin square (repeated entry in a row)");
      seen[x] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      require(!seen[table[r][c]], ErrorKind::InvalidInput,
              "group table is not a Latin square (repeated entry in a column)");
      seen[table[r][c]] = true;
    }
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = table[e][x] == x && table[x][e] == x;
    if (ok)
      identity = e;
  }
  require(identity.has_value(), ErrorKind::InvalidInput, "group table has no two-sided identity");

  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return table[table[a][b]][c] == table[a][table[b][c]];
  };
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          require(assoc(a, b, c), ErrorKind::InvalidInput, "group table is not associative");
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 200000; ++i)
      require(assoc(pick(rng), pick(rng), pick(rng)), ErrorKind::InvalidInput, "group table is not associative");
  }
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<Elem>>& table,
                                    const std::vector<std::string>& labels) {
  validate_table(table);
  const std::size_t n = table.size();
  std::vector<std::string> names = labels;
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i)
      names.push_back(std::to_string(i));
  require(names.size() == n, ErrorKind::InvalidInput, "group labels do not match the table size");
  require(std::set<std::string>(names.begin(), names.end()).size() == n, ErrorKind::InvalidInput,
          "group labels are not distinct");

  std::size_t e = 0;
  for (std::size_t x = 0; x < n && e < n; ++x)
    if (table[e][x] != x) {
      ++e;
      x = std::size_t(-1);
    }

  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    if ((a == e) != (b == e))
      return a == e;
    return names[a] < names[b];
  });
  std::vector<Elem> rank(n);
  for (std::size_t i = 0; i < n; ++i)
    rank[order[i]] = Elem(i);

  std::vector<Elem> flat(n * n);
  std::vector<std::string> sorted_labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted_labels[i] = names[order[i]];
    for (std::size_t j = 0; j < n; ++j)
      flat[i * n + j] = rank[table[order[i]][order[j]]];
  }
  return from_table_in_order(std::move(flat), std::move(sorted_labels));
}

FiniteGroup FiniteGroup::from_table_in_order(std::vector<Elem> table, std::vector<std::string> labels) {
  FiniteGroup G;
  G.order_ = labels.size();
  G.table_ = std::move(table);
  G.labels_ = std::move(labels);
  require(G.table_.size() == G.order_ * G.order_, ErrorKind::InvalidInput, "group table has the wrong size");
  for (std::size_t x = 0; x < G.order_; ++x)
    require(G.mul(0, Elem(x)) == x && G.mul(Elem(x), 0) == x, ErrorKind::InvalidInput,
            "element 0 is not the identity");
  G.finish();
  return G;
}

FiniteGroup FiniteGroup::from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                           std::size_t order_bound) {
  for (const auto& g : generators)
    require(is_permutation(g, degree), ErrorKind::InvalidInput,
            "generator is not a permutation of " + std::to_string(degree) + " points");
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);

  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        Permutation y = compose(x, g);
        if (seen.insert(y).second) {
          require(seen.size() <= order_bound, ErrorKind::InvalidInput,
                  "generated group exceeds the order bound " + std::to_string(order_bound));
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }

  FiniteGroup G;
  G.degree_ = degree;
  G.perms_.assign(seen.begin(), seen.end()); // lexicographic; identity first
  G.order_ = G.perms_.size();
  std::map<Permutation, Elem> index;
  for (std::size_t i = 0; i < G.order_; ++i)
    index.emplace(G.perms_[i], Elem(i));
  G.table_.resize(G.order_ * G.order_);
  for (std::size_t i = 0; i < G.order_; ++i)
    for (std::size_t j = 0; j < G.order_; ++j)
      G.table_[i * G.order_ + j] = index.at(compose(G.perms_[i], G.perms_[j]));
  for (const auto& p : G.perms_)
    G.labels_.push_back(cycle_notation(p));
  G.finish();
  return G;
}

void FiniteGroup::finish() {
  inverse_.assign(order_, 0);
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      if (mul(Elem(a), Elem(b)) == 0) {
        inverse_[a] = Elem(b);
        break;
      }
}

std::optional<Elem> FiniteGroup::find_label(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    return std::nullopt;
  return Elem(it - labels_.begin());
}

std::optional<Elem> FiniteGroup::find_permutation(const Permutation& p) const {
  auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
  if (it == perms_.end() || *it != p)
    return std::nullopt;
  return Elem(it - perms_.begin());
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a))
    ++k;
  return k;
}

FiniteGroup load_group(const GroupSpec& spec) {
  if (spec.kind == GroupSpec::Kind::Table)
    return FiniteGroup::from_table(spec.table, spec.labels);
  return FiniteGroup::from_permutations(spec.degree, spec.generators, spec.order_bound);
}

bool Subgroup::contains(Elem g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool is_subgroup(const FiniteGroup& G, const std::vector<Elem>& elements) {
  std::vector<bool> in(G.order(), false);
  for (auto x : elements) {
    if (x >= G.order())
      return false;
    in[x] = true;
  }
  if (!in[G.identity()])
    return false;
  for (auto a : elements) {
    if (!in[G.inv(a)])
      return false;
    for (auto b : elements)
      if (!in[G.mul(a, b)])
        return false;
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& G, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  require(is_subgroup(G, elements), ErrorKind::InvalidInput, "element set is not a subgroup");
  return Subgroup{std::move(elements)};
}

Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<Elem>& generators) {
  std::vector<bool> in(G.order(), false);
  std::vector<Elem> elems{G.identity()};
  in[G.identity()] = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto g : generators) {
      Elem y = G.mul(elems[i], g);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return Subgroup{std::move(elems)};
}

Subgroup whole_group(const FiniteGroup& G) {
  Subgroup H;
  H.elements.resize(G.order());
  std::iota(H.elements.begin(), H.elements.end(), 0);
  return H;
}

Subgroup trivial_subgroup(const FiniteGroup& G) { return Subgroup{{G.identity()}}; }

bool is_normal(const FiniteGroup& G, const Subgroup& N) {
  for (Elem g = 0; g < G.order(); ++g)
    for (auto n : N.elements)
      if (!N.contains(G.conj(g, n)))
        return false;
  return true;
}

bool is_subset(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(), a.elements.end());
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  Subgroup c;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                        std::back_inserter(c.elements));
  return c;
}

Subgroup product(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
  std::vector<Elem> prod;
  for (auto h : H.elements)
    for (auto k : K.elements)
      prod.push_back(G.mul(h, k));
  std::sort(prod.begin(), prod.end());
  prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
  require(is_subgroup(G, prod), ErrorKind::Precondition, "product set is not a subgroup");
  return Subgroup{std::move(prod)};
}

Subgroup centralizer_in_group(const FiniteGroup& G, const Subgroup& N) {
  require(is_subgroup(G, N.elements), ErrorKind::Precondition, "centralizer: argument is not a subgroup");
  Subgroup C;
  for (Elem g = 0; g < G.order(); ++g) {
    bool commutes = true;
    for (auto n : N.elements)
      if (G.mul(g, n) != G.mul(n, g)) {
        commutes = false;
        break;
      }
    if (commutes)
      C.elements.push_back(g);
  }
  return C;
}

std::optional<Elem> SubgroupAsGroup::to_local(Elem g) const {
  auto it = std::lower_bound(to_parent.begin(), to_parent.end(), g);
  if (it == to_parent.end() || *it != g)
    return std::nullopt;
  return Elem(it - to_parent.begin());
}

SubgroupAsGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H) {
  const std::size_t n = H.order();
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(G.label(H.elements[i]));
    for (std::size_t j = 0; j < n; ++j) {
      Elem prod = G.mul(H.elements[i], H.elements[j]);
      table[i * n + j] = Elem(std::lower_bound(H.elements.begin(), H.elements.end(), prod) - H.elements.begin());
    }
  }
  return SubgroupAsGroup{FiniteGroup::from_table_in_order(std::move(table), std::move(labels)), H.elements};
}

QuotientGroup quotient(const FiniteGroup& G, const Subgroup& N) {
  require(is_subgroup(G, N.elements), ErrorKind::Precondition, "quotient: kernel is not a subgroup");
  require(is_normal(G, N), ErrorKind::Precondition, "quotient: subgroup is not normal");
  std::vector<std::vector<Elem>> cosets;
  std::vector<Elem> reps;
  std::vector<Elem> proj(G.order(), Elem(-1));
  for (Elem g = 0; g < G.order(); ++g) {
    if (proj[g] != Elem(-1))
      continue;
    std::vector<Elem> coset;
    for (auto n : N.elements) {
      Elem x = G.mul(g, n);
      proj[x] = Elem(cosets.size());
      coset.push_back(x);
    }
    std::sort(coset.begin(), coset.end());
    reps.push_back(g);
    cosets.push_back(std::move(coset));
  }
  const std::size_t q = cosets.size();
  std::vector<Elem> table(q * q);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < q; ++i) {
    labels.push_back(G.label(reps[i]));
    for (std::size_t j = 0; j < q; ++j)
      table[i * q + j] = proj[G.mul(reps[i], reps[j])];
  }
  return QuotientGroup{N, std::move(cosets), std::move(reps), std::move(proj),
                       FiniteGroup::from_table_in_order(std::move(table), std::move(labels))};
}

std::vector<Permutation> ConjugationMap::image_set() const {
  std::set<Permutation> s(images.begin(), images.end());
  return {s.begin(), s.end()};
}

ConjugationMap conjugation_map(const FiniteGroup& G, const Subgroup& N) {
  require(is_subgroup(G, N.elements) && is_normal(G, N), ErrorKind::Precondition,
          "conjugation map: subgroup is not normal");
  ConjugationMap cm;
  cm.normal = N;
  for (Elem g = 0; g < G.order(); ++g) {
    Permutation img(N.order());
    bool trivial = true;
    for (std::size_t i = 0; i < N.order(); ++i) {
      Elem y = G.conj(g, N.elements[i]);
      img[i] = std::uint32_t(std::lower_bound(N.elements.begin(), N.elements.end(), y) - N.elements.begin());
      trivial = trivial && img[i] == i;
    }
    if (trivial)
      cm.kernel.elements.push_back(g);
    cm.images.push_back(std::move(img));
  }
  return cm;
}

Elem GroupEmbedding::operator()(Elem n) const {
  auto it = std::lower_bound(source.elements.begin(), source.elements.end(), n);
  require(it != source.elements.end() && *it == n, ErrorKind::Precondition, "element outside embedded subgroup");
  return image[std::size_t(it - source.elements.begin())];
}

Subgroup GroupEmbedding::image_subgroup() const {
  Subgroup s{image};
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

GroupEmbedding make_embedding(const FiniteGroup& G, const Subgroup& N, const FiniteGroup& H,
                              const std::vector<std::pair<Elem, Elem>>& generator_images) {
  std::map<Elem, Elem> img{{G.identity(), H.identity()}};
  std::vector<Elem> queue{G.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& [s, t] : generator_images) {
      require(N.contains(s), ErrorKind::InvalidInput, "embedding generator " + G.label(s) + " is not in N");
      Elem x = G.mul(queue[i], s);
      Elem y = H.mul(img[queue[i]], t);
      auto [it, inserted] = img.emplace(x, y);
      if (inserted)
        queue.push_back(x);
      else
        require(it->second == y, ErrorKind::InvalidInput, "embedding is not a well-defined homomorphism");
    }
  require(img.size() == N.order(), ErrorKind::InvalidInput, "embedding generators do not generate N");
  GroupEmbedding e{N, {}};
  for (auto n : N.elements)
    e.image.push_back(img.at(n));
  std::set<Elem> distinct(e.image.begin(), e.image.end());
  require(distinct.size() == N.order(), ErrorKind::InvalidInput, "embedding is not injective");
  for (auto a : N.elements)
    for (auto b : N.elements)
      require(e(G.mul(a, b)) == H.mul(e(a), e(b)), ErrorKind::InvalidInput, "embedding is not a homomorphism");
  return e;
}

GroupEmbedding identity_embedding(const Subgroup& N) { return GroupEmbedding{N, N.elements}; }

std::vector<Elem> generating_set(const FiniteGroup& G) {
  std::vector<Elem> gens;
  Subgroup H = trivial_subgroup(G);
  for (Elem g = 0; g < G.order(); ++g)
    if (!H.contains(g)) {
      gens.push_back(g);
      H = generated_subgroup(G, gens);
    }
  return gens;
}

namespace {

// Conjugation action of g in `group` on positions of the embedded copy of N.
Permutation action_on(const FiniteGroup& group, const std::vector<Elem>& position_to_elem, Elem g) {
  Permutation img(position_to_elem.size());
  for (std::size_t i = 0; i < position_to_elem.size(); ++i) {
    Elem y = group.conj(g, position_to_elem[i]);
    auto it = std::find(position_to_elem.begin(), position_to_elem.end(), y);
    img[i] = std::uint32_t(it - position_to_elem.begin());
  }
  return img;
}

} // namespace

ButterflyGroupData butterfly_group_data(const FiniteGroup& G, const Subgroup& N, const Subgroup& Gp,
                                        const FiniteGroup& Ghat, const GroupEmbedding& embedding) {
  require(is_normal(G, N), ErrorKind::Precondition, "hypothesis failed: N is not normal in G");
  require(is_subgroup(G, Gp.elements), ErrorKind::Precondition, "hypothesis failed: G' is not a subgroup of G");
  require(embedding.source == N, ErrorKind::Precondition, "embedding source is not N");
  ButterflyGroupData d;
  d.N_hat = embedding.image_subgroup();
  require(is_subgroup(Ghat, d.N_hat.elements) && is_normal(Ghat, d.N_hat), ErrorKind::Precondition,
          "hypothesis failed: image of N is not normal in Ghat");

  d.centralizer = centralizer_in_group(G, N);
  for (auto c : d.centralizer.elements)
    require(Gp.contains(c), ErrorKind::Precondition,
            "hypothesis failed: C_G(N) is not contained in G' (element " + G.label(c) + ")");
  require(product(G, Gp, N).order() == G.order(), ErrorKind::Precondition, "hypothesis failed: G != G'N");

  // eps and eps_hat as permutations of positions in N.elements.
  const std::vector<Elem>& n_elems = N.elements;
  std::vector<Elem> hat_elems = embedding.image;
  std::vector<Permutation> eps(G.order()), eps_hat(Ghat.order());
  for (Elem g = 0; g < G.order(); ++g)
    eps[g] = action_on(G, n_elems, g);
  for (Elem g = 0; g < Ghat.order(); ++g)
    eps_hat[g] = action_on(Ghat, hat_elems, g);
  std::set<Permutation> img(eps.begin(), eps.end()), img_hat(eps_hat.begin(), eps_hat.end());
  require(img == img_hat, ErrorKind::Precondition, "hypothesis failed: eps(G) != eps_hat(Ghat)");

  std::set<Permutation> img_gp;
  for (auto g : Gp.elements)
    img_gp.insert(eps[g]);
  for (Elem g = 0; g < Ghat.order(); ++g)
    if (img_gp.count(eps_hat[g]))
      d.Ghat_prime.elements.push_back(g);
  d.N_prime = intersection(Gp, N);
  d.centralizer_hat = centralizer_in_group(Ghat, d.N_hat);

  d.centralizer_hat_in_Ghat_prime = is_subset(d.centralizer_hat, d.Ghat_prime);
  {
    std::set<Elem> prod;
    for (auto n : d.N_hat.elements)
      for (auto g : d.Ghat_prime.elements)
        prod.insert(Ghat.mul(n, g));
    d.Ghat_is_N_Ghat_prime = prod.size() == Ghat.order();
  }
  {
    Subgroup np_hat;
    for (auto n : d.N_prime.elements)
      np_hat.elements.push_back(embedding(n));
    std::sort(np_hat.elements.begin(), np_hat.elements.end());
    d.N_prime_is_N_cap_Ghat_prime = np_hat == intersection(d.N_hat, d.Ghat_prime);
  }
  require(d.centralizer_hat_in_Ghat_prime, ErrorKind::Inconsistent, "derived fact failed: C_Ghat(N) <= Ghat'");
  require(d.Ghat_is_N_Ghat_prime, ErrorKind::Inconsistent, "derived fact failed: Ghat = N Ghat'");
  require(d.N_prime_is_N_cap_Ghat_prime, ErrorKind::Inconsistent, "derived fact failed: N' = N cap Ghat'");

  // Transversal T of N'C_G(N) in G', then matched T_hat.
  Subgroup K = product(G, d.N_prime, d.centralizer);
  std::vector<bool> covered(G.order(), false);
  for (auto g : Gp.elements) {
    if (covered[g])
      continue;
    d.T.push_back(g);
    for (auto k : K.elements)
      covered[G.mul(g, k)] = true;
  }
  for (auto t : d.T) {
    std::optional<Elem> match;
    for (auto g : d.Ghat_prime.elements)
      if (eps_hat[g] == eps[t]) {
        match = g;
        break;
      }
    require(match.has_value(), ErrorKind::Precondition,
            "no element of Ghat' induces the same automorphism as " + G.label(t) + " (eps(G) != eps_hat(Ghat))");
    d.T_hat.push_back(*match);
  }

  // G/NC_G(N) ~ Ghat/NC_Ghat(N) through t NC -> t_hat N C_hat.
  Subgroup NC = product(G, N, d.centralizer);
  Subgroup NC_hat = product(Ghat, d.N_hat, d.centralizer_hat);
  auto coset_index = [](const FiniteGroup& group, const Subgroup& sub, const std::vector<Elem>& reps,
                        Elem g) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (sub.contains(group.mul(group.inv(reps[i]), g)))
        return i;
    return std::nullopt;
  };
  bool iso = d.T.size() * NC.order() == G.order() && d.T_hat.size() * NC_hat.order() == Ghat.order();
  for (std::size_t i = 0; iso && i < d.T.size(); ++i)
    for (std::size_t j = 0; iso && j < d.T.size(); ++j) {
      auto k = coset_index(G, NC, d.T, G.mul(d.T[i], d.T[j]));
      auto k_hat = coset_index(Ghat, NC_hat, d.T_hat, Ghat.mul(d.T_hat[i], d.T_hat[j]));
      iso = k && k_hat && *k == *k_hat;
    }
  d.outer_quotients_isomorphic = iso;
  require(iso, ErrorKind::Inconsistent, "derived fact failed: G/NC_G(N) ~ Ghat/NC_Ghat(N) via matched transversals");
  return d;
}

} // namespace gmorita
