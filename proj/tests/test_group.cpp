#include "doctest.h"

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "gmorita/error.hpp"
#include "gmorita/oracle.hpp"

using namespace gmorita;
using namespace fixtures;

namespace {

void check_associative(const FiniteGroup& G) {
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b)
      for (Elem c = 0; c < G.order(); ++c)
        REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
}

} // namespace

TEST_CASE("load_group from permutation generators matches closure enumeration") {
  GroupSpec spec;
  spec.kind = GroupSpec::Kind::Permutation;
  spec.degree = 3;
  spec.generators = {{1, 2, 0}, {1, 0, 2}};
  FiniteGroup G = load_group(spec);
  auto closure = oracle::permutation_closure(3, spec.generators);
  CHECK(G.order() == closure.size());
  CHECK(G.order() == 6);
  for (const auto& p : closure)
    CHECK(G.find_permutation(p).has_value());
  CHECK(G.label(0) == "()");
  check_associative(G);

  spec.generators = {{1, 2, 0}};
  CHECK(load_group(spec).order() == oracle::permutation_closure(3, spec.generators).size());
  CHECK(load_group(spec).order() == 3);
}

TEST_CASE("load_group from tables") {
  GroupSpec spec;
  spec.table = {{0}};
  spec.labels = {"1"};
  CHECK(load_group(spec).order() == 1);

  // C2 x C2 with identity listed last: reordered so the identity comes first.
  spec.table = {{3, 2, 1, 0}, {2, 3, 0, 1}, {1, 0, 3, 2}, {0, 1, 2, 3}};
  spec.labels = {"c", "b", "a", "e"};
  FiniteGroup V = load_group(spec);
  CHECK(V.label(0) == "e");
  CHECK(V.labels() == std::vector<std::string>{"e", "a", "b", "c"});
  check_associative(V);

  spec.table = {{0, 1}, {0, 1}};
  spec.labels = {"x", "y"};
  CHECK_THROWS_AS(load_group(spec), Error);
  // Latin square that is not associative (a quasigroup with identity).
  spec.table = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  spec.labels = {"e", "a", "b", "c", "d"};
  CHECK_THROWS_AS(load_group(spec), Error);
}

TEST_CASE("order bound is enforced") {
  GroupSpec spec;
  spec.kind = GroupSpec::Kind::Permutation;
  spec.degree = 4;
  spec.generators = {{1, 2, 3, 0}, {1, 0, 2, 3}};
  spec.order_bound = 10;
  CHECK_THROWS_AS(load_group(spec), Error);
  spec.order_bound = 24;
  CHECK(load_group(spec).order() == 24);
}

TEST_CASE("centralizers agree with exhaustive commuting test") {
  FiniteGroup S = s3();
  CHECK(centralizer_in_group(S, whole_group(S)).elements == std::vector<Elem>{0});
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  Subgroup C = centralizer_in_group(G, N);
  CHECK(C == c3_factor(G));
  CHECK(C.elements == oracle::commuting_elements(G, N.elements));
  CHECK(centralizer_in_group(G, trivial_subgroup(G)) == whole_group(G));
}

TEST_CASE("quotients have the expected orders") {
  FiniteGroup S = s3();
  Subgroup A3 = generated_subgroup(S, {perm(S, {1, 2, 0})});
  QuotientGroup q = quotient(S, A3);
  CHECK(q.quotient.order() == 2);
  CHECK(q.quotient.order() == oracle::coset_count(S, A3.elements));
  CHECK(quotient(S, whole_group(S)).quotient.order() == 1);
  FiniteGroup G = s3xc3();
  QuotientGroup q2 = quotient(G, s3_factor(G));
  CHECK(q2.quotient.order() == 3);
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b)
      CHECK(q2.projection[G.mul(a, b)] == q2.quotient.mul(q2.projection[a], q2.projection[b]));
  CHECK_THROWS_AS(quotient(S, generated_subgroup(S, {perm(S, {1, 0, 2})})), Error);
}

TEST_CASE("conjugation map kernel equals the centralizer") {
  FiniteGroup C = c3();
  ConjugationMap triv = conjugation_map(C, whole_group(C));
  CHECK(triv.image_set().size() == 1);

  FiniteGroup S = s3();
  Subgroup A3 = generated_subgroup(S, {perm(S, {1, 2, 0})});
  ConjugationMap m = conjugation_map(S, A3);
  CHECK(m.image_set().size() == 2);
  CHECK(m.kernel == centralizer_in_group(S, A3));

  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  ConjugationMap m2 = conjugation_map(G, N);
  CHECK(m2.image_set().size() == 6);
  CHECK(m2.kernel.elements == oracle::commuting_elements(G, N.elements));
}

TEST_CASE("butterfly group data for the fixtures") {
  FiniteGroup G = s3xc3();
  Subgroup N = s3_factor(G);
  Subgroup Gp = c3_factor(G);
  Elem r = perm(G, {1, 2, 0, 3, 4, 5}), s = perm(G, {1, 0, 2, 3, 4, 5});

  SUBCASE("identical ambient groups") {
    ButterflyGroupData d = butterfly_group_data(G, N, Gp, G, identity_embedding(N));
    CHECK(d.Ghat_prime == Gp);
    CHECK(d.T == d.T_hat);
  }
  SUBCASE("Ghat = S3") {
    FiniteGroup H = s3();
    GroupEmbedding emb = make_embedding(G, N, H, {{r, perm(H, {1, 2, 0})}, {s, perm(H, {1, 0, 2})}});
    ButterflyGroupData d = butterfly_group_data(G, N, Gp, H, emb);
    CHECK(d.Ghat_prime.order() == 1);
    CHECK(d.T.size() == 1);
    CHECK(d.centralizer_hat_in_Ghat_prime);
    CHECK(d.Ghat_is_N_Ghat_prime);
    CHECK(d.N_prime_is_N_cap_Ghat_prime);
    CHECK(d.outer_quotients_isomorphic);
  }
  SUBCASE("Ghat = S3 x C2") {
    FiniteGroup H = s3xc2();
    GroupEmbedding emb =
        make_embedding(G, N, H, {{r, perm(H, {1, 2, 0, 3, 4})}, {s, perm(H, {1, 0, 2, 3, 4})}});
    ButterflyGroupData d = butterfly_group_data(G, N, Gp, H, emb);
    CHECK(d.Ghat_prime == generated_subgroup(H, {perm(H, {0, 1, 2, 4, 3})}));
    CHECK(d.T.size() == d.T_hat.size());
    CHECK(d.outer_quotients_isomorphic);
  }
  SUBCASE("hypothesis failures are reported") {
    // G' = 1 does not contain C_G(N).
    CHECK_THROWS_AS(butterfly_group_data(G, N, trivial_subgroup(G), G, identity_embedding(N)), Error);
    // N not normal in S3 x C3 when N = <(0 1)>.
    Subgroup bad = generated_subgroup(G, {s});
    CHECK_THROWS_AS(butterfly_group_data(G, bad, whole_group(G), G, identity_embedding(bad)), Error);
  }
}

TEST_CASE("embedding rejects non-homomorphic assignments") {
  FiniteGroup S = s3();
  FiniteGroup C = c3();
  Elem r = perm(S, {1, 2, 0}), s = perm(S, {1, 0, 2});
  CHECK_THROWS_AS(make_embedding(S, whole_group(S), C, {{r, 1}, {s, 0}}), Error);
  GroupEmbedding id = make_embedding(S, whole_group(S), S, {{r, r}, {s, s}});
  for (Elem g = 0; g < S.order(); ++g)
    CHECK(id(g) == g);
}
