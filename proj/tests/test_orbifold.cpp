#include "g2glue/orbifold.hpp"

#include "examples_common.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace g2glue;
using namespace g2glue::testing;

TEST_CASE("closure of <alpha, beta, gamma> has order 8") {
  auto G = group_closure(gamma_generators());
  REQUIRE(G);
  REQUIRE(G->order() == 8);
}

TEST_CASE("closure of the example 1 deck point group has order 32") {
  auto G = group_closure(example1_orbifold().generators);
  REQUIRE(G);
  REQUIRE(G->order() == 32);
}

TEST_CASE("closure of the example 3 deck point group has order 64") {
  auto G = group_closure(example3_orbifold().generators);
  REQUIRE(G);
  REQUIRE(G->order() == 64);
}

TEST_CASE("empty generator list closes to the trivial group") {
  auto G = group_closure({});
  REQUIRE(G);
  REQUIRE(G->order() == 1);
}

TEST_CASE("closure bound triggers NotClosed") {
  REQUIRE_FALSE(group_closure(example1_orbifold().generators, 5));
}

TEST_CASE("group table is consistent with inverses") {
  auto G = group_closure(gamma_generators());
  for (int i = 0; i < G->order(); ++i) {
    REQUIRE(G->table[i][G->inv[i]] == 0);
    REQUIRE(G->table[G->inv[i]][i] == 0);
  }
}

TEST_CASE("fixed locus of alpha: 16 copies of T^3") {
  auto f = fixed_locus(gen_alpha().map);
  REQUIRE(f.size() == 16);
  for (auto& c : f) REQUIRE(c.dim() == 3);
}

TEST_CASE("fixed locus of a half-translation is empty") {
  REQUIRE(fixed_locus(gen_sigma1().map).empty());
}

TEST_CASE("fixed locus of the identity is the full torus") {
  auto f = fixed_locus(AffineIsometry::identity());
  REQUIRE(f.size() == 1);
  REQUIRE(f[0].dim() == 7);
}

TEST_CASE("fixed locus is conjugation equivariant") {
  auto G = group_closure(example1_orbifold().generators);
  const AffineIsometry g = gen_beta().map;
  for (int hi = 1; hi < G->order(); hi += 7) {
    const AffineIsometry& h = G->elements[hi];
    AffineIsometry conj = h.compose(g).compose(h.inverse());
    auto lhs = fixed_locus(conj);
    auto rhs_raw = fixed_locus(g);
    std::vector<AffineSubtorus> rhs;
    for (auto& c : rhs_raw)
      rhs.push_back(transform(h, c));
    std::sort(rhs.begin(), rhs.end());
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("singular set of T^7/Gamma: 8 T3 and 8 T3/Z2 strata") {
  auto S = singular_set(t7_gamma());
  int t3 = 0, t3z2 = 0;
  for (auto& s : S.strata) {
    REQUIRE(s.rep.dim() == 3);
    if (s.base_type == "T3") ++t3;
    else if (s.base_type == "T3/Z2") ++t3z2;
  }
  REQUIRE(t3 == 8);
  REQUIRE(t3z2 == 8);
  REQUIRE(S.strata.size() == 16);
}

TEST_CASE("singular set of example 1: 1 T3 and 6 T3/Z2 strata") {
  auto S = singular_set(example1_orbifold());
  REQUIRE(S.strata.size() == 7);
  REQUIRE(S.strata[0].base_type == "T3");
  for (size_t i = 1; i < 7; ++i) REQUIRE(S.strata[i].base_type == "T3/Z2");
}

TEST_CASE("singular set of example 3: 4 T3/Z2 strata") {
  auto S = singular_set(example3_orbifold());
  REQUIRE(S.strata.size() == 4);
  for (auto& s : S.strata) REQUIRE(s.base_type == "T3/Z2");
}

TEST_CASE("stratum orbits partition the fixed components") {
  auto S = singular_set(example1_orbifold());
  int total = 0;
  for (auto& s : S.strata) {
    REQUIRE((int)s.orbit.size() == s.orbit_size);
    total += s.orbit_size;
  }
  std::set<AffineSubtorus> all;
  for (int i = 1; i < S.group.order(); ++i)
    for (auto& c : fixed_locus(S.group.elements[i])) all.insert(c);
  REQUIRE(total == (int)all.size());
}

TEST_CASE("stratum naming does not depend on the generator order") {
  auto Y = example1_orbifold();
  auto S1 = singular_set(Y);
  std::reverse(Y.generators.begin(), Y.generators.end());
  auto S2 = singular_set(Y);
  REQUIRE(S1.strata.size() == S2.strata.size());
  for (size_t i = 0; i < S1.strata.size(); ++i) {
    REQUIRE(S1.strata[i].rep == S2.strata[i].rep);
    REQUIRE(S1.strata[i].base_type == S2.strata[i].base_type);
  }
}

TEST_CASE("beta strata precede gamma strata in example 1") {
  auto S = singular_set(example1_orbifold());
  // S_1 alpha (T3); S_2, S_3 along span(e1,e4,e5); S_4..S_7 along span(e2,e4,e6)
  auto pivot = [](const SingularStratum& s) {
    for (int r = 0; r < 7; ++r)
      if (s.rep.directions(r, 0) != 0) return r;
    return -1;
  };
  REQUIRE(pivot(S.strata[0]) == 0);
  REQUIRE(pivot(S.strata[1]) == 0);
  REQUIRE(pivot(S.strata[2]) == 0);
  for (int i = 3; i < 7; ++i) REQUIRE(pivot(S.strata[i]) == 1);
}

TEST_CASE("local models of T^7/Gamma are A1 and admissible") {
  auto S = singular_set(t7_gamma());
  for (auto& s : S.strata) {
    auto lm = local_model(S.group, s, phi0());
    REQUIRE(lm.admissible);
    REQUIRE(lm.model.ade == "A1");
    REQUIRE(lm.model.G_order == 2);
    REQUIRE(lm.model.H_order == s.H_order);
  }
}

TEST_CASE("non-free residual action is flagged NotAdmissible") {
  // beta without the half shift: the residual action on the alpha strata has
  // fixed points on the T^3 factor
  OrbifoldPresentation Y;
  Y.generators = {gen_alpha(), diag_gen("beta0", {1, -1, -1, 1, 1, -1, -1})};
  auto S = singular_set(Y);
  bool found = false;
  for (auto& s : S.strata) {
    if (s.admissible_base) continue;
    auto lm = local_model(S.group, s, phi0());
    REQUIRE_FALSE(lm.admissible);
    REQUIRE(lm.reason.find("freely") != std::string::npos);
    found = true;
  }
  REQUIRE(found);
}

TEST_CASE("deck relation sigma2^2 = tau2 tau4") {
  auto D = deck_group(example1_orbifold());
  bool found = false;
  for (auto& r : D.relations) {
    if (r.lhs != "sigma2^2") continue;
    found = true;
    REQUIRE(r.in_lattice);
    std::vector<Rational> expect{0, 1, 0, 1, 0, 0, 0};
    REQUIRE(r.lattice == expect);
  }
  REQUIRE(found);
}

TEST_CASE("generator-power and commutator relations land in the lattice") {
  for (auto& Y : {t7_gamma(), example1_orbifold(), example3_orbifold()}) {
    auto D = deck_group(Y);
    for (auto& r : D.relations) REQUIRE(r.in_lattice);
  }
}

TEST_CASE("local pi1 generators stabilize the lifted plane") {
  auto S = singular_set(example1_orbifold());
  for (auto& s : S.strata) {
    auto L = local_pi1(S.group, s);
    REQUIRE(L.z3_gens.size() == 3);
    for (auto& g : L.z3_gens) REQUIRE(stabilizes_lifted_plane(g, L.lifted));
    for (auto& g : L.g_gens) REQUIRE(stabilizes_lifted_plane(g, L.lifted));
    for (auto& g : L.h_gens) REQUIRE(stabilizes_lifted_plane(g, L.lifted));
    for (auto& g : L.g_gens) REQUIRE(g.apply(s.rep.basepoint) == s.rep.basepoint);
  }
}

TEST_CASE("pi1 of the first example-1 stratum is conjugate to <alpha, tau1, tau2, tau3>") {
  auto S = singular_set(example1_orbifold());
  const SingularStratum& s = S.strata[0];
  REQUIRE(s.base_type == "T3");
  auto L = local_pi1(S.group, s);
  std::vector<AffineIsometry> computed;
  for (auto& g : L.z3_gens) computed.push_back(g);
  for (auto& g : L.g_gens) computed.push_back(g);
  for (auto& g : L.h_gens) computed.push_back(g);
  std::vector<AffineIsometry> target{gen_alpha().map};
  for (int i = 0; i < 3; ++i)
    target.push_back(AffineIsometry::pure_translation(basis_vector(i + 1)));
  auto canon_target = canonical_subgroup(target);
  // conjugate the computed group by translations to the alpha-plane basepoint
  bool match = false;
  for (auto& delta : {std::vector<Rational>(7), s.rep.basepoint}) {
    AffineIsometry t = AffineIsometry::pure_translation(delta);
    std::vector<AffineIsometry> conj;
    for (auto& g : computed) conj.push_back(t.inverse().compose(g).compose(t));
    if (canonical_subgroup(conj) == canon_target) match = true;
  }
  REQUIRE(match);
}

TEST_CASE("pi1 of the first gamma stratum surjects onto gamma, alpha beta, sigma2") {
  auto S = singular_set(example1_orbifold());
  const SingularStratum& s = S.strata[3];  // first gamma stratum (S_4)
  auto L = local_pi1(S.group, s);
  REQUIRE(L.g_gens.size() == 1);
  REQUIRE(L.h_gens.size() == 1);
  // gamma class: the pointwise generator has gamma's linear part
  REQUIRE(L.g_gens[0].linear == gen_gamma().map.linear);
  // alpha beta class appears as g * h or h itself
  ZMat ab = gen_alpha().map.compose(gen_beta().map).linear;
  bool has_ab = L.h_gens[0].linear == ab ||
                L.g_gens[0].compose(L.h_gens[0]).linear == ab;
  REQUIRE(has_ab);
  // sigma2 class: some product of lattice directions hits sigma2's translation
  // pattern; the plane lattice must contain a vector congruent to (0,1/2,0,1/2,0,0,0)
  bool has_sigma2 = false;
  auto probe = [&](const AffineIsometry& g) {
    if (!g.linear_is_identity()) return;
    std::vector<Rational> d(7);
    for (int i = 0; i < 7; ++i) d[i] = frac_mod1(g.translation[i] - gen_sigma2().map.translation[i]);
    for (auto& x : d)
      if (x != 0) return;
    has_sigma2 = true;
  };
  for (auto& g : L.z3_gens) {
    probe(g);
    AffineIsometry h = g;
    for (int rep = 0; rep < 2; ++rep) {
      for (auto& g2 : L.z3_gens) probe(h.compose(g2));
      h = h.compose(g);
    }
  }
  REQUIRE(has_sigma2);
}

TEST_CASE("canonical deck subgroups separate distinct groups") {
  auto a = canonical_subgroup({gen_alpha().map});
  auto b = canonical_subgroup({gen_beta().map});
  REQUIRE_FALSE(a == b);
  auto a2 = canonical_subgroup({gen_alpha().map, gen_alpha().map.inverse()});
  REQUIRE(a == a2);
}

TEST_CASE("residual torus actions in example 1 are nontrivial on the gamma strata") {
  auto S = singular_set(example1_orbifold());
  for (size_t i = 3; i < 7; ++i) {
    const SingularStratum& s = S.strata[i];
    REQUIRE(s.H_order == 2);
    // residual coset acts on the plane by diag(-1,-1,1) (alpha beta action)
    ZMat M = s.coset_torus_action[1];
    ZMat expect(3, 3);
    expect(0, 0) = -1; expect(1, 1) = -1; expect(2, 2) = 1;
    REQUIRE(M == expect);
  }
}
