#include "g2glue/metric.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace g2glue;

namespace {

AlternatingForm psi_expected() {
  AlternatingForm p(4);
  p.add_term({4, 5, 6, 7}, 1);
  p.add_term({2, 3, 4, 5}, 1);
  p.add_term({2, 3, 6, 7}, 1);
  p.add_term({1, 3, 5, 7}, 1);
  p.add_term({1, 3, 4, 6}, -1);
  p.add_term({1, 2, 5, 6}, -1);
  p.add_term({1, 2, 4, 7}, -1);
  return p;
}

AlternatingForm split_witness() {
  // flip the sign of the 356 term: lands in the split orbit
  AlternatingForm g(3);
  g.add_term({1, 2, 3}, 1);
  g.add_term({1, 4, 5}, 1);
  g.add_term({1, 6, 7}, 1);
  g.add_term({2, 4, 6}, 1);
  g.add_term({2, 5, 7}, -1);
  g.add_term({3, 4, 7}, -1);
  g.add_term({3, 5, 6}, 1);
  return g;
}

}  // namespace

TEST_CASE("phi0 induces the identity metric with unit volume") {
  Metric7 m = nondegeneracy_and_metric(phi0());
  REQUIRE(m.orbit == Orbit::Definite);
  REQUIRE(m.volume.has_value());
  REQUIRE(*m.volume == 1);
  REQUIRE(m.entries == QMat::identity(7));
  REQUIRE(m.bilinear == QMat::identity(7) * Rational(6));
}

TEST_CASE("theta of phi0 is the coassociative four-form") {
  REQUIRE(theta(phi0()) == psi_expected());
}

TEST_CASE("phi wedge theta(phi) is seven times the volume form") {
  REQUIRE(wedge(phi0(), theta(phi0())) == vol0() * Rational(7));
}

TEST_CASE("lambda2 splits with multiplicities (7, 14)") {
  auto s = lambda2_split(phi0());
  REQUIRE(s.eigen2.size() == 7);
  REQUIRE(s.eigen_minus1.size() == 14);
}

TEST_CASE("split witness has signature (4, 3)") {
  Metric7 m = nondegeneracy_and_metric(split_witness());
  REQUIRE(m.orbit == Orbit::Split);
  REQUIRE(((m.sig == std::pair<int, int>(4, 3)) || (m.sig == std::pair<int, int>(3, 4))));
}

TEST_CASE("degenerate form is detected") {
  auto f = AlternatingForm::monomial({1, 2, 3});
  Metric7 m = nondegeneracy_and_metric(f);
  REQUIRE(m.orbit == Orbit::Degenerate);
}

TEST_CASE("bilinear transforms as det(A) A^T B A under pullback") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int trial = 0; trial < 3; ++trial) {
    QMat A(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) A(i, j) = coeff(rng);
    QMat B1 = induced_bilinear(pullback(A, phi0()));
    QMat B2 = A.transpose() * induced_bilinear(phi0()) * A * determinant(A);
    REQUIRE(B1 == B2);
  }
}

TEST_CASE("hodge star squares to the identity on even metric data") {
  Metric7 m = nondegeneracy_and_metric(phi0());
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coord(1, 7), coeff(-3, 3);
  for (int deg = 1; deg <= 4; ++deg) {
    AlternatingForm f(deg);
    for (int t = 0; t < 4; ++t) {
      MultiIndex idx;
      for (int i = 0; i < deg; ++i) idx.push_back(coord(rng));
      f.add_term(idx, coeff(rng));
    }
    // ** = (-1)^{k(7-k)} = +1 in dimension 7
    REQUIRE(hodge_star(hodge_star(f, m), m) == f);
  }
}

TEST_CASE("hodge star is an isometry: a ^ *a pairs to the norm") {
  Metric7 m = nondegeneracy_and_metric(phi0());
  auto f = AlternatingForm::monomial({1, 4}, 3);
  auto w = wedge(f, hodge_star(f, m));
  REQUIRE(w == vol0() * Rational(9));
}

TEST_CASE("triple extraction along {1,2,3}") {
  auto t = extract_triple(phi0(), {1, 2, 3});
  AlternatingForm w1(2), w2(2), w3(2);
  w1.add_term({4, 5}, 1); w1.add_term({6, 7}, 1);
  w2.add_term({4, 6}, 1); w2.add_term({5, 7}, -1);
  w3.add_term({4, 7}, 1); w3.add_term({5, 6}, 1);
  REQUIRE(t.omega[0] == w1);
  REQUIRE(t.omega[1] == w2);
  REQUIRE(t.omega[2] == w3);
  REQUIRE(t.normal == std::vector<int>{4, 5, 6, 7});
}

TEST_CASE("triple extraction along {1,4,5}") {
  auto t = extract_triple(phi0(), {1, 4, 5});
  AlternatingForm w1(2), w2(2), w3(2);
  w1.add_term({2, 3}, 1); w1.add_term({6, 7}, 1);
  w2.add_term({2, 6}, -1); w2.add_term({3, 7}, 1);
  w3.add_term({2, 7}, -1); w3.add_term({3, 6}, -1);
  REQUIRE(t.omega[0] == w1);
  REQUIRE(t.omega[1] == w2);
  REQUIRE(t.omega[2] == w3);
}

TEST_CASE("triple extraction along {2,4,6}") {
  auto t = extract_triple(phi0(), {2, 4, 6});
  AlternatingForm w1(2), w2(2), w3(2);
  w1.add_term({1, 3}, -1); w1.add_term({5, 7}, -1);
  w2.add_term({1, 5}, -1); w2.add_term({3, 7}, 1);
  w3.add_term({1, 7}, 1); w3.add_term({3, 5}, 1);
  REQUIRE(t.omega[0] == w1);
  REQUIRE(t.omega[1] == w2);
  REQUIRE(t.omega[2] == w3);
}

TEST_CASE("triple extraction rejects non-product forms") {
  REQUIRE_THROWS_AS(extract_triple(AlternatingForm::monomial({1, 2, 3}), {1, 2, 3}),
                    std::domain_error);
}

TEST_CASE("axis sets with negatively oriented torus term are rejected") {
  // the decomposition pins the coefficient of the torus monomial to +1
  for (auto axes : std::vector<std::vector<int>>{{2, 5, 7}, {3, 4, 7}, {3, 5, 6}})
    REQUIRE_THROWS_AS(extract_triple(phi0(), axes), std::domain_error);
}

TEST_CASE("quaternionic relations hold for the positively oriented axis sets") {
  for (auto axes : std::vector<std::vector<int>>{{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}}) {
    auto t = extract_triple(phi0(), axes);
    auto sq = wedge(t.omega[0], t.omega[0]);
    REQUIRE_FALSE(sq.is_zero());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto w = wedge(t.omega[i], t.omega[j]);
        if (i == j) REQUIRE(w == sq);
        else REQUIRE(w.is_zero());
      }
  }
}
