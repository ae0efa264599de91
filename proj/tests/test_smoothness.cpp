#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sl2surf/smoothness.hpp"
#include "test_support.hpp"

using namespace sl2surf;

namespace {

const std::vector<Rational> kOne1{Rational(1)};
const std::vector<Rational> kOne2{Rational(1), Rational(1)};
const std::vector<Rational> kOne3{Rational(1), Rational(1), Rational(1)};

BivariatePoly X() { return BivariatePoly::x(); }
BivariatePoly Y() { return BivariatePoly::y(); }

FactoredElement parabolic(const std::string& rep, const std::vector<Rational>& u) {
  return make_parabolic(parse_rep(rep), u, BoundaryPoint::finite(0));
}

FactoredElement elliptic(const std::string& rep, const std::vector<Rational>& u) {
  return make_elliptic(parse_rep(rep), u, InteriorPoint{Rational(0), Rational(1)});
}

FactoredElement hyperbolic(const std::string& rep, const std::vector<Rational>& u,
                           const std::vector<int>& alphas) {
  return make_hyperbolic(parse_rep(rep), u, BoundaryPoint::infinity(), BoundaryPoint::finite(0),
                         alphas);
}

}  // namespace

TEST_CASE("ring membership: identities and parity obstructions") {
  // (x-y)^2 = (x+y)^2 - 4xy
  BivariatePoly target = (X() - Y()) * (X() - Y());
  CHECK(ring_membership(target, X() + Y(), X() * Y()));

  // every element of R[x, y^2] has even y-degree in each term
  CHECK_FALSE(ring_membership(Y().pow(3), X(), Y() * Y()));

  // the cubic (t1-t2)^3 escapes R[a t1 + b t2, (t1-t2)^2]
  BivariatePoly p1 = BivariatePoly::monomial(1, 0, Rational(2)) +
                     BivariatePoly::monomial(0, 1, Rational(1));
  BivariatePoly diff2 = (X() - Y()).pow(2);
  CHECK_FALSE(ring_membership((X() - Y()).pow(3), p1, diff2));

  // zero target is always a member
  CHECK(ring_membership(BivariatePoly{}, X(), Y()));

  CHECK(univariate_ring_membership(X().pow(4), X()));
  CHECK(univariate_ring_membership((X() + Y()).pow(3) * BivariatePoly::constant(frac(2, 3)),
                                   X() + Y()));
  CHECK_FALSE(univariate_ring_membership(X() * Y(), X() + Y()));
}

TEST_CASE("raccourci: the y^3 cusp and harmless maps") {
  RaccourciResult cusp = raccourci_test({X(), Y().pow(2), Y().pow(3)});
  CHECK(cusp.verdict == SmoothnessVerdict::Singular);
  CHECK(cusp.p1_index == 0);
  CHECK(cusp.p2_index == 1);
  CHECK(cusp.witness_index == 2);

  CHECK(raccourci_test({X(), Y()}).verdict == SmoothnessVerdict::NoObstruction);

  // third coordinate is P1 P2 + P2^2
  BivariatePoly mixed = X() * Y().pow(2) + Y().pow(4);
  CHECK(raccourci_test({X(), Y().pow(2), mixed}).verdict == SmoothnessVerdict::NoObstruction);

  // image is a curve: every coordinate already lies in R[x]
  CHECK_THROWS_AS(raccourci_test({X(), X().pow(2)}), degenerate_input_error);

  CHECK_THROWS_AS(raccourci_test({X() + BivariatePoly::constant(Rational(1)), Y()}),
                  engine_error);
}

TEST_CASE("elliptic trichotomy on the worked families") {
  AnalyticityVerdict conformal = elliptic_analyticity(elliptic("4+2", kOne2));
  CHECK(conformal.status == AnalyticStatus::Analytic);
  CHECK(conformal.conjugacy == ConjugacyClass::Conformal);

  AnalyticityVerdict projective = elliptic_analyticity(elliptic("6+2", kOne2));
  CHECK(projective.status == AnalyticStatus::Analytic);
  CHECK(projective.conjugacy == ConjugacyClass::Projective);

  AnalyticityVerdict ck = elliptic_analyticity(elliptic("8+2", kOne2));
  CHECK(ck.status == AnalyticStatus::FinitelyDifferentiable);
  CHECK(ck.ck == 1);
  CHECK(ck.conjugacy == ConjugacyClass::NotApplicable);

  AnalyticityVerdict lone = elliptic_analyticity(elliptic("2", kOne1));
  CHECK(lone.status == AnalyticStatus::Analytic);
  CHECK(lone.conjugacy == ConjugacyClass::Projective);

  CHECK_THROWS_AS(elliptic_analyticity(parabolic("2", kOne1)), wrong_class_error);
}

TEST_CASE("elliptic trichotomy is total and exclusive") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int a = testkit::rand_int(rng, 1, 6), b = testkit::rand_int(rng, 1, 6);
    if (a == b) continue;
    RepDecomposition rep = decompose({2 * std::max(a, b), 2 * std::min(a, b)});
    AnalyticityVerdict v = elliptic_analyticity(
        make_elliptic(rep, kOne2, InteriorPoint{Rational(0), Rational(1)}));
    int conds = 0;
    if (v.status == AnalyticStatus::Analytic && v.conjugacy == ConjugacyClass::Projective) ++conds;
    if (v.status == AnalyticStatus::Analytic && v.conjugacy == ConjugacyClass::Conformal) ++conds;
    if (v.status == AnalyticStatus::FinitelyDifferentiable) ++conds;
    CHECK(conds == 1);
  }
}

TEST_CASE("hyperbolic verdicts") {
  AnalyticityVerdict moebius = hyperbolic_analyticity(hyperbolic("2", kOne1, {1}));
  CHECK(moebius.status == AnalyticStatus::Analytic);
  CHECK(moebius.conjugacy == ConjugacyClass::ProjectivePlane);

  AnalyticityVerdict product = hyperbolic_analyticity(hyperbolic("4+2", kOne2, {2, 1}));
  CHECK(product.status == AnalyticStatus::Analytic);
  CHECK(product.conjugacy == ConjugacyClass::ProductRP1xRP1);

  // the standard product realization on rho_2 + rho_0
  AnalyticityVerdict segre = hyperbolic_analyticity(hyperbolic("2+0", kOne2, {1, 0}));
  CHECK(segre.status == AnalyticStatus::Analytic);
  CHECK(segre.conjugacy == ConjugacyClass::ProductRP1xRP1);

  // a single-interval cylinder has no alpha gap 1: its closure torus is
  // singular along the border circle, confirmed by the criterion on the
  // closure coordinates
  FactoredElement irr_cyl = hyperbolic("3", kOne1, {1});
  AnalyticityVerdict cyl = hyperbolic_analyticity(irr_cyl);
  CHECK(cyl.status == AnalyticStatus::NotSmooth);
  RaccourciResult oracle = raccourci_test(hyperbolic_local_coordinates(irr_cyl));
  CHECK(oracle.verdict == SmoothnessVerdict::Singular);

  // delta = 0 cylinder with gap 3: also singular
  FactoredElement odd_gap = hyperbolic("8+2", kOne2, {4, 1});
  CHECK(hyperbolic_analyticity(odd_gap).status == AnalyticStatus::NotSmooth);
  CHECK(raccourci_test(hyperbolic_local_coordinates(odd_gap)).verdict ==
        SmoothnessVerdict::Singular);

  // analytic cases show no obstruction in the same coordinates
  CHECK(raccourci_test(hyperbolic_local_coordinates(hyperbolic("4+2", kOne2, {2, 1}))).verdict ==
        SmoothnessVerdict::NoObstruction);

  CHECK_THROWS_AS(hyperbolic_analyticity(parabolic("2", kOne1)), wrong_class_error);
}

TEST_CASE("parabolic divisibility ladder") {
  AnalyticityVerdict plane = parabolic_analyticity(parabolic("2+1+0", kOne3));
  CHECK(plane.status == AnalyticStatus::Analytic);
  CHECK(plane.conjugacy == ConjugacyClass::ParabolicFamily);
  CHECK(plane.m == 1);
  CHECK(plane.family_topology == ClosureTopology::ProjectivePlane);

  AnalyticityVerdict cylinder = parabolic_analyticity(parabolic("4+2", kOne2));
  CHECK(cylinder.status == AnalyticStatus::Analytic);
  CHECK(cylinder.m == 2);
  CHECK(cylinder.family_topology == ClosureTopology::ClosedCylinder);

  AnalyticityVerdict bad = parabolic_analyticity(parabolic("6+3+2", kOne3));
  CHECK(bad.status == AnalyticStatus::NotSmooth);
  CHECK(bad.witness.find("differs from m") != std::string::npos);

  AnalyticityVerdict klein = parabolic_analyticity(parabolic("5+2", kOne2));
  CHECK(klein.status == AnalyticStatus::Analytic);
  CHECK(klein.m == 3);
  CHECK(klein.family_topology == ClosureTopology::KleinBottle);

  // the violated ladder shows up as a cusp in the upper-border coordinates
  CHECK(raccourci_test(parabolic_local_coordinates(parabolic("6+3+2", kOne3), false)).verdict ==
        SmoothnessVerdict::Singular);
  CHECK(raccourci_test(parabolic_local_coordinates(parabolic("4+2", kOne2), true)).verdict ==
        SmoothnessVerdict::NoObstruction);
  CHECK(raccourci_test(parabolic_local_coordinates(parabolic("4+2", kOne2), false)).verdict ==
        SmoothnessVerdict::NoObstruction);

  // condition (a): n_q- = 0 demands n_q2- = 1
  AnalyticityVerdict vertex = parabolic_analyticity(parabolic("4+2+0", kOne3));
  CHECK(vertex.status == AnalyticStatus::NotSmooth);
  CHECK(vertex.witness.find("n_q2-") != std::string::npos);

  CHECK_THROWS_AS(parabolic_analyticity(parabolic("2", kOne1)), wrong_class_error);
}

TEST_CASE("torus gluing: even ladder gives two orbits") {
  GluingDescriptor g = torus_gluing(parabolic("5+3+1", kOne3));
  CHECK(g.m == 2);
  CHECK(g.k_top == 2);
  CHECK(g.k_values == std::map<int, int>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(g.assembled_surface == AssembledSurface::Torus2Orbits);
  REQUIRE(g.partner_orbits.size() == 2);
  CHECK(g.partner_orbits[1].blocks[0].u == 1);
  CHECK(g.partner_orbits[1].blocks[1].u == -1);
  CHECK(g.partner_orbits[1].blocks[2].u == 1);
  CHECK(g.distinct_projective_orbits == 2);
  CHECK_FALSE(projectively_equal(g.partner_orbits[0], g.partner_orbits[1]));
}

TEST_CASE("torus gluing: odd ladder labels four rays, two projective classes") {
  GluingDescriptor g = torus_gluing(parabolic("4+2", kOne2));
  CHECK(g.m == 2);
  CHECK(g.k_top == 1);
  CHECK(g.assembled_surface == AssembledSurface::Torus4Orbits);
  REQUIRE(g.partner_orbits.size() == 4);
  auto sign_pattern = [](const FactoredElement& e) {
    std::vector<int> s;
    for (const FactoredBlock& b : e.blocks) s.push_back(b.u > 0 ? 1 : (b.u < 0 ? -1 : 0));
    return s;
  };
  std::vector<std::vector<int>> patterns;
  for (const FactoredElement& p : g.partner_orbits) patterns.push_back(sign_pattern(p));
  CHECK(patterns[0] == std::vector<int>{1, 1});
  CHECK(patterns[1] == std::vector<int>{-1, 1});
  CHECK(patterns[2] == std::vector<int>{1, -1});
  CHECK(patterns[3] == std::vector<int>{-1, -1});
  for (size_t i = 0; i < patterns.size(); ++i)
    for (size_t j = i + 1; j < patterns.size(); ++j) CHECK(patterns[i] != patterns[j]);
  // under [v] = [-v] the four ray labels collapse to two open orbits
  CHECK(g.distinct_projective_orbits == 2);

  // gluing needs the closed-cylinder topology
  CHECK_THROWS_AS(torus_gluing(parabolic("5+2", kOne2)), wrong_class_error);
  CHECK_THROWS_AS(torus_gluing(parabolic("6+3+2", kOne3)), wrong_class_error);
}

TEST_CASE("gluing partners share the classification and m") {
  for (const char* rep : {"5+3+1", "4+2", "3+1", "6+4+2"}) {
    GluingDescriptor g = torus_gluing(
        parabolic(rep, std::vector<Rational>(parse_rep(rep).block_count(), Rational(1))));
    OrbitDescriptor base = classify_point(g.partner_orbits[0]);
    for (const FactoredElement& p : g.partner_orbits) {
      CHECK(classify_point(p) == base);
      AnalyticityVerdict v = parabolic_analyticity(p);
      CHECK(v.status == AnalyticStatus::Analytic);
      CHECK(v.m == g.m);
    }
    for (const auto& [q, kq] : g.k_values) CHECK(kq >= 0);
  }
}

TEST_CASE("elliptic closure coordinates reproduce the C^k obstruction") {
  // gaps {0, 3}: the smallest odd gap is 3, so y^3 shows up as a coordinate
  // escaping R[x, y^2]
  FactoredElement x = elliptic("8+2", kOne2);
  RaccourciResult r = raccourci_test(elliptic_local_coordinates(x));
  CHECK(r.verdict == SmoothnessVerdict::Singular);

  // conformal and projective families pass the criterion
  CHECK(raccourci_test(elliptic_local_coordinates(elliptic("4+2", kOne2))).verdict ==
        SmoothnessVerdict::NoObstruction);
  CHECK(raccourci_test(elliptic_local_coordinates(elliptic("6+2", kOne2))).verdict ==
        SmoothnessVerdict::NoObstruction);
}

TEST_CASE("degree mismatch means an empty generating set") {
  auto X = BivariatePoly::x;
  auto Y = BivariatePoly::y;
  CHECK_FALSE(ring_membership(X(), X() * X(), Y() * Y()));
  CHECK(ring_membership(BivariatePoly{}, X() * X(), Y() * Y()));
}
