#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sl2surf/numeric.hpp"
#include "test_support.hpp"

using namespace sl2surf;

namespace {

const std::vector<Rational> kOne1{Rational(1)};
const std::vector<Rational> kOne2{Rational(1), Rational(1)};
const std::vector<Rational> kOne3{Rational(1), Rational(1), Rational(1)};

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

TEST_CASE("embed: chart and coordinates") {
  FactoredElement y2 = parabolic("2", kOne1);
  ChartPoint p = embed(y2);
  CHECK(p.chart == 0);  // the Y^2 coefficient leads
  REQUIRE(p.coords.size() == 2);
  CHECK(p.coords[0] == 0.0);
  CHECK(p.coords[1] == 0.0);

  ChartPoint disk = embed(elliptic("2", kOne1));
  REQUIRE(disk.coords.size() == 2);
  // two unit entries (Y^2 and X^2), zero in between
  CHECK(std::abs(disk.coords[0]) < 1e-15);
  CHECK(std::abs(disk.coords[1] - 1.0) < 1e-15);
}

TEST_CASE("embed commutes with the two action paths to 1e-12") {
  std::mt19937_64 rng(77);
  std::vector<RepDecomposition> reps = {decompose({2}), decompose({4, 2}), decompose({3, 3, 1}),
                                        decompose({5, 2}), decompose({2, 1, 0})};
  for (int trial = 0; trial < 1000; ++trial) {
    FactoredElement x = testkit::rand_element(rng, reps[trial % reps.size()], true);
    GroupElement A = testkit::rand_group_element(rng);
    // exact-structure path
    ChartPoint via_factored = embed(act_factored(A, x));
    // coefficient path
    std::vector<HomogeneousForm> forms;
    for (const HomogeneousForm& f : expand_element(x)) forms.push_back(act_form(A, f));
    std::vector<double> concat;
    for (const HomogeneousForm& f : forms)
      for (const Rational& c : f.coeffs) concat.push_back(to_double(c));
    CHECK(chart_distance(via_factored, embed_vector(concat)) < 1e-12);
  }
}

TEST_CASE("declare_rank gap policy") {
  RankReport r2 = declare_rank({5.0, 1.0, 3e-13});
  CHECK(r2.declared_rank == 2);
  CHECK(r2.gap_ratio >= 1e6);

  RankReport r3 = declare_rank({5.0, 1.0, 0.2});
  CHECK(r3.declared_rank == 3);

  RankReport r0 = declare_rank({1e-13, 5e-14, 1e-14});
  CHECK(r0.declared_rank == 0);

  CHECK_THROWS_AS(declare_rank({1.0, 1e-4, 1e-8}), indeterminate_rank_error);
}

TEST_CASE("orbit ranks match the symbolic dimensions") {
  GroupElementF id = GroupElementF::identity();
  CHECK(orbit_map_rank(parabolic("2", kOne1), id, 1e-5).declared_rank == 1);
  CHECK(orbit_map_rank(elliptic("2", kOne1), id, 1e-5).declared_rank == 2);
  CHECK(orbit_map_rank(hyperbolic("2", kOne1, {1}), id, 1e-5).declared_rank == 2);
  // generic element of rho_4 + rho_2 with k + 2l > 2
  FactoredElement big = parse_factored_element(
      "u=1 ; boundary: (0/1)^1, (1/1)^1 ; interior: (0,1)^1\nu=1 ; boundary: (0/1)^2",
      parse_rep("4+2"));
  CHECK(orbit_map_rank(big, id, 1e-5).declared_rank == 3);
  // fixed point
  FactoredElement fixed = parse_factored_element("u=0\nu=1", parse_rep("2+0"));
  CHECK(orbit_map_rank(fixed, id, 1e-5).declared_rank == 0);

  CHECK_THROWS_AS(orbit_map_rank(parabolic("2", kOne1), id, 1e-2), engine_error);
}

TEST_CASE("rank is stable away from the base point") {
  GroupElementF at = GroupElementF::exp_k(0.7) * GroupElementF::exp_h(0.3);
  RankReport r = orbit_map_rank(parabolic("4+2", kOne2), at, 1e-5);
  CHECK(r.declared_rank == 2);
  CHECK(r.gap_ratio >= 1e6);
}

TEST_CASE("sample_orbit determinism and the discriminant invariant") {
  FactoredElement disk = elliptic("2", kOne1);
  std::vector<ChartPoint> one = sample_orbit(disk, 200, 42);
  std::vector<ChartPoint> two = sample_orbit(disk, 200, 42);
  REQUIRE(one.size() == 200);
  CHECK(chart_distance(one[0], embed(disk)) < 1e-15);
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].chart == two[i].chart);
    for (size_t j = 0; j < one[i].coords.size(); ++j)
      CHECK(one[i].coords[j] == two[i].coords[j]);
  }
  // the disk orbit stays inside the discriminant-negative region
  for (const ChartPoint& p : one) {
    std::vector<double> v = full_vector(p);  // (c, b, a) for a X^2 + b XY + c Y^2
    double disc = v[1] * v[1] - 4 * v[2] * v[0];
    CHECK(disc < 0);
  }
}

TEST_CASE("distinct orbits of one closure do not intersect") {
  FactoredElement x = parabolic("4+2", kOne2);
  FactoredElement partner = parabolic("4+2", {Rational(-1), Rational(1)});
  std::vector<ChartPoint> a = sample_orbit(x, 150, 7);
  std::vector<ChartPoint> b = sample_orbit(partner, 150, 8);
  double closest = 1e300;
  for (const ChartPoint& p : a)
    for (const ChartPoint& q : b) closest = std::min(closest, chart_distance(p, q));
  CHECK(closest > 1e-9);
}

TEST_CASE("verify_closure on the three closure families") {
  FactoredElement disk = elliptic("2", kOne1);
  CHECK(verify_closure(disk, closure_of(disk), 12, 3).ok);

  FactoredElement disk42 = elliptic("4+2", kOne2);
  CHECK(verify_closure(disk42, closure_of(disk42), 12, 3).ok);

  FactoredElement cyl = parabolic("4+2", kOne2);
  CHECK(verify_closure(cyl, closure_of(cyl), 12, 4).ok);

  FactoredElement klein = parabolic("5+2", kOne2);
  CHECK(verify_closure(klein, closure_of(klein), 12, 4).ok);

  FactoredElement plane = parabolic("2+1+0", kOne3);
  CHECK(verify_closure(plane, closure_of(plane), 12, 4).ok);

  FactoredElement moebius = hyperbolic("2", kOne1, {1});
  CHECK(verify_closure(moebius, closure_of(moebius), 12, 5).ok);

  FactoredElement torus = hyperbolic("4+2", kOne2, {2, 1});
  CHECK(verify_closure(torus, closure_of(torus), 12, 5).ok);

  // a wrong border claim is caught
  ClosureDescriptor wrong = closure_of(cyl);
  wrong.border_orbits[0] = parabolic("4+2", {Rational(1), Rational(0)});
  std::swap(wrong.border_orbits[0], wrong.border_orbits[1]);
  CHECK_FALSE(verify_closure(cyl, wrong, 12, 4).ok);
}

TEST_CASE("verify_closure accepts off-canonical positions") {
  std::mt19937_64 rng(15);
  GroupElement A = testkit::rand_group_element(rng);
  FactoredElement moved = act_factored(A, parabolic("4+2", kOne2));
  CHECK(verify_closure(moved, closure_of(moved), 10, 6).ok);

  FactoredElement moved_h = act_factored(A, hyperbolic("4+2", kOne2, {2, 1}));
  CHECK(verify_closure(moved_h, closure_of(moved_h), 10, 6).ok);

  FactoredElement moved_e = act_factored(A, elliptic("6+2", kOne2));
  CHECK(verify_closure(moved_e, closure_of(moved_e), 10, 6).ok);
}

TEST_CASE("boundary eigenvalues follow a^2 and a^-m") {
  // families with n_low > 0 for m = 1, 2, 3
  std::vector<std::pair<std::string, int>> families{{"3+2", 1}, {"4+2", 2}, {"5+2", 3}};
  for (const auto& [rep, m] : families) {
    FactoredElement x = parabolic(rep, kOne2);
    for (double a : {0.5, 2.0, 3.0}) {
      auto [lo, hi] = boundary_eigenvalues(x, a, 1e-5);
      double expect_s = std::pow(a, -m);
      double expect_t = a * a;
      double e1 = std::min(std::abs(expect_s), std::abs(expect_t));
      double e2 = std::max(std::abs(expect_s), std::abs(expect_t));
      CHECK(std::abs(std::abs(lo) - e1) <= 1e-6 * e1);
      CHECK(std::abs(std::abs(hi) - e2) <= 1e-6 * e2);
    }
  }
  // the center acts trivially: a = 1 gives the identity differential
  auto [ilo, ihi] = boundary_eigenvalues(parabolic("4+2", kOne2), 1.0, 1e-5);
  CHECK(std::abs(ilo - 1.0) < 1e-9);
  CHECK(std::abs(ihi - 1.0) < 1e-9);
  CHECK_THROWS_AS(boundary_eigenvalues(parabolic("4+2", kOne2), 0.0, 1e-5), engine_error);
  // the vertex family (m = 1, n_low = 0) has the (a^-1, a) pair
  auto [vlo, vhi] = boundary_eigenvalues(parabolic("2+1+0", kOne3), 2.0, 1e-5);
  CHECK(std::abs(vlo - 0.5) < 1e-6);
  CHECK(std::abs(vhi - 2.0) < 1e-6);
}

TEST_CASE("eigenvalue pairs separate different m") {
  for (double a : {0.5, 2.0, 3.0}) {
    auto p2 = boundary_eigenvalues(parabolic("4+2", kOne2), a, 1e-5);
    auto p3 = boundary_eigenvalues(parabolic("5+2", kOne2), a, 1e-5);
    bool same = std::abs(p2.first - p3.first) < 1e-9 && std::abs(p2.second - p3.second) < 1e-9;
    CHECK_FALSE(same);
  }
}

TEST_CASE("tangency separates the conformal and projective models") {
  TangencyReport conformal = tangency_test(DiskModel::Conformal, 5);
  CHECK(conformal.max_angle < 1e-9);

  TangencyReport projective = tangency_test(DiskModel::Projective, 5);
  CHECK(projective.min_angle > 0.1);

  // inscribed-angle law: chords to endpoints arc apart meet at half the arc;
  // the 2-sample grid puts the endpoints at 60 and 120 degrees
  TangencyReport two = tangency_test(DiskModel::Projective, 2);
  CHECK(std::abs(two.min_angle - M_PI / 6) < 1e-12);

  TangencyReport single = tangency_test(DiskModel::Projective, 1);
  CHECK(single.degenerate);
  CHECK(single.max_angle == 0.0);
}

TEST_CASE("embedding rank 2 for the analytic elliptic families") {
  EmbeddingRankCheck proj = elliptic_embedding_rank(elliptic("6+2", kOne2),
                                                    ConjugacyClass::Projective, 100);
  CHECK(proj.all_rank2);
  CHECK(proj.boundary_points >= 10);
  CHECK(proj.points_checked >= 100);
  CHECK(proj.min_gap_ratio >= 1e6);

  EmbeddingRankCheck conf = elliptic_embedding_rank(elliptic("4+2", kOne2),
                                                    ConjugacyClass::Conformal, 100);
  CHECK(conf.all_rank2);
  CHECK(conf.min_gap_ratio >= 1e6);

  EmbeddingRankCheck lone = elliptic_embedding_rank(elliptic("2", kOne1),
                                                    ConjugacyClass::Projective, 100);
  CHECK(lone.all_rank2);
}

TEST_CASE("singularity probe agrees with the symbolic criterion") {
  auto X = BivariatePoly::x;
  auto Y = BivariatePoly::y;

  SingularityProbe smooth = singularity_probe({X(), Y()});
  CHECK_FALSE(smooth.singular);
  CHECK(smooth.jacobian_rank == 2);

  SingularityProbe cusp = singularity_probe({X(), Y().pow(2), Y().pow(3)});
  CHECK(cusp.singular);
  CHECK(cusp.flatness_slope < 1.75);

  SingularityProbe sheet = singularity_probe({X(), Y().pow(2), X() * Y().pow(2) + Y().pow(4)});
  CHECK_FALSE(sheet.singular);
  CHECK(sheet.flatness_slope > 1.75);
}

TEST_CASE("sample_orbit argument validation") {
  FactoredElement x = parabolic("2", kOne1);
  CHECK_THROWS_AS(sample_orbit(x, 0, 1), engine_error);
}
