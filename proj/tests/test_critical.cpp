#include <doctest.h>

#include "grassdist/critical.hpp"
#include "grassdist/formulas.hpp"
#include "grassdist/numeric.hpp"

using namespace grassdist;

TEST_CASE("objective traces") {
  Ring r = plucker_ring(4, FieldTag::rationals());
  SUBCASE("Q = Id gives num = den") {
    IntMatrix id(4, std::vector<long long>(4, 0));
    for (int i = 0; i < 4; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    auto [num, den] = objective_traces<Rational>(r, 4, id);
    CHECK(num == den);
  }
  SUBCASE("Q = diag(1,0,0,0) fixture") {
    IntMatrix q(4, std::vector<long long>(4, 0));
    q[0][0] = 1;
    auto [num, den] = objective_traces<Rational>(r, 4, q);
    CHECK(num == parse_q("-x12^2 - x13^2 - x14^2", r));
    CHECK(den == parse_q("-2*x12^2 - 2*x13^2 - 2*x14^2 - 2*x23^2 - 2*x24^2 - 2*x34^2", r));
  }
  SUBCASE("gradient identity: d trace(X^2 Q)/d x_ij = -2 (XQ+QX)_ij") {
    DataPoint d = make_generic_symmetric(4, 3);
    auto [num, den] = objective_traces<Rational>(r, 4, d.Q);
    (void)den;
    auto grad = gradient_row<Rational>(r, 4, d.Q);
    int idx = 0;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        CHECK(num.derivative(plucker_index(4, i, j)) ==
              grad[static_cast<std::size_t>(idx)].mul_scalar(Rational(-2)));
        ++idx;
      }
  }
}

TEST_CASE("augmented jacobian shapes and ranks") {
  ModelSpec chow = chow_twisted_cubic_implicit();
  DataPoint d = make_generic_symmetric(4, 5);
  Ring rp = with_field(chow.implicit->ring, FieldTag::prime(32003));
  std::vector<PolyP> gens;
  for (const auto& g : chow.implicit->gens) gens.push_back(reduce_mod(g, rp));
  IdealP mod(rp, gens);
  PolyMatP J = augmented_jacobian(mod, 4, d.Q);
  CHECK(J.rows() == 4);  // gradient row, x row, Pfaffian row, Chow-form row
  CHECK(J.cols() == 6);

  // full Grassmannian: 3 rows
  ModelSpec gr = grassmannian_model(4);
  IdealP grmod(rp, {reduce_mod(gr.implicit->gens[0], rp)});
  PolyMatP J2 = augmented_jacobian(grmod, 4, d.Q);
  CHECK(J2.rows() == 3);
}

TEST_CASE("rational function critical counts match the closed form") {
  struct Case { int d, e, s; };
  Case cases[] = {{2, 1, 1}, {3, 2, 1}, {2, 2, 1}, {3, 3, 2}, {2, 1, 2}};
  for (const auto& c : cases) {
    long long expected = rational_critical_count(c.d, c.e, c.s).value;
    long long got1 = rational_function_critical_count(c.d, c.e, c.s, 1, 32003);
    long long got2 = rational_function_critical_count(c.d, c.e, c.s, 2, 65537);
    CHECK(got1 == expected);
    CHECK(got2 == expected);
  }
}

TEST_CASE("full Grassmannian ED degree: ambient, parametric, eigen oracle") {
  ModelSpec gr = grassmannian_model(4);
  CountConfig cfg;
  cfg.seeds = {1, 2};
  cfg.primes = {32003, 65537};

  SUBCASE("parametric route") {
    DegreeReport rep = compute_degree(gr, DegreeKind::ED, cfg);
    REQUIRE(rep.value.has_value());
    CHECK(*rep.value == 6);
    CHECK(rep.stable);
  }
  SUBCASE("ambient route agrees") {
    CountConfig amb = cfg;
    amb.prefer_parametric = false;
    DegreeReport rep = compute_degree(gr, DegreeKind::ED, amb);
    REQUIRE(rep.value.has_value());
    CHECK(*rep.value == 6);
  }
  SUBCASE("eigen-decomposition oracle: C(4,2) invariant planes") {
    Eigen::MatrixXd Q(4, 4);
    Q << 4, 1, 0, 0, 1, 3, 0, 1, 0, 0, 2, 0, 0, 1, 0, 1;
    auto planes = invariant_plane_critical_points(Q);
    CHECK(planes.size() == 6);
  }
}

TEST_CASE("Chow threefold of the twisted cubic: ED 42") {
  ModelSpec chow = chow_twisted_cubic_implicit();
  CountConfig cfg;
  cfg.seeds = {1};
  cfg.primes = {32003};
  DegreeReport rep = compute_degree(chow, DegreeKind::ED, cfg);
  REQUIRE(rep.cells.size() == 1);
  if (!rep.cells[0].count) FAIL(rep.cells[0].error);
  CHECK(*rep.value == 42);
}

TEST_CASE("tangent curves: counts match the closed form") {
  CountConfig cfg;
  cfg.seeds = {1};
  cfg.primes = {32003};
  SUBCASE("(1,2,3) -> 14") {
    DegreeReport rep = compute_degree(toric_model(ToricKind::Tangent, {1, 2, 3}), DegreeKind::ED, cfg);
    REQUIRE(rep.value.has_value());
    CHECK(*rep.value == 14);
  }
  SUBCASE("(1,3,4) -> 18 (ramified at t = 0, correction case)") {
    DegreeReport rep = compute_degree(toric_model(ToricKind::Tangent, {1, 3, 4}), DegreeKind::ED, cfg);
    REQUIRE(rep.value.has_value());
    CHECK(*rep.value == 18);
  }
}

TEST_CASE("extraneous locus dimensions") {
  GroebnerBudget b;
  CHECK(extraneous_dimension(4, 1, 32003, b) == 2);
  CHECK(extraneous_dimension(5, 1, 32003, b) == 3);
}

TEST_CASE("is_ed_general") {
  SUBCASE("generic CI curve and surface are ED-general") {
    CHECK(is_ed_general(generic_ci_model(4, {1, 1, 1}, 7), 32003, 1).ed_general);
    CHECK(is_ed_general(generic_ci_model(4, {1, 1}, 7), 32003, 1).ed_general);
  }
  SUBCASE("threefolds are never ED-general") {
    CHECK_FALSE(is_ed_general(generic_ci_model(4, {2}, 7), 32003, 1).ed_general);
    CHECK_FALSE(is_ed_general(chow_twisted_cubic_implicit(), 32003, 1).ed_general);
  }
  SUBCASE("tangent curve with even u3 = u1+u2 fails") {
    CHECK_FALSE(is_ed_general(toric_model(ToricKind::Tangent, {1, 3, 4}), 32003, 1).ed_general);
    CHECK(is_ed_general(toric_model(ToricKind::Tangent, {1, 2, 3}), 32003, 1).ed_general);
  }
}
