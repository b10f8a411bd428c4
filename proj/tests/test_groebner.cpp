#include <doctest.h>

#include "grassdist/groebner.hpp"
#include "grassdist/polymatrix.hpp"

using namespace grassdist;

namespace {

template <class C>
Ideal<C> grassmann_ideal(int n, FieldTag f) {
  Ring r = plucker_ring(n, f);
  std::vector<Poly<C>> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) gens.push_back(pfaffian4<C>(r, n, i, j, k, l));
  return Ideal<C>(r, std::move(gens));
}

}  // namespace

TEST_CASE("reduced basis of simple monomial ideal") {
  Ring r = make_ring({"x", "y"}, FieldTag::rationals());
  IdealQ I(r, {parse_q("x^2", r), parse_q("x*y", r)});
  auto gb = groebner_basis(I, MonomialOrder::grevlex());
  REQUIRE(gb.size() == 2);
  CHECK(spair_criterion_holds(gb, MonomialOrder::grevlex()));
}

TEST_CASE("Gr(2,4) ideal is principal and its own basis") {
  auto I = grassmann_ideal<Rational>(4, FieldTag::rationals());
  auto gb = groebner_basis(I, MonomialOrder::grevlex());
  CHECK(gb.size() == 1);
  CHECK(gb[0].term_count() == 3);
}

TEST_CASE("Gr(2,5) ideal over F_p reduces to five quadrics") {
  auto I = grassmann_ideal<std::uint64_t>(5, FieldTag::prime(32003));
  auto gb = groebner_basis(I, MonomialOrder::grevlex());
  CHECK(gb.size() == 5);
  for (const auto& g : gb) CHECK(g.total_degree() == 2);
  CHECK(spair_criterion_holds(gb, MonomialOrder::grevlex()));
}

TEST_CASE("elimination implicitizes the parabola") {
  Ring r = make_ring({"t", "x", "y"}, FieldTag::rationals());
  IdealQ I(r, {parse_q("x - t", r), parse_q("y - t^2", r)});
  IdealQ E = eliminate(I, {0});
  REQUIRE(E.gens.size() == 1);
  CHECK(E.gens[0] == parse_q("x^2 - y", E.ring));
}

TEST_CASE("saturation examples") {
  Ring r = make_ring({"x", "y"}, FieldTag::rationals());
  SUBCASE("xy : y^inf = x") {
    IdealQ I(r, {parse_q("x*y", r)});
    IdealQ S = saturate(I, parse_q("y", r));
    REQUIRE(S.gens.size() == 1);
    CHECK(S.gens[0] == parse_q("x", r));
  }
  SUBCASE("<x^2, xy> : x^inf is the unit ideal (x^2 * 1 lies in I)") {
    IdealQ I(r, {parse_q("x^2", r), parse_q("x*y", r)});
    IdealQ S = saturate(I, parse_q("x", r));
    auto gb = groebner_basis(S, MonomialOrder::grevlex());
    REQUIRE(gb.size() == 1);
    CHECK(gb[0].is_constant());
    // cross-check by iterated colon: I : x = <x, y>, (I:x) : x = <1>
    IdealQ C1 = colon(I, parse_q("x", r));
    CHECK(ideal_equals(C1, IdealQ(r, {parse_q("x", r), parse_q("y", r)})));
    IdealQ C2 = colon(C1, parse_q("x", r));
    auto gb2 = groebner_basis(C2, MonomialOrder::grevlex());
    REQUIRE(gb2.size() == 1);
    CHECK(gb2[0].is_constant());
  }
  SUBCASE("saturation is idempotent on random small ideals") {
    Rng rng(3);
    for (int it = 0; it < 8; ++it) {
      std::vector<PolyQ> gens;
      for (int k = 0; k < 2; ++k) {
        PolyQ f = PolyQ::zero(r);
        for (int tdeg = 0; tdeg <= 2; ++tdeg)
          for (int a = 0; a + tdeg <= 2; ++a) {
            PolyQ mono = PolyQ::from_int(r, rng.int_in(-3, 3));
            for (int i = 0; i < a; ++i) mono = mono * parse_q("x", r);
            for (int i = 0; i < tdeg; ++i) mono = mono * parse_q("y", r);
            f = f + mono;
          }
        if (!f.is_zero()) gens.push_back(f);
      }
      if (gens.empty()) continue;
      IdealQ I(r, gens);
      PolyQ f = parse_q("x", r);
      IdealQ S1 = saturate(I, f);
      IdealQ S2 = saturate(S1, f);
      CHECK(ideal_equals(S1, S2));
      // result contains I
      auto gb = groebner_basis(S1, MonomialOrder::grevlex());
      for (const auto& g : I.gens) CHECK(in_ideal(g, gb, MonomialOrder::grevlex()));
    }
  }
}

TEST_CASE("dimension examples") {
  Ring r2 = make_ring({"x", "y"}, FieldTag::rationals());
  CHECK(ideal_dimension(IdealQ(r2, {parse_q("x", r2)})) == 1);

  auto I = grassmann_ideal<Rational>(4, FieldTag::rationals());
  CHECK(I.homogeneous);
  CHECK(ideal_dimension(I) == 5);  // affine cone; projective dim 4
}

TEST_CASE("degree examples") {
  auto I4 = grassmann_ideal<Rational>(4, FieldTag::rationals());
  CHECK(ideal_degree(I4) == 2);

  auto I5 = grassmann_ideal<std::uint64_t>(5, FieldTag::prime(32003));
  CHECK(ideal_degree(I5) == 5);  // degree of Gr(2,5) = Catalan(3) = 5

  auto I6 = grassmann_ideal<std::uint64_t>(6, FieldTag::prime(32003));
  CHECK(ideal_degree(I6) == 14);

  // point-count oracle on random linear slices of Gr(2,4): cut by dim-many
  // hyperplanes and count
  Rng rng(11);
  Ring r = I4.ring;
  Ring rp = with_field(r, FieldTag::prime(32003));
  std::vector<PolyP> gens;
  for (const auto& g : I4.gens) gens.push_back(reduce_mod(g, rp));
  for (int h = 0; h < 4; ++h) {  // projective dim of Gr(2,4) = 4
    PolyP ell = PolyP::zero(rp);
    for (int i = 0; i < 6; ++i)
      ell = ell + PolyP::variable(rp, i).mul_scalar(rng.residue(32003));
    gens.push_back(ell);
  }
  IdealP sliced(rp, gens);
  auto A = dehomogenize_random(sliced, rng);
  auto pc = count_points(A, rng);
  CHECK(pc.distinct == 2);
}

TEST_CASE("count_points basics") {
  Ring r = make_ring({"x", "y"}, FieldTag::rationals());
  IdealQ I(r, {parse_q("x^2 - 1", r), parse_q("y - x", r)});
  Rng rng(5);
  auto pc = count_points(I, rng);
  CHECK(pc.distinct == 2);
  CHECK(pc.with_multiplicity == 2);
  CHECK(pc.radical);

  // non-radical: double point
  IdealQ J(r, {parse_q("x^2", r), parse_q("y", r)});
  auto pc2 = count_points(J, rng);
  CHECK(pc2.with_multiplicity == 2);
  CHECK(pc2.distinct == 1);
  CHECK_FALSE(pc2.radical);

  // positive-dimensional input is rejected
  IdealQ K(r, {parse_q("x", r)});
  CHECK_THROWS_AS((void)count_points(K, rng), std::domain_error);
}

TEST_CASE("ideal_equals") {
  Ring r = make_ring({"x", "y"}, FieldTag::rationals());
  CHECK(ideal_equals(IdealQ(r, {parse_q("x", r), parse_q("y", r)}),
                     IdealQ(r, {parse_q("x + y", r), parse_q("x - y", r)})));
  CHECK_FALSE(ideal_equals(IdealQ(r, {parse_q("x", r)}), IdealQ(r, {parse_q("x^2", r)})));
}

TEST_CASE("degree invariant under random linear change of variables") {
  Rng rng(17);
  auto I = grassmann_ideal<std::uint64_t>(4, FieldTag::prime(65537));
  for (int rep = 0; rep < 3; ++rep) {
    // random invertible-ish substitution x_i -> sum c_ij x_j (retry on failure)
    std::vector<PolyP> images;
    for (int i = 0; i < 6; ++i) {
      PolyP f = PolyP::zero(I.ring);
      for (int j = 0; j < 6; ++j) {
        std::uint64_t c = (i == j) ? 1 + rng.residue(65536) : rng.residue(7);
        f = f + PolyP::variable(I.ring, j).mul_scalar(c);
      }
      images.push_back(f);
    }
    std::vector<PolyP> gens;
    for (const auto& g : I.gens) gens.push_back(g.compose(I.ring, images));
    IdealP J(I.ring, gens);
    CHECK(ideal_degree(J) == 2);
  }
}

TEST_CASE("radical membership via Rabinowitsch") {
  Ring r = make_ring({"x", "y"}, FieldTag::rationals());
  IdealQ I(r, {parse_q("x^2", r)});
  CHECK(in_radical(parse_q("x", r), I));
  CHECK_FALSE(in_radical(parse_q("y", r), I));
}

TEST_CASE("budget exhaustion raises instead of lying") {
  auto I = grassmann_ideal<std::uint64_t>(6, FieldTag::prime(32003));
  GroebnerBudget tiny;
  tiny.max_pair_reductions = 1;
  tiny.max_reduction_steps = 50;
  CHECK_THROWS_AS((void)groebner_basis(I, MonomialOrder::grevlex(), tiny), BudgetExceeded);
}
