#include <doctest.h>

#include "grassdist/groebner.hpp"
#include "grassdist/poly.hpp"
#include "grassdist/polymatrix.hpp"

using namespace grassdist;

namespace {

Ring xy_ring_q() { return make_ring({"x", "y"}, FieldTag::rationals()); }

PolyQ rnd_poly(const Ring& r, Rng& rng, int deg, int terms) {
  std::vector<PolyQ::Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int budget = deg;
    for (int i = 0; i < r->nvars(); ++i) {
      int e = static_cast<int>(rng.int_in(0, budget));
      m.e[i] = static_cast<std::uint16_t>(e);
      m.deg += static_cast<std::uint32_t>(e);
      budget -= e;
    }
    ts.push_back({m, Rational(static_cast<long>(rng.int_in(-9, 9)))});
  }
  return PolyQ::from_terms(r, std::move(ts));
}

}  // namespace

TEST_CASE("parse round trip and examples") {
  Ring r6 = plucker_ring(4, FieldTag::rationals());
  PolyQ f = parse_q("x12*x34 - x13*x24 + x14*x23", r6);
  CHECK(f.term_count() == 3);
  CHECK(f.total_degree() == 2);
  CHECK(parse_q(f.to_string(), r6) == f);

  PolyQ z = parse_q("0", r6);
  CHECK(z.is_zero());
  CHECK(z.to_string() == "0");

  Ring rp = plucker_ring(4, FieldTag::prime(32003));
  PolyP g = parse_p("x12^2", rp);
  CHECK(g.term_count() == 1);
  CHECK(g.lt().c == 1);

  CHECK_THROWS(parse_q("x12 + nope", r6));
  CHECK_THROWS(parse_q("x12 +", r6));
  // coefficient not reducible mod p
  Ring tiny = make_ring({"x"}, FieldTag::prime(32003));
  CHECK_THROWS(parse_p("1/32003 * x", tiny));
}

TEST_CASE("pfaffian4 matches Eq examples") {
  Ring r = plucker_ring(4, FieldTag::rationals());
  PolyQ pf = pfaffian4<Rational>(r, 4, 1, 2, 3, 4);
  CHECK(pf == parse_q("x12*x34 - x13*x24 + x14*x23", r));
  CHECK_THROWS(pfaffian4<Rational>(r, 4, 1, 2, 4, 3));

  Ring r5 = plucker_ring(5, FieldTag::rationals());
  PolyQ pf5 = pfaffian4<Rational>(r5, 5, 1, 2, 3, 5);
  CHECK(pf5 == parse_q("x12*x35 - x13*x25 + x15*x23", r5));

  // rank-2 point x12=1 rest 0 kills every Pfaffian
  std::vector<Rational> pt(static_cast<std::size_t>(r->nvars()), Rational(0));
  pt[0] = 1;
  CHECK(pf.eval(pt) == 0);

  // Pfaffian squared equals the 4x4 determinant of the skew matrix
  PolyMatQ X = plucker_matrix<Rational>(r, 4);
  CHECK(pf * pf == determinant(X));
}

TEST_CASE("ring axioms and Leibniz on random polynomials") {
  Ring r = xy_ring_q();
  Rng rng(42);
  for (int it = 0; it < 30; ++it) {
    PolyQ f = rnd_poly(r, rng, 4, 5), g = rnd_poly(r, rng, 4, 5), h = rnd_poly(r, rng, 3, 4);
    CHECK((f + g) * h == f * h + g * h);
    for (int v = 0; v < 2; ++v) {
      CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
      CHECK((f + g).derivative(v) == f.derivative(v) + g.derivative(v));
    }
    // mixed partials commute
    CHECK(f.derivative(0).derivative(1) == f.derivative(1).derivative(0));
  }
}

TEST_CASE("mod-p reduction commutes with arithmetic") {
  Ring rq = xy_ring_q();
  Ring rp = with_field(rq, FieldTag::prime(65537));
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    PolyQ f = rnd_poly(rq, rng, 3, 4), g = rnd_poly(rq, rng, 3, 4);
    CHECK(reduce_mod(f * g, rp) == reduce_mod(f, rp) * reduce_mod(g, rp));
    CHECK(reduce_mod(f + g, rp) == reduce_mod(f, rp) + reduce_mod(g, rp));
  }
}

TEST_CASE("minors and jacobian shapes") {
  Ring r = make_ring({"x", "y"}, FieldTag::rationals());
  PolyMatQ m(r, 2, 2);
  m.at(0, 0) = parse_q("x", r);
  m.at(1, 1) = parse_q("y", r);
  auto ms = minors(m, 2);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0] == parse_q("x*y", r));
  CHECK_THROWS(minors(m, 0));

  // jacobian of the Pfaffian: the paper's displayed row
  Ring r6 = plucker_ring(4, FieldTag::rationals());
  PolyQ pf = pfaffian4<Rational>(r6, 4, 1, 2, 3, 4);
  std::vector<int> vars{0, 1, 2, 3, 4, 5};
  PolyMatQ j = jacobian(std::vector<PolyQ>{pf}, vars);
  CHECK(j.at(0, 0) == parse_q("x34", r6));
  CHECK(j.at(0, 1) == parse_q("-x24", r6));
  CHECK(j.at(0, 2) == parse_q("x23", r6));
  CHECK(j.at(0, 3) == parse_q("x14", r6));
  CHECK(j.at(0, 4) == parse_q("-x13", r6));
  CHECK(j.at(0, 5) == parse_q("x12", r6));

  // constant polynomial gives the zero row
  PolyMatQ jz = jacobian(std::vector<PolyQ>{parse_q("7", r6)}, vars);
  for (int c = 0; c < 6; ++c) CHECK(jz.at(0, c).is_zero());

  // generic 3x3 determinant has 6 terms
  Ring r9 = make_ring({"a", "b", "c", "d", "e", "f", "g", "h", "i"}, FieldTag::rationals());
  PolyMatQ g3(r9, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int jj = 0; jj < 3; ++jj) g3.at(i, jj) = PolyQ::variable(r9, 3 * i + jj);
  auto d3 = minors(g3, 3);
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].term_count() == 6);
}

TEST_CASE("grevlex ordering is the textbook one") {
  Ring r = make_ring({"x", "y", "z"}, FieldTag::rationals());
  PolyQ f = parse_q("x^2*z + x*y^2", r);
  // grevlex: x*y^2 > x^2*z
  CHECK(f.lt().m == parse_q("x*y^2", r).lt().m);
  PolyQ g = parse_q("x + y + z + 1", r);
  CHECK(g.lt().m == parse_q("x", r).lt().m);
}
