#include "grassdist/models.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace grassdist {

SchubertIndex::SchubertIndex(int i_, int j_, int n_) : i(i_), j(j_), n(n_) {
  if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("SchubertIndex requires 1 <= i < j <= n");
}

std::vector<PolyQ> grassmannian_gens(const Ring& r, int n) {
  std::vector<PolyQ> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) gens.push_back(pfaffian4<Rational>(r, n, i, j, k, l));
  return gens;
}

IdealQ grassmannian_ideal(int n) {
  Ring r = plucker_ring(n, FieldTag::rationals());
  return IdealQ(r, grassmannian_gens(r, n));
}

namespace {

// Rows: e_i + sum_{k>i, k!=j} a_k e_k and e_j + sum_{k>j} b_k e_k. This is
// the standard birational chart of S_ij (of Gr(2,n) for i=1, j=2).
ParametricRep schubert_parametrization(const SchubertIndex& s) {
  std::vector<std::string> names;
  for (int k = s.i + 1; k <= s.n; ++k)
    if (k != s.j) names.push_back("t" + std::to_string(k));
  for (int k = s.j + 1; k <= s.n; ++k) names.push_back("s" + std::to_string(k));
  Ring pr = make_ring(names, FieldTag::rationals());
  ParametricRep rep;
  rep.params = pr;
  rep.rows = PolyMatQ(pr, 2, s.n);
  int idx = 0;
  rep.rows.at(0, s.i - 1) = PolyQ::from_int(pr, 1);
  for (int k = s.i + 1; k <= s.n; ++k) {
    if (k == s.j) continue;
    rep.rows.at(0, k - 1) = PolyQ::variable(pr, idx++);
  }
  rep.rows.at(1, s.j - 1) = PolyQ::from_int(pr, 1);
  for (int k = s.j + 1; k <= s.n; ++k) rep.rows.at(1, k - 1) = PolyQ::variable(pr, idx++);
  return rep;
}

}  // namespace

ModelSpec grassmannian_model(int n) {
  ModelSpec m;
  m.n = n;
  m.name = "grassmannian";
  m.implicit = grassmannian_ideal(n);
  m.parametric = schubert_parametrization(SchubertIndex(1, 2, n));
  m.dim = 2 * n - 4;
  return m;
}

IdealQ schubert_ideal(const SchubertIndex& s) {
  Ring r = plucker_ring(s.n, FieldTag::rationals());
  std::vector<PolyQ> gens = grassmannian_gens(r, s.n);
  for (int a = 1; a <= s.n; ++a)
    for (int b = a + 1; b <= s.n; ++b)
      if (a < s.i || b < s.j) gens.push_back(PolyQ::variable(r, plucker_index(s.n, a, b)));
  return IdealQ(r, std::move(gens));
}

ModelSpec schubert_model(const SchubertIndex& s) {
  ModelSpec m;
  m.n = s.n;
  m.name = "schubert:" + std::to_string(s.i) + "," + std::to_string(s.j);
  m.implicit = schubert_ideal(s);
  Ring r = m.implicit->ring;
  for (int a = 1; a <= s.n; ++a)
    for (int b = a + 1; b <= s.n; ++b)
      if (a < s.i || b < s.j) m.extra_gens.push_back(PolyQ::variable(r, plucker_index(s.n, a, b)));
  m.parametric = schubert_parametrization(s);
  m.dim = s.dim();
  return m;
}

IdealQ pgr_gens(int n) {
  Ring r = sym_ring(n, FieldTag::rationals());
  PolyMatQ P = sym_matrix<Rational>(r, n);
  PolyMatQ P2 = P * P;
  PolyQ tr = P.trace();
  std::vector<PolyQ> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      gens.push_back(P2.at(i, j).mul_scalar(Rational(2)) - tr * P.at(i, j));
  if (n >= 6)
    for (auto& f : minors(P, 3)) gens.push_back(std::move(f));
  return IdealQ(r, std::move(gens));
}

IdealQ schubert_squared_gens(const SchubertIndex& s) {
  int n = s.n;
  Ring r = sym_ring(n, FieldTag::rationals());
  PolyMatQ P = sym_matrix<Rational>(r, n);
  std::vector<PolyQ> gens;
  // Linear forms forced by squaring: rows below i vanish...
  for (int a = 1; a < s.i; ++a)
    for (int b = a; b <= n; ++b) gens.push_back(PolyQ::variable(r, sym_index(n, a, b)));
  // ...and for j = n the line contains e_n: off-diagonal n-column entries
  // vanish and the trace splits evenly.
  if (s.j == n) {
    for (int a = s.i; a < n; ++a) gens.push_back(PolyQ::variable(r, sym_index(n, a, n)));
    PolyQ split = -PolyQ::variable(r, sym_index(n, n, n));
    for (int a = s.i; a < n; ++a) split = split + PolyQ::variable(r, sym_index(n, a, a));
    gens.push_back(split);
  }
  // pGr quadrics
  PolyMatQ P2 = P * P;
  PolyQ tr = P.trace();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      gens.push_back(P2.at(i, j).mul_scalar(Rational(2)) - tr * P.at(i, j));
  // 3x3 minors of P (rank <= 2)
  for (auto& f : minors(P, 3)) gens.push_back(std::move(f));
  // 2x2 minors of the row pairs P_rs with r < i or s < j
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (!(a < s.i || b < s.j)) continue;
      PolyMatQ rows(r, 2, n);
      for (int c = 1; c <= n; ++c) {
        rows.at(0, c - 1) = PolyQ::variable(r, sym_index(n, a, c));
        rows.at(1, c - 1) = PolyQ::variable(r, sym_index(n, b, c));
      }
      for (auto& f : minors(rows, 2)) gens.push_back(std::move(f));
    }
  return IdealQ(r, std::move(gens));
}

std::string toric_kind_name(ToricKind k) {
  switch (k) {
    case ToricKind::Chow: return "chow";
    case ToricKind::Secant: return "secant";
    case ToricKind::Tangent: return "tangent";
  }
  return "?";
}

ModelSpec toric_model(ToricKind kind, std::array<int, 3> u) {
  auto [u1, u2, u3] = u;
  if (!(0 < u1 && u1 < u2 && u2 < u3)) throw std::invalid_argument("toric exponents must satisfy 0 < u1 < u2 < u3");
  if (std::gcd(std::gcd(u1, u2), u3) != 1) throw std::invalid_argument("toric exponents must be coprime");
  ModelSpec m;
  m.n = 4;
  m.name = toric_kind_name(kind) + "-toric:" + std::to_string(u1) + "," + std::to_string(u2) + "," +
           std::to_string(u3);
  ParametricRep rep;
  auto curve_row = [&](PolyMatQ& rows, const Ring& pr, int var) {
    rows.at(0, 0) = PolyQ::from_int(pr, 1);
    rows.at(0, 1) = PolyQ::variable(pr, var, static_cast<std::uint16_t>(u1));
    rows.at(0, 2) = PolyQ::variable(pr, var, static_cast<std::uint16_t>(u2));
    rows.at(0, 3) = PolyQ::variable(pr, var, static_cast<std::uint16_t>(u3));
  };
  switch (kind) {
    case ToricKind::Chow: {
      Ring pr = make_ring({"t1", "t2", "t3"}, FieldTag::rationals());
      rep.params = pr;
      rep.rows = PolyMatQ(pr, 2, 4);
      curve_row(rep.rows, pr, 0);
      rep.rows.at(1, 0) = PolyQ::zero(pr);
      rep.rows.at(1, 1) = PolyQ::from_int(pr, 1);
      rep.rows.at(1, 2) = PolyQ::variable(pr, 1);
      rep.rows.at(1, 3) = PolyQ::variable(pr, 2);
      m.dim = 3;
      break;
    }
    case ToricKind::Secant: {
      Ring pr = make_ring({"t1", "t2"}, FieldTag::rationals());
      rep.params = pr;
      rep.rows = PolyMatQ(pr, 2, 4);
      curve_row(rep.rows, pr, 0);
      rep.rows.at(1, 0) = PolyQ::from_int(pr, 1);
      rep.rows.at(1, 1) = PolyQ::variable(pr, 1, static_cast<std::uint16_t>(u1));
      rep.rows.at(1, 2) = PolyQ::variable(pr, 1, static_cast<std::uint16_t>(u2));
      rep.rows.at(1, 3) = PolyQ::variable(pr, 1, static_cast<std::uint16_t>(u3));
      rep.identifiable = false;  // swapping t1, t2 gives the same line
      rep.fiber_cardinality = 2;
      m.dim = 2;
      break;
    }
    case ToricKind::Tangent: {
      Ring pr = make_ring({"t1"}, FieldTag::rationals());
      rep.params = pr;
      rep.rows = PolyMatQ(pr, 2, 4);
      curve_row(rep.rows, pr, 0);
      rep.rows.at(1, 0) = PolyQ::zero(pr);
      rep.rows.at(1, 1) = PolyQ::variable(pr, 0, static_cast<std::uint16_t>(u1 - 1)).mul_scalar(Rational(u1));
      rep.rows.at(1, 2) = PolyQ::variable(pr, 0, static_cast<std::uint16_t>(u2 - 1)).mul_scalar(Rational(u2));
      rep.rows.at(1, 3) = PolyQ::variable(pr, 0, static_cast<std::uint16_t>(u3 - 1)).mul_scalar(Rational(u3));
      m.dim = 1;
      break;
    }
  }
  m.parametric = std::move(rep);
  return m;
}

PolyQ chow_form_twisted_cubic(const Ring& r) {
  auto v = [&](int i, int j) { return PolyQ::variable(r, plucker_index(4, i, j)); };
  PolyMatQ M(r, 3, 3);
  M.at(0, 0) = v(1, 2);
  M.at(0, 1) = v(1, 3);
  M.at(0, 2) = v(2, 3);
  M.at(1, 0) = v(1, 3);
  M.at(1, 1) = v(1, 4) + v(2, 3);
  M.at(1, 2) = v(2, 4);
  M.at(2, 0) = v(2, 3);
  M.at(2, 1) = v(2, 4);
  M.at(2, 2) = v(3, 4);
  return determinant(M);
}

ModelSpec chow_twisted_cubic_implicit() {
  ModelSpec m = toric_model(ToricKind::Chow, {1, 2, 3});
  m.name = "chow-twisted-cubic";
  Ring r = plucker_ring(4, FieldTag::rationals());
  PolyQ f = chow_form_twisted_cubic(r);
  std::vector<PolyQ> gens = grassmannian_gens(r, 4);
  gens.push_back(f);
  m.extra_gens = {f};
  m.implicit = IdealQ(r, std::move(gens));
  return m;
}

ModelSpec generic_ci_model(int n, const std::vector<int>& degrees, std::uint64_t seed) {
  if (n != 4) throw std::invalid_argument("generic_ci_model currently targets Gr(2,4)");
  if (degrees.empty() || degrees.size() > 3) throw std::invalid_argument("1 to 3 generic generators supported");
  Ring r = plucker_ring(n, FieldTag::rationals());
  Rng rng(seed);
  std::vector<PolyQ> extra;
  for (int d : degrees) {
    // dense in the Plucker monomial basis of degree d
    std::vector<PolyQ::Term> terms;
    std::vector<int> expo(static_cast<std::size_t>(r->nvars()), 0);
    std::function<void(int, int)> emit = [&](int var, int left) {
      if (var == r->nvars() - 1) {
        Monomial mo;
        for (int i = 0; i < r->nvars() - 1; ++i) mo.e[i] = static_cast<std::uint16_t>(expo[static_cast<std::size_t>(i)]);
        mo.e[r->nvars() - 1] = static_cast<std::uint16_t>(left);
        mo.deg = static_cast<std::uint32_t>(d);
        terms.push_back({mo, Rational(static_cast<long>(rng.int_in(-20, 20)))});
        return;
      }
      for (int e = 0; e <= left; ++e) {
        expo[static_cast<std::size_t>(var)] = e;
        emit(var + 1, left - e);
      }
      expo[static_cast<std::size_t>(var)] = 0;
    };
    emit(0, d);
    extra.push_back(PolyQ::from_terms(r, std::move(terms)));
  }
  ModelSpec m;
  m.n = n;
  m.name = "ci:";
  for (std::size_t k = 0; k < degrees.size(); ++k)
    m.name += (k ? "," : "") + std::to_string(degrees[static_cast<std::size_t>(k)]);
  m.extra_gens = extra;
  std::vector<PolyQ> gens = grassmannian_gens(r, n);
  for (const auto& f : extra) gens.push_back(f);
  m.implicit = IdealQ(r, std::move(gens));
  m.dim = 2 * n - 4 - static_cast<int>(degrees.size());
  return m;
}

IdealQ base_locus_ideal(int n) {
  Ring r = plucker_ring(n, FieldTag::rationals());
  std::vector<PolyQ> gens = grassmannian_gens(r, n);
  PolyMatQ X = plucker_matrix<Rational>(r, n);
  PolyMatQ X2 = X * X;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) gens.push_back(X2.at(i, j));
  return IdealQ(r, std::move(gens));
}

std::vector<PolyQ> plucker_polys(const ParametricRep& rep) {
  int n = rep.n();
  std::vector<PolyQ> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.push_back(rep.rows.at(0, i) * rep.rows.at(1, j) - rep.rows.at(0, j) * rep.rows.at(1, i));
  return out;
}

IdealQ implicitize(const ParametricRep& rep, const GroebnerBudget& budget) {
  int n = rep.n();
  std::vector<PolyQ> xs = plucker_polys(rep);
  std::vector<std::string> names = rep.params->names();
  names.push_back("_z");
  auto pl = plucker_names(n);
  names.insert(names.end(), pl.begin(), pl.end());
  Ring big = make_ring(names, FieldTag::rationals());
  int s = rep.nparams();
  std::vector<PolyQ> gens;
  auto map = name_map<Rational>(rep.params, big);
  for (int k = 0; k < n * (n - 1) / 2; ++k) {
    PolyQ graph = PolyQ::variable(big, s + 1 + k) -
                  PolyQ::variable(big, s) * rename_vars(xs[static_cast<std::size_t>(k)], big, map);
    gens.push_back(std::move(graph));
  }
  std::vector<int> drop(static_cast<std::size_t>(s) + 1);
  for (int k = 0; k <= s; ++k) drop[static_cast<std::size_t>(k)] = k;
  IdealQ graph_ideal(big, std::move(gens));
  IdealQ elim = eliminate(graph_ideal, drop, budget);
  Ring target = plucker_ring(n, FieldTag::rationals());
  std::vector<PolyQ> out;
  for (const auto& g : elim.gens) out.push_back(embed(g, target));
  return IdealQ(target, std::move(out));
}

bool representations_consistent(const ModelSpec& m, int samples, Rng& rng) {
  if (!m.implicit || !m.parametric) return true;
  const ParametricRep& rep = *m.parametric;
  std::vector<PolyQ> xs = plucker_polys(rep);
  for (int it = 0; it < samples; ++it) {
    std::vector<Rational> t(static_cast<std::size_t>(rep.nparams()));
    for (auto& v : t) v = Rational(static_cast<long>(rng.int_in(-30, 30)), static_cast<long>(rng.int_in(1, 7)));
    std::vector<Rational> x;
    x.reserve(xs.size());
    for (const auto& f : xs) x.push_back(f.eval(t));
    for (const auto& g : m.implicit->gens)
      if (!(g.eval(x) == 0)) return false;
  }
  return true;
}

}  // namespace grassdist
