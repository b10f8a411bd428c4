#include "grassdist/formulas.hpp"

#include <functional>
#include <stdexcept>

namespace grassdist {

std::string formula_status_name(FormulaStatus s) {
  switch (s) {
    case FormulaStatus::Theorem: return "theorem";
    case FormulaStatus::Conjecture: return "conjecture";
    case FormulaStatus::Bound: return "bound";
  }
  return "?";
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  if (!b.fits_slong_p()) throw std::overflow_error("binomial overflow");
  return b.get_si();
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

}  // namespace

FormulaResult rational_critical_count(int d, int e, int s) {
  if (d < 0 || e < 0 || s < 1) throw std::invalid_argument("rational_critical_count: bad arguments");
  FormulaResult r;
  r.status = FormulaStatus::Theorem;
  r.source = "critical points of a generic rational function";
  if (d != e) {
    r.value = (static_cast<long long>(d) * ipow(d - 1, s) - static_cast<long long>(e) * ipow(e - 1, s)) /
              (d - e);
  } else {
    r.value = static_cast<long long>(s + 1) * ipow(d - 1, s);
  }
  return r;
}

FormulaResult gtp_critical_degree(const std::vector<int>& degrees) {
  int r = static_cast<int>(degrees.size());
  if (r != 2 && r != 3)
    throw std::invalid_argument("gtp_critical_degree applies to ED-general dimensions (r = 2 or 3)");
  long long prod = 2;
  for (int d : degrees) prod *= d;
  // sum over i_0 + ... + i_r = 4 - r of binom(i_0+2, 2) * prod (d_k - 1)^{i_k}
  long long total = 0;
  int budget = 4 - r;
  std::vector<int> iv(static_cast<std::size_t>(r) + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r) {
      iv[static_cast<std::size_t>(r)] = left;
      long long term = binomial(iv[0] + 2, 2);
      for (int k = 1; k <= r; ++k)
        term *= ipow(degrees[static_cast<std::size_t>(k - 1)] - 1, iv[static_cast<std::size_t>(k)]);
      total += term;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      iv[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  // iv[0] = i_0 chosen first
  std::function<void(int)> outer = [&](int i0) {
    iv[0] = i0;
    rec(1, budget - i0);
  };
  for (int i0 = 0; i0 <= budget; ++i0) outer(i0);
  FormulaResult out;
  out.value = prod * total;
  out.status = FormulaStatus::Theorem;
  out.source = "Giambelli-Thom-Porteous count for ED-general complete intersections";
  return out;
}

CiDegrees ci_degrees(const std::vector<int>& degrees) {
  CiDegrees out;
  if (degrees.size() == 2) {
    long long d1 = degrees[0], d2 = degrees[1];
    out.ed.value = 2 * d1 * d2 * (d1 * d1 + d2 * d2 + d1 * d2 + 3);
    out.ed.status = FormulaStatus::Theorem;
    out.ed.source = "ED degree of generic surfaces in Gr(2,4)";
    out.gd.value = 2 * d1 * d2 * (d1 * d1 + d2 * d2 + d1 * d2 + 2);
    out.gd.status = FormulaStatus::Conjecture;
    out.gd.source = "GD degree of generic surfaces in Gr(2,4)";
  } else if (degrees.size() == 3) {
    long long d1 = degrees[0], d2 = degrees[1], d3 = degrees[2];
    long long v = 2 * d1 * d2 * d3 * (d1 + d2 + d3);
    out.ed = {v, FormulaStatus::Theorem, "ED degree of generic curves in Gr(2,4)"};
    out.gd = {v, FormulaStatus::Theorem, "GD = ED for generic curves in Gr(2,4)"};
  } else if (degrees.size() == 1) {
    long long d = degrees[0];
    out.ed.value = 2 * d * (d * d * d + 3 * d + 2);
    out.ed.status = FormulaStatus::Conjecture;
    out.ed.source = "ED degree of generic line complexes";
    out.gd.value = 2 * d * (d * d * d + 2 * d);
    out.gd.status = FormulaStatus::Conjecture;
    out.gd.source = "GD degree of generic line complexes";
  } else {
    throw std::invalid_argument("ci_degrees expects 1, 2 or 3 degrees");
  }
  return out;
}

FormulaResult param_ed_bound(int d, int s) {
  if (d < 1 || s < 1) throw std::invalid_argument("param_ed_bound: bad arguments");
  FormulaResult r;
  r.value = static_cast<long long>(s + 1) * ipow(2 * d - 1, s);
  r.status = FormulaStatus::Bound;
  r.source = "parametric ED bound (s+1)(2d-1)^s";
  return r;
}

FormulaResult tangent_curve_degree(std::array<int, 3> u) {
  auto [u1, u2, u3] = u;
  if (!(0 < u1 && u1 < u2 && u2 < u3)) throw std::invalid_argument("tangent_curve_degree: bad exponents");
  FormulaResult r;
  r.value = 4LL * u3 + 2 * u2 - 2 * u1;
  if (u3 == u1 + u2 && u3 % 2 == 0) r.value -= 2;
  r.status = FormulaStatus::Theorem;
  r.source = "ED = GD degree of toric tangent curves";
  return r;
}

namespace {

long long schubert_sq_degree_closed(int i, int j, int n) {
  if (j == n) return ipow(2, n - i - 1);  // Veronese square of P^(n-i-1)
  long long sum = 0;
  for (int k = n - j + 1; k <= n - i - 1; ++k) sum += binomial(2 * n - i - j, k);
  return sum + 2 * binomial(2 * n - i - j - 1, n - j);
}

}  // namespace

long long schubert_sq_degree_recursive(const SchubertIndex& s) {
  // Recursion on j <= n-1 with the closed anchors on the diagonal and the
  // j = n-1 column; Veronese values on j = n.
  std::function<long long(int, int)> rec = [&](int i, int j) -> long long {
    if (i == j) return 0;
    if (j == s.n) return ipow(2, s.n - i - 1);
    if (j == s.n - 1) return 4 * (ipow(2, s.n - i - 1) - 1);
    return rec(i + 1, j) + rec(i, j + 1);
  };
  return rec(s.i, s.j);
}

SchubertFormulas schubert_formulas(const SchubertIndex& s) {
  SchubertFormulas out;
  out.dim = {static_cast<long long>(s.dim()), FormulaStatus::Theorem, "dim S_ij = 2n-i-j-1"};
  out.sq_degree.value = schubert_sq_degree_closed(s.i, s.j, s.n);
  out.sq_degree.status = s.j == s.n ? FormulaStatus::Theorem : FormulaStatus::Conjecture;
  out.sq_degree.source = s.j == s.n ? "Veronese square degree" : "squared-Schubert degree recursion";
  if (s.j == s.i + 1) {
    out.ed_degree = {binomial(s.n - s.i + 1, 2), FormulaStatus::Theorem, "ED degree of S_{i,i+1}"};
  } else if (s.j == s.n) {
    out.ed_degree = {static_cast<long long>(s.n - s.i), FormulaStatus::Theorem, "ED degree of S_{i,n}"};
  } else {
    long long nj1 = s.n - s.j + 1;
    out.ed_degree = {2 * nj1 * nj1 * (s.j - s.i) - nj1 * (s.n - s.i), FormulaStatus::Conjecture,
                     "ED degree of S_ij, general case"};
  }
  bool gd_one = (s.j == s.i + 1) || (s.i == 1 && s.j == s.n);
  out.gd_degree.value = gd_one ? 1 : 2;
  out.gd_degree.status = gd_one ? FormulaStatus::Theorem : FormulaStatus::Conjecture;
  out.gd_degree.source = gd_one ? "GD degree 1 family" : "GD degree 2 for the remaining Schubert varieties";
  return out;
}

FormulaResult misc_degree_formula(const std::string& name, const std::vector<int>& args) {
  FormulaResult r;
  r.status = FormulaStatus::Theorem;
  if (name == "base_locus_codim") {
    if (args.size() != 2) throw std::invalid_argument("base_locus_codim(k, r)");
    long long k = args[0], rr = args[1];
    r.value = 4 * k * k + 2 * k * rr + binomial(static_cast<int>(rr), 2);
    r.source = "codimension of nilpotent-orbit closures";
  } else if (name == "base_locus_degree") {
    if (args.size() != 1) throw std::invalid_argument("base_locus_degree(n)");
    int n = args[0];
    if (n < 4 || n > 14) throw std::invalid_argument("base_locus_degree: 4 <= n <= 14");
    r.value = 4 * binomial(2 * n - 6, n - 3) / (n - 2);
    r.source = "degree of the squaring base locus on Gr(2,n)";
  } else if (name == "pgr_degree") {
    if (args.size() != 1) throw std::invalid_argument("pgr_degree(n)");
    int n = args[0];
    r.value = 2 * binomial(2 * n - 4, n - 2);
    r.source = "degree of the projection Grassmannian";
  } else if (name == "vx2_degree") {
    if (args.size() != 1) throw std::invalid_argument("vx2_degree(n)");
    switch (args[0]) {
      case 3: r.value = 4; break;
      case 4: r.value = 6; break;
      case 5: r.value = 46; break;
      default: throw std::invalid_argument("vx2_degree known for n = 3, 4, 5");
    }
    r.source = "degree of the squaring image variety";
  } else {
    throw std::invalid_argument("unknown formula '" + name + "'");
  }
  return r;
}

}  // namespace grassdist
