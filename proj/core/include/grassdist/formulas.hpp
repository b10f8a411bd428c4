#pragma once

#include <string>

#include "grassdist/models.hpp"

namespace grassdist {

enum class FormulaStatus { Theorem, Conjecture, Bound };

std::string formula_status_name(FormulaStatus s);

/// A closed-form degree value together with its epistemic status in the
/// literature it comes from.
struct FormulaResult {
  long long value = 0;
  FormulaStatus status = FormulaStatus::Theorem;
  std::string source;
};

long long binomial(int n, int k);

/// Critical points of a generic rational function f/g in s variables with
/// deg f = d, deg g = e: (d(d-1)^s - e(e-1)^s)/(d-e), or (s+1)(d-1)^s when
/// d = e.
FormulaResult rational_critical_count(int d, int e, int s);

/// Giambelli-Thom-Porteous degree of the critical ideal of a generic
/// complete intersection of codimension r in Gr(2,4) (valid for r = 2, 3).
FormulaResult gtp_critical_degree(const std::vector<int>& degrees);

struct CiDegrees {
  FormulaResult ed;
  FormulaResult gd;
};

/// ED/GD degrees of generic complete intersections in Gr(2,4): surfaces
/// (d1,d2), curves (d1,d2,d3), and threefolds (d).
CiDegrees ci_degrees(const std::vector<int>& degrees);

/// Parametric ED bound (s+1)(2d-1)^s for max minor degree d.
FormulaResult param_ed_bound(int d, int s);

/// ED = GD degree of the tangent curve of the toric curve with exponents u:
/// 4u3 + 2u2 - 2u1, minus 2 when u3 = u1+u2 is even.
FormulaResult tangent_curve_degree(std::array<int, 3> u);

struct SchubertFormulas {
  FormulaResult dim;
  FormulaResult sq_degree;  // degree of S_ij^2
  FormulaResult ed_degree;
  FormulaResult gd_degree;
};

/// All four closed forms for S_ij in Gr(2,n), with the correct
/// theorem/conjecture labels (ED via the known j-i=1 and j=n formulas, the
/// general conjecture otherwise; GD = 1 exactly for j = i+1 or (i,j) = (1,n)).
SchubertFormulas schubert_formulas(const SchubertIndex& s);

/// deg(S_ij^2) by the recursion deg(S_ij^2) = deg(S_{i+1,j}^2) +
/// deg(S_{i,j+1}^2) anchored at deg(S_jj^2) = 0 and the closed form on the
/// j = n-1 column; j = n is the Veronese value 2^(n-i-1).
long long schubert_sq_degree_recursive(const SchubertIndex& s);

/// Named one-off formulas: base_locus_codim(k,r), base_locus_degree(n),
/// pgr_degree(n), vx2_degree(n).
FormulaResult misc_degree_formula(const std::string& name, const std::vector<int>& args);

}  // namespace grassdist
