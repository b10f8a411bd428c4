#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "grassdist/groebner.hpp"
#include "grassdist/polymatrix.hpp"

namespace grassdist {

/// Schubert variety S_ij in Gr(2,n): coordinates x_rs vanish for r < i or
/// s < j. Dimension 2n - i - j - 1.
struct SchubertIndex {
  int i = 1, j = 2, n = 4;
  SchubertIndex() = default;
  SchubertIndex(int i_, int j_, int n_);
  int dim() const { return 2 * n - i - j - 1; }
};

/// Birational (or known finite-to-one) parametrization of a model: a 2 x n
/// matrix of polynomials in t1..ts.
struct ParametricRep {
  Ring params;  // t1..ts over QQ
  PolyMatQ rows;
  bool identifiable = true;
  int fiber_cardinality = 1;  // generic fiber size of the parametrization

  int nparams() const { return params->nvars(); }
  int n() const { return rows.cols(); }
};

/// A model variety M in Gr(2,n), given implicitly (generators in the Plucker
/// ring including the Pfaffians) and/or parametrically.
struct ModelSpec {
  int n = 0;
  std::string name;
  std::optional<IdealQ> implicit;  // full ideal: extra generators + Pfaffians
  std::vector<PolyQ> extra_gens;   // the f_i of the model, without Pfaffians
  std::optional<ParametricRep> parametric;
  int dim = -1;  // projective dimension of M

  /// codim of M in P^(C(n,2)-1).
  int codim() const { return n * (n - 1) / 2 - 1 - dim; }
};

std::vector<PolyQ> grassmannian_gens(const Ring& r, int n);
/// The C(n,4) Pfaffian quadrics (empty for n < 4).
IdealQ grassmannian_ideal(int n);
/// Gr(2,n) with its standard affine-chart parametrization.
ModelSpec grassmannian_model(int n);

IdealQ schubert_ideal(const SchubertIndex& s);
ModelSpec schubert_model(const SchubertIndex& s);

/// Generator set for the squared Schubert variety S_ij^2 in the p_ij ring:
/// the pGr(2,n) quadrics, 3x3 minors of P, the 2x2 minors of the row pairs
/// P_rs with r < i or s < j, and the linear forms forced by squaring.
IdealQ schubert_squared_gens(const SchubertIndex& s);

/// Projection Grassmannian generators: entries of 2P^2 - trace(P) P, plus
/// the 3x3 minors of P for n >= 6.
IdealQ pgr_gens(int n);

enum class ToricKind { Chow, Secant, Tangent };
std::string toric_kind_name(ToricKind k);

/// Parametric models attached to the toric curve (1 : t^u1 : t^u2 : t^u3).
ModelSpec toric_model(ToricKind kind, std::array<int, 3> u);

/// The Chow threefold of the twisted cubic with both representations.
ModelSpec chow_twisted_cubic_implicit();

/// Chow form of the rational normal curve family: the 3x3 determinant in
/// Plucker coordinates for the twisted cubic.
PolyQ chow_form_twisted_cubic(const Ring& plucker4);

/// Generic complete intersection in Gr(2,4): dense random Plucker
/// polynomials of the given degrees, coefficients in [-20, 20].
ModelSpec generic_ci_model(int n, const std::vector<int>& degrees, std::uint64_t seed);

/// Base locus of the squaring map on Gr(2,n): Pfaffians plus the entries of
/// X^2.
IdealQ base_locus_ideal(int n);

/// Plucker coordinate functions of a parametrization, as polynomials in the
/// parameters (row-major upper triangle order).
std::vector<PolyQ> plucker_polys(const ParametricRep& rep);

/// Implicit ideal of a parametric model by eliminating the parameters from
/// the graph x_ij = z * X_ij(t) (homogenized with a scaling variable).
IdealQ implicitize(const ParametricRep& rep, const GroebnerBudget& budget = {});

/// Verifies that random parametric points satisfy every implicit generator
/// exactly over QQ.
bool representations_consistent(const ModelSpec& m, int samples, Rng& rng);

}  // namespace grassdist
