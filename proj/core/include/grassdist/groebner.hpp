#pragma once

#include <optional>
#include <vector>

#include "grassdist/poly.hpp"

namespace grassdist {

/// Resource limits for a single Groebner computation. Exhaustion raises
/// BudgetExceeded; a budgeted run never returns a wrong answer.
struct GroebnerBudget {
  std::uint64_t max_pair_reductions = 4'000'000;
  std::uint64_t max_reduction_steps = 4'000'000'000ull;
  double max_seconds = 0;  // 0 = unlimited

  static GroebnerBudget unlimited() { return {~0ull, ~0ull, 0}; }
};

/// Generator list with its ring; the homogeneity flag is verified on
/// construction.
template <class C>
struct Ideal {
  Ring ring;
  std::vector<Poly<C>> gens;
  bool homogeneous = false;

  Ideal() = default;
  Ideal(Ring r, std::vector<Poly<C>> g);
};

using IdealQ = Ideal<Rational>;
using IdealP = Ideal<std::uint64_t>;

/// Reduced Groebner basis of I under `ord`, sorted descending by leading
/// term. The reduced basis of the zero ideal is empty; of the unit ideal {1}.
template <class C>
std::vector<Poly<C>> groebner_basis(const Ideal<C>& I, const MonomialOrder& ord,
                                    const GroebnerBudget& budget = {});

/// Full normal form of f modulo a Groebner basis under `ord`.
template <class C>
Poly<C> normal_form(const Poly<C>& f, const std::vector<Poly<C>>& gb, const MonomialOrder& ord,
                    const GroebnerBudget& budget = {});

template <class C>
bool in_ideal(const Poly<C>& f, const std::vector<Poly<C>>& gb, const MonomialOrder& ord);

/// Generators of I intersected with the subring that omits the variables in
/// `drop` (indices into I.ring). The result lives in the smaller ring.
template <class C>
Ideal<C> eliminate(const Ideal<C>& I, const std::vector<int>& drop,
                   const GroebnerBudget& budget = {});

/// Same elimination but keeping the ambient ring.
template <class C>
Ideal<C> eliminate_keep_ring(const Ideal<C>& I, const std::vector<int>& drop,
                             const GroebnerBudget& budget = {});

/// Saturation I : f^infinity via the extra-variable construction.
template <class C>
Ideal<C> saturate(const Ideal<C>& I, const Poly<C>& f, const GroebnerBudget& budget = {});

/// Ideal quotient I : f computed through the intersection with <f>.
template <class C>
Ideal<C> colon(const Ideal<C>& I, const Poly<C>& f, const GroebnerBudget& budget = {});

/// Saturation by an ideal, realized as saturation by a random combination of
/// its generators (equal up to radical with probability one); a second
/// combination cross-checks the result.
template <class C>
Ideal<C> saturate_by_ideal(const Ideal<C>& I, const std::vector<Poly<C>>& J, Rng& rng,
                           const GroebnerBudget& budget = {});

/// Krull dimension of the affine variety of I (projective dimension is one
/// less for homogeneous ideals). -1 for the unit ideal.
template <class C>
int ideal_dimension(const Ideal<C>& I, const GroebnerBudget& budget = {});

/// Degree of a homogeneous ideal via the Hilbert series of its leading-term
/// ideal.
template <class C>
long long ideal_degree(const Ideal<C>& I, const GroebnerBudget& budget = {});

struct PointCount {
  long long with_multiplicity = 0;  // vector-space dimension of the quotient
  long long distinct = 0;           // points of the radical
  bool radical = false;
};

/// Number of points of a zero-dimensional affine ideal over the algebraic
/// closure, via the squarefree part of the minimal polynomial of a random
/// linear form. Throws std::domain_error when the dimension is positive.
template <class C>
PointCount count_points(const Ideal<C>& I, Rng& rng, const GroebnerBudget& budget = {});

template <class C>
bool ideal_equals(const Ideal<C>& I, const Ideal<C>& J, const GroebnerBudget& budget = {});

/// Membership of f in the radical of I (Rabinowitsch trick).
template <class C>
bool in_radical(const Poly<C>& f, const Ideal<C>& I, const GroebnerBudget& budget = {});

/// Adds a random affine chart equation l(x) = 1 for a homogeneous ideal.
template <class C>
Ideal<C> dehomogenize_random(const Ideal<C>& I, Rng& rng);

/// Counts points of V(I) off the hypersurfaces listed in `inverted`: a chart
/// variable y with y * prod(inverted) = 1 is appended, which cuts away every
/// component on which some inverted polynomial vanishes. The ideal may have
/// positive-dimensional components inside those hypersurfaces.
template <class C>
PointCount count_points_off(const Ideal<C>& I, const std::vector<Poly<C>>& inverted, Rng& rng,
                            const GroebnerBudget& budget = {});

/// Affine dimension of V(I) minus the locus where any `inverted` vanishes.
template <class C>
int dimension_off(const Ideal<C>& I, const std::vector<Poly<C>>& inverted,
                  const GroebnerBudget& budget = {});

/// Exact division g / f; throws std::domain_error when f does not divide g.
template <class C>
Poly<C> divexact(const Poly<C>& g, const Poly<C>& f);

/// Buchberger certificate: every S-polynomial of gb reduces to zero.
template <class C>
bool spair_criterion_holds(const std::vector<Poly<C>>& gb, const MonomialOrder& ord);

/// Hilbert-series data of the leading term ideal: numerator coefficients of
/// HS(R/I) * (1-t)^nvars.
std::vector<mpz_class> hilbert_numerator(const std::vector<Monomial>& lts, int nvars);

}  // namespace grassdist
