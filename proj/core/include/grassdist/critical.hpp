#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassdist/models.hpp"

namespace grassdist {

using IntMatrix = std::vector<std::vector<long long>>;

enum class DataKind { GenericSymmetric, GrassmannPoint, SquareImagePoint };

/// Data for a distance problem: a symmetric matrix Q, and for Grassmann
/// points also the rank-2 skew Y with Q = Y^2.
struct DataPoint {
  DataKind kind = DataKind::GenericSymmetric;
  int n = 0;
  IntMatrix Q;
  std::optional<IntMatrix> Y;
};

/// Random integer symmetric matrix, entries in [-50, 50].
DataPoint make_generic_symmetric(int n, std::uint64_t seed);
/// Y from a random integer 2 x n matrix B, Q = Y^2.
DataPoint make_grassmann_point(int n, std::uint64_t seed);
/// Q = Z^2 for a random full-rank integer skew matrix Z.
DataPoint make_square_image_point(int n, std::uint64_t seed);

/// num = trace(X^2 Q), den = trace(X^2) as quadrics in the Plucker ring.
template <class C>
std::pair<Poly<C>, Poly<C>> objective_traces(const Ring& plucker, int n, const IntMatrix& Q);

/// trace(X Y) as a linear form in the Plucker ring.
template <class C>
Poly<C> trace_xy(const Ring& plucker, int n, const IntMatrix& Y);

/// The entries of X Q + Q X (the numerator-gradient row, up to scale).
template <class C>
std::vector<Poly<C>> gradient_row(const Ring& plucker, int n, const IntMatrix& Q);

/// The augmented Jacobian: gradient row, coordinate row, then the Jacobian
/// of all model generators (Pfaffians included).
template <class C>
PolyMatrix<C> augmented_jacobian(const Ideal<C>& model, int n, const IntMatrix& Q);

enum class CriticalKind { Lagrangian, ED, GD, SD, Parametric };

/// An ambient critical system before point counting: the equations, plus the
/// polynomials whose zero loci must be cut away (the chart of the counting
/// problem inverts their product).
template <class C>
struct CriticalSystem {
  CriticalKind kind = CriticalKind::Lagrangian;
  Ideal<C> equations;
  std::vector<Poly<C>> inverted;              // product inverted when counting
  std::vector<std::vector<Poly<C>>> removed;  // ideals saturated away (e.g. I_Sing)
  bool projective = true;                     // homogeneous system needing a chart
  int fiber_cardinality = 1;                  // parametrization fiber to divide by
};

/// Equations of the Lagrangian ideal: I_M plus the (c+2)-minors of the
/// augmented Jacobian, with I_Sing scheduled for saturation.
template <class C>
CriticalSystem<C> lagrangian_system(const ModelSpec& m, const Ideal<C>& model_mod, const DataPoint& data);

/// The saturated Lagrangian ideal (exact ideal-level saturation; small
/// instances only).
template <class C>
Ideal<C> lagrangian_ideal(const CriticalSystem<C>& sys, Rng& rng, const GroebnerBudget& budget = {});

/// ED critical system: Lagrangian with trace(X^2) inverted.
template <class C>
CriticalSystem<C> ed_critical_system(const ModelSpec& m, const Ideal<C>& model_mod, const DataPoint& data);

/// GD critical system: additionally inverts trace(X Y).
template <class C>
CriticalSystem<C> gd_critical_system(const ModelSpec& m, const Ideal<C>& model_mod, const DataPoint& data);

/// The 2 x (s+1) trace matrix of a parametrization: first column (num, den),
/// then the parameter partials.
template <class C>
PolyMatrix<C> parametric_critical_matrix(const ParametricRep& rep, const Ring& params_mod,
                                         const IntMatrix& Q);

/// Parametric critical system: all 2x2 minors of the trace matrix, with den
/// (and trace(XY) for GD) inverted; toric parametrizations also cut away
/// their non-immersive locus. `params_ring` carries the working field and
/// must have the parametrization's variable names.
template <class C>
CriticalSystem<C> parametric_critical_system(const ModelSpec& m, const Ring& params_ring,
                                             const DataPoint& data, CriticalKind kind, Rng& rng);

/// Counts the points of a critical system (distinct points of the radical).
template <class C>
PointCount count_critical(const CriticalSystem<C>& sys, Rng& rng, const GroebnerBudget& budget = {});

/// The commutator form of the full-Grassmannian critical equations for
/// special data: I_Gr + entries of [X^2, Q].
template <class C>
Ideal<C> grassmann_commutator_ideal(const Ring& plucker, int n, const IntMatrix& Q);

/// Extraneous critical locus (4.2): the Grassmannian's critical ideal for
/// data Q = Y^2, saturated by trace(X^2) and by the point ideal of Y.
template <class C>
Ideal<C> extraneous_ideal(int n, const IntMatrix& Y, const Ring& plucker, Rng& rng,
                          const GroebnerBudget& budget = {});

/// Projective dimension of the extraneous locus, computed on the standard
/// chart of Gr(2,n) (cheap enough for n = 6).
int extraneous_dimension(int n, std::uint64_t seed, std::uint32_t prime,
                         const GroebnerBudget& budget = {});

struct EdGeneralResult {
  bool ed_general = false;
  int witness_dim = -2;  // affine dimension of the non-transversality locus
};

/// Transversality of M with the isotropic quadric trace(X^2) = 0.
EdGeneralResult is_ed_general(const ModelSpec& m, std::uint32_t prime, std::uint64_t seed,
                              const GroebnerBudget& budget = {});

// ---------------------------------------------------------------------------
// Degree computation orchestration
// ---------------------------------------------------------------------------

enum class DegreeKind { ED, GD, SD };
std::string degree_kind_name(DegreeKind k);

struct CountConfig {
  std::vector<std::uint32_t> primes{32003, 65537};
  std::vector<std::uint64_t> seeds{1, 2};
  GroebnerBudget budget;
  bool parallel = true;
  bool divide_by_fiber = false;  // required for non-identifiable models
  bool prefer_parametric = true;
};

struct CellResult {
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  std::optional<long long> count;
  long long with_multiplicity = 0;
  bool radical = false;
  std::string error;  // "budget: ..." or other failure
};

struct DegreeReport {
  std::string model;
  DegreeKind kind = DegreeKind::ED;
  std::vector<CellResult> cells;
  std::optional<long long> value;  // agreed count
  bool stable = false;
};

/// Runs the (seed x prime) grid of counts for the model and degree kind.
DegreeReport compute_degree(const ModelSpec& m, DegreeKind kind, const CountConfig& cfg);

/// Brute-force critical count of a random rational function f/g with
/// deg f = d, deg g = e in s variables (the oracle for the closed form).
long long rational_function_critical_count(int d, int e, int s, std::uint64_t seed,
                                           std::uint32_t prime, const GroebnerBudget& budget = {});

/// Critical system of the n = 6 generic linear-section models (chart +
/// Lagrange multipliers), used for the excess-dichotomy checks.
CriticalSystem<std::uint64_t> linear_section_multiplier_system(int n, int r, const DataPoint& data,
                                                               std::uint32_t prime,
                                                               std::uint64_t coeff_seed,
                                                               CriticalKind kind);

}  // namespace grassdist
