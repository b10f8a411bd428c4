#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "grassdist/poly.hpp"

namespace grassdist {

/// A line in P^{n-1} as a rank-2 skew-symmetric matrix of Plucker
/// coordinates.
struct LineMatrix {
  int n = 0;
  Eigen::MatrixXd X;

  /// Upper-triangle entry x_ij (1-based, i < j).
  double plucker(int i, int j) const { return X(i - 1, j - 1); }
  std::vector<double> plucker_vector() const;
};

/// Orthogonal projection onto a 2-plane: symmetric, idempotent, trace 2.
struct ProjMatrix {
  int n = 0;
  Eigen::MatrixXd P;
};

/// The two nonzero eigenvalues of the product of two plane projections.
struct SpectralSample {
  double lambda = 0;
  double mu = 0;
};

enum class MetricId {
  Chordal,
  Geodesic,
  Procrustes,
  BinetCauchy,
  FubiniStudy,
  Martin,
  Asimov,
  Projection,
  Spectral,
};

inline constexpr MetricId kAllMetrics[] = {
    MetricId::Chordal,     MetricId::Geodesic,    MetricId::Procrustes,
    MetricId::BinetCauchy, MetricId::FubiniStudy, MetricId::Martin,
    MetricId::Asimov,      MetricId::Projection,  MetricId::Spectral};

std::string metric_name(MetricId m);
MetricId metric_from_name(const std::string& name);

/// Plucker coordinates of the row span of a 2 x n matrix (throws on rank
/// deficiency).
LineMatrix skew_from_rows(const Eigen::Matrix<double, 2, Eigen::Dynamic>& B);

/// trace(X^2) = -2 sum x_ij^2; exact signed identity used as a sanity check.
double trace_x_squared(const LineMatrix& X);

/// Normalized projection 2 X^2 / trace(X^2); throws near the isotropic locus
/// trace(X^2) = 0.
ProjMatrix square_and_project(const LineMatrix& X);

SpectralSample spectral_pair(const ProjMatrix& P, const ProjMatrix& Q);

/// Squared distance of the given metric at a spectral sample. Martin at
/// lambda*mu = 0 yields +infinity.
double metric_value(MetricId m, const SpectralSample& s);

/// Frobenius-squared distance, computed entrywise.
double chordal_distance(const ProjMatrix& P, const ProjMatrix& Q);

/// All real skew square roots of a negative semidefinite matrix with even
/// eigenvalue multiplicities, up to projective sign: 2^(r-1) of them where
/// 2r = rank(P). Throws when the spectrum has odd multiplicities or P = 0.
std::vector<LineMatrix> fiber_of_square(const Eigen::MatrixXd& P, double tol = 1e-9);

/// Projectors onto the C(n,2) two-dimensional invariant subspaces of a
/// symmetric matrix with distinct eigenvalues; the first entry is the
/// projector onto the top-2 eigenvector plane.
std::vector<ProjMatrix> invariant_plane_critical_points(const Eigen::MatrixXd& Q,
                                                        double gap_tol = 1e-8);

struct ImageDimension {
  int projective_dim = -1;
  bool stable = false;  // identical rank across three random points
};

/// Numeric rank of the Jacobian of a polynomial map at random rational
/// points; the projective dimension of the image closure is rank - 1.
ImageDimension param_image_dimension(const std::vector<PolyQ>& components, int nparams,
                                     std::uint64_t seed);

/// Projector onto the span of the rows of a full-rank k x n matrix.
Eigen::MatrixXd row_span_projector(const Eigen::MatrixXd& B);

/// Random k-dimensional subspace projector.
Eigen::MatrixXd random_projector(int n, int k, Rng& rng);

/// Decreasingly sorted eigenvalues of Q*P for projection matrices Q, P
/// (computed from the symmetric product).
Eigen::VectorXd product_eigenvalues(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& P);

}  // namespace grassdist
