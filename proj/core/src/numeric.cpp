#include "grassdist/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grassdist {

std::vector<double> LineMatrix::plucker_vector() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v.push_back(X(i, j));
  return v;
}

std::string metric_name(MetricId m) {
  switch (m) {
    case MetricId::Chordal: return "chordal";
    case MetricId::Geodesic: return "geodesic";
    case MetricId::Procrustes: return "procrustes";
    case MetricId::BinetCauchy: return "binet-cauchy";
    case MetricId::FubiniStudy: return "fubini-study";
    case MetricId::Martin: return "martin";
    case MetricId::Asimov: return "asimov";
    case MetricId::Projection: return "projection";
    case MetricId::Spectral: return "spectral";
  }
  return "?";
}

MetricId metric_from_name(const std::string& name) {
  for (MetricId m : kAllMetrics)
    if (metric_name(m) == name) return m;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

LineMatrix skew_from_rows(const Eigen::Matrix<double, 2, Eigen::Dynamic>& B) {
  int n = static_cast<int>(B.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
  if (svd.singularValues()(1) < 1e-12 * std::max(1.0, svd.singularValues()(0)))
    throw std::invalid_argument("skew_from_rows: rank-deficient input");
  LineMatrix L;
  L.n = n;
  L.X = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) L.X(i, j) = B(0, i) * B(1, j) - B(0, j) * B(1, i);
  return L;
}

double trace_x_squared(const LineMatrix& X) { return (X.X * X.X).trace(); }

ProjMatrix square_and_project(const LineMatrix& X) {
  Eigen::MatrixXd P = X.X * X.X;
  double tr = P.trace();
  if (std::abs(tr) < 1e-12 * std::max(1.0, X.X.squaredNorm()))
    throw std::domain_error("square_and_project: isotropic input (trace(X^2) ~ 0)");
  ProjMatrix R;
  R.n = X.n;
  R.P = (2.0 / tr) * P;
  return R;
}

SpectralSample spectral_pair(const ProjMatrix& P, const ProjMatrix& Q) {
  // Nonzero eigenvalues of P*Q equal those of the symmetric P*Q*P.
  Eigen::MatrixXd S = P.P * Q.P * P.P;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  Eigen::VectorXd ev = es.eigenvalues();
  SpectralSample s;
  s.lambda = ev(P.n - 1);
  s.mu = ev(P.n - 2);
  if (s.mu > s.lambda) std::swap(s.lambda, s.mu);
  return s;
}

double metric_value(MetricId m, const SpectralSample& s) {
  double l = std::clamp(s.lambda, 0.0, 1.0);
  double u = std::clamp(s.mu, 0.0, 1.0);
  switch (m) {
    case MetricId::Chordal: return 4 - 2 * l - 2 * u;
    case MetricId::Geodesic: {
      double a = std::acos(std::sqrt(l)), b = std::acos(std::sqrt(u));
      return a * a + b * b;
    }
    case MetricId::Procrustes: return 4 - 2 * std::sqrt(l) - 2 * std::sqrt(u);
    case MetricId::BinetCauchy: return 1 - l * u;
    case MetricId::FubiniStudy: {
      double a = std::acos(std::sqrt(l * u));
      return a * a;
    }
    case MetricId::Martin:
      if (l * u <= 0) return std::numeric_limits<double>::infinity();
      return -std::log(l * u);
    case MetricId::Asimov: {
      double b = std::acos(std::sqrt(u));
      return b * b;
    }
    case MetricId::Projection: return 1 - u;
    case MetricId::Spectral: return 2 - 2 * std::sqrt(u);
  }
  return 0;
}

double chordal_distance(const ProjMatrix& P, const ProjMatrix& Q) {
  return (P.P - Q.P).squaredNorm();
}

std::vector<LineMatrix> fiber_of_square(const Eigen::MatrixXd& P, double tol) {
  int n = static_cast<int>(P.rows());
  double scale = P.norm();
  if (scale < tol) throw std::invalid_argument("fiber_of_square: zero matrix is not generic");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-P);
  Eigen::VectorXd ev = es.eigenvalues();  // ascending
  if (ev(0) < -tol * scale) throw std::invalid_argument("fiber_of_square: input not negative semidefinite");
  struct Block {
    double sigma;  // positive square root of the paired eigenvalue
    Eigen::VectorXd u, w;
  };
  std::vector<Block> blocks;
  int i = n - 1;
  while (i >= 0 && ev(i) > tol * scale) {
    if (i == 0 || ev(i - 1) <= tol * scale)
      throw std::invalid_argument("fiber_of_square: eigenvalue of odd multiplicity");
    Block b;
    b.sigma = std::sqrt(0.5 * (ev(i) + ev(i - 1)));
    b.u = es.eigenvectors().col(i);
    b.w = es.eigenvectors().col(i - 1);
    blocks.push_back(std::move(b));
    i -= 2;
  }
  if (blocks.empty()) throw std::invalid_argument("fiber_of_square: zero spectrum");
  std::size_t r = blocks.size();
  std::vector<LineMatrix> out;
  out.reserve(std::size_t{1} << (r - 1));
  // Sign of the first block is fixed: one representative per projective fiber
  // point.
  for (std::size_t mask = 0; mask < (std::size_t{1} << (r - 1)); ++mask) {
    LineMatrix L;
    L.n = n;
    L.X = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < r; ++k) {
      double s = (k > 0 && ((mask >> (k - 1)) & 1)) ? -1.0 : 1.0;
      const Block& b = blocks[k];
      L.X += s * b.sigma * (b.u * b.w.transpose() - b.w * b.u.transpose());
    }
    out.push_back(std::move(L));
  }
  return out;
}

std::vector<ProjMatrix> invariant_plane_critical_points(const Eigen::MatrixXd& Q, double gap_tol) {
  int n = static_cast<int>(Q.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  Eigen::VectorXd ev = es.eigenvalues();
  double scale = std::max(1.0, Q.norm());
  for (int i = 0; i + 1 < n; ++i)
    if (std::abs(ev(i + 1) - ev(i)) < gap_tol * scale)
      throw std::invalid_argument("invariant_plane_critical_points: repeated eigenvalues");
  // Top-2 plane first, then the remaining pairs by descending trace(PQ).
  std::vector<std::pair<double, std::pair<int, int>>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({ev(i) + ev(j), {i, j}});
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<ProjMatrix> out;
  for (const auto& [val, ij] : pairs) {
    (void)val;
    ProjMatrix P;
    P.n = n;
    Eigen::VectorXd u = es.eigenvectors().col(ij.first);
    Eigen::VectorXd w = es.eigenvectors().col(ij.second);
    P.P = u * u.transpose() + w * w.transpose();
    out.push_back(std::move(P));
  }
  return out;
}

ImageDimension param_image_dimension(const std::vector<PolyQ>& components, int nparams,
                                     std::uint64_t seed) {
  ImageDimension result;
  int last = -2;
  bool stable = true;
  for (int rep = 0; rep < 3; ++rep) {
    Rng rng(seed + static_cast<std::uint64_t>(rep) * 101);
    std::vector<double> point(static_cast<std::size_t>(nparams));
    for (auto& x : point) x = static_cast<double>(rng.int_in(-97, 97)) / 19.0;
    Eigen::MatrixXd J(static_cast<int>(components.size()), nparams);
    for (int r = 0; r < J.rows(); ++r)
      for (int c = 0; c < nparams; ++c)
        J(r, c) = components[static_cast<std::size_t>(r)].derivative(c).eval_double(point);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    int rank = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) > 1e-9 * std::max(1.0, top)) ++rank;
    if (last != -2 && rank != last) stable = false;
    last = std::max(last, rank);
  }
  result.projective_dim = last - 1;
  result.stable = stable;
  return result;
}

Eigen::MatrixXd row_span_projector(const Eigen::MatrixXd& B) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B.transpose());
  Eigen::MatrixXd Qfull = qr.householderQ();
  Eigen::MatrixXd Qk = Qfull.leftCols(B.rows());
  return Qk * Qk.transpose();
}

Eigen::MatrixXd random_projector(int n, int k, Rng& rng) {
  Eigen::MatrixXd B(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = rng.normal();
  return row_span_projector(B);
}

Eigen::VectorXd product_eigenvalues(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& P) {
  // For projections the nonzero spectra of QP and PQP agree and are real.
  Eigen::MatrixXd sym = P * Q * P;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  Eigen::VectorXd ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
  return ev;
}

}  // namespace grassdist
