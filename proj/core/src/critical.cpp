#include "grassdist/critical.hpp"

#include <future>
#include <stdexcept>

namespace grassdist {

namespace {

IntMatrix zero_matrix(int r, int c) { return IntMatrix(static_cast<std::size_t>(r), std::vector<long long>(static_cast<std::size_t>(c), 0)); }

IntMatrix matmul(const IntMatrix& A, const IntMatrix& B) {
  int n = static_cast<int>(A.size()), m = static_cast<int>(B[0].size()), k = static_cast<int>(B.size());
  IntMatrix C = zero_matrix(n, m);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l)
      for (int j = 0; j < m; ++j) C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += A[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] * B[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
  return C;
}

}  // namespace

DataPoint make_generic_symmetric(int n, std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 13);
  DataPoint d;
  d.kind = DataKind::GenericSymmetric;
  d.n = n;
  d.Q = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      long long v = rng.int_in(-50, 50);
      d.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      d.Q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  return d;
}

DataPoint make_grassmann_point(int n, std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 47);
  DataPoint d;
  d.kind = DataKind::GrassmannPoint;
  d.n = n;
  IntMatrix B = zero_matrix(2, n);
  for (auto& row : B)
    for (auto& v : row) v = rng.int_in(-50, 50);
  IntMatrix Y = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Y[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          B[0][static_cast<std::size_t>(i)] * B[1][static_cast<std::size_t>(j)] -
          B[0][static_cast<std::size_t>(j)] * B[1][static_cast<std::size_t>(i)];
  d.Y = Y;
  d.Q = matmul(Y, Y);
  return d;
}

DataPoint make_square_image_point(int n, std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 101);
  DataPoint d;
  d.kind = DataKind::SquareImagePoint;
  d.n = n;
  IntMatrix Z = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long v = rng.int_in(-50, 50);
      Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      Z[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v;
    }
  d.Y = Z;  // full-rank skew, not a Grassmann point
  d.Q = matmul(Z, Z);
  return d;
}

template <class C>
std::pair<Poly<C>, Poly<C>> objective_traces(const Ring& plucker, int n, const IntMatrix& Q) {
  PolyMatrix<C> X = plucker_matrix<C>(plucker, n);
  PolyMatrix<C> X2 = X * X;
  PolyMatrix<C> Qm = const_matrix<C>(plucker, Q);
  Poly<C> num = (X2 * Qm).trace();
  Poly<C> den = X2.trace();
  return {num, den};
}

template <class C>
Poly<C> trace_xy(const Ring& plucker, int n, const IntMatrix& Y) {
  // trace(XY) = -2 sum_{i<j} x_ij Y_ij
  Poly<C> s = Poly<C>::zero(plucker);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      long long y = Y[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      if (y == 0) continue;
      s = s + Poly<C>::variable(plucker, plucker_index(n, i, j))
                  .mul_scalar(detail::CoeffOps<C>::from_int(-2 * y, plucker->field()));
    }
  return s;
}

template <class C>
std::vector<Poly<C>> gradient_row(const Ring& plucker, int n, const IntMatrix& Q) {
  PolyMatrix<C> X = plucker_matrix<C>(plucker, n);
  PolyMatrix<C> Qm = const_matrix<C>(plucker, Q);
  PolyMatrix<C> S = X * Qm + (Qm * X);
  std::vector<Poly<C>> row;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) row.push_back(S.at(i, j));
  return row;
}

template <class C>
PolyMatrix<C> augmented_jacobian(const Ideal<C>& model, int n, const IntMatrix& Q) {
  const Ring& r = model.ring;
  int cols = n * (n - 1) / 2;
  PolyMatrix<C> J(r, 2 + static_cast<int>(model.gens.size()), cols);
  auto grad = gradient_row<C>(r, n, Q);
  for (int c = 0; c < cols; ++c) {
    J.at(0, c) = grad[static_cast<std::size_t>(c)];
    J.at(1, c) = Poly<C>::variable(r, c);
  }
  std::vector<int> vars(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c) vars[static_cast<std::size_t>(c)] = c;
  PolyMatrix<C> JM = jacobian(model.gens, vars);
  for (int g = 0; g < JM.rows(); ++g)
    for (int c = 0; c < cols; ++c) J.at(2 + g, c) = JM.at(g, c);
  return J;
}

template <class C>
CriticalSystem<C> lagrangian_system(const ModelSpec& m, const Ideal<C>& model_mod,
                                    const DataPoint& data) {
  CriticalSystem<C> sys;
  sys.kind = CriticalKind::Lagrangian;
  int n = m.n;
  int cols = n * (n - 1) / 2;
  int c = m.codim();
  std::vector<Poly<C>> eqs = model_mod.gens;
  if (m.dim > 0 && c + 2 <= cols) {
    PolyMatrix<C> J = augmented_jacobian(model_mod, n, data.Q);
    for (auto& f : minors(J, c + 2)) eqs.push_back(std::move(f));
    // Singular locus: I_M + c x c minors of the generator Jacobian.
    std::vector<int> vars(static_cast<std::size_t>(cols));
    for (int k = 0; k < cols; ++k) vars[static_cast<std::size_t>(k)] = k;
    PolyMatrix<C> JM = jacobian(model_mod.gens, vars);
    if (c <= std::min(JM.rows(), JM.cols())) sys.removed.push_back(minors(JM, c));
  }
  sys.equations = Ideal<C>(model_mod.ring, std::move(eqs));
  sys.projective = true;
  return sys;
}

template <class C>
Ideal<C> lagrangian_ideal(const CriticalSystem<C>& sys, Rng& rng, const GroebnerBudget& budget) {
  Ideal<C> I = sys.equations;
  for (const auto& J : sys.removed) I = saturate_by_ideal(I, J, rng, budget);
  return I;
}

template <class C>
CriticalSystem<C> ed_critical_system(const ModelSpec& m, const Ideal<C>& model_mod,
                                     const DataPoint& data) {
  CriticalSystem<C> sys = lagrangian_system(m, model_mod, data);
  sys.kind = data.kind == DataKind::SquareImagePoint ? CriticalKind::SD : CriticalKind::ED;
  auto [num, den] = objective_traces<C>(model_mod.ring, m.n, data.Q);
  (void)num;
  sys.inverted.push_back(den);
  if (sys.kind == CriticalKind::SD && data.Y)
    sys.inverted.push_back(trace_xy<C>(model_mod.ring, m.n, *data.Y));
  return sys;
}

template <class C>
CriticalSystem<C> gd_critical_system(const ModelSpec& m, const Ideal<C>& model_mod,
                                     const DataPoint& data) {
  if (!data.Y || data.kind != DataKind::GrassmannPoint)
    throw std::invalid_argument("gd_critical_system needs a Grassmann data point");
  CriticalSystem<C> sys = ed_critical_system(m, model_mod, data);
  sys.kind = CriticalKind::GD;
  sys.inverted.push_back(trace_xy<C>(model_mod.ring, m.n, *data.Y));
  return sys;
}

template <class C>
PolyMatrix<C> parametric_critical_matrix(const ParametricRep& rep, const Ring& params_mod,
                                         const IntMatrix& Q) {
  int n = rep.n();
  int s = rep.nparams();
  std::vector<PolyQ> xs_q = plucker_polys(rep);
  PolyMatrix<C> X(params_mod, n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Poly<C> x;
      if constexpr (std::is_same_v<C, Rational>) {
        x = embed(xs_q[static_cast<std::size_t>(idx)], params_mod);
      } else {
        x = reduce_mod(xs_q[static_cast<std::size_t>(idx)], params_mod);
      }
      X.at(i, j) = x;
      X.at(j, i) = -x;
      ++idx;
    }
  PolyMatrix<C> X2 = X * X;
  Poly<C> num = (X2 * const_matrix<C>(params_mod, Q)).trace();
  Poly<C> den = X2.trace();
  PolyMatrix<C> M(params_mod, 2, s + 1);
  M.at(0, 0) = num;
  M.at(1, 0) = den;
  for (int k = 0; k < s; ++k) {
    M.at(0, k + 1) = num.derivative(k);
    M.at(1, k + 1) = den.derivative(k);
  }
  return M;
}

namespace {

// Random combination over the coefficient field (used to cut a whole ideal's
// zero locus with a single generic element).
template <class C>
Poly<C> random_combination(const std::vector<Poly<C>>& gens, Rng& rng) {
  if (gens.empty()) throw std::invalid_argument("random_combination of nothing");
  const Ring& r = gens[0].ring();
  Poly<C> s = Poly<C>::zero(r);
  for (const auto& g : gens) {
    long long c = r->field().is_prime_field() ? static_cast<long long>(rng.nonzero_residue(r->field().p))
                                              : rng.int_in(1, 997);
    s = s + g.mul_scalar(detail::CoeffOps<C>::from_int(c, r->field()));
  }
  return s;
}

template <class C>
std::vector<Poly<C>> reduce_gens(const std::vector<PolyQ>& gens, const Ring& target) {
  std::vector<Poly<C>> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    if constexpr (std::is_same_v<C, Rational>) {
      out.push_back(embed(g, target));
    } else {
      out.push_back(reduce_mod(g, target));
    }
  }
  return out;
}

}  // namespace

template <class C>
CriticalSystem<C> parametric_critical_system(const ModelSpec& m, const Ring& params_ring,
                                             const DataPoint& data, CriticalKind kind, Rng& rng) {
  if (!m.parametric) throw std::invalid_argument("model has no parametrization");
  const ParametricRep& rep = *m.parametric;
  Ring ring = params_ring;
  PolyMatrix<C> M = parametric_critical_matrix<C>(rep, ring, data.Q);
  CriticalSystem<C> sys;
  sys.kind = kind;
  sys.projective = false;
  sys.fiber_cardinality = rep.fiber_cardinality;
  std::vector<Poly<C>> eqs = minors(M, 2);
  sys.equations = Ideal<C>(ring, std::move(eqs));
  sys.inverted.push_back(M.at(1, 0));  // den = trace(X(t)^2)
  // GD removes the algebraic cut locus trace(XY) = 0 of the data line; for
  // square-image data the same hypersurface trace(XZ) = 0 carries the
  // positive-dimensional extraneous families of invariant planes.
  if (kind == CriticalKind::GD || kind == CriticalKind::SD) {
    if (!data.Y) throw std::invalid_argument("GD/SD kinds require skew data");
    if (kind == CriticalKind::GD && data.kind != DataKind::GrassmannPoint)
      throw std::invalid_argument("GD kind requires Grassmann data");
    std::vector<PolyQ> xs = plucker_polys(rep);
    Poly<C> tr = Poly<C>::zero(ring);
    int n = rep.n(), idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long long y = (*data.Y)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (y != 0) {
          Poly<C> x = reduce_gens<C>({xs[static_cast<std::size_t>(idx)]}, ring)[0];
          tr = tr + x.mul_scalar(detail::CoeffOps<C>::from_int(-2 * y, ring->field()));
        }
        ++idx;
      }
    sys.inverted.push_back(tr);
  }
  // Toric parametrizations ramify (tangent curves genuinely; Chow/secant at
  // degenerate parameters): cut away the non-immersive locus of
  // t -> [x(t)] with one generic combination of its maximal minors.
  if (m.name.find("toric") != std::string::npos || m.name.find("chow") != std::string::npos) {
    std::vector<PolyQ> xs = plucker_polys(rep);
    int s = rep.nparams();
    PolyMatrix<C> G(ring, s + 1, static_cast<int>(xs.size()));
    auto xsm = reduce_gens<C>(xs, ring);
    for (int c = 0; c < G.cols(); ++c) {
      G.at(0, c) = xsm[static_cast<std::size_t>(c)];
      for (int k = 0; k < s; ++k) G.at(k + 1, c) = xsm[static_cast<std::size_t>(c)].derivative(k);
    }
    sys.inverted.push_back(random_combination<C>(minors(G, s + 1), rng));
  }
  return sys;
}

template <class C>
PointCount count_critical(const CriticalSystem<C>& sys, Rng& rng, const GroebnerBudget& budget) {
  Ideal<C> I = sys.equations;
  if (sys.projective) I = dehomogenize_random(I, rng);
  std::vector<Poly<C>> inverted = sys.inverted;
  for (const auto& J : sys.removed) inverted.push_back(random_combination<C>(J, rng));
  if (sys.projective) {
    std::vector<Poly<C>> emb;
    for (const auto& f : inverted) emb.push_back(embed(f, I.ring));
    inverted = std::move(emb);
  }
  if (inverted.empty()) return count_points(I, rng, budget);
  return count_points_off(I, inverted, rng, budget);
}

template <class C>
Ideal<C> grassmann_commutator_ideal(const Ring& plucker, int n, const IntMatrix& Q) {
  std::vector<Poly<C>> gens = reduce_gens<C>(grassmannian_gens(plucker_ring(n, FieldTag::rationals()), n), plucker);
  PolyMatrix<C> X = plucker_matrix<C>(plucker, n);
  PolyMatrix<C> Qm = const_matrix<C>(plucker, Q);
  PolyMatrix<C> X2 = X * X;
  PolyMatrix<C> comm = X2 * Qm;
  PolyMatrix<C> QX2 = Qm * X2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gens.push_back(comm.at(i, j) - QX2.at(i, j));
  return Ideal<C>(plucker, std::move(gens));
}

template <class C>
Ideal<C> extraneous_ideal(int n, const IntMatrix& Y, const Ring& plucker, Rng& rng,
                          const GroebnerBudget& budget) {
  IntMatrix Q = matmul(Y, Y);
  Ideal<C> I = grassmann_commutator_ideal<C>(plucker, n, Q);
  auto [num, den] = objective_traces<C>(plucker, n, Q);
  (void)num;
  Ideal<C> sat = saturate(I, den, budget);
  // Remove the data point itself: saturate by a generic hyperplane through Y.
  const FieldTag& f = plucker->field();
  std::vector<C> yv;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      yv.push_back(detail::CoeffOps<C>::from_int(Y[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)], f));
  int pivot = -1;
  for (std::size_t k = 0; k < yv.size(); ++k)
    if (!detail::CoeffOps<C>::is_zero(yv[k])) pivot = static_cast<int>(k);
  if (pivot < 0) throw std::invalid_argument("extraneous_ideal: zero data point");
  Poly<C> ell = Poly<C>::zero(plucker);
  C acc = detail::CoeffOps<C>::from_int(0, f);
  for (int k = 0; k < plucker->nvars(); ++k) {
    if (k == pivot) continue;
    C c = detail::CoeffOps<C>::from_int(rng.int_in(1, 1000), f);
    ell = ell + Poly<C>::variable(plucker, k).mul_scalar(c);
    acc = detail::CoeffOps<C>::add(acc, detail::CoeffOps<C>::mul(c, yv[static_cast<std::size_t>(k)], f), f);
  }
  // choose the pivot coefficient so that ell(Y) = 0
  C cp = detail::CoeffOps<C>::neg(
      detail::CoeffOps<C>::mul(acc, detail::CoeffOps<C>::inv(yv[static_cast<std::size_t>(pivot)], f), f), f);
  ell = ell + Poly<C>::variable(plucker, pivot).mul_scalar(cp);
  return saturate(sat, ell, budget);
}

int extraneous_dimension(int n, std::uint64_t seed, std::uint32_t prime, const GroebnerBudget& budget) {
  DataPoint data = make_grassmann_point(n, seed);
  ModelSpec gr = grassmannian_model(n);
  Ring params = with_field(gr.parametric->params, FieldTag::prime(prime));
  std::vector<PolyQ> xs = plucker_polys(*gr.parametric);
  PolyMatP X(params, n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PolyP x = reduce_mod(xs[static_cast<std::size_t>(idx++)], params);
      X.at(i, j) = x;
      X.at(j, i) = -x;
    }
  PolyMatP X2 = X * X;
  PolyMatP Qm = const_matrix<std::uint64_t>(params, data.Q);
  PolyMatP A = X2 * Qm;
  PolyMatP B = Qm * X2;
  std::vector<PolyP> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gens.push_back(A.at(i, j) - B.at(i, j));
  IdealP I(params, std::move(gens));
  return dimension_off(I, {X2.trace()}, budget);
}

EdGeneralResult is_ed_general(const ModelSpec& m, std::uint32_t prime, std::uint64_t seed,
                              const GroebnerBudget& budget) {
  EdGeneralResult res;
  FieldTag fp = FieldTag::prime(prime);
  if (m.implicit) {
    Ring rp = with_field(m.implicit->ring, fp);
    std::vector<PolyP> gens = reduce_gens<std::uint64_t>(m.implicit->gens, rp);
    auto [num, den] = objective_traces<std::uint64_t>(rp, m.n, make_generic_symmetric(m.n, seed).Q);
    (void)num;
    int cols = m.n * (m.n - 1) / 2;
    std::vector<int> vars(static_cast<std::size_t>(cols));
    for (int k = 0; k < cols; ++k) vars[static_cast<std::size_t>(k)] = k;
    std::vector<PolyP> with_trace = gens;
    with_trace.push_back(den);
    PolyMatP J = jacobian(with_trace, vars);  // rows: model gradients then trace gradient
    int c = m.codim();
    std::vector<PolyP> eqs = gens;
    eqs.push_back(den);
    if (c + 1 <= std::min(J.rows(), J.cols()))
      for (auto& f : minors(J, c + 1)) eqs.push_back(std::move(f));
    IdealP T(rp, std::move(eqs));
    int dim = ideal_dimension(T, budget);
    res.witness_dim = dim;
    res.ed_general = dim <= 0;  // empty projectively
    return res;
  }
  if (m.parametric && m.parametric->nparams() == 1) {
    // Curves: ED-general iff trace(X(t)^2) has no multiple roots.
    Ring params = with_field(m.parametric->params, fp);
    PolyMatP M = parametric_critical_matrix<std::uint64_t>(*m.parametric, params,
                                                           make_generic_symmetric(m.n, seed).Q);
    PolyP den = M.at(1, 0);
    PolyP der = den.derivative(0);
    // gcd via resultant-free Euclid on univariate dense form
    IdealP G(params, {den, der});
    auto gb = groebner_basis(G, MonomialOrder::grevlex(), budget);
    bool coprime = gb.size() == 1 && gb[0].is_constant();
    res.ed_general = coprime;
    res.witness_dim = coprime ? -1 : 0;
    return res;
  }
  throw std::invalid_argument("is_ed_general: no usable representation");
}

std::string degree_kind_name(DegreeKind k) {
  switch (k) {
    case DegreeKind::ED: return "ed";
    case DegreeKind::GD: return "gd";
    case DegreeKind::SD: return "sd";
  }
  return "?";
}

namespace {

// For the full Grassmannian the critical points are the Q-invariant planes:
// the chart commutator system [X(a)^2, Q] = 0 has degree 4 and replaces the
// trace-matrix construction.
CriticalSystem<std::uint64_t> grassmann_chart_system(int n, const DataPoint& data,
                                                     CriticalKind kind, std::uint32_t prime) {
  FieldTag fp = FieldTag::prime(prime);
  ModelSpec gr = grassmannian_model(n);
  Ring params = with_field(gr.parametric->params, fp);
  std::vector<PolyQ> xs_q = plucker_polys(*gr.parametric);
  PolyMatP X(params, n, n);
  std::vector<PolyP> xs;
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PolyP x = reduce_mod(xs_q[static_cast<std::size_t>(idx++)], params);
      xs.push_back(x);
      X.at(i, j) = x;
      X.at(j, i) = -x;
    }
  PolyMatP X2 = X * X;
  PolyMatP Qm = const_matrix<std::uint64_t>(params, data.Q);
  PolyMatP A = X2 * Qm;
  PolyMatP B = Qm * X2;
  std::vector<PolyP> eqs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) eqs.push_back(A.at(i, j) - B.at(i, j));
  CriticalSystem<std::uint64_t> sys;
  sys.kind = kind;
  sys.projective = false;
  sys.equations = IdealP(params, std::move(eqs));
  sys.inverted.push_back(X2.trace());
  if (kind == CriticalKind::GD || kind == CriticalKind::SD) {
    PolyP tr = PolyP::zero(params);
    idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long long y = (*data.Y)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (y != 0) tr = tr + xs[static_cast<std::size_t>(idx)].mul_scalar(fp_from_int(-2 * y, prime));
        ++idx;
      }
    sys.inverted.push_back(tr);
  }
  return sys;
}

bool is_full_grassmannian(const ModelSpec& m) {
  return m.extra_gens.empty() && m.dim == 2 * m.n - 4;
}

CellResult run_cell(const ModelSpec& m, DegreeKind kind, std::uint32_t prime, std::uint64_t seed,
                    const CountConfig& cfg) {
  CellResult cell;
  cell.prime = prime;
  cell.seed = seed;
  try {
    DataPoint data;
    CriticalKind ck;
    switch (kind) {
      case DegreeKind::ED:
        data = make_generic_symmetric(m.n, seed);
        ck = CriticalKind::ED;
        break;
      case DegreeKind::GD:
        data = make_grassmann_point(m.n, seed);
        ck = CriticalKind::GD;
        break;
      case DegreeKind::SD:
        data = make_square_image_point(m.n, seed);
        ck = CriticalKind::SD;
        break;
    }
    Rng rng(seed * 7919 + prime);
    FieldTag fp = FieldTag::prime(prime);
    PointCount pc;
    int fiber = 1;
    if (m.dim == 0) {
      // zero-dimensional model: every model point is critical
      Ring rp = with_field(m.implicit->ring, fp);
      IdealP I(rp, reduce_gens<std::uint64_t>(m.implicit->gens, rp));
      pc = count_points(dehomogenize_random(I, rng), rng, cfg.budget);
    } else if (cfg.prefer_parametric && is_full_grassmannian(m)) {
      CriticalSystem<std::uint64_t> sys = grassmann_chart_system(m.n, data, ck, prime);
      pc = count_critical(sys, rng, cfg.budget);
    } else if (cfg.prefer_parametric && m.parametric) {
      Ring params = with_field(m.parametric->params, fp);
      CriticalSystem<std::uint64_t> sys =
          parametric_critical_system<std::uint64_t>(m, params, data, ck, rng);
      fiber = sys.fiber_cardinality;
      if (fiber > 1 && !cfg.divide_by_fiber)
        throw std::invalid_argument(
            "parametrization is " + std::to_string(fiber) +
            "-to-1; pass divide_by_fiber to count model points");
      pc = count_critical(sys, rng, cfg.budget);
    } else if (m.implicit) {
      Ring rp = with_field(m.implicit->ring, fp);
      IdealP model_mod(rp, reduce_gens<std::uint64_t>(m.implicit->gens, rp));
      CriticalSystem<std::uint64_t> sys =
          (kind == DegreeKind::GD) ? gd_critical_system(m, model_mod, data)
                                   : ed_critical_system(m, model_mod, data);
      pc = count_critical(sys, rng, cfg.budget);
    } else {
      throw std::invalid_argument("model has no usable representation");
    }
    cell.with_multiplicity = pc.with_multiplicity;
    cell.radical = pc.radical;
    long long distinct = pc.distinct;
    if (fiber > 1) {
      if (distinct % fiber != 0)
        throw std::runtime_error("count " + std::to_string(distinct) + " not divisible by fiber " +
                                 std::to_string(fiber));
      distinct /= fiber;
    }
    cell.count = distinct;
  } catch (const BudgetExceeded& e) {
    cell.error = std::string("budget: ") + e.what();
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

DegreeReport compute_degree(const ModelSpec& m, DegreeKind kind, const CountConfig& cfg) {
  DegreeReport rep;
  rep.model = m.name;
  rep.kind = kind;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> grid;
  for (auto p : cfg.primes)
    for (auto s : cfg.seeds) grid.push_back({p, s});
  rep.cells.resize(grid.size());
  if (cfg.parallel && grid.size() > 1) {
    std::vector<std::future<CellResult>> futs;
    for (auto [p, s] : grid)
      futs.push_back(std::async(std::launch::async, run_cell, std::cref(m), kind, p, s, std::cref(cfg)));
    for (std::size_t k = 0; k < futs.size(); ++k) rep.cells[k] = futs[k].get();
  } else {
    for (std::size_t k = 0; k < grid.size(); ++k)
      rep.cells[k] = run_cell(m, kind, grid[k].first, grid[k].second, cfg);
  }
  rep.stable = true;
  for (const auto& c : rep.cells) {
    if (!c.count) {
      rep.stable = false;
      continue;
    }
    if (!rep.value)
      rep.value = c.count;
    else if (*rep.value != *c.count)
      rep.stable = false;
  }
  if (!rep.value) rep.stable = false;
  return rep;
}

long long rational_function_critical_count(int d, int e, int s, std::uint64_t seed,
                                           std::uint32_t prime, const GroebnerBudget& budget) {
  FieldTag fp = FieldTag::prime(prime);
  Ring r = make_ring(param_names(s), fp);
  Rng rng(seed * 31 + 7);
  auto dense = [&](int deg) {
    std::vector<PolyP::Term> terms;
    std::vector<int> expo(static_cast<std::size_t>(s), 0);
    std::function<void(int, int)> emit = [&](int var, int left) {
      if (var == s - 1) {
        Monomial mo;
        for (int i = 0; i < s - 1; ++i) mo.e[i] = static_cast<std::uint16_t>(expo[static_cast<std::size_t>(i)]);
        mo.e[s - 1] = 0;
        std::uint32_t used = 0;
        for (int i = 0; i < s - 1; ++i) used += mo.e[i];
        for (int last = 0; last + static_cast<int>(used) <= deg; ++last) {
          Monomial mm = mo;
          mm.e[s - 1] = static_cast<std::uint16_t>(last);
          mm.deg = used + static_cast<std::uint32_t>(last);
          terms.push_back({mm, rng.residue(prime)});
        }
        return;
      }
      for (int ee = 0; ee <= left; ++ee) {
        expo[static_cast<std::size_t>(var)] = ee;
        emit(var + 1, left - ee);
      }
      expo[static_cast<std::size_t>(var)] = 0;
    };
    if (s == 1) {
      for (int k = 0; k <= deg; ++k) {
        Monomial mm;
        mm.e[0] = static_cast<std::uint16_t>(k);
        mm.deg = static_cast<std::uint32_t>(k);
        terms.push_back({mm, rng.residue(prime)});
      }
    } else {
      emit(0, deg);
    }
    return PolyP::from_terms(r, std::move(terms));
  };
  PolyP f = dense(d), g = dense(e);
  PolyMatP M(r, 2, s + 1);
  M.at(0, 0) = f;
  M.at(1, 0) = g;
  for (int k = 0; k < s; ++k) {
    M.at(0, k + 1) = f.derivative(k);
    M.at(1, k + 1) = g.derivative(k);
  }
  IdealP I(r, minors(M, 2));
  Rng crng(seed * 47 + prime);
  return count_points_off(I, {g}, crng, budget).distinct;
}

CriticalSystem<std::uint64_t> linear_section_multiplier_system(int n, int r, const DataPoint& data,
                                                               std::uint32_t prime,
                                                               std::uint64_t coeff_seed,
                                                               CriticalKind kind) {
  FieldTag fp = FieldTag::prime(prime);
  ModelSpec gr = grassmannian_model(n);
  const ParametricRep& rep = *gr.parametric;
  int s = rep.nparams();
  // Ring: chart parameters, then the objective value w, then the multipliers.
  std::vector<std::string> names = rep.params->names();
  names.push_back("w");
  for (int i = 1; i <= r; ++i) names.push_back("l" + std::to_string(i));
  Ring ring = make_ring(names, fp);
  int wv = s, lv = s + 1;
  std::vector<PolyQ> xs_q = plucker_polys(rep);
  std::vector<PolyP> xs;
  auto pmap = name_map<std::uint64_t>(with_field(rep.params, fp), ring);
  for (const auto& x : xs_q) xs.push_back(rename_vars(reduce_mod(x, with_field(rep.params, fp)), ring, pmap));
  // num, den on the chart
  PolyMatP X(ring, n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      X.at(i, j) = xs[static_cast<std::size_t>(idx)];
      X.at(j, i) = -xs[static_cast<std::size_t>(idx)];
      ++idx;
    }
  PolyMatP X2 = X * X;
  PolyP num = (X2 * const_matrix<std::uint64_t>(ring, data.Q)).trace();
  PolyP den = X2.trace();
  // dense random linear forms in the Plucker coordinates -> quadrics on the chart
  Rng coeff_rng(coeff_seed * 1315423911u + 3);
  std::vector<PolyP> g;
  for (int i = 0; i < r; ++i) {
    PolyP gi = PolyP::zero(ring);
    for (const auto& x : xs)
      gi = gi + x.mul_scalar(fp_from_int(coeff_rng.int_in(-20, 20), prime));
    g.push_back(gi);
  }
  std::vector<PolyP> eqs;
  PolyP w = PolyP::variable(ring, wv);
  eqs.push_back(num - w * den);
  for (int k = 0; k < s; ++k) {
    PolyP eq = num.derivative(k) - w * den.derivative(k);
    for (int i = 0; i < r; ++i)
      eq = eq - PolyP::variable(ring, lv + i) * g[static_cast<std::size_t>(i)].derivative(k);
    eqs.push_back(std::move(eq));
  }
  for (auto& gi : g) eqs.push_back(gi);
  CriticalSystem<std::uint64_t> sys;
  sys.kind = kind;
  sys.projective = false;
  sys.equations = IdealP(ring, std::move(eqs));
  sys.inverted.push_back(den);
  if (kind == CriticalKind::GD) {
    if (!data.Y) throw std::invalid_argument("GD multiplier system needs Grassmann data");
    PolyP tr = PolyP::zero(ring);
    idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long long y = (*data.Y)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (y != 0) tr = tr + xs[static_cast<std::size_t>(idx)].mul_scalar(fp_from_int(-2 * y, prime));
        ++idx;
      }
    sys.inverted.push_back(tr);
  }
  return sys;
}

#define GRASSDIST_INSTANTIATE(C)                                                                     \
  template std::pair<Poly<C>, Poly<C>> objective_traces<C>(const Ring&, int, const IntMatrix&);      \
  template Poly<C> trace_xy<C>(const Ring&, int, const IntMatrix&);                                  \
  template std::vector<Poly<C>> gradient_row<C>(const Ring&, int, const IntMatrix&);                 \
  template PolyMatrix<C> augmented_jacobian<C>(const Ideal<C>&, int, const IntMatrix&);              \
  template CriticalSystem<C> lagrangian_system<C>(const ModelSpec&, const Ideal<C>&,                 \
                                                  const DataPoint&);                                 \
  template Ideal<C> lagrangian_ideal<C>(const CriticalSystem<C>&, Rng&, const GroebnerBudget&);      \
  template CriticalSystem<C> ed_critical_system<C>(const ModelSpec&, const Ideal<C>&,                \
                                                   const DataPoint&);                                \
  template CriticalSystem<C> gd_critical_system<C>(const ModelSpec&, const Ideal<C>&,                \
                                                   const DataPoint&);                                \
  template PolyMatrix<C> parametric_critical_matrix<C>(const ParametricRep&, const Ring&,            \
                                                       const IntMatrix&);                            \
  template CriticalSystem<C> parametric_critical_system<C>(const ModelSpec&, const Ring&,            \
                                                            const DataPoint&, CriticalKind, Rng&);   \
  template PointCount count_critical<C>(const CriticalSystem<C>&, Rng&, const GroebnerBudget&);      \
  template Ideal<C> grassmann_commutator_ideal<C>(const Ring&, int, const IntMatrix&);               \
  template Ideal<C> extraneous_ideal<C>(int, const IntMatrix&, const Ring&, Rng&,                    \
                                        const GroebnerBudget&);

GRASSDIST_INSTANTIATE(Rational)
GRASSDIST_INSTANTIATE(std::uint64_t)
#undef GRASSDIST_INSTANTIATE

}  // namespace grassdist
