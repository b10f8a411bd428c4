#include "grassdist/polymatrix.hpp"

#include <map>
#include <stdexcept>

namespace grassdist {

template <class C>
PolyMatrix<C> PolyMatrix<C>::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  PolyMatrix r(ring_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Poly<C> s = Poly<C>::zero(ring_);
      for (int k = 0; k < cols_; ++k) s = s + at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(s);
    }
  return r;
}

template <class C>
PolyMatrix<C> PolyMatrix<C>::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  PolyMatrix r(ring_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
  return r;
}

template <class C>
PolyMatrix<C> PolyMatrix<C>::transpose() const {
  PolyMatrix r(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

template <class C>
Poly<C> PolyMatrix<C>::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  Poly<C> s = Poly<C>::zero(ring_);
  for (int i = 0; i < rows_; ++i) s = s + at(i, i);
  return s;
}

namespace {

// det of the submatrix given by rows[r0..] and the columns in colmask,
// memoized per (r0 implicit in popcount, colmask).
template <class C>
Poly<C> det_rec(const PolyMatrix<C>& m, const std::vector<int>& rows, const std::vector<int>& cols,
                std::uint32_t colmask, std::map<std::uint32_t, Poly<C>>& memo) {
  int remaining = __builtin_popcount(colmask);
  int r0 = static_cast<int>(rows.size()) - remaining;
  if (remaining == 0) return Poly<C>::from_int(m.ring(), 1);
  auto it = memo.find(colmask);
  if (it != memo.end()) return it->second;
  Poly<C> acc = Poly<C>::zero(m.ring());
  int sign = 1;
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    if (!(colmask & (1u << ci))) continue;
    const Poly<C>& e = m.at(rows[static_cast<std::size_t>(r0)], cols[ci]);
    if (!e.is_zero()) {
      Poly<C> sub = det_rec(m, rows, cols, colmask & ~(1u << ci), memo);
      Poly<C> term = e * sub;
      acc = sign > 0 ? acc + term : acc - term;
    }
    sign = -sign;
  }
  memo.emplace(colmask, acc);
  return acc;
}

template <class C>
Poly<C> det_sub(const PolyMatrix<C>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::map<std::uint32_t, Poly<C>> memo;
  return det_rec(m, rows, cols, (1u << cols.size()) - 1, memo);
}

void next_subset(std::vector<int>& idx, int n, bool& done) {
  int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) {
    done = true;
    return;
  }
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
}

}  // namespace

template <class C>
Poly<C> determinant(const PolyMatrix<C>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<int> rows(static_cast<std::size_t>(m.rows())), cols(static_cast<std::size_t>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  for (int j = 0; j < m.cols(); ++j) cols[static_cast<std::size_t>(j)] = j;
  return det_sub(m, rows, cols);
}

template <class C>
std::vector<Poly<C>> minors(const PolyMatrix<C>& m, int k) {
  if (k <= 0) throw std::invalid_argument("minor size must be positive");
  if (k > m.rows() || k > m.cols()) throw std::invalid_argument("minor size exceeds matrix");
  std::vector<Poly<C>> out;
  std::vector<int> rsel(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) rsel[static_cast<std::size_t>(i)] = i;
  bool rdone = false;
  while (!rdone) {
    std::vector<int> csel(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) csel[static_cast<std::size_t>(j)] = j;
    bool cdone = false;
    while (!cdone) {
      out.push_back(det_sub(m, rsel, csel));
      next_subset(csel, m.cols(), cdone);
    }
    next_subset(rsel, m.rows(), rdone);
  }
  return out;
}

template <class C>
PolyMatrix<C> jacobian(const std::vector<Poly<C>>& polys, const std::vector<int>& vars) {
  if (polys.empty()) throw std::invalid_argument("jacobian of empty system");
  const Ring& ring = polys[0].ring();
  PolyMatrix<C> j(ring, static_cast<int>(polys.size()), static_cast<int>(vars.size()));
  for (int r = 0; r < j.rows(); ++r)
    for (int c = 0; c < j.cols(); ++c)
      j.at(r, c) = polys[static_cast<std::size_t>(r)].derivative(vars[static_cast<std::size_t>(c)]);
  return j;
}

template <class C>
Poly<C> pfaffian4(const Ring& ring, int n, int i, int j, int k, int l) {
  if (!(1 <= i && i < j && j < k && k < l && l <= n))
    throw std::invalid_argument("pfaffian4 indices must be strictly increasing");
  auto v = [&](int a, int b) { return Poly<C>::variable(ring, plucker_index(n, a, b)); };
  return v(i, j) * v(k, l) - v(i, k) * v(j, l) + v(i, l) * v(j, k);
}

template <class C>
PolyMatrix<C> plucker_matrix(const Ring& ring, int n) {
  PolyMatrix<C> m(ring, n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Poly<C> x = Poly<C>::variable(ring, plucker_index(n, i, j));
      m.at(i - 1, j - 1) = x;
      m.at(j - 1, i - 1) = -x;
    }
  return m;
}

template <class C>
PolyMatrix<C> sym_matrix(const Ring& ring, int n) {
  PolyMatrix<C> m(ring, n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Poly<C> p = Poly<C>::variable(ring, sym_index(n, i, j));
      m.at(i - 1, j - 1) = p;
      m.at(j - 1, i - 1) = p;
    }
  return m;
}

template <class C>
PolyMatrix<C> const_matrix(const Ring& ring, const std::vector<std::vector<long long>>& rows) {
  PolyMatrix<C> m(ring, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      m.at(i, j) = Poly<C>::from_int(ring, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

#define GRASSDIST_INSTANTIATE(C)                                                              \
  template class PolyMatrix<C>;                                                               \
  template Poly<C> determinant(const PolyMatrix<C>&);                                         \
  template std::vector<Poly<C>> minors(const PolyMatrix<C>&, int);                            \
  template PolyMatrix<C> jacobian(const std::vector<Poly<C>>&, const std::vector<int>&);      \
  template Poly<C> pfaffian4<C>(const Ring&, int, int, int, int, int);                        \
  template PolyMatrix<C> plucker_matrix<C>(const Ring&, int);                                 \
  template PolyMatrix<C> sym_matrix<C>(const Ring&, int);                                     \
  template PolyMatrix<C> const_matrix<C>(const Ring&, const std::vector<std::vector<long long>>&);

GRASSDIST_INSTANTIATE(Rational)
GRASSDIST_INSTANTIATE(std::uint64_t)
#undef GRASSDIST_INSTANTIATE

}  // namespace grassdist
