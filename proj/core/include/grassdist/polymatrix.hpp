#pragma once

#include <vector>

#include "grassdist/poly.hpp"

namespace grassdist {

/// Dense matrix of polynomials sharing one ring.
template <class C>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(Ring ring, int rows, int cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        entries_(static_cast<std::size_t>(rows * cols), Poly<C>::zero(ring_)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Ring& ring() const { return ring_; }

  Poly<C>& at(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Poly<C>& at(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix transpose() const;
  Poly<C> trace() const;

 private:
  Ring ring_;
  int rows_ = 0, cols_ = 0;
  std::vector<Poly<C>> entries_;
};

using PolyMatQ = PolyMatrix<Rational>;
using PolyMatP = PolyMatrix<std::uint64_t>;

/// Determinant by cofactor expansion with memoization on column subsets.
template <class C>
Poly<C> determinant(const PolyMatrix<C>& m);

/// All k x k minors in lexicographic order of (row subset, column subset).
template <class C>
std::vector<Poly<C>> minors(const PolyMatrix<C>& m, int k);

/// Jacobian: rows indexed by polys, columns by the selected variables.
template <class C>
PolyMatrix<C> jacobian(const std::vector<Poly<C>>& polys, const std::vector<int>& vars);

/// The Plucker quadric x_ij x_kl - x_ik x_jl + x_il x_jk in `ring`, which
/// must contain the six variable names for 1 <= i < j < k < l <= n.
template <class C>
Poly<C> pfaffian4(const Ring& ring, int n, int i, int j, int k, int l);

/// The n x n skew-symmetric matrix of Plucker variables over `ring`.
template <class C>
PolyMatrix<C> plucker_matrix(const Ring& ring, int n);

/// The n x n symmetric matrix of p_ij variables over `ring`.
template <class C>
PolyMatrix<C> sym_matrix(const Ring& ring, int n);

/// Constant matrix from integer entries.
template <class C>
PolyMatrix<C> const_matrix(const Ring& ring, const std::vector<std::vector<long long>>& rows);

}  // namespace grassdist
