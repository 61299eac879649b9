#pragma once

#include <initializer_list>
#include <vector>

#include "tropgw/rational.hpp"

namespace tropgw {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {
    check(rows >= 0 && cols >= 0, "IntMatrix: negative shape");
  }
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto& r : rows) {
      check(static_cast<int>(r.size()) == cols_, "IntMatrix: ragged rows");
      for (long v : r) a_.emplace_back(v);
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& at(int i, int j) { return a_[i * cols_ + j]; }
  const mpz_class& at(int i, int j) const { return a_[i * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class det_exact(IntMatrix m) {
  check(m.rows() == m.cols(), "det_exact: matrix not square");
  const int n = m.rows();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : mpz_class(-m.at(n - 1, n - 1));
}

/// Weight of the origin in the intersection product max{h_n,0}...max{h_1,0}.V,
/// where the rows of h are the linear forms h_i. Computed by triangular
/// lattice reduction: unimodular column operations bring the matrix to lower
/// triangular form h_i = a_{i,1} l_1 + ... + a_{i,i} l_i, and the weight is
/// |a_{1,1} * ... * a_{n,n}|. Singular input gives 0.
inline mpz_class weight_at_origin(IntMatrix h) {
  check(h.rows() == h.cols(), "weight_at_origin: matrix not square");
  const int n = h.rows();
  mpz_class prod = 1;
  for (int i = 0; i < n; ++i) {
    // Euclidean reduction on row i over the working columns j >= i:
    // pivot on the entry of least absolute value (ties to the smallest
    // index), reduce the others modulo it, repeat until one survives.
    for (;;) {
      int pivot = -1;
      for (int j = i; j < n; ++j) {
        if (h.at(i, j) == 0) continue;
        if (pivot < 0 ||
            mpz_cmpabs(h.at(i, j).get_mpz_t(), h.at(i, pivot).get_mpz_t()) < 0)
          pivot = j;
      }
      if (pivot < 0) return 0;
      bool reduced = true;
      for (int j = i; j < n; ++j) {
        if (j == pivot || h.at(i, j) == 0) continue;
        mpz_class q = h.at(i, j) / h.at(i, pivot);  // truncated division
        if (q != 0)
          for (int r = 0; r < n; ++r) h.at(r, j) -= q * h.at(r, pivot);
        if (h.at(i, j) != 0) reduced = false;
      }
      if (reduced) {
        if (pivot != i)
          for (int r = 0; r < n; ++r) swap(h.at(r, i), h.at(r, pivot));
        break;
      }
    }
    prod *= h.at(i, i);
  }
  return abs(prod);
}

}  // namespace tropgw
