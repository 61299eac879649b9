// Independent test-time oracles. These deliberately avoid the library's own
// computation paths.
#pragma once

#include "tropgw/matrix.hpp"
#include "tropgw/rational.hpp"

namespace tropgw::testing {

/// Classical recursion for the number N_d of rational plane curves of degree
/// d through 3d-1 general points:
///   N_d = sum_{dA+dB=d} N_dA N_dB dA^2 dB (dB C(3d-4,3dA-2) - dA C(3d-4,3dA-1))
inline mpz_class kontsevichNumber(int d) {
  static std::vector<mpz_class> memo{0, 1};  // N_1 = 1
  for (int k = static_cast<int>(memo.size()); k <= d; ++k) {
    mpz_class total = 0;
    for (int dA = 1; dA < k; ++dA) {
      int dB = k - dA;
      mpz_class term = memo[dA] * memo[dB] * dA * dA * dB;
      term *= dB * binomial(3 * k - 4, 3 * dA - 2) -
              dA * binomial(3 * k - 4, 3 * dA - 1);
      total += term;
    }
    memo.push_back(total);
  }
  return memo[d];
}

/// Plain cofactor-expansion determinant; independent of the fraction-free
/// elimination used by the library.
inline mpz_class cofactorDet(const IntMatrix& m) {
  const int n = m.rows();
  if (n == 1) return m.at(0, 0);
  mpz_class total = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(i - 1, cc++) = m.at(i, c);
      }
    }
    mpz_class term = m.at(0, j) * cofactorDet(sub);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

}  // namespace tropgw::testing
