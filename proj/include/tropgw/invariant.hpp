#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "tropgw/rational.hpp"

namespace tropgw {

/// One descendant invariant <tau_0(0)^l tau_0(1)^m prod_k tau_{r_k}(2)>_d.
/// Canonical key sorts the psi powers descending; invariants do not depend
/// on the order of the point conditions.
struct InvariantQuery {
  int d = 0;
  int l = 0;  // free ends tau_0(0)
  int m = 0;  // line ends tau_0(1)
  std::vector<int> rs;  // psi powers at point ends

  void canonicalize() { std::sort(rs.rbegin(), rs.rend()); }

  int n() const { return static_cast<int>(rs.size()); }
  int64_t rsSum() const { return std::accumulate(rs.begin(), rs.end(), int64_t{0}); }

  /// l + 3d - 1 = n + sum(r_k); exactly when the count is finite.
  bool dimensionValid() const { return l + 3 * d - 1 == n() + rsSum(); }

  std::string key() const {
    std::string k = "d=" + std::to_string(d) + ";l=" + std::to_string(l) +
                    ";m=" + std::to_string(m) + ";rs=";
    auto sorted = rs;
    std::sort(sorted.rbegin(), sorted.rend());
    for (size_t i = 0; i < sorted.size(); ++i) {
      if (i) k += ",";
      k += std::to_string(sorted[i]);
    }
    return k;
  }
};

struct InvariantValue {
  Rational value;           // invariant (degree divided by (d!)^3)
  Rational labelled_value;  // value * (d!)^3
  std::string method;       // closed-form | string | divisor | wdvv | base-all-zero | cache
};

}  // namespace tropgw
