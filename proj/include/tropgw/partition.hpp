#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tropgw/rational.hpp"

namespace tropgw {

/// Partition of a positive integer; canonical form is parts sorted descending.
using Partition = std::vector<int64_t>;

inline int64_t partitionSum(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), int64_t{0});
}

inline bool isAllOnes(const Partition& p) {
  return std::all_of(p.begin(), p.end(), [](int64_t x) { return x == 1; });
}

inline Partition onesPartition(int64_t n) {
  return Partition(static_cast<size_t>(n), 1);
}

inline void canonicalizePartition(Partition& p) {
  std::sort(p.rbegin(), p.rend());
}

/// All partitions of n in canonical (descending) form.
inline std::vector<Partition> partitionsOf(int64_t n) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int64_t left, int64_t maxPart) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int64_t p = std::min(left, maxPart); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace tropgw
