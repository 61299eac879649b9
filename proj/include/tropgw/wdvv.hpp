#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tropgw/cache.hpp"
#include "tropgw/invariant.hpp"
#include "tropgw/rag_rug.hpp"

namespace tropgw {

/// Computes any descendant invariant exactly by the reduction strategy:
/// divisor equation strips line ends, string equation strips free ends, the
/// one-point closed form and the all-zero-psi curve count provide the base
/// cases, and the WDVV equation lowers the degree otherwise.
class WdvvEngine {
 public:
  enum class BaseMode { RagRug, Table };

  explicit WdvvEngine(BaseMode mode = BaseMode::RagRug) : baseMode_(mode) {}

  MemoCache& cache() { return cache_; }
  BaseMode baseMode() const { return baseMode_; }

  static constexpr std::array<long, 5> kBaseTable = {0, 1, 1, 12, 620};  // N_d, d<=4

  InvariantValue compute(InvariantQuery q) {
    q.canonicalize();
    if (q.d < 1) throw DimensionError("degree must be >= 1");
    if (q.l < 0 || q.m < 0) throw DimensionError("negative end count");
    for (int r : q.rs)
      if (r < 0) throw DimensionError("negative psi power");
    if (!q.dimensionValid())
      throw DimensionError(
          "dimension mismatch: l+3d-1=" + std::to_string(q.l + 3 * q.d - 1) +
          ", n+sum r=" + std::to_string(q.n() + q.rsSum()));

    std::string method;
    Rational dummy;
    if (cache_.lookup(q.key(), dummy))
      method = "cache";
    else if (q.m > 0)
      method = "divisor";
    else if (q.l > 0)
      method = "string";
    else if (q.n() == 1)
      method = "closed-form";
    else if (q.rsSum() == 0)
      method = "base-all-zero";
    else
      method = "wdvv";

    Rational v = value(q);
    return {v, v * Rational(factorial_cubed(static_cast<unsigned>(q.d))),
            method};
  }

  /// Internal semantics: dimension-invalid queries evaluate to 0.
  Rational value(InvariantQuery q) { return valueInner(std::move(q), kTop); }

  /// <tau_{3d-2}(2)>_d = 1/(d!)^3.
  static Rational one_point_value(int d) {
    check(d >= 1, "one_point_value: d >= 1");
    return Rational(1) / Rational(factorial_cubed(static_cast<unsigned>(d)));
  }

  /// N_d, the count of rational degree-d curves through 3d-1 points,
  /// computed by the lattice-path algorithm itself.
  Rational base_all_zero(int d) {
    check(d >= 1, "base_all_zero: d >= 1");
    if (d >= static_cast<int>(kBaseTable.size()))
      throw ScaleError("base_all_zero: degree beyond enumeration budget");
    if (baseMode_ == BaseMode::Table) return Rational(kBaseTable[d]);
    std::vector<int> zeros(3 * d - 1, 0);
    Rational v = count_rag_rugs(d, zeros);
    check(v == Rational(kBaseTable[d]), "base_all_zero: table disagreement");
    return v;
  }

  /// One application of the WDVV equation for l = m = 0, n >= 2, max r >= 1.
  /// End 3 is a maximal-psi end and end 4 the next end in canonical order.
  Rational wdvv_step(int d, std::vector<int> rs) {
    std::sort(rs.rbegin(), rs.rend());
    return wdvvStepInner(d, rs, 0, 1, kTop);
  }

  /// Test hook: the same step with an explicit admissible choice of the two
  /// distinguished ends (rs[i3] >= 1 required, i4 != i3).
  Rational wdvv_step_with_ends(int d, std::vector<int> rs, int i3, int i4) {
    return wdvvStepInner(d, rs, i3, i4, kTop);
  }

  /// String equation for l >= 1, m = 0: one (count, reduced query) pair per
  /// distinct positive psi power. The empty list means the value is 0.
  static std::vector<std::pair<int, InvariantQuery>> string_reduce(
      InvariantQuery q) {
    q.canonicalize();
    check(q.l >= 1 && q.m == 0, "string_reduce: needs l >= 1, m = 0");
    std::vector<std::pair<int, InvariantQuery>> out;
    for (size_t i = 0; i < q.rs.size(); ++i) {
      if (q.rs[i] <= 0) continue;
      if (i > 0 && q.rs[i] == q.rs[i - 1]) continue;  // one entry per value
      int count = 0;
      for (int r : q.rs) count += r == q.rs[i];
      InvariantQuery sub = q;
      sub.l -= 1;
      sub.rs[i] -= 1;
      sub.canonicalize();
      out.push_back({count, std::move(sub)});
    }
    return out;
  }

  /// Divisor equation: strips one line end, factor d.
  static std::pair<long, InvariantQuery> divisor_reduce(InvariantQuery q) {
    check(q.m >= 1 && q.d >= 1, "divisor_reduce: needs m >= 1, d >= 1");
    InvariantQuery sub = q;
    sub.m -= 1;
    return {q.d, std::move(sub)};
  }

 private:
  struct Measure {
    int d;
    int64_t conditions;  // n + sum(r)
    int ends;            // l + m
    bool operator<(const Measure& o) const {
      if (d != o.d) return d < o.d;
      if (conditions != o.conditions) return conditions < o.conditions;
      return ends < o.ends;
    }
  };
  static constexpr Measure kTop{1 << 28, int64_t{1} << 60, 1 << 28};

  BaseMode baseMode_;
  MemoCache cache_;

  Rational valueInner(InvariantQuery q, Measure parent) {
    q.canonicalize();
    check(q.d >= 1, "value: degree must be >= 1");
    Measure mine{q.d, q.n() + q.rsSum(), q.l + q.m};
    check(mine < parent, "reduction must decrease the recursion measure");
    if (!q.dimensionValid()) return Rational(0);

    const std::string key = q.key();
    Rational v;
    if (cache_.lookup(key, v)) return v;

    if (q.m > 0) {
      InvariantQuery sub = q;
      sub.m = 0;
      mpz_class f;
      mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned>(q.d),
                    static_cast<unsigned>(q.m));
      v = Rational(f) * valueInner(std::move(sub), mine);
    } else if (q.l > 0) {
      v = Rational(0);
      for (auto& [count, sub] : string_reduce(q))
        v += Rational(count) * valueInner(std::move(sub), mine);
    } else if (q.n() == 1) {
      check(q.rs[0] == 3 * q.d - 2, "one-point: psi power forced by dimension");
      v = one_point_value(q.d);
    } else if (q.rsSum() == 0) {
      v = base_all_zero(q.d);
    } else {
      check(q.n() >= 2 && q.d >= 2, "wdvv: preconditions");
      v = wdvvStepInner(q.d, q.rs, 0, 1, mine);
    }

    cache_.insert(key, v);
    return v;
  }

  Rational wdvvStepInner(int d, std::vector<int> rs, int i3, int i4,
                         Measure parent) {
    const int n = static_cast<int>(rs.size());
    check(n >= 2 && d >= 2, "wdvv_step: needs n >= 2 and d >= 2");
    check(i3 != i4 && i3 >= 0 && i4 >= 0 && i3 < n && i4 < n,
          "wdvv_step: bad end choice");
    const int r3 = rs[i3], r4 = rs[i4];
    check(r3 >= 1, "wdvv_step: end 3 must carry a psi power");

    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
      if (i != i3 && i != i4) rest.push_back(rs[i]);
    std::sort(rest.rbegin(), rest.rend());

    // Distinct values of the remaining psi multiset, with counts.
    std::vector<std::pair<int, int>> vals;  // (value, count)
    for (int r : rest) {
      if (!vals.empty() && vals.back().first == r) {
        ++vals.back().second;
      } else {
        vals.push_back({r, 1});
      }
    }

    Rational total(0);
    std::vector<int> take(vals.size(), 0);
    auto splits = [&](auto&& self, size_t idx, const auto& emit) -> void {
      if (idx == vals.size()) { emit(); return; }
      for (take[idx] = 0; take[idx] <= vals[idx].second; ++take[idx])
        self(self, idx + 1, emit);
      take[idx] = 0;
    };

    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      for (int e = 0; e <= 2; ++e) {
        const int f = 2 - e;
        auto emit = [&]() {
          mpz_class coeff = 1;
          std::vector<int> n1, n2;
          for (size_t i = 0; i < vals.size(); ++i) {
            coeff *= binomial(static_cast<unsigned>(vals[i].second),
                              static_cast<unsigned>(take[i]));
            for (int t = 0; t < take[i]; ++t) n1.push_back(vals[i].first);
            for (int t = take[i]; t < vals[i].second; ++t)
              n2.push_back(vals[i].first);
          }
          auto makeQuery = [&](int deg, int extraL, int extraM,
                               std::vector<int> base, int cod) {
            InvariantQuery q;
            q.d = deg;
            q.l = extraL + (cod == 0 ? 1 : 0);
            q.m = extraM + (cod == 1 ? 1 : 0);
            q.rs = std::move(base);
            if (cod == 2) q.rs.push_back(0);
            return q;
          };
          // <tau_0(0) tau_{r3} N1 tau_0(e)> * <tau_0(1) tau_{r4} N2 tau_0(f)>
          {
            auto q1 = makeQuery(d1, 1, 0, withValue(n1, r3), e);
            auto q2 = makeQuery(d2, 0, 1, withValue(n2, r4), f);
            Rational v1 = valueInner(std::move(q1), parent);
            if (!v1.isZero())
              total += Rational(coeff) * v1 * valueInner(std::move(q2), parent);
          }
          // - <tau_0(0) tau_0(1) N1 tau_0(e)> * <tau_{r3} tau_{r4} N2 tau_0(f)>
          {
            auto q1 = makeQuery(d1, 1, 1, n1, e);
            auto q2 = makeQuery(d2, 0, 0, withValues(n2, r3, r4), f);
            Rational v1 = valueInner(std::move(q1), parent);
            if (!v1.isZero())
              total -= Rational(coeff) * v1 * valueInner(std::move(q2), parent);
          }
        };
        splits(splits, 0, emit);
      }
    }
    return total / Rational(d);
  }

  static std::vector<int> withValue(std::vector<int> v, int x) {
    v.push_back(x);
    return v;
  }
  static std::vector<int> withValues(std::vector<int> v, int x, int y) {
    v.push_back(x);
    v.push_back(y);
    return v;
  }
};

}  // namespace tropgw
