// Acceptance suite: runs every top-level criterion at its stated tolerance
// (all values exact rationals; tolerances are equalities) and prints one
// pass/fail line per criterion.

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "test_oracles.hpp"
#include "tropgw/curve_oracle.hpp"
#include "tropgw/matrix.hpp"
#include "tropgw/wdvv.hpp"

using namespace tropgw;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, double secs,
            double budgetSecs, const std::string& detail = "") {
  bool inBudget = secs < budgetSecs;
  bool pass = ok && inBudget;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s (%.2fs of %.0fs budget)%s%s\n",
              pass ? "PASS" : "FAIL", idx, name.c_str(), secs, budgetSecs,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

std::string show(const std::vector<int>& rs) {
  std::string s = "(";
  for (size_t i = 0; i < rs.size(); ++i)
    s += (i ? "," : "") + std::to_string(rs[i]);
  return s + ")";
}

}  // namespace

int main() {
  WdvvEngine eng;

  {  // 1. one-point closed form
    auto t0 = Clock::now();
    const Rational expected[] = {Rational(0), Rational(1), Rational(1, 8),
                                 Rational(1, 216), Rational(1, 13824)};
    bool ok = true;
    for (int d = 1; d <= 4; ++d)
      ok &= eng.compute({d, 0, 0, {3 * d - 2}}).value == expected[d];
    report(1, "one-point closed form 1/(d!)^3 for d=1..4", ok,
           std::chrono::duration<double>(Clock::now() - t0).count(), 1.0);
  }

  {  // 2. one-point recursion
    auto t0 = Clock::now();
    bool ok = true;
    for (int d = 2; d <= 5; ++d) {
      Rational lhs = Rational(static_cast<long>(d) * d * d) *
                     eng.compute({d, 0, 0, {3 * d - 2}}).value;
      Rational rhs = eng.compute({d - 1, 0, 0, {3 * d - 5}}).value;
      ok &= lhs == rhs;
    }
    report(2, "d^3 <tau_{3d-2}>_d = <tau_{3d-5}>_{d-1} for d=2..5", ok,
           std::chrono::duration<double>(Clock::now() - t0).count(), 1.0);
  }

  {  // 3. Kontsevich numbers via the lattice-path algorithm
    auto t0 = Clock::now();
    const long expected[] = {0, 1, 1, 12, 620};
    bool ok = true;
    std::string detail;
    for (int d = 1; d <= 4; ++d) {
      Rational v = count_rag_rugs(d, std::vector<int>(3 * d - 1, 0));
      bool match = v == Rational(expected[d]) &&
                   Rational(testing::kontsevichNumber(d)) == v;
      if (!match) detail += " N_" + std::to_string(d) + "=" + v.str();
      ok &= match;
    }
    report(3, "N_d by rag rugs = 1, 1, 12, 620 (confirmed by the classical recursion)",
           ok, std::chrono::duration<double>(Clock::now() - t0).count(), 600.0,
           detail);
  }

  {  // 4. cross-engine agreement
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    std::vector<std::pair<int, std::vector<int>>> small = {
        {1, {1}},       {1, {0, 0}},       {2, {4}},
        {2, {3, 0}},    {2, {2, 1}},       {2, {2, 0, 0}},
        {2, {1, 1, 0}}, {2, {1, 0, 0, 0}}, {2, {0, 0, 0, 0, 0}}};
    for (auto& [d, rs] : small) {
      Rational e = eng.compute({d, 0, 0, rs}).value;
      // two independent seeds, each internally double-drawn: one pass
      auto c1 = PointConfig::random(static_cast<int>(rs.size()), 101);
      auto c2 = PointConfig::random(static_cast<int>(rs.size()), mixSeed(101));
      auto c3 = PointConfig::random(static_cast<int>(rs.size()), 202);
      auto c4 = PointConfig::random(static_cast<int>(rs.size()), mixSeed(202));
      auto vals = oracle_values(d, rs, {c1, c2, c3, c4});
      bool match =
          vals[0] == e && vals[1] == e && vals[2] == e && vals[3] == e;
      if (!match) detail += " oracle@d=" + std::to_string(d) + show(rs);
      ok &= match;
    }
    std::vector<std::vector<int>> d3forms = {
        {7},          {6, 0},       {5, 1},       {4, 2},       {3, 3},
        {5, 0, 0},    {4, 1, 0},    {3, 2, 0},    {3, 1, 1},    {2, 2, 1},
        {4, 0, 0, 0}, {3, 1, 0, 0}, {2, 2, 0, 0}, {2, 1, 1, 0}, {1, 1, 1, 1}};
    for (auto& rs : d3forms) {
      bool match = eng.compute({3, 0, 0, rs}).value == count_rag_rugs(3, rs);
      if (!match) detail += " rug@d=3" + show(rs);
      ok &= match;
    }
    report(4, "wdvv = oracle on all d<=2 queries; wdvv = rag rugs on d=3, n<=4",
           ok, std::chrono::duration<double>(Clock::now() - t0).count(), 900.0,
           detail);
  }

  {  // 5. paper-example regressions in Delta_3
    auto t0 = Clock::now();
    std::vector<Rational> want{Rational(1), Rational(1, 4), Rational(1, 12)};
    std::vector<bool> seen(3, false);
    for (const auto& p : enumerate_end_paths(3, Sign::Minus)) {
      Rational mu = end_path_multiplicity(p);
      for (size_t i = 0; i < want.size(); ++i)
        if (mu == want[i]) seen[i] = true;
    }
    bool ok = seen[0] && seen[1] && seen[2];
    bool found32 = false;
    for (const auto& p : enumerate_labelled_paths(3))
      if (path_mu(p, Sign::Plus, 3) == Rational(3, 2)) { found32 = true; break; }
    ok &= found32;
    bool foundHalf = false;
    for (const auto& rug : enumerate_rag_rugs(3, {2, 2, 0, 0}))
      if (rug_multiplicity(rug) == Rational(1, 2)) { foundHalf = true; break; }
    ok &= foundHalf;
    report(5, "regressions: end-path values {1,1/4,1/12}; mu+ = 3/2; mu(F) = 1/2",
           ok, std::chrono::duration<double>(Clock::now() - t0).count(), 60.0);
  }

  {  // 6. determinant kernel
    auto t0 = Clock::now();
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> entry(-9, 9), size(1, 5);
    bool ok = true;
    for (int t = 0; t < 1000 && ok; ++t) {
      int n = size(rng);
      IntMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
      ok = weight_at_origin(m) == abs(det_exact(m));
    }
    report(6, "weight_at_origin = |det| on 1000 random matrices", ok,
           std::chrono::duration<double>(Clock::now() - t0).count(), 10.0);
  }

  {  // 7. property suite
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;

    // oracle seed invariance (the values are certified per seed already;
    // two distinct base seeds must agree too)
    for (auto& [d, rs] : std::vector<std::pair<int, std::vector<int>>>{
             {2, {2, 1}}, {2, {1, 1, 0}}}) {
      if (oracle_invariant(d, rs, 555) != oracle_invariant(d, rs, 777)) {
        ok = false;
        detail += " seed-invariance" + show(rs);
      }
    }

    // WDVV end-choice invariance
    {
      std::vector<int> rs{2, 2, 0, 0};
      Rational ref = eng.wdvv_step(3, rs);
      for (int i3 = 0; i3 < 4 && ok; ++i3) {
        if (rs[i3] < 1) continue;
        for (int i4 = 0; i4 < 4; ++i4) {
          if (i4 == i3) continue;
          if (eng.wdvv_step_with_ends(3, rs, i3, i4) != ref) {
            ok = false;
            detail += " end-choice";
            break;
          }
        }
      }
    }

    // permutation invariance of rs
    ok &= eng.compute({2, 0, 0, {0, 1, 0, 0}}).value ==
          eng.compute({2, 0, 0, {1, 0, 0, 0}}).value;
    ok &= eng.compute({3, 0, 0, {0, 2, 0, 2}}).value ==
          eng.compute({3, 0, 0, {2, 2, 0, 0}}).value;

    // string equation, both as reduction and as direct equality
    {
      std::vector<InvariantQuery> pool;
      for (int d = 1; d <= 2; ++d)
        for (int l = 1; l <= 2; ++l) {
          int budget = l + 3 * d - 1;
          std::vector<std::vector<int>> stack{{}};
          while (!stack.empty()) {
            auto rs = stack.back();
            stack.pop_back();
            int used = static_cast<int>(rs.size());
            int64_t sum = 0;
            for (int r : rs) sum += r;
            if (used + sum == budget && used >= 1) pool.push_back({d, l, 0, rs});
            if (used + sum >= budget || used >= 6) continue;
            int maxNext = rs.empty() ? budget : rs.back();
            for (int r = 0;
                 r <= std::min<int64_t>(maxNext, budget - used - sum); ++r) {
              auto next = rs;
              next.push_back(r);
              stack.push_back(next);
            }
          }
        }
      std::mt19937_64 rng(424242);
      std::shuffle(pool.begin(), pool.end(), rng);
      for (size_t i = 0; i < 10 && i < pool.size(); ++i) {
        const auto& q = pool[i];
        Rational lhs = eng.compute(q).value;
        Rational rhs(0);
        for (auto& [count, sub] : WdvvEngine::string_reduce(q))
          rhs += Rational(count) * eng.compute(sub).value;
        if (lhs != rhs) {
          ok = false;
          detail += " string@d=" + std::to_string(q.d) + show(q.rs);
        }
      }
    }

    // divisor identity: value(m=1) = d * value(m=0)
    for (auto& [d, rs] : std::vector<std::pair<int, std::vector<int>>>{
             {2, {1, 0, 0, 0}}, {2, {3, 0}}, {3, {2, 2, 0, 0}}, {1, {0, 0}},
             {2, {2, 1}}, {2, {4}}, {3, {7}}, {1, {1}}, {2, {2, 0, 0}},
             {3, {3, 2, 0}}}) {
      Rational m1 = eng.compute({d, 0, 1, rs}).value;
      Rational m0 = eng.compute({d, 0, 0, rs}).value;
      if (m1 != Rational(d) * m0) {
        ok = false;
        detail += " divisor@d=" + std::to_string(d) + show(rs);
      }
    }

    report(7, "properties: seeds, end choice, permutations, string, divisor",
           ok, std::chrono::duration<double>(Clock::now() - t0).count(), 300.0,
           detail);
  }

  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: FAILURES");
  return failures == 0 ? 0 : 1;
}
