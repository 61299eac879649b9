#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "test_oracles.hpp"
#include "tropgw/curve_oracle.hpp"
#include "tropgw/wdvv.hpp"

using namespace tropgw;

TEST_CASE("dimension condition") {
  CHECK(InvariantQuery{1, 0, 0, {0, 0}}.dimensionValid());
  CHECK(InvariantQuery{2, 0, 0, {4}}.dimensionValid());
  CHECK_FALSE(InvariantQuery{1, 0, 0, {1, 0}}.dimensionValid());
}

TEST_CASE("divisor and string reductions") {
  auto [factor, reduced] = WdvvEngine::divisor_reduce({2, 0, 1, {1, 0, 0}});
  CHECK(factor == 2);
  CHECK(reduced.m == 0);

  auto terms = WdvvEngine::string_reduce({1, 1, 0, {1, 0}});
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].first == 1);
  CHECK(terms[0].second.rs == std::vector<int>{0, 0});
  CHECK(terms[0].second.l == 0);

  CHECK(WdvvEngine::string_reduce({1, 1, 0, {0, 0, 0}}).empty());

  auto twoEqual = WdvvEngine::string_reduce({2, 1, 0, {2, 2}});
  REQUIRE(twoEqual.size() == 1);
  CHECK(twoEqual[0].first == 2);
  CHECK(twoEqual[0].second.rs == std::vector<int>{2, 1});
}

TEST_CASE("one-point values") {
  CHECK(WdvvEngine::one_point_value(1) == Rational(1));
  CHECK(WdvvEngine::one_point_value(2) == Rational(1, 8));
  CHECK(WdvvEngine::one_point_value(3) == Rational(1, 216));
}

TEST_CASE("base case all-zero") {
  WdvvEngine eng;
  CHECK(eng.base_all_zero(1) == Rational(1));
  CHECK(eng.base_all_zero(3) == Rational(12));
  CHECK(Rational(testing::kontsevichNumber(3)) == eng.base_all_zero(3));
  WdvvEngine table(WdvvEngine::BaseMode::Table);
  CHECK(table.base_all_zero(3) == Rational(12));
  CHECK_THROWS_AS(table.base_all_zero(5), ScaleError);
}

TEST_CASE("compute_invariant examples") {
  WdvvEngine eng;
  CHECK(eng.compute({2, 0, 0, {4}}).value == Rational(1, 8));
  CHECK(eng.compute({3, 0, 0, std::vector<int>(8, 0)}).value == Rational(12));
  CHECK_THROWS_AS(eng.compute({1, 0, 0, {1, 0}}), DimensionError);
  CHECK_THROWS_AS(eng.compute({0, 0, 0, {}}), DimensionError);
  CHECK(eng.compute({2, 0, 0, {1, 0, 0, 0}}).value ==
        oracle_invariant(2, {1, 0, 0, 0}, 4242));
  auto v = eng.compute({2, 0, 0, {4}});
  CHECK(v.labelled_value == Rational(1));
  CHECK(v.value * Rational(factorial_cubed(2)) == v.labelled_value);
}

TEST_CASE("wdvv step agrees with the oracle at degree 2") {
  WdvvEngine eng;
  CHECK(eng.wdvv_step(2, {1, 0, 0, 0}) == oracle_invariant(2, {1, 0, 0, 0}, 7));
}

TEST_CASE("wdvv end choice does not matter") {
  WdvvEngine eng;
  std::vector<int> rs{2, 2, 0, 0};
  Rational ref = eng.wdvv_step(3, rs);
  for (int i3 = 0; i3 < 4; ++i3) {
    if (rs[i3] < 1) continue;
    for (int i4 = 0; i4 < 4; ++i4) {
      if (i4 == i3) continue;
      CHECK(eng.wdvv_step_with_ends(3, rs, i3, i4) == ref);
    }
  }
}

TEST_CASE("permutation invariance of the psi powers") {
  WdvvEngine eng;
  CHECK(eng.compute({2, 0, 0, {0, 1, 0, 0}}).value ==
        eng.compute({2, 0, 0, {1, 0, 0, 0}}).value);
  CHECK(eng.compute({3, 0, 0, {0, 2, 0, 2}}).value ==
        eng.compute({3, 0, 0, {2, 2, 0, 0}}).value);
}

TEST_CASE("line ends contribute a factor d each") {
  WdvvEngine eng;
  for (int m = 1; m <= 3; ++m) {
    Rational with = eng.compute({2, 0, m, {1, 0, 0, 0}}).value;
    Rational without = eng.compute({2, 0, 0, {1, 0, 0, 0}}).value;
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), 2, m);
    CHECK(with == Rational(f) * without);
  }
}

TEST_CASE("string equation holds as a direct identity") {
  WdvvEngine eng;
  std::mt19937_64 rng(2718);
  // valid queries with l >= 1, m = 0, d <= 2
  std::vector<InvariantQuery> pool;
  for (int d = 1; d <= 2; ++d)
    for (int l = 1; l <= 2; ++l) {
      int budget = l + 3 * d - 1;  // n + sum r
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
        for (int r = 0; r <= std::min<int64_t>(maxNext, budget - used - sum); ++r) {
          auto next = rs;
          next.push_back(r);
          stack.push_back(next);
        }
      }
    }
  REQUIRE(pool.size() >= 10);
  std::shuffle(pool.begin(), pool.end(), rng);
  for (size_t i = 0; i < 10; ++i) {
    const auto& q = pool[i];
    CAPTURE(q.d, q.l, q.rs);
    Rational lhs = eng.compute(q).value;
    Rational rhs(0);
    for (auto& [count, sub] : WdvvEngine::string_reduce(q))
      rhs += Rational(count) * eng.compute(sub).value;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("memo cache") {
  MemoCache cache;
  cache.insert("k", Rational(1, 2));
  cache.insert("k", Rational(1, 2));  // same value: fine
  CHECK_THROWS(cache.insert("k", Rational(1, 3)));
  Rational out;
  CHECK(cache.lookup("k", out));
  CHECK(out == Rational(1, 2));
  CHECK_FALSE(cache.lookup("absent", out));
}

TEST_CASE("cache file round trip") {
  std::string path = "tropgw_test_cache.tsv";
  std::remove(path.c_str());
  {
    WdvvEngine eng;
    eng.compute({2, 0, 0, {1, 0, 0, 0}});
    eng.cache().save(path);
    CHECK(eng.cache().size() > 1);
  }
  {
    MemoCache cache;
    cache.load(path);
    Rational v;
    REQUIRE(cache.lookup(InvariantQuery{2, 0, 0, {1, 0, 0, 0}}.key(), v));
    CHECK(v == Rational(1));
    // cached values short-circuit the computation
    WdvvEngine eng;
    eng.cache().load(path);
    auto res = eng.compute({2, 0, 0, {1, 0, 0, 0}});
    CHECK(res.method == "cache");
    CHECK(res.value == Rational(1));
  }
  {
    MemoCache cache;
    cache.load("definitely_missing_cache_file.tsv");
    CHECK(cache.size() == 0);
  }
  std::remove(path.c_str());
}

TEST_CASE("canonical keys") {
  InvariantQuery q{2, 0, 0, {0, 1, 0, 0}};
  CHECK(q.key() == "d=2;l=0;m=0;rs=1,0,0,0");
  InvariantQuery p{2, 1, 3, {}};
  CHECK(p.key() == "d=2;l=1;m=3;rs=");
}

TEST_CASE("one-point degree recursion") {
  WdvvEngine eng;
  for (int d = 2; d <= 5; ++d) {
    Rational lhs = Rational(static_cast<long>(d) * d * d) *
                   eng.compute({d, 0, 0, {3 * d - 2}}).value;
    Rational rhs = eng.compute({d - 1, 0, 0, {3 * d - 5}}).value;
    CHECK(lhs == rhs);
  }
}
