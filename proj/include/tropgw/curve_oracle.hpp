#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tropgw/geometry.hpp"
#include "tropgw/invariant.hpp"
#include "tropgw/rational.hpp"

namespace tropgw {

inline mpz_class toMpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class out = (hi << 64) + mpz_class(static_cast<unsigned long>(u));
  return neg ? mpz_class(-out) : out;
}

/// Generic point configuration for the oracle: exact integer coordinates in
/// a wide box, screened so that no two points share a line of direction
/// (1,0), (0,1), (1,1) or (1,-1). Genericity is certified a posteriori by
/// seed agreement, not a priori.
struct PointConfig {
  std::vector<Pt> pts;
  uint64_t seed = 0;

  static PointConfig random(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> box(-1000000, 1000000);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<Pt> pts;
      for (int i = 0; i < n; ++i) pts.push_back({box(rng), box(rng)});
      bool ok = true;
      for (int i = 0; ok && i < n; ++i)
        for (int j = i + 1; ok && j < n; ++j) {
          const Pt a = pts[i], b = pts[j];
          if (a.x == b.x || a.y == b.y || a.x + a.y == b.x + b.y ||
              a.x - a.y == b.x - b.y)
            ok = false;
        }
      if (ok) return {std::move(pts), seed};
    }
    throw std::runtime_error("PointConfig: could not draw a screened sample");
  }
};

/// Combinatorial type of a marked rational tropical plane curve: a tree on
/// n marked ends plus 3d labelled directed ends, the vertex carrying mark k
/// having valence r_k + 3, every other internal vertex 3-valent.
struct CurveType {
  int d = 0, n = 0;
  std::vector<int> rs;
  int leafCount = 0;                  // marks 0..n-1, ends n..n+3d-1
  std::vector<std::vector<int>> adj;  // full adjacency (leaves + internal)
  std::vector<int> internals;         // internal vertex ids
  int root = -1;                      // vertex carrying mark 0
  std::vector<std::pair<int, int>> boundedEdges;  // (parent, child)
  std::vector<Pt> boundedDir;  // direction away from root, weight included
  std::vector<int> markVertex;

  Pt endDir(int leaf) const {
    int j = leaf - n;
    check(j >= 0 && j < 3 * d, "endDir: not an end leaf");
    if (j < d) return {-1, 0};
    if (j < 2 * d) return {0, -1};
    return {1, 1};
  }
};

namespace oracle_detail {

constexpr int kMaxRows = 12;
constexpr int kMaxCols = kMaxRows + 6;

/// Forward fraction-free (Bareiss) elimination of [A | B] to upper
/// triangular form; returns the signed determinant of A. All divisions are
/// exact; the triangular factor is left in place for back-substitution.
inline __int128 forwardBareiss(__int128 a[kMaxRows][kMaxCols], int n, int m) {
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n + m; ++j) std::swap(a[k][j], a[p][j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      const __int128 aik = a[i][k];
      for (int j = k + 1; j < n + m; ++j)
        a[i][j] = (a[i][j] * a[k][k] - aik * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

/// Scaled back-substitution after forwardBareiss: fills z with det * x for
/// the rhs column `col` (so x_i > 0 iff sign(z_i) == sign(det)). The pivoted
/// determinant detP = a[n-1][n-1] makes every division exact.
inline void backSubstituteScaled(const __int128 a[kMaxRows][kMaxCols], int n,
                                 int col, __int128 z[kMaxRows]) {
  const __int128 detP = a[n - 1][n - 1];
  for (int i = n - 1; i >= 0; --i) {
    __int128 acc = a[i][col] * detP;
    for (int j = i + 1; j < n; ++j) acc -= a[i][j] * z[j];
    z[i] = acc / a[i][i];
  }
}

}  // namespace oracle_detail

/// Enumerates all combinatorial types for (d, rs) by incremental leaf
/// insertion with a fixed global order (directed ends first, then marks by
/// descending psi power), which generates every admissible labelled tree
/// exactly once. Marked ends always sit at distinct vertices.
class TypeEnumerator {
 public:
  TypeEnumerator(int d, std::vector<int> rs) : d_(d), rs_(std::move(rs)) {
    std::sort(rs_.rbegin(), rs_.rend());
    n_ = static_cast<int>(rs_.size());
    check(n_ >= 1, "enumerate_types: needs at least one point end");
    L_ = n_ + 3 * d_;
    maxR_ = rs_.empty() ? 0 : rs_[0];
    adj_.assign(2 * L_, {});
    marked_.assign(2 * L_, false);
    vertexUsed_ = L_;
  }

  static void scaleGuard(int d, int n) {
    if (d <= 2) return;
    if (d == 3 && n <= 3) return;
    throw ScaleError("curve oracle: beyond the enumeration budget (d<=2, or d=3 with n<=3)");
  }

  template <typename Visit>
  void enumerate(Visit&& visit) {
    scaleGuard(d_, n_);
    int c = newInternal();
    for (int e = 0; e < 3; ++e) addEdge(n_ + e, c);
    rec(3, visit);
    for (int e = 0; e < 3; ++e) removeEdge(n_ + e, c);
    releaseInternal();
  }

  /// Snapshot of the current tree with directions; valid inside visit().
  CurveType snapshot() const {
    CurveType t;
    t.d = d_;
    t.n = n_;
    t.rs = rs_;
    t.leafCount = L_;
    t.adj.assign(adj_.begin(), adj_.begin() + vertexUsed_);
    for (int v = L_; v < vertexUsed_; ++v) t.internals.push_back(v);
    t.markVertex.resize(n_);
    for (int k = 0; k < n_; ++k) t.markVertex[k] = adj_[k][0];
    t.root = t.markVertex[0];

    // Parents by DFS from the root over internal-internal edges.
    std::vector<int> parent(vertexUsed_, -1), order;
    std::vector<bool> seen(vertexUsed_, false);
    order.push_back(t.root);
    seen[t.root] = true;
    for (size_t h = 0; h < order.size(); ++h) {
      int v = order[h];
      for (int w : adj_[v]) {
        if (w < L_ || seen[w]) continue;
        seen[w] = true;
        parent[w] = v;
        order.push_back(w);
      }
    }
    std::vector<Pt> subdir(vertexUsed_, Pt{0, 0});
    for (size_t h = order.size(); h-- > 0;) {
      int v = order[h];
      for (int w : adj_[v]) {
        if (w >= L_) continue;           // internal handled below
        if (w >= n_) subdir[v] = subdir[v] + t.endDir(w);
      }
      if (parent[v] >= 0) {
        subdir[parent[v]] = subdir[parent[v]] + subdir[v];
        t.boundedEdges.push_back({parent[v], v});
        t.boundedDir.push_back(subdir[v]);
      }
    }
    return t;
  }

 private:
  int d_, n_, L_, maxR_;
  std::vector<int> rs_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> marked_;
  int vertexUsed_;

  int newInternal() {
    if (vertexUsed_ == static_cast<int>(adj_.size())) adj_.emplace_back();
    adj_[vertexUsed_].clear();
    marked_[vertexUsed_] = false;
    return vertexUsed_++;
  }
  void releaseInternal() { --vertexUsed_; }
  void addEdge(int u, int v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  void removeEdge(int u, int v) {
    adj_[u].erase(std::find(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::find(adj_[v].begin(), adj_[v].end(), u));
  }

  std::vector<std::pair<int, int>> currentEdges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertexUsed_; ++u)
      for (int v : adj_[u])
        if (u < v) out.push_back({u, v});
    return out;
  }

  bool endPhaseFeasible() const {
    std::vector<int> degCount, markCount;
    for (int v = L_; v < vertexUsed_; ++v) {
      int deg = static_cast<int>(adj_[v].size());
      if (static_cast<size_t>(deg) >= degCount.size()) degCount.resize(deg + 1, 0);
      ++degCount[deg];
    }
    for (int r : rs_) {
      if (static_cast<size_t>(r + 2) >= markCount.size()) markCount.resize(r + 3, 0);
      ++markCount[r + 2];
    }
    degCount.resize(std::max(degCount.size(), markCount.size()), 0);
    markCount.resize(degCount.size(), 0);
    for (size_t deg = 4; deg < degCount.size(); ++deg)
      if (degCount[deg] != markCount[deg]) return false;
    return markCount.size() <= 3 || markCount[3] <= degCount[3];
  }

  // Leaf insertion order: ends n+3 .. n+3d-1, then marks 0..n-1
  // (rs is sorted descending, so positive-psi marks come first).
  // `inserted` counts leaves already placed, starting from the initial star.
  template <typename Visit>
  void rec(int inserted, Visit& visit) {
    if (inserted == 3 * d_ && !endPhaseFeasible()) return;
    if (inserted == 3 * d_ + n_) {
      visit(*this);
      return;
    }

    if (inserted < 3 * d_) {
      const int leaf = n_ + inserted;
      for (auto [u, v] : currentEdges())
        subdivideAndRecurse(u, v, leaf, inserted + 1, visit);
      if (maxR_ > 0) {
        for (int v = L_; v < vertexUsed_; ++v) {
          if (static_cast<int>(adj_[v].size()) + 1 > 2 + maxR_) continue;
          addEdge(leaf, v);
          rec(inserted + 1, visit);
          removeEdge(leaf, v);
        }
      }
      return;
    }

    const int mark = inserted - 3 * d_;
    const int r = rs_[mark];
    if (r == 0) {
      // never subdivide another mark's leaf edge: marked ends lie at
      // pairwise distinct vertices
      for (auto [u, v] : currentEdges())
        if (u >= n_ && v >= n_)
          subdivideAndRecurse(u, v, mark, inserted + 1, visit);
      return;
    }
    for (int v = L_; v < vertexUsed_; ++v) {
      if (marked_[v] || static_cast<int>(adj_[v].size()) != r + 2) continue;
      marked_[v] = true;
      addEdge(mark, v);
      rec(inserted + 1, visit);
      removeEdge(mark, v);
      marked_[v] = false;
    }
  }

  template <typename Visit>
  void subdivideAndRecurse(int u, int v, int leaf, int insertedNext,
                           Visit& visit) {
    int w = newInternal();
    removeEdge(u, v);
    addEdge(u, w);
    addEdge(w, v);
    addEdge(leaf, w);
    rec(insertedNext, visit);
    removeEdge(leaf, w);
    removeEdge(w, v);
    removeEdge(u, w);
    addEdge(u, v);
    releaseInternal();
  }
};

/// Materialized type list; guarded, intended for small inputs and tests.
inline std::vector<CurveType> enumerate_types(int d, const std::vector<int>& rs,
                                              size_t maxTypes = 2000000) {
  TypeEnumerator en(d, rs);
  std::vector<CurveType> out;
  en.enumerate([&](const TypeEnumerator& e) {
    if (out.size() >= maxTypes)
      throw ScaleError("enumerate_types: too many types to materialize");
    out.push_back(e.snapshot());
  });
  return out;
}

namespace oracle_detail {

/// |det ev| summed per configuration for one type; 0 contributions for
/// singular systems and solutions with non-positive edge lengths.
template <typename AddFn>
inline void evaluateSnapshot(const CurveType& t, const std::vector<PointConfig>& cfgs,
                             AddFn&& add) {
  const int B = static_cast<int>(t.boundedEdges.size());
  const int rows = 2 * t.n;
  check(rows == 2 + B, "oracle: evaluation system not square");
  check(rows <= kMaxRows && rows + static_cast<int>(cfgs.size()) <= kMaxCols,
        "oracle: matrix bound exceeded");
  for (const Pt& dir : t.boundedDir)
    if (dir == Pt{0, 0}) return;  // contracted bounded edge: det = 0

  std::vector<int> col(t.adj.size(), -1);
  for (int b = 0; b < B; ++b) col[t.boundedEdges[b].second] = 2 + b;
  std::vector<int> parent(t.adj.size(), -1);
  for (int b = 0; b < B; ++b)
    parent[t.boundedEdges[b].second] = t.boundedEdges[b].first;

  static thread_local __int128 a[kMaxRows][kMaxCols];
  const int m = static_cast<int>(cfgs.size());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows + m; ++j) a[i][j] = 0;

  for (int k = 0; k < t.n; ++k) {
    const int rx = 2 * k, ry = 2 * k + 1;
    a[rx][0] = 1;
    a[ry][1] = 1;
    for (int v = t.markVertex[k]; parent[v] >= 0; v = parent[v]) {
      Pt dir = t.boundedDir[col[v] - 2];
      a[rx][col[v]] = dir.x;
      a[ry][col[v]] = dir.y;
    }
    for (int c = 0; c < m; ++c) {
      a[rx][rows + c] = cfgs[c].pts[k].x;
      a[ry][rows + c] = cfgs[c].pts[k].y;
    }
  }

  __int128 det = forwardBareiss(a, rows, m);
  if (det == 0) return;
  const __int128 detP = a[rows - 1][rows - 1];  // pivoted determinant
  __int128 z[kMaxRows];
  for (int c = 0; c < m; ++c) {
    backSubstituteScaled(a, rows, rows + c, z);
    bool positive = true;  // every edge length strictly positive
    for (int i = 2; i < rows && positive; ++i)
      positive = detP > 0 ? z[i] > 0 : z[i] < 0;
    if (positive) add(c, det < 0 ? -det : det);
  }
}

}  // namespace oracle_detail

/// Weight |det_C(ev)| of one type at one configuration (0 if the system is
/// singular or some edge length is non-positive).
inline Rational evaluate_type(const CurveType& t, const PointConfig& cfg) {
  __int128 got = 0;
  oracle_detail::evaluateSnapshot(t, {cfg}, [&](int, __int128 det) { got = det; });
  return Rational(toMpz(got));
}

/// |det| of the evaluation matrix of a type; independent of any point
/// configuration since only the right-hand side carries the points.
inline mpz_class type_determinant(const CurveType& t) {
  using namespace oracle_detail;
  const int B = static_cast<int>(t.boundedEdges.size());
  const int rows = 2 * t.n;
  check(rows == 2 + B && rows <= kMaxRows, "type_determinant: bad system");
  std::vector<int> col(t.adj.size(), -1), parent(t.adj.size(), -1);
  for (int b = 0; b < B; ++b) {
    col[t.boundedEdges[b].second] = 2 + b;
    parent[t.boundedEdges[b].second] = t.boundedEdges[b].first;
  }
  __int128 a[kMaxRows][kMaxCols];
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) a[i][j] = 0;
  for (int k = 0; k < t.n; ++k) {
    a[2 * k][0] = 1;
    a[2 * k + 1][1] = 1;
    for (int v = t.markVertex[k]; parent[v] >= 0; v = parent[v]) {
      Pt dir = t.boundedDir[col[v] - 2];
      a[2 * k][col[v]] = dir.x;
      a[2 * k + 1][col[v]] = dir.y;
    }
  }
  __int128 det = forwardBareiss(a, rows, 0);
  return abs(toMpz(det));
}

/// Sum of determinant weights over all types, divided by (d!)^3, evaluated
/// for several configurations in a single enumeration pass.
inline std::vector<Rational> oracle_values(int d, const std::vector<int>& rs,
                                           const std::vector<PointConfig>& cfgs,
                                           uint64_t* typesOut = nullptr) {
  TypeEnumerator en(d, rs);
  std::vector<__int128> sums(cfgs.size(), 0);
  uint64_t types = 0;
  en.enumerate([&](const TypeEnumerator& e) {
    ++types;
    oracle_detail::evaluateSnapshot(e.snapshot(), cfgs,
                                    [&](int c, __int128 det) { sums[c] += det; });
  });
  if (typesOut) *typesOut = types;
  std::vector<Rational> out;
  const Rational denom(factorial_cubed(static_cast<unsigned>(d)));
  for (auto s : sums) out.push_back(Rational(toMpz(s)) / denom);
  return out;
}

inline uint64_t mixSeed(uint64_t s) {
  s += 0x9e3779b97f4a7c15ull;
  s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ull;
  s = (s ^ (s >> 27)) * 0x94d049bb133111ebull;
  return s ^ (s >> 31);
}

/// The oracle invariant: evaluated at two independently drawn configurations
/// derived from the seed, which must agree exactly; disagreement (a
/// non-generic draw) triggers a bounded resample before failing loudly.
inline Rational oracle_invariant(int d, std::vector<int> rs, uint64_t seed) {
  std::sort(rs.rbegin(), rs.rend());
  InvariantQuery q{d, 0, 0, rs};
  if (!q.dimensionValid())
    throw DimensionError("oracle_invariant: dimension mismatch");
  const int n = static_cast<int>(rs.size());
  for (int attempt = 0; attempt < 5; ++attempt) {
    auto c1 = PointConfig::random(n, seed);
    auto c2 = PointConfig::random(n, mixSeed(seed));
    auto vals = oracle_values(d, rs, {c1, c2});
    if (vals[0] == vals[1]) return vals[0];
    seed = mixSeed(mixSeed(seed));
  }
  throw std::runtime_error("oracle_invariant: seed disagreement persisted");
}

/// Test-time cross-check data: the product of |det(v1,v2)| over unmarked
/// 3-valent vertices, which must reproduce |det_C(ev)| for solvable types.
inline mpz_class vertexMultiplicityProduct(const CurveType& t) {
  mpz_class prod = 1;
  std::vector<bool> isMarkVertex(t.adj.size(), false);
  for (int v : t.markVertex) isMarkVertex[v] = true;
  std::vector<int> edgeOf(t.adj.size(), -1);
  for (size_t b = 0; b < t.boundedEdges.size(); ++b)
    edgeOf[t.boundedEdges[b].second] = static_cast<int>(b);
  for (int v : t.internals) {
    if (isMarkVertex[v]) continue;
    check(t.adj[v].size() == 3, "vertexMultiplicityProduct: non-3-valent vertex");
    std::vector<Pt> dirs;  // outgoing directions at v
    for (int w : t.adj[v]) {
      if (w < t.leafCount) {
        if (w >= t.n) dirs.push_back(t.endDir(w));
        continue;
      }
      if (edgeOf[w] >= 0 && t.boundedEdges[edgeOf[w]].first == v) {
        dirs.push_back(t.boundedDir[edgeOf[w]]);  // v -> child w
      } else {
        check(edgeOf[v] >= 0 && t.boundedEdges[edgeOf[v]].first == w,
              "vertexMultiplicityProduct: broken parent structure");
        dirs.push_back(-t.boundedDir[edgeOf[v]]);  // v -> parent w
      }
    }
    check(dirs.size() >= 2, "vertexMultiplicityProduct: too few directions");
    prod *= abs(mpz_class(cross(dirs[0], dirs[1])));
  }
  return prod;
}

}  // namespace tropgw
