#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tropgw/rational.hpp"

namespace tropgw {

struct Pt {
  int64_t x = 0, y = 0;
  friend Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
  friend Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
  friend Pt operator*(int64_t s, Pt a) { return {s * a.x, s * a.y}; }
  friend Pt operator-(Pt a) { return {-a.x, -a.y}; }
  friend bool operator==(Pt a, Pt b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Pt a, Pt b) { return !(a == b); }
  friend bool operator<(Pt a, Pt b) {  // lexicographic
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

inline int64_t cross(Pt a, Pt b) { return a.x * b.y - a.y * b.x; }

inline int64_t intLength(Pt v) {  // lattice points on the segment minus one
  return std::gcd(std::abs(v.x), std::abs(v.y));
}

inline Pt primitive(Pt v) {
  int64_t g = intLength(v);
  check(g > 0, "primitive: zero vector");
  return {v.x / g, v.y / g};
}

inline bool parallelSameDir(Pt a, Pt b) {
  return cross(a, b) == 0 && a.x * b.x + a.y * b.y > 0;
}

/// Convex lattice polygon, counterclockwise, vertices are extreme points.
/// May degenerate to a segment (2 distinct vertices, stored lex-sorted);
/// a single point is not a valid polygon. A segment has two edges, one per
/// traversal direction, so every "side" of the boundary is addressable.
class LatticePolygon {
 public:
  LatticePolygon() = default;

  /// Convex hull of the given points, canonicalized.
  static LatticePolygon hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    check(pts.size() >= 2, "LatticePolygon: needs at least 2 distinct points");
    if (pts.size() == 2) return fromVertices({pts[0], pts[1]});
    // Monotone chain; strict turns so vertices are extreme.
    std::vector<Pt> lo, hi;
    for (Pt p : pts) {
      while (lo.size() >= 2 && cross(lo.back() - lo[lo.size() - 2], p - lo.back()) <= 0)
        lo.pop_back();
      lo.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      Pt p = *it;
      while (hi.size() >= 2 && cross(hi.back() - hi[hi.size() - 2], p - hi.back()) <= 0)
        hi.pop_back();
      hi.push_back(p);
    }
    std::vector<Pt> v(lo.begin(), lo.end() - 1);
    v.insert(v.end(), hi.begin(), hi.end() - 1);
    if (v.size() == 2) return fromVertices({v[0], v[1]});
    return fromVertices(std::move(v));
  }

  /// Builds from an already-convex ccw vertex cycle (or a 2-point segment).
  static LatticePolygon fromVertices(std::vector<Pt> v) {
    check(v.size() >= 2, "LatticePolygon: too few vertices");
    LatticePolygon p;
    p.v_ = std::move(v);
    p.canonicalize();
    p.validate();
    return p;
  }

  const std::vector<Pt>& vertices() const { return v_; }
  bool isSegment() const { return v_.size() == 2; }
  int edgeCount() const { return isSegment() ? 2 : static_cast<int>(v_.size()); }

  Pt edgeStart(int i) const {
    return isSegment() ? v_[i % 2] : v_[i % v_.size()];
  }
  Pt edgeVec(int i) const {
    if (isSegment()) return i % 2 == 0 ? v_[1] - v_[0] : v_[0] - v_[1];
    return v_[(i + 1) % v_.size()] - v_[i];
  }
  /// Outward normal of edge i (ccw boundary => rotate the edge by -90 deg).
  Pt outwardNormal(int i) const {
    Pt e = edgeVec(i);
    return {e.y, -e.x};
  }

  /// Twice the Euclidean area; the unit simplex has area 1. Segments give 0.
  int64_t normalizedArea() const {
    if (isSegment()) return 0;
    int64_t s = 0;
    for (size_t i = 0; i < v_.size(); ++i) {
      Pt a = v_[i], b = v_[(i + 1) % v_.size()];
      s += cross(a, b);
    }
    check(s > 0, "LatticePolygon: not ccw");
    return s;
  }

  bool containsPoint(Pt p) const {
    if (isSegment()) {
      Pt d = v_[1] - v_[0];
      if (cross(d, p - v_[0]) != 0) return false;
      int64_t t = (p - v_[0]).x * d.x + (p - v_[0]).y * d.y;
      return t >= 0 && t <= d.x * d.x + d.y * d.y;
    }
    for (size_t i = 0; i < v_.size(); ++i)
      if (cross(v_[(i + 1) % v_.size()] - v_[i], p - v_[i]) < 0) return false;
    return true;
  }

  friend bool operator==(const LatticePolygon& a, const LatticePolygon& b) {
    return a.v_ == b.v_;
  }
  friend bool operator<(const LatticePolygon& a, const LatticePolygon& b) {
    return a.v_ < b.v_;
  }

  /// Rotates the stored cycle so edge `shift` becomes edge 0 (2-dim only);
  /// used to keep side data aligned after canonicalization.
  int canonicalShiftFrom(const std::vector<Pt>& rawCycle) const {
    if (isSegment()) return 0;
    for (size_t s = 0; s < rawCycle.size(); ++s)
      if (rawCycle[s] == v_[0]) return static_cast<int>(s);
    check(false, "canonicalShiftFrom: vertex not found");
    return 0;
  }

 private:
  void canonicalize() {
    if (v_.size() == 2) {
      if (v_[1] < v_[0]) std::swap(v_[0], v_[1]);
      check(v_[0] != v_[1], "LatticePolygon: degenerate point");
      return;
    }
    size_t best = 0;
    for (size_t i = 1; i < v_.size(); ++i)
      if (v_[i] < v_[best]) best = i;
    std::rotate(v_.begin(), v_.begin() + best, v_.end());
  }

  void validate() const {
    if (v_.size() == 2) return;
    for (size_t i = 0; i < v_.size(); ++i) {
      Pt e1 = v_[(i + 1) % v_.size()] - v_[i];
      Pt e2 = v_[(i + 2) % v_.size()] - v_[(i + 1) % v_.size()];
      check(e1 != Pt{0, 0}, "LatticePolygon: zero edge");
      check(cross(e1, e2) > 0, "LatticePolygon: not strictly convex ccw");
    }
  }

  std::vector<Pt> v_;
};

/// Exact containment of one convex polygon (or segment) in another.
inline bool contains(const LatticePolygon& outer, const LatticePolygon& inner) {
  for (Pt p : inner.vertices())
    if (!outer.containsPoint(p)) return false;
  return true;
}

inline LatticePolygon triangleDelta(int d) {
  return LatticePolygon::hull({{0, 0}, {d, 0}, {0, d}});
}

inline bool insideDelta(Pt p, int d) {
  return p.x >= 0 && p.y >= 0 && p.x + p.y <= d;
}

// ---------------------------------------------------------------------------
// Minkowski sums with per-edge contribution tracking
// ---------------------------------------------------------------------------

struct EdgeContrib {
  int summand;       // index into the summand list
  int summandEdge;   // edge index within that summand
  int64_t length;    // integer length contributed
};

struct MinkowskiSum {
  LatticePolygon poly;
  std::vector<std::vector<EdgeContrib>> contribs;  // aligned with poly edges
};

namespace detail {

// Cyclic angular order starting at direction (1,0).
inline int halfOf(Pt v) {
  return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
}
inline bool angleLess(Pt a, Pt b) {
  int ha = halfOf(a), hb = halfOf(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

// Index of the vertex starting the angle-sorted ccw edge cycle
// (bottommost, then leftmost).
inline int sweepStart(const LatticePolygon& p) {
  const auto& v = p.vertices();
  int best = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i].y < v[best].y || (v[i].y == v[best].y && v[i].x < v[best].x))
      best = static_cast<int>(i);
  return best;
}

}  // namespace detail

/// Minkowski sum of convex lattice polygons/segments. Boundary edge
/// directions of the sum are the multiset union of summand edge directions;
/// each output edge records which summand edges contribute to it.
inline MinkowskiSum minkowski_sum(const std::vector<LatticePolygon>& summands) {
  check(!summands.empty(), "minkowski_sum: empty input");

  struct Item {
    Pt vec;
    int summand, edge;
  };
  std::vector<Item> items;
  Pt start{0, 0};
  for (size_t s = 0; s < summands.size(); ++s) {
    const auto& p = summands[s];
    int st = detail::sweepStart(p);
    start = start + p.vertices()[st];
    int ec = p.edgeCount();
    for (int k = 0; k < ec; ++k) {
      int e = p.isSegment() ? (st + k) % 2
                            : (st + k) % static_cast<int>(p.vertices().size());
      items.push_back({p.edgeVec(e), static_cast<int>(s), e});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return detail::angleLess(a.vec, b.vec);
  });

  // Group parallel same-direction edges.
  std::vector<Pt> rawVerts;
  std::vector<Pt> groupVec;
  std::vector<std::vector<EdgeContrib>> groupContribs;
  Pt cur = start;
  for (size_t i = 0; i < items.size();) {
    size_t j = i;
    Pt total{0, 0};
    std::vector<EdgeContrib> cs;
    while (j < items.size() && parallelSameDir(items[j].vec, items[i].vec)) {
      total = total + items[j].vec;
      cs.push_back({items[j].summand, items[j].edge, intLength(items[j].vec)});
      ++j;
    }
    rawVerts.push_back(cur);
    groupVec.push_back(total);
    groupContribs.push_back(std::move(cs));
    cur = cur + total;
    i = j;
  }
  check(cur == start, "minkowski_sum: boundary does not close");

  MinkowskiSum out;
  if (groupVec.size() == 2) {
    // All edges parallel: a segment.
    check(groupVec[0] == -groupVec[1], "minkowski_sum: bad segment");
    Pt a = rawVerts[0], b = rawVerts[1];
    out.poly = LatticePolygon::fromVertices({a, b});
    // Align contributions with the canonical (lex-sorted) edge order.
    bool flipped = !(out.poly.vertices()[0] == a);
    out.contribs.resize(2);
    out.contribs[flipped ? 1 : 0] = groupContribs[0];
    out.contribs[flipped ? 0 : 1] = groupContribs[1];
    return out;
  }

  out.poly = LatticePolygon::fromVertices(rawVerts);
  int shift = out.poly.canonicalShiftFrom(rawVerts);
  int n = static_cast<int>(rawVerts.size());
  out.contribs.resize(n);
  for (int k = 0; k < n; ++k) {
    check(out.poly.edgeVec(k) == groupVec[(k + shift) % n],
          "minkowski_sum: contribution misalignment");
    out.contribs[k] = groupContribs[(k + shift) % n];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact "intersect in more than one point" test for convex polygons
// ---------------------------------------------------------------------------

namespace detail {

struct FracPt {  // exact rational point, normalized with den > 0
  int64_t xn, yn, den;
  friend bool operator==(const FracPt& a, const FracPt& b) {
    return a.xn == b.xn && a.yn == b.yn && a.den == b.den;
  }
  friend bool operator<(const FracPt& a, const FracPt& b) {
    if (a.xn != b.xn) return a.xn < b.xn;
    if (a.yn != b.yn) return a.yn < b.yn;
    return a.den < b.den;
  }
};

inline FracPt makeFrac(int64_t xn, int64_t yn, int64_t den) {
  if (den < 0) { xn = -xn; yn = -yn; den = -den; }
  int64_t g = std::gcd(std::gcd(std::abs(xn), std::abs(yn)), den);
  if (g > 1) { xn /= g; yn /= g; den /= g; }
  return {xn, yn, den};
}

inline bool onSegment(Pt a, Pt b, Pt p) {
  if (cross(b - a, p - a) != 0) return false;
  int64_t t = (p - a).x * (b - a).x + (p - a).y * (b - a).y;
  return t >= 0 && t <= (b - a).x * (b - a).x + (b - a).y * (b - a).y;
}

}  // namespace detail

/// True iff two convex lattice polygons (or segments) share more than one
/// point; all arithmetic exact.
inline bool intersectInMoreThanOnePoint(const LatticePolygon& A,
                                        const LatticePolygon& B) {
  using detail::FracPt;
  std::vector<FracPt> touch;
  auto addPt = [&](Pt p) { touch.push_back(detail::makeFrac(p.x, p.y, 1)); };

  auto strictlyInside = [](const LatticePolygon& poly, Pt p) {
    if (poly.isSegment()) return false;
    const auto& v = poly.vertices();
    for (size_t i = 0; i < v.size(); ++i)
      if (cross(v[(i + 1) % v.size()] - v[i], p - v[i]) <= 0) return false;
    return true;
  };

  for (Pt p : A.vertices()) {
    if (strictlyInside(B, p)) return true;
    if (B.containsPoint(p)) addPt(p);
  }
  for (Pt p : B.vertices()) {
    if (strictlyInside(A, p)) return true;
    if (A.containsPoint(p)) addPt(p);
  }

  int ea = A.isSegment() ? 1 : A.edgeCount();
  int eb = B.isSegment() ? 1 : B.edgeCount();
  for (int i = 0; i < ea; ++i) {
    Pt a1 = A.edgeStart(i), a2 = a1 + A.edgeVec(i);
    for (int j = 0; j < eb; ++j) {
      Pt b1 = B.edgeStart(j), b2 = b1 + B.edgeVec(j);
      int64_t d = cross(a2 - a1, b2 - b1);
      if (d == 0) {
        if (cross(a2 - a1, b1 - a1) != 0) continue;  // parallel, not collinear
        // Collinear: overlap of positive length means > 1 shared point.
        int ends = 0;
        if (detail::onSegment(a1, a2, b1)) ++ends;
        if (detail::onSegment(a1, a2, b2)) ++ends;
        if (detail::onSegment(b1, b2, a1)) ++ends;
        if (detail::onSegment(b1, b2, a2)) ++ends;
        if (ends >= 2) {
          std::vector<Pt> pts;
          for (Pt p : {b1, b2})
            if (detail::onSegment(a1, a2, p)) pts.push_back(p);
          for (Pt p : {a1, a2})
            if (detail::onSegment(b1, b2, p)) pts.push_back(p);
          for (size_t u = 0; u < pts.size(); ++u)
            for (size_t v = u + 1; v < pts.size(); ++v)
              if (pts[u] != pts[v]) return true;
        }
        continue;
      }
      int64_t t = cross(b1 - a1, b2 - b1);  // param along A-edge, over d
      int64_t s = cross(b1 - a1, a2 - a1);  // param along B-edge, over d
      auto inUnit = [](int64_t num, int64_t den) {
        if (den < 0) { num = -num; den = -den; }
        return num >= 0 && num <= den;
      };
      if (inUnit(t, d) && inUnit(s, d))
        touch.push_back(detail::makeFrac(a1.x * d + t * (a2 - a1).x,
                                         a1.y * d + t * (a2 - a1).y, d));
    }
  }

  std::sort(touch.begin(), touch.end());
  touch.erase(std::unique(touch.begin(), touch.end()), touch.end());
  return touch.size() >= 2;
}

}  // namespace tropgw
