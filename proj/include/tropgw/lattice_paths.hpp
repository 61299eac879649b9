#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropgw/geometry.hpp"
#include "tropgw/partition.hpp"
#include "tropgw/rational.hpp"

namespace tropgw {

enum class Sign { Plus, Minus };

/// Order induced by lambda(x,y) = x - eps*y for infinitesimal eps > 0,
/// implemented combinatorially: x ascending, ties broken by y descending.
inline bool lambda_less(Pt a, Pt b) {
  return a.x != b.x ? a.x < b.x : a.y > b.y;
}

inline bool lambdaPositiveDir(Pt v) {
  return v.x > 0 || (v.x == 0 && v.y < 0);
}

struct LabelledStep {
  Pt vec;                  // step vector; intLength(vec) == sum of label
  Partition label;         // parts sorted descending
  std::vector<int> slots;  // slot ids aligned with label; empty if untracked
};

struct LabelledPath {
  Pt start;
  std::vector<LabelledStep> steps;

  Pt end() const {
    Pt p = start;
    for (const auto& s : steps) p = p + s.vec;
    return p;
  }
  std::vector<Pt> points() const {
    std::vector<Pt> pts{start};
    for (const auto& s : steps) pts.push_back(pts.back() + s.vec);
    return pts;
  }
};

inline void validatePath(const LabelledPath& path, int d) {
  Pt p = path.start;
  check(insideDelta(p, d), "path: start outside triangle");
  for (const auto& s : path.steps) {
    check(lambdaPositiveDir(s.vec), "path: step not lambda-increasing");
    check(partitionSum(s.label) == intLength(s.vec), "path: label sum mismatch");
    p = p + s.vec;
    check(insideDelta(p, d), "path: leaves triangle");
  }
}

inline bool is_end_path(const LabelledPath& path, Sign sign, int d) {
  if (path.start != Pt{0, d} || path.end() != Pt{d, 0} || path.steps.empty())
    return false;
  for (const auto& s : path.steps)
    if (!isAllOnes(s.label) ||
        static_cast<int64_t>(s.label.size()) != intLength(s.vec))
      return false;
  if (sign == Sign::Plus) {
    for (const auto& s : path.steps)
      if (!(s.vec.x > 0 && s.vec.y == -s.vec.x)) return false;
    return true;
  }
  bool onBottom = false;  // (0,-c) steps first, then (c,0)
  for (const auto& s : path.steps) {
    if (s.vec.x == 0 && s.vec.y < 0) {
      if (onBottom) return false;
    } else if (s.vec.y == 0 && s.vec.x > 0) {
      onBottom = true;
    } else {
      return false;
    }
  }
  return true;
}

/// mu of an end path: product of 1/(|alpha_k|!) over its steps.
inline Rational end_path_multiplicity(const LabelledPath& path) {
  int d = static_cast<int>(path.start.y);
  if (!is_end_path(path, Sign::Plus, d) && !is_end_path(path, Sign::Minus, d))
    throw std::invalid_argument("end_path_multiplicity: not an end path");
  Rational mu(1);
  for (const auto& s : path.steps)
    mu /= Rational(factorial(static_cast<unsigned>(s.label.size())));
  return mu;
}

/// Boundary paths from (0,d) to (d,0) with all-ones labels: clockwise along
/// the diagonal for Plus, counterclockwise along the two legs for Minus.
inline std::vector<LabelledPath> enumerate_end_paths(int d, Sign sign) {
  check(d >= 1, "enumerate_end_paths: d >= 1");
  std::vector<std::vector<int64_t>> comps;
  std::vector<int64_t> cur;
  auto rec = [&](auto&& self, int64_t left) -> void {
    if (left == 0) { comps.push_back(cur); return; }
    for (int64_t c = 1; c <= left; ++c) {
      cur.push_back(c);
      self(self, left - c);
      cur.pop_back();
    }
  };
  rec(rec, d);

  std::vector<LabelledPath> out;
  if (sign == Sign::Plus) {
    for (const auto& comp : comps) {
      LabelledPath p{{0, d}, {}};
      for (int64_t c : comp) p.steps.push_back({{c, -c}, onesPartition(c), {}});
      out.push_back(std::move(p));
    }
    return out;
  }
  for (const auto& down : comps)
    for (const auto& right : comps) {
      LabelledPath p{{0, d}, {}};
      for (int64_t c : down) p.steps.push_back({{0, -c}, onesPartition(c), {}});
      for (int64_t c : right) p.steps.push_back({{c, 0}, onesPartition(c), {}});
      out.push_back(std::move(p));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicity recursion with Newton-subdivision and dual-graph tracking
// ---------------------------------------------------------------------------

/// Edge germs of the dual tropical curve. Every partition part in play is a
/// slot; its weight is the part, its origin the dual-graph node that created
/// it (a marked polygon or a triangle of the recursion). Consuming a slot at
/// another node records a dual-graph edge; reaching the boundary of the
/// triangle leaves it dangling (an unbounded end).
struct DualState {
  std::vector<int64_t> slotWeight;
  std::vector<int> slotOrigin;
  std::vector<std::pair<int, int>> links;
  int nodeCount = 0;

  int newNode() { return nodeCount++; }
  int newSlot(int64_t w, int origin) {
    slotWeight.push_back(w);
    slotOrigin.push_back(origin);
    return static_cast<int>(slotWeight.size()) - 1;
  }
};

struct SubdivCell {
  LatticePolygon poly;
  std::vector<Partition> edgeLabels;  // aligned with poly edge indices
  std::string record;                 // summand/pairing record; "Q" for marked cells
};

struct PathBranch {
  Rational coeff;  // product of triangle areas down the branch times end mu
  std::vector<SubdivCell> cells;
  std::vector<std::pair<int, int>> links;
  int nodeCount = 0;
};

namespace detail {

inline std::string ptStr(Pt p) {
  return std::to_string(p.x) + "," + std::to_string(p.y);
}

struct ValueSlots {
  int64_t value;
  std::vector<int> slots;
};

inline std::vector<ValueSlots> groupByValue(const LabelledStep& s) {
  std::vector<ValueSlots> out;
  for (size_t i = 0; i < s.label.size(); ++i) {
    if (out.empty() || out.back().value != s.label[i])
      out.push_back({s.label[i], {}});
    out.back().slots.push_back(s.slots[i]);
  }
  return out;
}

// One choice of r pairs between the two corner partitions: counts per
// distinct value pair. Enumerated as multisets of value pairs, so equal
// values never produce duplicate choices.
struct Pairing {
  std::vector<std::vector<int>> cnt;  // [ia][ib]
};

inline void enumeratePairings(const std::vector<ValueSlots>& A,
                              const std::vector<ValueSlots>& B,
                              std::vector<Pairing>& out) {
  const size_t na = A.size(), nb = B.size();
  Pairing cur;
  cur.cnt.assign(na, std::vector<int>(nb, 0));
  std::vector<int> usedA(na, 0), usedB(nb, 0);
  auto rec = [&](auto&& self, size_t cell) -> void {
    if (cell == na * nb) {
      out.push_back(cur);
      return;
    }
    size_t ia = cell / nb, ib = cell % nb;
    int maxC = std::min(static_cast<int>(A[ia].slots.size()) - usedA[ia],
                        static_cast<int>(B[ib].slots.size()) - usedB[ib]);
    for (int c = 0; c <= maxC; ++c) {
      cur.cnt[ia][ib] = c;
      usedA[ia] += c;
      usedB[ib] += c;
      self(self, cell + 1);
      usedA[ia] -= c;
      usedB[ib] -= c;
    }
    cur.cnt[ia][ib] = 0;
  };
  rec(rec, 0);
}

}  // namespace detail

class PathRecursion {
 public:
  PathRecursion(Sign sign, int d, bool trackCells)
      : sign_(sign), d_(d), track_(trackCells) {}

  void run(const LabelledPath& path, DualState initial,
           std::vector<PathBranch>& out) {
    // Standalone paths get fresh slots, each with its own origin node, so
    // the machinery is uniform whether or not a rag rug is behind it.
    LabelledPath p = path;
    for (auto& s : p.steps) {
      if (s.slots.size() == s.label.size()) continue;
      check(s.slots.empty(), "path: half-initialized slots");
      for (int64_t part : s.label)
        s.slots.push_back(initial.newSlot(part, initial.newNode()));
    }
    out_ = &out;
    recurse(p, Rational(1), std::move(initial), {}, 0);
    out_ = nullptr;
  }

 private:
  Sign sign_;
  int d_;
  bool track_;
  std::vector<PathBranch>* out_ = nullptr;

  void recurse(const LabelledPath& path, Rational coeff, DualState dual,
               std::vector<SubdivCell> cells, int depth) {
    check(depth <= 4 * d_ * d_ + 32, "path recursion: depth bound exceeded");

    if (is_end_path(path, sign_, d_)) {
      Rational mu = coeff;
      for (const auto& s : path.steps)
        mu /= Rational(factorial(static_cast<unsigned>(s.label.size())));
      out_->push_back({mu, std::move(cells), dual.links, dual.nodeCount});
      return;
    }

    int corner = -1;
    for (size_t k = 0; k + 1 < path.steps.size(); ++k) {
      int64_t c = cross(path.steps[k].vec, path.steps[k + 1].vec);
      if ((sign_ == Sign::Plus && c > 0) || (sign_ == Sign::Minus && c < 0)) {
        corner = static_cast<int>(k);
        break;
      }
    }
    if (corner < 0) return;  // mu = 0

    expandCorner(path, corner, coeff, dual, cells, depth);
  }

  void expandCorner(const LabelledPath& path, int k, const Rational& coeff,
                    const DualState& dual0, const std::vector<SubdivCell>& cells0,
                    int depth) {
    const LabelledStep& sa = path.steps[k];
    const LabelledStep& sb = path.steps[k + 1];
    Pt u = primitive(sa.vec), w = primitive(sb.vec);
    auto pts = path.points();
    Pt pPrev = pts[k], pCorner = pts[k + 1], pNext = pts[k + 2];

    auto A = detail::groupByValue(sa);
    auto B = detail::groupByValue(sb);
    std::vector<detail::Pairing> pairings;
    detail::enumeratePairings(A, B, pairings);

    for (const auto& pr : pairings) {
      DualState dual = dual0;

      struct Summand {
        int kind;  // 0 triangle, 1 u-segment, 2 w-segment
        int64_t a = 0, b = 0;
        int slotA = -1, slotB = -1, farSlot = -1;
      };
      std::vector<Summand> infos;
      std::vector<LatticePolygon> polys;
      Rational branchCoeff = coeff;

      std::vector<size_t> takenA(A.size(), 0), takenB(B.size(), 0);
      for (size_t ia = 0; ia < A.size(); ++ia)
        for (size_t ib = 0; ib < B.size(); ++ib)
          for (int c = 0; c < pr.cnt[ia][ib]; ++c) {
            Summand t;
            t.kind = 0;
            t.a = A[ia].value;
            t.b = B[ib].value;
            t.slotA = A[ia].slots[takenA[ia]++];
            t.slotB = B[ib].slots[takenB[ib]++];
            int node = dual.newNode();
            Pt farVec = t.a * u + t.b * w;
            t.farSlot = dual.newSlot(intLength(farVec), node);
            dual.links.push_back({dual.slotOrigin[t.slotA], node});
            dual.links.push_back({dual.slotOrigin[t.slotB], node});
            infos.push_back(t);
            polys.push_back(LatticePolygon::hull({{0, 0}, t.a * u, farVec}));
            branchCoeff *= Rational(t.a * t.b * std::abs(cross(u, w)));
          }
      for (size_t ia = 0; ia < A.size(); ++ia)
        for (size_t i = takenA[ia]; i < A[ia].slots.size(); ++i) {
          infos.push_back({1, A[ia].value, 0, A[ia].slots[i], -1, -1});
          polys.push_back(
              LatticePolygon::fromVertices({{0, 0}, A[ia].value * u}));
        }
      for (size_t ib = 0; ib < B.size(); ++ib)
        for (size_t i = takenB[ib]; i < B[ib].slots.size(); ++i) {
          infos.push_back({2, 0, B[ib].value, -1, B[ib].slots[i], -1});
          polys.push_back(
              LatticePolygon::fromVertices({{0, 0}, B[ib].value * w}));
        }

      MinkowskiSum M = minkowski_sum(polys);
      const int ne = M.poly.edgeCount();

      // Anchor: the two boundary edges matching the corner steps.
      int anchorEdge = -1;
      Pt anchorTarget;
      Pt firstDir = sign_ == Sign::Plus ? u : -w;
      Pt secondDir = sign_ == Sign::Plus ? w : -u;
      for (int i = 0; i < ne; ++i)
        if (parallelSameDir(M.poly.edgeVec(i), firstDir)) { anchorEdge = i; break; }
      check(anchorEdge >= 0, "corner: generator edge missing");
      check(parallelSameDir(M.poly.edgeVec((anchorEdge + 1) % ne), secondDir),
            "corner: generator edges not adjacent");
      anchorTarget = sign_ == Sign::Plus ? pPrev : pNext;
      Pt offset = anchorTarget - M.poly.edgeStart(anchorEdge);

      {  // geometric sanity of the anchoring
        Pt s0 = M.poly.edgeStart(anchorEdge) + offset;
        Pt s1 = s0 + M.poly.edgeVec(anchorEdge);
        Pt s2 = s1 + M.poly.edgeVec((anchorEdge + 1) % ne);
        if (sign_ == Sign::Plus)
          check(s1 == pCorner && s2 == pNext, "corner: anchor mismatch");
        else
          check(s1 == pCorner && s2 == pPrev, "corner: anchor mismatch");
      }
      {  // conservation of parts: generator edge carries the step's slots
        std::vector<int> got, want;
        for (const auto& c : M.contribs[anchorEdge])
          got.push_back(resolveSlot(c, infos, polys, u, w));
        want = sign_ == Sign::Plus ? sa.slots : sb.slots;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        check(got == want, "corner: generator edge slot mismatch");
      }

      bool fits = true;
      for (Pt v : M.poly.vertices())
        if (!insideDelta(v + offset, d_)) { fits = false; break; }
      if (!fits) continue;  // M does not fit inside the triangle: contributes 0

      // Far boundary chain: all edges except the two anchored ones.
      std::vector<LabelledStep> farSteps;
      {
        std::vector<int> idx;
        for (int t = 2; t < ne; ++t) idx.push_back((anchorEdge + t) % ne);
        if (sign_ == Sign::Plus) std::reverse(idx.begin(), idx.end());
        for (int ei : idx) {
          LabelledStep st;
          st.vec = sign_ == Sign::Plus ? -M.poly.edgeVec(ei) : M.poly.edgeVec(ei);
          std::vector<std::pair<int64_t, int>> parts;
          for (const auto& c : M.contribs[ei])
            parts.push_back({c.length, resolveSlot(c, infos, polys, u, w)});
          std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
          });
          for (auto& [len, slot] : parts) {
            st.label.push_back(len);
            st.slots.push_back(slot);
          }
          check(partitionSum(st.label) == intLength(st.vec),
                "corner: far edge label mismatch");
          check(lambdaPositiveDir(st.vec), "corner: far step not increasing");
          farSteps.push_back(std::move(st));
        }
      }

      LabelledPath next;
      next.start = path.start;
      next.steps.assign(path.steps.begin(), path.steps.begin() + k);
      for (auto& st : farSteps) next.steps.push_back(std::move(st));
      next.steps.insert(next.steps.end(), path.steps.begin() + k + 2,
                        path.steps.end());

      std::vector<SubdivCell> cells = cells0;
      if (track_) {
        SubdivCell cell;
        std::vector<Pt> tv;
        for (Pt v : M.poly.vertices()) tv.push_back(v + offset);
        cell.poly = LatticePolygon::fromVertices(tv);
        cell.edgeLabels.resize(ne);
        for (int i = 0; i < ne; ++i) {
          Partition part;
          for (const auto& c : M.contribs[i]) part.push_back(c.length);
          canonicalizePartition(part);
          cell.edgeLabels[i] = std::move(part);
        }
        std::string rec = sign_ == Sign::Plus ? "M+" : "M-";
        rec += ";u=" + detail::ptStr(u) + ";w=" + detail::ptStr(w) + ";T=";
        for (const auto& s : infos)
          if (s.kind == 0)
            rec += "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
        rec += ";eu=";
        for (const auto& s : infos)
          if (s.kind == 1) rec += std::to_string(s.a) + ",";
        rec += ";ew=";
        for (const auto& s : infos)
          if (s.kind == 2) rec += std::to_string(s.b) + ",";
        cell.record = std::move(rec);
        cells.push_back(std::move(cell));
      }

      recurse(next, branchCoeff, std::move(dual), std::move(cells), depth + 1);
    }
  }

  template <typename Infos>
  static int resolveSlot(const EdgeContrib& c, const Infos& infos,
                         const std::vector<LatticePolygon>& polys, Pt u, Pt w) {
    const auto& info = infos[c.summand];
    if (info.kind == 1) return info.slotA;
    if (info.kind == 2) return info.slotB;
    Pt ev = polys[c.summand].edgeVec(c.summandEdge);
    if (cross(ev, u) == 0) return info.slotA;
    if (cross(ev, w) == 0) return info.slotB;
    return info.farSlot;
  }
};

/// mu_+ or mu_- of a labelled path, with the per-branch subdivision fragments.
struct PathMultiplicityResult {
  Rational mu;
  std::vector<std::pair<std::vector<SubdivCell>, Rational>> fragments;
};

inline PathMultiplicityResult path_multiplicity(const LabelledPath& path,
                                                Sign sign, int d) {
  validatePath(path, d);
  check(path.start == Pt{0, d} && path.end() == Pt{d, 0},
        "path_multiplicity: not a full path from (0,d) to (d,0)");
  PathRecursion rec(sign, d, true);
  std::vector<PathBranch> branches;
  rec.run(path, DualState{}, branches);
  PathMultiplicityResult res;
  res.mu = Rational(0);
  for (auto& b : branches) {
    res.mu += b.coeff;
    res.fragments.push_back({std::move(b.cells), b.coeff});
  }
  return res;
}

inline Rational path_mu(const LabelledPath& path, Sign sign, int d) {
  validatePath(path, d);
  PathRecursion rec(sign, d, false);
  std::vector<PathBranch> branches;
  rec.run(path, DualState{}, branches);
  Rational mu(0);
  for (const auto& b : branches) mu += b.coeff;
  return mu;
}

/// Every labelled lambda-increasing lattice path from (0,d) to (d,0) in the
/// triangle, with every choice of step labels. Exhaustive; intended for
/// small degrees.
inline std::vector<LabelledPath> enumerate_labelled_paths(int d) {
  check(d >= 1 && d <= 4, "enumerate_labelled_paths: supported for d <= 4");
  std::vector<Pt> pts;
  for (int64_t x = 0; x <= d; ++x)
    for (int64_t y = 0; d >= x + y && y >= 0; ++y) pts.push_back({x, y});
  std::vector<LabelledPath> out;
  LabelledPath cur{{0, d}, {}};
  auto rec = [&](auto&& self, Pt at) -> void {
    if (at == Pt{d, 0}) {
      if (!cur.steps.empty()) out.push_back(cur);
      return;
    }
    for (Pt nxt : pts) {
      if (!lambda_less(at, nxt)) continue;
      Pt v = nxt - at;
      for (const auto& lab : partitionsOf(intLength(v))) {
        cur.steps.push_back({v, lab, {}});
        self(self, nxt);
        cur.steps.pop_back();
      }
    }
  };
  rec(rec, {0, d});
  return out;
}

}  // namespace tropgw
