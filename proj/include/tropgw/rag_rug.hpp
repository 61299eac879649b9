#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tropgw/lattice_paths.hpp"

namespace tropgw {

/// Outward normal classes relative to the sweep line: H+ holds the normals
/// with positive y, or zero y and positive x.
inline bool inHPlus(Pt normal) {
  return normal.y > 0 || (normal.y == 0 && normal.x > 0);
}

/// One marked polygon of a rag rug with a partition per boundary edge.
/// Segments have two labels, one per outward normal.
struct Bead {
  LatticePolygon poly;
  std::vector<Partition> labels;  // aligned with poly edge indices
};

struct RagRug {
  int d = 0;
  std::vector<int> form;  // (r_1, ..., r_n) in chain order
  std::vector<Bead> beads;
};

inline Pt lambdaMinVertex(const LatticePolygon& p) {
  Pt best = p.vertices()[0];
  for (Pt v : p.vertices())
    if (lambda_less(v, best)) best = v;
  return best;
}

inline Pt lambdaMaxVertex(const LatticePolygon& p) {
  Pt best = p.vertices()[0];
  for (Pt v : p.vertices())
    if (lambda_less(best, v)) best = v;
  return best;
}

/// Outward normal of the side of the triangle a segment/edge lies on, if any.
inline std::optional<Pt> deltaSideNormal(Pt a, Pt b, int d) {
  if (a.x == 0 && b.x == 0) return Pt{-1, 0};
  if (a.y == 0 && b.y == 0) return Pt{0, -1};
  if (a.x + a.y == d && b.x + b.y == d) return Pt{1, 1};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rug -> the two labelled paths, with dual-graph slots rooted at the beads
// ---------------------------------------------------------------------------

struct RugPaths {
  LabelledPath plus, minus;
  DualState dual;  // nodes 0..n-1 are the beads; all boundary slots created
};

inline RugPaths buildRugPaths(const RagRug& rug) {
  RugPaths rp;
  rp.plus.start = rp.minus.start = Pt{0, rug.d};
  for (size_t i = 0; i < rug.beads.size(); ++i) rp.dual.newNode();

  Pt vPrev{0, rug.d};
  for (size_t i = 0; i < rug.beads.size(); ++i) {
    const Bead& bead = rug.beads[i];
    const auto& poly = bead.poly;
    Pt a = lambdaMinVertex(poly), b = lambdaMaxVertex(poly);
    check(a == vPrev, "rag rug: chain broken");

    auto makeStep = [&](Pt vec, const Partition& label) {
      LabelledStep st;
      st.vec = vec;
      st.label = label;
      for (int64_t part : label)
        st.slots.push_back(rp.dual.newSlot(part, static_cast<int>(i)));
      return st;
    };

    if (poly.isSegment()) {
      int plusEdge = inHPlus(poly.outwardNormal(0)) ? 0 : 1;
      check(!inHPlus(poly.outwardNormal(1 - plusEdge)),
            "rag rug: segment normals misclassified");
      Pt vec = b - a;
      rp.plus.steps.push_back(makeStep(vec, bead.labels[plusEdge]));
      rp.minus.steps.push_back(makeStep(vec, bead.labels[1 - plusEdge]));
    } else {
      const int ne = poly.edgeCount();
      std::vector<bool> hp(ne);
      for (int e = 0; e < ne; ++e) hp[e] = inHPlus(poly.outwardNormal(e));
      auto arcOf = [&](bool wantPlus) {
        int s = -1;
        for (int e = 0; e < ne; ++e)
          if (hp[e] == wantPlus && hp[(e + ne - 1) % ne] != wantPlus) { s = e; break; }
        check(s >= 0, "rag rug: boundary arc missing");
        std::vector<int> arc;
        for (int e = s; hp[e % ne] == wantPlus && static_cast<int>(arc.size()) < ne; ++e)
          arc.push_back(e % ne);
        return arc;
      };
      auto plusArc = arcOf(true), minusArc = arcOf(false);
      check(static_cast<int>(plusArc.size() + minusArc.size()) == ne,
            "rag rug: arcs not contiguous");
      // ccw traversal runs lambda-max -> lambda-min on the upper side.
      for (auto it = plusArc.rbegin(); it != plusArc.rend(); ++it)
        rp.plus.steps.push_back(makeStep(-poly.edgeVec(*it), bead.labels[*it]));
      for (int e : minusArc)
        rp.minus.steps.push_back(makeStep(poly.edgeVec(e), bead.labels[e]));
    }
    check(rp.plus.end() == b && rp.minus.end() == b, "rag rug: path ends differ");
    vPrev = b;
  }
  check(vPrev == Pt{rug.d, 0}, "rag rug: chain does not reach (d,0)");
  validatePath(rp.plus, rug.d);
  validatePath(rp.minus, rug.d);
  return rp;
}

/// mu(F) = mu_+(gamma_+) * mu_-(gamma_-).
inline Rational rug_multiplicity(const RagRug& rug) {
  RugPaths rp = buildRugPaths(rug);
  std::vector<PathBranch> bp, bm;
  PathRecursion(Sign::Plus, rug.d, false).run(rp.plus, rp.dual, bp);
  PathRecursion(Sign::Minus, rug.d, false).run(rp.minus, rp.dual, bm);
  Rational mp(0), mm(0);
  for (const auto& x : bp) mp += x.coeff;
  for (const auto& x : bm) mm += x.coeff;
  return mp * mm;
}

// ---------------------------------------------------------------------------
// Rug enumeration
// ---------------------------------------------------------------------------

namespace detail {

inline bool isStrictlyConvexCcw(const std::vector<Pt>& cyc) {
  const size_t n = cyc.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    Pt e1 = cyc[(i + 1) % n] - cyc[i];
    Pt e2 = cyc[(i + 2) % n] - cyc[(i + 1) % n];
    if (e1 == Pt{0, 0} || cross(e1, e2) <= 0) return false;
  }
  return true;
}

}  // namespace detail

class RagRugEnumerator {
 public:
  RagRugEnumerator(int d, std::vector<int> form) : d_(d), form_(std::move(form)) {
    int64_t sum = std::accumulate(form_.begin(), form_.end(), int64_t{0});
    if (static_cast<int64_t>(form_.size()) + sum != 3 * d_ - 1)
      throw DimensionError("rag rugs: n + sum(r) must equal 3d-1");
    for (int r : form_)
      if (r < 0) throw DimensionError("rag rugs: negative psi power");
    for (int64_t x = 0; x <= d_; ++x)
      for (int64_t y = 0; x + y <= d_; ++y) pts_.push_back({x, y});
  }

  std::vector<RagRug> enumerate() {
    std::vector<RagRug> out;
    RagRug cur;
    cur.d = d_;
    cur.form = form_;
    chain(cur, Pt{0, d_}, 0, out);
    return out;
  }

 private:
  int d_;
  std::vector<int> form_;
  std::vector<Pt> pts_;
  std::map<std::tuple<int, Pt, Pt>, std::vector<Bead>> cache_;

  void chain(RagRug& cur, Pt v, size_t i, std::vector<RagRug>& out) {
    if (i == form_.size()) {
      if (v == Pt{d_, 0}) out.push_back(cur);
      return;
    }
    for (Pt w : pts_) {
      if (!lambda_less(v, w)) continue;
      if (i + 1 == form_.size() && w != Pt{d_, 0}) continue;
      for (const Bead& bead : templates(form_[i], v, w)) {
        bool ok = true;
        for (size_t j = 0; j < cur.beads.size(); ++j) {
          if (intersectInMoreThanOnePoint(cur.beads[j].poly, bead.poly)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        cur.beads.push_back(bead);
        chain(cur, w, i + 1, out);
        cur.beads.pop_back();
      }
    }
  }

  const std::vector<Bead>& templates(int r, Pt a, Pt b) {
    auto key = std::make_tuple(r, a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Bead> out;
    segmentTemplates(r, a, b, out);
    if (r >= 1) polygonTemplates(r, a, b, out);
    return cache_.emplace(key, std::move(out)).first->second;
  }

  // Label choices for one edge: forced all-ones on the boundary of the
  // triangle, otherwise any partition of the integer length.
  std::vector<Partition> edgeLabelChoices(Pt from, Pt to) const {
    int64_t len = intLength(to - from);
    if (deltaSideNormal(from, to, d_)) return {onesPartition(len)};
    return partitionsOf(len);
  }

  void segmentTemplates(int r, Pt a, Pt b, std::vector<Bead>& out) {
    LatticePolygon seg = LatticePolygon::fromVertices({a, b});
    int64_t len = intLength(b - a);
    auto side = deltaSideNormal(a, b, d_);
    const int64_t budget = r + 2;
    // Two labels, one per outward normal; an edge on the boundary of the
    // triangle carries the all-ones label on the outside.
    std::vector<std::vector<Partition>> choices(2);
    for (int e = 0; e < 2; ++e) {
      Pt nu = seg.outwardNormal(e);
      if (side && nu == *side)
        choices[e] = {onesPartition(len)};
      else
        choices[e] = partitionsOf(len);
    }
    for (const auto& p0 : choices[0])
      for (const auto& p1 : choices[1])
        if (static_cast<int64_t>(p0.size() + p1.size()) == budget)
          out.push_back({seg, {p0, p1}});
  }

  void polygonTemplates(int r, Pt a, Pt b, std::vector<Bead>& out) {
    const int maxEdges = r + 2;
    std::vector<std::vector<Pt>> uppers, lowers;
    chainsBetween(a, b, maxEdges, /*upper=*/true, uppers);
    chainsBetween(a, b, maxEdges, /*upper=*/false, lowers);
    for (const auto& up : uppers) {
      for (const auto& lo : lowers) {
        if (static_cast<int>(up.size() + lo.size()) - 2 > maxEdges) continue;
        std::vector<Pt> cyc(lo.begin(), lo.end());  // a ... b along the lower side
        for (size_t i = up.size() - 1; i-- > 1;)    // upper interior, reversed
          cyc.push_back(up[i]);
        if (!detail::isStrictlyConvexCcw(cyc)) continue;
        LatticePolygon poly = LatticePolygon::fromVertices(cyc);
        assignLabels(poly, r + 2, out);
      }
    }
  }

  // Strict-turn lattice chains from a to b, lambda-increasing, at most
  // maxEdges edges. Upper chains turn clockwise, lower chains turn ccw.
  void chainsBetween(Pt a, Pt b, int maxEdges, bool upper,
                     std::vector<std::vector<Pt>>& out) const {
    std::vector<Pt> cur{a};
    auto rec = [&](auto&& self) -> void {
      Pt at = cur.back();
      if (at == b) {
        out.push_back(cur);
        return;
      }
      if (static_cast<int>(cur.size()) - 1 >= maxEdges) return;
      for (Pt nxt : pts_) {
        if (!lambda_less(at, nxt)) continue;
        if (lambda_less(b, nxt)) continue;
        Pt v = nxt - at;
        if (cur.size() >= 2) {
          int64_t c = cross(at - cur[cur.size() - 2], v);
          if (upper ? c >= 0 : c <= 0) continue;
        }
        cur.push_back(nxt);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    // keep only chains ending exactly at b (ensured by recursion base)
  }

  void assignLabels(const LatticePolygon& poly, int64_t budget,
                    std::vector<Bead>& out) const {
    const int ne = poly.edgeCount();
    std::vector<std::vector<Partition>> choices(ne);
    for (int e = 0; e < ne; ++e) {
      Pt from = poly.edgeStart(e);
      choices[e] = edgeLabelChoices(from, from + poly.edgeVec(e));
    }
    std::vector<Partition> picked(ne);
    auto rec = [&](auto&& self, int e, int64_t used) -> void {
      if (used > budget) return;
      if (e == ne) {
        if (used == budget) out.push_back({poly, picked});
        return;
      }
      for (const auto& p : choices[e]) {
        picked[e] = p;
        self(self, e + 1, used + static_cast<int64_t>(p.size()));
      }
    };
    rec(rec, 0, 0);
  }
};

inline std::vector<RagRug> enumerate_rag_rugs(int d, const std::vector<int>& form) {
  return RagRugEnumerator(d, form).enumerate();
}

// ---------------------------------------------------------------------------
// Possible labelled Newton subdivisions, reducibility, and the count
// ---------------------------------------------------------------------------

/// A completed subdivision of the triangle with the summand/pairing records
/// needed to reconstruct the dual tropical curve.
struct LabelledSubdivision {
  std::vector<SubdivCell> cells;
  std::vector<std::pair<int, int>> links;  // dual-graph edges between nodes
  int nodeCount = 0;

  std::string key() const {
    std::vector<std::string> parts;
    for (const auto& c : cells) {
      std::string s;
      for (Pt v : c.poly.vertices()) s += detail::ptStr(v) + ";";
      s += "|";
      for (const auto& lab : c.edgeLabels) {
        for (int64_t x : lab) s += std::to_string(x) + ",";
        s += ";";
      }
      s += "|" + c.record;
      parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (auto& p : parts) key += p + "\n";
    return key;
  }
};

/// Reconstructs the abstract dual curve from the records and reports whether
/// it is disconnected.
inline bool is_reducible(const LabelledSubdivision& s) {
  if (s.nodeCount <= 0)
    throw std::invalid_argument("is_reducible: missing summand records");
  std::vector<int> parent(s.nodeCount);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : s.links) parent[find(a)] = find(b);
  int comps = 0;
  for (int i = 0; i < s.nodeCount; ++i)
    if (find(i) == i) ++comps;
  return comps > 1;
}

struct SubdivisionOutcome {
  LabelledSubdivision subdivision;
  Rational mult;
  bool reducible = false;
};

namespace detail {

inline std::vector<SubdivCell> beadCells(const RagRug& rug) {
  std::vector<SubdivCell> cells;
  for (size_t i = 0; i < rug.beads.size(); ++i) {
    const Bead& b = rug.beads[i];
    if (b.poly.isSegment()) continue;
    cells.push_back({b.poly, b.labels, "Q;r=" + std::to_string(rug.form[i])});
  }
  return cells;
}

}  // namespace detail

/// All completed subdivisions reachable through both recursions, with
/// multiplicities. Identical subdivisions are accumulated.
inline std::vector<SubdivisionOutcome> possible_subdivisions(const RagRug& rug) {
  RugPaths rp = buildRugPaths(rug);
  const int nBeads = rp.dual.nodeCount;
  std::vector<PathBranch> bp, bm;
  PathRecursion(Sign::Plus, rug.d, true).run(rp.plus, rp.dual, bp);
  PathRecursion(Sign::Minus, rug.d, true).run(rp.minus, rp.dual, bm);
  auto qCells = detail::beadCells(rug);
  int64_t qArea = 0;
  for (const auto& c : qCells) qArea += c.poly.normalizedArea();

  std::map<std::string, SubdivisionOutcome> acc;
  for (const auto& p : bp) {
    for (const auto& m : bm) {
      LabelledSubdivision sub;
      sub.cells = qCells;
      sub.cells.insert(sub.cells.end(), p.cells.begin(), p.cells.end());
      sub.cells.insert(sub.cells.end(), m.cells.begin(), m.cells.end());
      sub.nodeCount = p.nodeCount + (m.nodeCount - nBeads);
      sub.links = p.links;
      for (auto [a, b] : m.links)
        sub.links.push_back({a < nBeads ? a : a + p.nodeCount - nBeads,
                             b < nBeads ? b : b + p.nodeCount - nBeads});
      int64_t area = qArea;
      for (const auto& c : p.cells) area += c.poly.normalizedArea();
      for (const auto& c : m.cells) area += c.poly.normalizedArea();
      check(area == static_cast<int64_t>(rug.d) * rug.d,
            "possible_subdivisions: cells do not tile the triangle");
      SubdivisionOutcome oc;
      oc.mult = p.coeff * m.coeff;
      oc.reducible = is_reducible(sub);
      std::string key = sub.key() + (oc.reducible ? "|red" : "|irr");
      auto it = acc.find(key);
      if (it == acc.end()) {
        oc.subdivision = std::move(sub);
        acc.emplace(std::move(key), std::move(oc));
      } else {
        it->second.mult += oc.mult;
      }
    }
  }
  std::vector<SubdivisionOutcome> out;
  for (auto& [k, v] : acc) out.push_back(std::move(v));
  return out;
}

struct RugReport {
  RagRug rug;
  Rational mu;         // mu(F)
  Rational reducible;  // multiplicity of the reducible possible subdivisions
};

/// N'_rr(d, n, form): rag rugs counted with irreducible multiplicity.
inline Rational count_rag_rugs(int d, const std::vector<int>& form,
                               std::vector<RugReport>* reports = nullptr,
                               std::vector<std::string>* warnings = nullptr) {
  bool allZero = std::all_of(form.begin(), form.end(), [](int r) { return r == 0; });
  Rational total(0);
  for (const RagRug& rug : enumerate_rag_rugs(d, form)) {
    Rational mu(0), red(0);
    for (const auto& oc : possible_subdivisions(rug)) {
      mu += oc.mult;
      if (oc.reducible) red += oc.mult;
    }
    check(mu == rug_multiplicity(rug),
          "count_rag_rugs: subdivision multiplicities do not sum to mu(F)");
    if (allZero && !red.isZero() && warnings)
      warnings->push_back("all-zero form produced a reducible subdivision");
    total += mu - red;
    if (reports && (!mu.isZero() || !red.isZero()))
      reports->push_back({rug, mu, red});
  }
  return total;
}

}  // namespace tropgw
