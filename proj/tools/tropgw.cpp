// tropgw: exact calculator for rational tropical descendant Gromov-Witten
// invariants of the plane. Three engines back each other: a WDVV/string/
// divisor recursion, a generalized lattice-path (rag rug) enumeration, and
// a brute-force determinant-weighted curve count.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tropgw/curve_oracle.hpp"
#include "tropgw/matrix.hpp"
#include "tropgw/wdvv.hpp"

using json = nlohmann::ordered_json;
using namespace tropgw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDimension = 2;
constexpr int kExitCrossCheck = 3;

json rationalJson(const Rational& r) {
  return json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

std::vector<int> parseIntList(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw CLI::ValidationError("empty entry in integer list");
    out.push_back(std::stoi(tok));
  }
  return out;
}

int64_t elapsedMs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

json polygonJson(const LatticePolygon& p) {
  json arr = json::array();
  for (Pt v : p.vertices()) arr.push_back({v.x, v.y});
  return arr;
}

json partitionJson(const Partition& p) {
  json arr = json::array();
  for (int64_t x : p) arr.push_back(x);
  return arr;
}

json beadJson(const Bead& b) {
  json labels = json::array();
  for (const auto& lab : b.labels) labels.push_back(partitionJson(lab));
  return json{{"vertices", polygonJson(b.poly)}, {"labels", labels}};
}

json cellJson(const SubdivCell& c) {
  json labels = json::array();
  for (const auto& lab : c.edgeLabels) labels.push_back(partitionJson(lab));
  return json{{"vertices", polygonJson(c.poly)},
              {"labels", labels},
              {"record", c.record}};
}

std::string describeQuery(const InvariantQuery& q) {
  std::string s = "<";
  if (q.l) s += "tau_0(0)^" + std::to_string(q.l) + " ";
  if (q.m) s += "tau_0(1)^" + std::to_string(q.m) + " ";
  for (int r : q.rs) s += "tau_" + std::to_string(r) + "(2) ";
  if (s.back() == ' ') s.pop_back();
  return s + ">_" + std::to_string(q.d);
}

json queryJson(const InvariantQuery& q) {
  return json{{"degree", q.d}, {"free", q.l}, {"lines", q.m}, {"psi", q.rs}};
}

struct CheckRunner {
  bool jsonMode = false;
  int failures = 0;
  int total = 0;
  json results = json::array();

  void run(const std::string& name, bool ok, const std::string& detail = "") {
    ++total;
    if (!ok) ++failures;
    if (jsonMode) {
      results.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
    } else {
      std::cout << (ok ? "ok   " : "FAIL ") << name
                << (detail.empty() ? "" : "  [" + detail + "]") << "\n";
    }
  }
};

int runChecks(const std::string& level, bool jsonMode) {
  CheckRunner cr;
  cr.jsonMode = jsonMode;
  WdvvEngine eng;

  // One-point closed form and its degree recursion.
  const Rational onePoint[] = {Rational(0), Rational(1), Rational(1, 8),
                               Rational(1, 216)};
  for (int d = 1; d <= 3; ++d) {
    Rational v = eng.compute({d, 0, 0, {3 * d - 2}}).value;
    cr.run("one-point d=" + std::to_string(d), v == onePoint[d], v.str());
  }
  for (int d = 2; d <= 3; ++d) {
    Rational lhs = Rational(static_cast<long>(d) * d * d) *
                   eng.compute({d, 0, 0, {3 * d - 2}}).value;
    Rational rhs = eng.compute({d - 1, 0, 0, {3 * d - 5}}).value;
    cr.run("one-point recursion d=" + std::to_string(d), lhs == rhs);
  }

  // Paper-example regressions.
  {
    std::vector<Rational> want{Rational(1), Rational(1, 4), Rational(1, 12)};
    std::vector<bool> seen(3, false);
    for (const auto& p : enumerate_end_paths(3, Sign::Minus)) {
      Rational mu = end_path_multiplicity(p);
      for (size_t i = 0; i < want.size(); ++i)
        if (mu == want[i]) seen[i] = true;
    }
    cr.run("end-path multiplicities {1,1/4,1/12} in Delta_3",
           seen[0] && seen[1] && seen[2]);
  }
  {
    bool found = false;
    for (const auto& p : enumerate_labelled_paths(3))
      if (path_mu(p, Sign::Plus, 3) == Rational(3, 2)) { found = true; break; }
    cr.run("labelled path with mu+ = 3/2 in Delta_3", found);
  }
  {
    bool found = false;
    for (const auto& rug : enumerate_rag_rugs(3, {2, 2, 0, 0}))
      if (rug_multiplicity(rug) == Rational(1, 2)) { found = true; break; }
    cr.run("rag rug of form (2,2,0,0) with mu(F) = 1/2", found);
  }

  // Determinant kernel on random matrices.
  {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> entry(-9, 9), size(1, 5);
    bool ok = true;
    for (int t = 0; t < 200 && ok; ++t) {
      int n = size(rng);
      IntMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
      ok = weight_at_origin(m) == abs(det_exact(m));
    }
    cr.run("det kernel: weight_at_origin == |det| (200 random)", ok);
  }

  // Curve counts through points via the lattice-path algorithm.
  for (int d = 1; d <= 3; ++d) {
    Rational v = count_rag_rugs(d, std::vector<int>(3 * d - 1, 0));
    cr.run("N_" + std::to_string(d) + " via rag rugs",
           v == Rational(WdvvEngine::kBaseTable[d]), v.str());
  }

  // Cross-engine agreement for every d <= 2 psi distribution.
  {
    std::vector<std::pair<int, std::vector<int>>> queries = {
        {1, {1}},      {1, {0, 0}},    {2, {4}},          {2, {3, 0}},
        {2, {2, 1}},   {2, {2, 0, 0}}, {2, {1, 1, 0}},    {2, {1, 0, 0, 0}},
        {2, {0, 0, 0, 0, 0}}};
    for (auto& [d, rs] : queries) {
      Rational e = eng.compute({d, 0, 0, rs}).value;
      auto c1 = PointConfig::random(static_cast<int>(rs.size()), 7001);
      auto c2 = PointConfig::random(static_cast<int>(rs.size()), 7002);
      auto c3 = PointConfig::random(static_cast<int>(rs.size()), mixSeed(7001));
      auto c4 = PointConfig::random(static_cast<int>(rs.size()), mixSeed(7002));
      auto vals = oracle_values(d, rs, {c1, c2, c3, c4});
      bool ok = vals[0] == e && vals[1] == e && vals[2] == e && vals[3] == e;
      std::string name = "engine == oracle d=" + std::to_string(d) + " psi=";
      for (int r : rs) name += std::to_string(r) + ",";
      cr.run(name, ok, e.str());
    }
  }

  // Permutation invariance, divisor and string identities.
  {
    Rational a = eng.compute({2, 0, 0, {0, 1, 0, 0}}).value;
    Rational b = eng.compute({2, 0, 0, {1, 0, 0, 0}}).value;
    cr.run("psi permutation invariance", a == b);
    Rational withLine = eng.compute({2, 0, 1, {1, 0, 0, 0}}).value;
    cr.run("divisor identity m=1", withLine == Rational(2) * b);
    Rational lhs = eng.compute({2, 1, 0, {2, 1, 0}}).value;
    Rational rhs = Rational(0);
    for (auto& [count, sub] : WdvvEngine::string_reduce({2, 1, 0, {2, 1, 0}}))
      rhs += Rational(count) * eng.compute(sub).value;
    cr.run("string identity on <tau_0(0) tau_2 tau_1 tau_0>_2", lhs == rhs);
  }

  if (level == "full") {
    std::vector<std::vector<int>> forms = {
        {7},          {6, 0},       {5, 1},       {4, 2},       {3, 3},
        {5, 0, 0},    {4, 1, 0},    {3, 2, 0},    {3, 1, 1},    {2, 2, 1},
        {4, 0, 0, 0}, {3, 1, 0, 0}, {2, 2, 0, 0}, {2, 1, 1, 0}, {1, 1, 1, 1}};
    for (auto& rs : forms) {
      Rational e = eng.compute({3, 0, 0, rs}).value;
      Rational g = count_rag_rugs(3, rs);
      std::string name = "engine == rag rugs d=3 psi=";
      for (int r : rs) name += std::to_string(r) + ",";
      cr.run(name, e == g, e.str());
    }
    Rational n4 = count_rag_rugs(4, std::vector<int>(11, 0));
    cr.run("N_4 via rag rugs", n4 == Rational(620), n4.str());
    WdvvEngine tableEng(WdvvEngine::BaseMode::Table);
    cr.run("base table matches rag rugs",
           tableEng.compute({3, 0, 0, std::vector<int>(8, 0)}).value ==
               eng.compute({3, 0, 0, std::vector<int>(8, 0)}).value);
  }

  if (jsonMode) {
    json out{{"schema", "tropgw/1"},
             {"level", level},
             {"checks", cr.total},
             {"failures", cr.failures},
             {"results", cr.results}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << cr.total << " checks, " << cr.failures << " failures\n";
  }
  return cr.failures == 0 ? kExitOk : kExitCrossCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tropical descendant Gromov-Witten invariants of the plane"};
  app.require_subcommand(1);

  // --- invariant ---
  auto* inv = app.add_subcommand("invariant", "compute one invariant");
  int invDegree = 0;
  std::string invPsi;
  int invLines = 0, invFree = 0;
  std::string invBase = "ragrug", invCache;
  bool invJson = false;
  inv->add_option("--degree", invDegree, "curve degree d")->required();
  inv->add_option("--psi", invPsi, "comma-separated psi powers at point ends");
  inv->add_option("--lines", invLines, "number of line ends tau_0(1)");
  inv->add_option("--free", invFree, "number of free ends tau_0(0)");
  inv->add_option("--base", invBase, "all-zero base: ragrug|table")
      ->check(CLI::IsMember({"ragrug", "table"}));
  inv->add_option("--cache", invCache, "persistent cache file");
  inv->add_flag("--json", invJson, "machine-readable output");

  // --- ragrug ---
  auto* rag = app.add_subcommand("ragrug", "count rag rugs of a given form");
  int ragDegree = 0;
  std::string ragForm;
  bool ragList = false, ragJson = false;
  rag->add_option("--degree", ragDegree, "curve degree d")->required();
  rag->add_option("--form", ragForm, "comma-separated form (r_1,...,r_n)")
      ->required();
  rag->add_flag("--list", ragList, "emit every rug with its multiplicity");
  rag->add_flag("--json", ragJson, "machine-readable output");

  // --- oracle ---
  auto* ora = app.add_subcommand("oracle", "brute-force determinant count");
  int oraDegree = 0;
  std::string oraPsi;
  uint64_t oraSeed = 1;
  bool oraJson = false;
  ora->add_option("--degree", oraDegree, "curve degree d")->required();
  ora->add_option("--psi", oraPsi, "comma-separated psi powers")->required();
  ora->add_option("--seed", oraSeed, "seed for the point configuration");
  ora->add_flag("--json", oraJson, "machine-readable output");

  // --- paths ---
  auto* pth = app.add_subcommand("paths", "enumerate labelled lattice paths");
  int pthDegree = 0;
  std::string pthSign = "both";
  bool pthAll = false, pthJson = false;
  pth->add_option("--degree", pthDegree, "triangle degree d (<= 3 advised)")
      ->required();
  pth->add_option("--sign", pthSign, "plus|minus|both")
      ->check(CLI::IsMember({"plus", "minus", "both"}));
  pth->add_flag("--all", pthAll, "include paths of multiplicity 0");
  pth->add_flag("--json", pthJson, "machine-readable output");

  // --- detkernel ---
  auto* det = app.add_subcommand("detkernel",
                                 "lattice weight of the origin vs determinant");
  std::string detMatrix;
  bool detJson = false;
  det->add_option("--matrix", detMatrix, "rows 'a,b;c,d;...'")->required();
  det->add_flag("--json", detJson, "machine-readable output");

  // --- check ---
  auto* chk = app.add_subcommand("check", "cross-engine agreement suite");
  std::string chkLevel = "quick";
  bool chkJson = false;
  chk->add_option("--level", chkLevel, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));
  chk->add_flag("--json", chkJson, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*inv) {
      auto t0 = std::chrono::steady_clock::now();
      InvariantQuery q{invDegree, invFree, invLines,
                       invPsi.empty() ? std::vector<int>{} : parseIntList(invPsi)};
      WdvvEngine eng(invBase == "table" ? WdvvEngine::BaseMode::Table
                                        : WdvvEngine::BaseMode::RagRug);
      std::string cachePath = invCache;
      if (cachePath.empty())
        if (const char* env = std::getenv("TROPGW_CACHE")) cachePath = env;
      if (!cachePath.empty()) eng.cache().load(cachePath);
      InvariantValue v = eng.compute(q);
      if (!cachePath.empty()) eng.cache().save(cachePath);
      if (invJson) {
        json out{{"schema", "tropgw/1"},
                 {"query", queryJson(q)},
                 {"value", rationalJson(v.value)},
                 {"labelled_value", rationalJson(v.labelled_value)},
                 {"method", v.method},
                 {"elapsed_ms", elapsedMs(t0)},
                 {"warnings", json::array()}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << describeQuery(q) << " = " << v.value.str()
                  << "   (labelled " << v.labelled_value.str() << ", method "
                  << v.method << ", " << elapsedMs(t0) << " ms)\n";
      }
      return kExitOk;
    }

    if (*rag) {
      auto t0 = std::chrono::steady_clock::now();
      auto form = parseIntList(ragForm);
      std::vector<RugReport> reports;
      std::vector<std::string> warnings;
      Rational total = count_rag_rugs(ragDegree, form,
                                      ragList ? &reports : nullptr, &warnings);
      if (ragJson) {
        json out{{"schema", "tropgw/1"},
                 {"query", {{"degree", ragDegree}, {"form", form}}},
                 {"value", rationalJson(total)},
                 {"elapsed_ms", elapsedMs(t0)},
                 {"warnings", warnings}};
        if (ragList) {
          json rugs = json::array();
          for (const auto& rep : reports) {
            json beads = json::array();
            for (const auto& b : rep.rug.beads) beads.push_back(beadJson(b));
            json subs = json::array();
            for (const auto& oc : possible_subdivisions(rep.rug)) {
              json cells = json::array();
              for (const auto& c : oc.subdivision.cells)
                cells.push_back(cellJson(c));
              subs.push_back({{"cells", cells},
                              {"mult", rationalJson(oc.mult)},
                              {"reducible", oc.reducible}});
            }
            rugs.push_back({{"polygons", beads},
                            {"mu", rationalJson(rep.mu)},
                            {"reducible_mult", rationalJson(rep.reducible)},
                            {"subdivisions", subs}});
          }
          out["rugs"] = std::move(rugs);
        }
        std::cout << out.dump(2) << "\n";
      } else {
        if (ragList) {
          for (const auto& rep : reports) {
            std::cout << "rug:";
            for (const auto& b : rep.rug.beads) {
              std::cout << " [";
              for (Pt v : b.poly.vertices())
                std::cout << "(" << v.x << "," << v.y << ")";
              std::cout << "]";
            }
            std::cout << "  mu(F) = " << rep.mu.str();
            if (!rep.reducible.isZero())
              std::cout << "  reducible part " << rep.reducible.str();
            std::cout << "\n";
          }
        }
        for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
        std::cout << "N'_rr = " << total.str() << "   (" << elapsedMs(t0)
                  << " ms)\n";
      }
      return kExitOk;
    }

    if (*ora) {
      auto t0 = std::chrono::steady_clock::now();
      auto rs = parseIntList(oraPsi);
      Rational v = oracle_invariant(oraDegree, rs, oraSeed);
      if (oraJson) {
        json out{{"schema", "tropgw/1"},
                 {"query",
                  {{"degree", oraDegree}, {"psi", rs}, {"seed", oraSeed}}},
                 {"value", rationalJson(v)},
                 {"elapsed_ms", elapsedMs(t0)},
                 {"warnings", json::array()}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "oracle value = " << v.str() << "   (" << elapsedMs(t0)
                  << " ms)\n";
      }
      return kExitOk;
    }

    if (*pth) {
      auto t0 = std::chrono::steady_clock::now();
      auto paths = enumerate_labelled_paths(pthDegree);
      json arr = json::array();
      size_t shown = 0;
      for (const auto& p : paths) {
        Rational mp = pthSign == "minus" ? Rational(0)
                                         : path_mu(p, Sign::Plus, pthDegree);
        Rational mm = pthSign == "plus" ? Rational(0)
                                        : path_mu(p, Sign::Minus, pthDegree);
        if (!pthAll && mp.isZero() && mm.isZero()) continue;
        ++shown;
        if (pthJson) {
          json pts = json::array();
          for (Pt q : p.points()) pts.push_back({q.x, q.y});
          json labels = json::array();
          for (const auto& s : p.steps) labels.push_back(partitionJson(s.label));
          arr.push_back({{"points", pts},
                         {"labels", labels},
                         {"mu_plus", rationalJson(mp)},
                         {"mu_minus", rationalJson(mm)}});
        } else {
          for (Pt q : p.points()) std::cout << "(" << q.x << "," << q.y << ")";
          std::cout << " labels ";
          for (const auto& s : p.steps) {
            std::cout << "(";
            for (size_t i = 0; i < s.label.size(); ++i)
              std::cout << (i ? "," : "") << s.label[i];
            std::cout << ")";
          }
          std::cout << "  mu+ = " << mp.str() << "  mu- = " << mm.str() << "\n";
        }
      }
      if (pthJson) {
        json out{{"schema", "tropgw/1"},
                 {"query", {{"degree", pthDegree}, {"sign", pthSign}}},
                 {"paths", arr},
                 {"elapsed_ms", elapsedMs(t0)},
                 {"warnings", json::array()}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << shown << " of " << paths.size() << " labelled paths shown ("
                  << elapsedMs(t0) << " ms)\n";
      }
      return kExitOk;
    }

    if (*det) {
      std::vector<std::vector<int>> rows;
      std::stringstream ss(detMatrix);
      std::string row;
      while (std::getline(ss, row, ';')) rows.push_back(parseIntList(row));
      const int n = static_cast<int>(rows.size());
      IntMatrix m(n, n);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
          throw DimensionError("detkernel: matrix must be square");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
      }
      mpz_class w = weight_at_origin(m), dd = det_exact(m);
      bool agree = w == abs(dd);
      if (detJson) {
        json out{{"schema", "tropgw/1"},
                 {"weight_at_origin", w.get_str()},
                 {"det", dd.get_str()},
                 {"agree", agree}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "weight_at_origin = " << w.get_str()
                  << ", det = " << dd.get_str()
                  << (agree ? "  (agree)" : "  (MISMATCH)") << "\n";
      }
      return agree ? kExitOk : kExitCrossCheck;
    }

    if (*chk) return runChecks(chkLevel, chkJson);
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const ScaleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitCrossCheck;
  }
  return kExitUsage;
}
