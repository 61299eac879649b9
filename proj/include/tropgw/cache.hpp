#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <unordered_map>

#include "tropgw/rational.hpp"

namespace tropgw {

/// Memoization table for invariant values. Keys, once written, are never
/// overwritten with a different value. The on-disk format is one record per
/// line: "canonical-key<TAB>numerator/denominator"; an absent file is an
/// empty cache. Writes go through a temp file plus rename.
class MemoCache {
 public:
  bool lookup(const std::string& key, Rational& out) const {
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }

  void insert(const std::string& key, const Rational& value) {
    auto [it, fresh] = map_.emplace(key, value);
    if (!fresh) check(it->second == value, "cache: write-once violation");
  }

  size_t size() const { return map_.size(); }

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;  // absent file = empty cache
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tab = line.find('\t');
      check(tab != std::string::npos, "cache: malformed record");
      insert(line.substr(0, tab), Rational::parse(line.substr(tab + 1)));
    }
  }

  void save(const std::string& path) const {
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      check(static_cast<bool>(out), "cache: cannot open temp file");
      for (const auto& [k, v] : map_) out << k << '\t' << v.str() << '\n';
    }
    check(std::rename(tmp.c_str(), path.c_str()) == 0, "cache: rename failed");
  }

 private:
  std::unordered_map<std::string, Rational> map_;
};

}  // namespace tropgw
