#pragma once

// Deliberately naive reference implementations. Nothing here calls into the
// library's algorithms; tests compare the two.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

/// Membership for the complement of `gaps` (gaps assumed valid).
struct Members {
  std::set<int> gaps;
  bool operator()(int x) const { return x >= 0 && !gaps.count(x); }
  int frobenius() const { return gaps.empty() ? -1 : *gaps.rbegin(); }
  int multiplicity() const {
    int x = 1;
    while (gaps.count(x)) ++x;
    return x;
  }
};

inline bool is_closed(const std::set<int>& gaps) {
  Members in{gaps};
  int f = in.frobenius();
  for (int x = 1; x <= f; ++x)
    for (int y = 1; y <= f; ++y)
      if (in(x) && in(y) && !in(x + y)) return false;
  return true;
}

/// Minimal generators: positive members that are not a sum of two positive members.
inline std::vector<int> minimal_generators(const std::set<int>& gaps) {
  Members in{gaps};
  int bound = std::max(in.frobenius() + in.multiplicity(), 1);
  std::vector<int> out;
  for (int x = 1; x <= bound; ++x) {
    if (!in(x)) continue;
    bool sum = false;
    for (int a = 1; a < x; ++a)
      if (in(a) && in(x - a)) sum = true;
    if (!sum) out.push_back(x);
  }
  return out;
}

inline std::vector<int> effective_generators(const std::set<int>& gaps) {
  int f = Members{gaps}.frobenius();
  std::vector<int> out;
  for (int x : minimal_generators(gaps))
    if (x > f) out.push_back(x);
  return out;
}

/// Every gap set of genus g, found by trying all g-subsets of [1, 2g].
inline std::vector<std::set<int>> all_of_genus(int g) {
  std::vector<std::set<int>> out;
  int width = 2 * g;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << width); ++mask) {
    if (__builtin_popcount(mask) != g) continue;
    std::set<int> gaps;
    for (int i = 0; i < width; ++i)
      if ((mask >> i) & 1U) gaps.insert(i + 1);
    if (is_closed(gaps)) out.push_back(gaps);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weight by the definition, over the full power set.

struct Ctx {
  int m, f, d;
};

inline bool admissible(const std::set<int>& u, const std::vector<int>& s, const Ctx& c) {
  std::set<int> in_s(s.begin(), s.end());
  for (int x : u)
    for (int y : u)
      if (x + y == c.f + c.m) return false;
  for (int x : u)
    if (in_s.count(x + c.m) && !u.count(x + c.m)) return false;
  return true;
}

inline int s_value(const std::set<int>& u, const std::vector<int>& s, const Ctx& c) {
  int e = 0, ep = 0;
  for (int x : s)
    if (!u.count(x) && !u.count(x + c.m) && u.count(x - c.d)) ++e;
  for (int x : u)
    if (u.count(x + c.m)) ++ep;
  return e - ep;
}

inline std::vector<std::set<int>> admissible_subsets(const std::vector<int>& s, const Ctx& c) {
  std::vector<std::set<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.size()); ++mask) {
    std::set<int> u;
    for (std::size_t i = 0; i < s.size(); ++i)
      if ((mask >> i) & 1U) u.insert(s[i]);
    if (admissible(u, s, c)) out.push_back(u);
  }
  return out;
}

/// s-value histogram of the admissible subsets.
inline std::map<int, std::uint64_t> histogram(const std::vector<int>& s, const Ctx& c) {
  std::map<int, std::uint64_t> out;
  for (const auto& u : admissible_subsets(s, c)) ++out[s_value(u, s, c)];
  return out;
}

inline double weight_double(const std::vector<int>& s, const Ctx& c) {
  if (s.empty()) return 1.0;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  double total = 0;
  for (auto [v, n] : histogram(s, c)) total += static_cast<double>(n) * std::pow(phi, -v);
  return total;
}

/// Random sorted set of distinct integers in [lo, hi].
inline std::vector<int> random_set(std::mt19937_64& rng, int lo, int hi, std::size_t max_size) {
  std::uniform_int_distribution<int> pick(lo, hi);
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  std::set<int> out;
  std::size_t want = size(rng);
  for (std::size_t tries = 0; out.size() < want && tries < 10 * want + 10; ++tries) out.insert(pick(rng));
  return {out.begin(), out.end()};
}

}  // namespace oracle
