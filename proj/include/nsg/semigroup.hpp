#pragma once

// Numerical semigroups stored as a membership window over [0, f + m].
//
// Everything above f is a member, so the window decides every question asked
// here: generators live in [m, f + m], closure only needs sums up to f + m,
// and a child re-derives its own window when a generator is removed.
//
// Conventions for the root N = {0, 1, 2, ...}: m = 1, f = -1, h = 1 (the single
// generator 1), and it counts as strongly descended.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace nsg {

/// Raised when a set fails additive closure; carries x + y landing on a gap.
class NotASemigroup : public std::invalid_argument {
 public:
  NotASemigroup(long x, long y, const std::string& why)
      : std::invalid_argument(why), x_(x), y_(y) {}
  NotASemigroup(long x, long y)
      : NotASemigroup(x, y,
                      "not a numerical semigroup: " + std::to_string(x) + " + " +
                          std::to_string(y) + " = " + std::to_string(x + y) + " is a gap") {}
  long x() const { return x_; }
  long y() const { return y_; }

 private:
  long x_;
  long y_;
};

class NotEffective : public std::invalid_argument {
 public:
  explicit NotEffective(long lambda)
      : std::invalid_argument(std::to_string(lambda) + " is not an effective generator") {}
};

enum class Descent { Weak, Strong };

inline const char* to_string(Descent d) { return d == Descent::Weak ? "weak" : "strong"; }

struct GeneratorSet {
  std::vector<int> minimal;    // sorted; only generators <= f + m can exist
  std::vector<int> effective;  // the minimal generators > f
  int h() const { return static_cast<int>(effective.size()); }
};

class NumericalSemigroup {
 public:
  static NumericalSemigroup natural() {
    NumericalSemigroup s;
    s.m_ = 1;
    s.f_ = -1;
    s.g_ = 0;
    s.window_.assign(1, 1);
    s.generators_.minimal = {1};
    s.generators_.effective = {1};
    return s;
  }

  /// The complement of `gaps` in N. Throws NotASemigroup (with a witness pair)
  /// when the complement is not additively closed.
  static NumericalSemigroup from_gaps(std::span<const int> gaps) {
    if (gaps.empty()) return natural();
    int f = *std::max_element(gaps.begin(), gaps.end());
    for (int x : gaps)
      if (x <= 0) throw std::invalid_argument("gaps must be positive integers, got " + std::to_string(x));
    std::vector<char> is_gap(static_cast<std::size_t>(f) + 1, 0);
    for (int x : gaps) is_gap[static_cast<std::size_t>(x)] = 1;
    int m = 1;
    while (m <= f && is_gap[static_cast<std::size_t>(m)]) ++m;
    auto member = [&](int x) { return x == 0 || x > f || !is_gap[static_cast<std::size_t>(x)]; };
    for (int x = m; x <= f; ++x) {
      if (!member(x)) continue;
      for (int y = x; x + y <= f; ++y)
        if (member(y) && !member(x + y)) throw NotASemigroup(x, y);
    }
    std::vector<std::uint64_t> window(words_for(f + m), 0);
    for (int x = 0; x <= f + m; ++x)
      if (member(x)) window[static_cast<std::size_t>(x) / 64] |= bit(x);
    return NumericalSemigroup(std::move(window), m, f);
  }

  static NumericalSemigroup from_gaps(std::initializer_list<int> gaps) {
    return from_gaps(std::span<const int>(gaps.begin(), gaps.size()));
  }

  /// Builds from a closed membership predicate; the caller guarantees closure.
  template <class Member>
  static NumericalSemigroup from_members_unchecked(Member&& member, int m, int f) {
    if (f < 0) return natural();
    std::vector<std::uint64_t> window(words_for(f + m), 0);
    for (int x = 0; x <= f + m; ++x)
      if (member(x)) window[static_cast<std::size_t>(x) / 64] |= bit(x);
    return NumericalSemigroup(std::move(window), m, f);
  }

  int multiplicity() const { return m_; }
  int frobenius() const { return f_; }
  int genus() const { return g_; }
  int efficacy() const { return generators_.h(); }
  const GeneratorSet& generators() const { return generators_; }
  bool is_natural() const { return f_ < 0; }

  bool contains(long x) const {
    if (x < 0) return false;
    if (x == 0 || x > f_) return true;
    return (window_[static_cast<std::size_t>(x) / 64] >> (x % 64)) & 1U;
  }

  std::vector<int> gaps() const {
    std::vector<int> out;
    for (int x = 1; x <= f_; ++x)
      if (!contains(x)) out.push_back(x);
    return out;
  }

  /// Members up to and including `limit`.
  std::vector<int> members_up_to(int limit) const {
    std::vector<int> out;
    for (int x = 0; x <= limit; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  const std::vector<std::uint64_t>& window_mask() const { return window_; }

  friend bool operator==(const NumericalSemigroup& x, const NumericalSemigroup& y) {
    return x.f_ == y.f_ && x.window_ == y.window_;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(f_);
    for (auto w : window_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  NumericalSemigroup() = default;

  NumericalSemigroup(std::vector<std::uint64_t> window, int m, int f)
      : window_(std::move(window)), m_(m), f_(f) {
    g_ = 0;
    for (int x = 1; x <= f_; ++x)
      if (!contains(x)) ++g_;
    compute_generators();
  }

  static std::size_t words_for(int top) { return static_cast<std::size_t>(top) / 64 + 1; }
  static std::uint64_t bit(int x) { return std::uint64_t{1} << (x % 64); }

  void compute_generators() {
    for (int x = m_; x <= f_ + m_; ++x) {
      if (!contains(x)) continue;
      bool minimal = true;
      for (int a = m_; 2 * a <= x; ++a)
        if (contains(a) && contains(x - a)) {
          minimal = false;
          break;
        }
      if (!minimal) continue;
      generators_.minimal.push_back(x);
      if (x > f_) generators_.effective.push_back(x);
    }
  }

  std::vector<std::uint64_t> window_;
  int m_ = 1;
  int f_ = -1;
  int g_ = 0;
  GeneratorSet generators_;
};

struct NumericalSemigroupHash {
  std::size_t operator()(const NumericalSemigroup& s) const { return s.hash(); }
};

inline const GeneratorSet& generators(const NumericalSemigroup& s) { return s.generators(); }

/// f + m is a minimal generator (and ℕ by convention).
inline bool is_strongly_descended(const NumericalSemigroup& s) {
  if (s.is_natural()) return true;
  const auto& eff = s.generators().effective;
  return !eff.empty() && eff.back() == s.frobenius() + s.multiplicity();
}

inline bool is_effective_generator(const NumericalSemigroup& s, int lambda) {
  const auto& eff = s.generators().effective;
  return std::binary_search(eff.begin(), eff.end(), lambda);
}

/// s minus one of its effective generators.
inline NumericalSemigroup remove_generator(const NumericalSemigroup& s, int lambda) {
  if (!is_effective_generator(s, lambda)) throw NotEffective(lambda);
  int m = lambda == s.multiplicity() ? s.multiplicity() + 1 : s.multiplicity();
  return NumericalSemigroup::from_members_unchecked(
      [&](int x) { return x != lambda && s.contains(x); }, m, lambda);
}

struct Child {
  int generator;
  NumericalSemigroup semigroup;
};

inline std::vector<Child> children(const NumericalSemigroup& s) {
  std::vector<Child> out;
  for (int lambda : s.generators().effective) out.push_back({lambda, remove_generator(s, lambda)});
  return out;
}

/// Strong iff the child gains an effective generator its parent lacked.
inline Descent descent_type(const NumericalSemigroup& parent, int lambda) {
  NumericalSemigroup child = remove_generator(parent, lambda);
  const auto& old_eff = parent.generators().effective;
  for (int x : child.generators().effective)
    if (!std::binary_search(old_eff.begin(), old_eff.end(), x)) return Descent::Strong;
  return Descent::Weak;
}

/// Same verdict from an already built child (Lemma 2.1 style test on the child).
inline Descent descent_type_of_child(const NumericalSemigroup& child) {
  return is_strongly_descended(child) ? Descent::Strong : Descent::Weak;
}

/// {0} ∪ ((s \ {0}) + delta). Requires m + delta >= 1 so the shift stays inside N.
inline NumericalSemigroup shift_tau(const NumericalSemigroup& s, int delta) {
  int m = s.multiplicity();
  if (m + delta < 1)
    throw std::domain_error("shift_tau: shifting by " + std::to_string(delta) +
                            " moves the multiplicity " + std::to_string(m) + " below 1");
  std::vector<int> shifted_gaps;
  for (int y = 1; y <= delta; ++y) shifted_gaps.push_back(y);
  for (int x : s.gaps())
    if (x + delta >= 1) shifted_gaps.push_back(x + delta);
  std::sort(shifted_gaps.begin(), shifted_gaps.end());
  shifted_gaps.erase(std::unique(shifted_gaps.begin(), shifted_gaps.end()), shifted_gaps.end());
  return NumericalSemigroup::from_gaps(shifted_gaps);
}

/// L = { x in [0, f - m] : m + x in s }; empty when f < m.
inline std::vector<int> left_set(const NumericalSemigroup& s) {
  std::vector<int> out;
  for (int x = 0; x <= s.frobenius() - s.multiplicity(); ++x)
    if (s.contains(s.multiplicity() + x)) out.push_back(x);
  return out;
}

inline bool is_orderly(const NumericalSemigroup& s) {
  return is_strongly_descended(s) && s.genus() < 2 * s.efficacy();
}

/// Second smallest positive member minus m.
inline int second_gap_offset(const NumericalSemigroup& s) {
  int m = s.multiplicity();
  int x = m + 1;
  while (!s.contains(x)) ++x;
  return x - m;
}

// ---------------------------------------------------------------------------
// Text and JSON forms.

inline std::string to_string(const NumericalSemigroup& s) {
  std::string out = "{";
  bool first = true;
  for (int x : s.gaps()) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

/// Parses "1,2,4" or "{1,2,4}"; blanks are ignored. "{}" or "" is ℕ.
inline std::vector<int> parse_gap_list(std::string_view text) {
  std::string cleaned;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') cleaned.push_back(ch);
  if (!cleaned.empty() && cleaned.front() == '{') {
    if (cleaned.back() != '}') throw std::invalid_argument("unbalanced braces in gap list");
    cleaned = cleaned.substr(1, cleaned.size() - 2);
  }
  std::vector<int> out;
  if (cleaned.empty()) return out;
  std::stringstream in(cleaned);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad gap '" + item + "'");
    out.push_back(std::stoi(item));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline nlohmann::json to_json(const NumericalSemigroup& s) {
  return {{"gaps", s.gaps()},
          {"m", s.multiplicity()},
          {"f", s.frobenius()},
          {"g", s.genus()},
          {"h", s.efficacy()}};
}

}  // namespace nsg
