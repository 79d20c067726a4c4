#pragma once

// Depth-first traversal of the semigroup tree.
//
// Two engines live here. enumerate_tree() walks real NumericalSemigroup values
// and is what the verifiers use; it is simple and slow. count_ng() runs on a
// fixed-width bitmask encoding and is what the counting front end uses.
//
// Bitmask encoding of a node with multiplicity m and Frobenius number f:
//   members  bit x set iff x is in the semigroup (bits above f are all set)
//   rev      members reversed across the word, so bit (T - x) mirrors bit x
//   eff      the effective generators
// Removing an effective generator x != m keeps m, sets f' = x, keeps every
// effective generator above x, and adds x + m exactly when x + m is minimal in
// the child. x + m is not minimal iff some a in [m + 1, x - 1] has both a and
// x + m - a as members, which is one AND against rev shifted by T - (x + m).

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "semigroup.hpp"

namespace nsg {

using BigInt = mpz_class;

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CounterOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline void checked_add(std::uint64_t& into, std::uint64_t by) {
  if (__builtin_add_overflow(into, by, &into)) throw CounterOverflow("64-bit genus counter overflowed");
}

// F_0 = 0, F_1 = F_2 = 1.
inline BigInt fibonacci(unsigned long n) {
  BigInt out;
  mpz_fib_ui(out.get_mpz_t(), n);
  return out;
}

/// Zero when b > a.
inline BigInt binomial(unsigned long a, unsigned long b) {
  if (b > a) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), a, b);
  return out;
}

// ---------------------------------------------------------------------------
// Counters

struct GenusCounters {
  int max_genus = 0;
  bool partition = false;
  std::vector<std::uint64_t> n, t, n1, n2, n3;

  GenusCounters() = default;
  GenusCounters(int g, bool with_partition)
      : max_genus(g),
        partition(with_partition),
        n(static_cast<std::size_t>(g) + 1, 0),
        t(n),
        n1(n),
        n2(n),
        n3(n) {}

  void merge(const GenusCounters& other) {
    for (std::size_t g = 0; g < n.size(); ++g) {
      checked_add(n[g], other.n[g]);
      checked_add(t[g], other.t[g]);
      checked_add(n1[g], other.n1[g]);
      checked_add(n2[g], other.n2[g]);
      checked_add(n3[g], other.n3[g]);
    }
  }

  friend bool operator==(const GenusCounters&, const GenusCounters&) = default;
};

/// Which of the three parts the nearest strongly descended ancestor (gA, hA)
/// falls in when counted at genus g.
inline int partition_class(int g_ancestor, int h_ancestor, int g) {
  if (h_ancestor + g_ancestor < g) return 1;
  if (3 * (g_ancestor - h_ancestor) < g) return 2;
  return 3;
}

// ---------------------------------------------------------------------------
// Generic traversal over semigroup values.

struct TraversalSummary {
  std::vector<std::uint64_t> per_depth;
  std::uint64_t total = 0;
};

/// Visits every semigroup of genus <= max_genus once, parents before children
/// and children in increasing generator order. The visitor gets
/// (semigroup, depth, descent from parent); it may return false to skip the
/// subtree below the node it was given.
template <class Visitor>
TraversalSummary enumerate_tree(int max_genus, Visitor&& visit) {
  if (max_genus < 0) throw std::invalid_argument("max_genus must be non-negative");
  TraversalSummary summary;
  summary.per_depth.assign(static_cast<std::size_t>(max_genus) + 1, 0);

  struct Frame {
    NumericalSemigroup node;
    std::size_t cursor;
  };
  auto call = [&](const NumericalSemigroup& s, int depth, std::optional<Descent> how) {
    ++summary.per_depth[static_cast<std::size_t>(depth)];
    ++summary.total;
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const NumericalSemigroup&, int,
                                                      std::optional<Descent>>,
                                 bool>)
      return visit(s, depth, how);
    else {
      visit(s, depth, how);
      return true;
    }
  };

  std::vector<Frame> stack;
  NumericalSemigroup root = NumericalSemigroup::natural();
  if (call(root, 0, std::nullopt) && max_genus > 0) stack.push_back({root, 0});
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto& eff = top.node.generators().effective;
    if (top.cursor == eff.size()) {
      stack.pop_back();
      continue;
    }
    int lambda = eff[top.cursor++];
    NumericalSemigroup child = remove_generator(top.node, lambda);
    int depth = static_cast<int>(stack.size());
    bool descend = call(child, depth, descent_type_of_child(child));
    if (descend && depth < max_genus) stack.push_back({std::move(child), 0});
  }
  return summary;
}

/// N_g(s) for every g in [g(s), max_genus], indexed by g - g(s). The
/// semigroup counts as its own weak descendant.
inline std::vector<std::uint64_t> weak_descendant_profile(const NumericalSemigroup& s, int max_genus) {
  std::vector<std::uint64_t> out;
  if (max_genus < s.genus()) return out;
  out.assign(static_cast<std::size_t>(max_genus - s.genus()) + 1, 0);
  std::vector<NumericalSemigroup> stack{s};
  while (!stack.empty()) {
    NumericalSemigroup node = std::move(stack.back());
    stack.pop_back();
    ++out[static_cast<std::size_t>(node.genus() - s.genus())];
    if (node.genus() == max_genus) continue;
    for (int lambda : node.generators().effective) {
      NumericalSemigroup child = remove_generator(node, lambda);
      if (!is_strongly_descended(child)) stack.push_back(std::move(child));
    }
  }
  return out;
}

inline std::uint64_t weak_descendant_count(const NumericalSemigroup& s, int g) {
  if (g < s.genus()) throw std::invalid_argument("target genus is below the semigroup's genus");
  return weak_descendant_profile(s, g).back();
}

struct StrongDescentRecord {
  NumericalSemigroup semigroup;
  int m, f, d, g, h;
};

/// Every strongly descended semigroup with multiplicity m and Frobenius
/// number f, by brute force over the membership of [m + 1, f - 1].
inline std::vector<StrongDescentRecord> strongly_descended_with(int m, int f, int limit = 20) {
  std::vector<StrongDescentRecord> out;
  if (m < 2 || f < m - 1) return out;
  if (f == m - 1) {
    // Only the ordinary semigroup; f + m = 2m - 1 is always minimal.
    std::vector<int> gaps;
    for (int x = 1; x < m; ++x) gaps.push_back(x);
    NumericalSemigroup s = NumericalSemigroup::from_gaps(gaps);
    out.push_back({s, m, f, 1, s.genus(), s.efficacy()});
    return out;
  }
  if (f == m) return out;
  int free_bits = f - m - 1;
  if (f - m > limit)
    throw LimitExceeded("strongly_descended_with: f - m = " + std::to_string(f - m) + " exceeds limit " +
                        std::to_string(limit));
  std::vector<char> member(static_cast<std::size_t>(f + m) + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
    std::fill(member.begin(), member.end(), 0);
    member[0] = 1;
    member[static_cast<std::size_t>(m)] = 1;
    for (int i = 0; i < free_bits; ++i)
      if ((mask >> i) & 1U) member[static_cast<std::size_t>(m + 1 + i)] = 1;
    for (int x = f + 1; x <= f + m; ++x) member[static_cast<std::size_t>(x)] = 1;
    bool closed = true;
    for (int x = m; x <= f && closed; ++x) {
      if (!member[static_cast<std::size_t>(x)]) continue;
      for (int y = x; x + y <= f; ++y)
        if (member[static_cast<std::size_t>(y)] && !member[static_cast<std::size_t>(x + y)]) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    bool strong = true;
    for (int a = m; 2 * a <= f + m; ++a)
      if (member[static_cast<std::size_t>(a)] && member[static_cast<std::size_t>(f + m - a)]) {
        strong = false;
        break;
      }
    if (!strong) continue;
    NumericalSemigroup s = NumericalSemigroup::from_members_unchecked(
        [&](int x) { return member[static_cast<std::size_t>(x)] != 0; }, m, f);
    out.push_back({s, m, f, second_gap_offset(s), s.genus(), s.efficacy()});
  }
  return out;
}

/// table[g][h] = number of strongly descended semigroups of genus g with h
/// effective generators.
inline std::vector<std::vector<std::uint64_t>> m_table(int max_genus) {
  std::vector<std::vector<std::uint64_t>> table(static_cast<std::size_t>(max_genus) + 1,
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(max_genus) + 2, 0));
  enumerate_tree(max_genus, [&](const NumericalSemigroup& s, int, std::optional<Descent>) {
    if (is_strongly_descended(s)) ++table[static_cast<std::size_t>(s.genus())][static_cast<std::size_t>(s.efficacy())];
  });
  return table;
}

// ---------------------------------------------------------------------------
// Independent oracle: test every g-subset of [1, 2g - 1] as a gap set.

inline GenusCounters oracle_count_ng(int max_genus) {
  if (max_genus < 0) throw std::invalid_argument("max_genus must be non-negative");
  if (max_genus > 14) throw LimitExceeded("oracle_count_ng supports max_genus <= 14");
  GenusCounters out(max_genus, false);
  out.n[0] = out.t[0] = 1;
  for (int g = 1; g <= max_genus; ++g) {
    int width = 2 * g - 1;  // bit i stands for the integer i + 1
    std::uint32_t full = (std::uint32_t{1} << width) - 1;
    std::uint32_t gaps = (std::uint32_t{1} << g) - 1;
    while (gaps <= full) {
      std::uint32_t members = full & ~gaps;
      bool closed = true;
      for (std::uint32_t rest = members; rest != 0 && closed; rest &= rest - 1) {
        int x = std::countr_zero(rest) + 1;
        // member y lands on y + x, i.e. bit (y - 1) + x
        if (((static_cast<std::uint64_t>(members) << x) & gaps) != 0) closed = false;
      }
      if (closed) {
        ++out.n[static_cast<std::size_t>(g)];
        int f = 32 - std::countl_zero(gaps);
        int m = members == 0 ? width + 1 : std::countr_zero(members) + 1;
        if (f < 3 * m) ++out.t[static_cast<std::size_t>(g)];
      }
      std::uint32_t c = gaps & (~gaps + 1);  // next subset of the same size
      std::uint32_t r = gaps + c;
      if (r == 0 || r > full) break;
      gaps = (((r ^ gaps) >> 2) / c) | r;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bitmask engine.

namespace detail {

using u128 = unsigned __int128;

template <std::size_t Words>
struct Wide {
  std::array<std::uint64_t, Words> w{};

  static Wide ones() {
    Wide out;
    out.w.fill(~std::uint64_t{0});
    return out;
  }
  friend Wide operator&(Wide a, const Wide& b) {
    for (std::size_t i = 0; i < Words; ++i) a.w[i] &= b.w[i];
    return a;
  }
  friend Wide operator|(Wide a, const Wide& b) {
    for (std::size_t i = 0; i < Words; ++i) a.w[i] |= b.w[i];
    return a;
  }
  friend Wide operator~(Wide a) {
    for (auto& x : a.w) x = ~x;
    return a;
  }
  friend Wide operator>>(const Wide& a, int k) {
    Wide out;
    int words = k / 64, bits = k % 64;
    for (std::size_t i = 0; i + static_cast<std::size_t>(words) < Words; ++i) {
      std::uint64_t lo = a.w[i + static_cast<std::size_t>(words)] >> bits;
      std::uint64_t hi = (bits != 0 && i + static_cast<std::size_t>(words) + 1 < Words)
                             ? a.w[i + static_cast<std::size_t>(words) + 1] << (64 - bits)
                             : 0;
      out.w[i] = lo | hi;
    }
    return out;
  }
  friend bool operator==(const Wide&, const Wide&) = default;
};

template <class M>
struct Ops;

template <>
struct Ops<u128> {
  static constexpr int top = 127;
  static u128 zero() { return 0; }
  static u128 ones() { return ~u128{0}; }
  static u128 bit(int i) { return u128{1} << i; }
  static bool any(u128 x) { return x != 0; }
  static int popcount(u128 x) {
    return std::popcount(static_cast<std::uint64_t>(x)) + std::popcount(static_cast<std::uint64_t>(x >> 64));
  }
  static int lowest(u128 x) {
    auto lo = static_cast<std::uint64_t>(x);
    return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
  }
  static u128 drop_lowest(u128 x) { return x & (x - 1); }
  /// bits lo..hi inclusive; empty when lo > hi
  static u128 range(int lo, int hi) {
    if (lo > hi) return 0;
    u128 upto = hi >= top ? ones() : (u128{1} << (hi + 1)) - 1;
    return upto & ~((u128{1} << lo) - 1);
  }
};

template <std::size_t Words>
struct Ops<Wide<Words>> {
  using W = Wide<Words>;
  static constexpr int top = static_cast<int>(64 * Words) - 1;
  static W zero() { return W{}; }
  static W ones() { return W::ones(); }
  static W bit(int i) {
    W out;
    out.w[static_cast<std::size_t>(i / 64)] = std::uint64_t{1} << (i % 64);
    return out;
  }
  static bool any(const W& x) {
    for (auto v : x.w)
      if (v != 0) return true;
    return false;
  }
  static int popcount(const W& x) {
    int out = 0;
    for (auto v : x.w) out += std::popcount(v);
    return out;
  }
  static int lowest(const W& x) {
    for (std::size_t i = 0; i < Words; ++i)
      if (x.w[i] != 0) return static_cast<int>(64 * i) + std::countr_zero(x.w[i]);
    return top + 1;
  }
  static W drop_lowest(W x) {
    for (auto& v : x.w)
      if (v != 0) {
        v &= v - 1;
        break;
      }
    return x;
  }
  static W range(int lo, int hi) {
    W out;
    for (int i = std::max(lo, 0); i <= hi && i <= top; ++i) out.w[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
    return out;
  }
};

template <class M>
struct Node {
  M members;
  M rev;
  M eff;
  int m;
  int f;
  int g_anc;  // genus and efficacy of the nearest strongly descended ancestor
  int h_anc;
};

template <class M>
class Engine {
  using O = Ops<M>;

 public:
  Engine(int max_genus, bool partition) : max_genus_(max_genus), partition_(partition) {}

  static Node<M> root() { return {O::ones(), O::ones(), O::bit(1), 1, -1, 0, 1}; }

  /// Counts every node strictly below `start` (which sits at `depth`). Nodes
  /// reaching `cut_depth` are handed to `frontier` instead of being expanded.
  void run(const Node<M>& start, int depth, GenusCounters& out, int cut_depth = -1,
           std::vector<Node<M>>* frontier = nullptr) const {
    if (depth >= max_genus_) return;
    struct Frame {
      Node<M> node;
      M remaining;
    };
    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(max_genus_) + 1);
    stack.push_back({start, start.eff});
    const int leaf_parent = max_genus_ - 1;
    while (!stack.empty()) {
      Frame& top = stack.back();
      int d = depth + static_cast<int>(stack.size()) - 1;
      if (d == leaf_parent) {
        count_leaves(top.node, out);
        stack.pop_back();
        continue;
      }
      if (!O::any(top.remaining)) {
        stack.pop_back();
        continue;
      }
      int x = O::lowest(top.remaining);
      top.remaining = O::drop_lowest(top.remaining);
      Node<M> child = make_child(top.node, x, d + 1);
      tally(child, d + 1, out);
      if (d + 1 == cut_depth && frontier != nullptr) {
        frontier->push_back(child);
        continue;
      }
      stack.push_back({child, child.eff});
    }
  }

  void tally(const Node<M>& node, int genus, GenusCounters& out) const {
    auto g = static_cast<std::size_t>(genus);
    checked_add(out.n[g], 1);
    if (node.f < 3 * node.m) checked_add(out.t[g], 1);
    if (partition_) bump_class(partition_class(node.g_anc, node.h_anc, genus), g, out);
  }

 private:
  static void bump_class(int cls, std::size_t g, GenusCounters& out) {
    checked_add(cls == 1 ? out.n1[g] : cls == 2 ? out.n2[g] : out.n3[g], 1);
  }

  static bool new_generator_minimal(const Node<M>& p, int x) {
    int s = x + p.m;
    M partners = (p.rev >> (O::top - s)) & p.members & O::range(p.m + 1, x - 1);
    return !O::any(partners);
  }

  Node<M> make_child(const Node<M>& p, int x, int child_genus) const {
    Node<M> c;
    if (x == p.m) {
      // ordinary parent {0, m, m+1, ...}: multiplicity moves up
      c.m = p.m + 1;
      c.f = p.m;
      c.members = p.members & ~O::bit(x);
      c.rev = p.rev & ~O::bit(O::top - x);
      c.eff = O::range(c.m, c.f + c.m);
      c.g_anc = child_genus;
      c.h_anc = c.m;
      return c;
    }
    c.m = p.m;
    c.f = x;
    c.members = p.members & ~O::bit(x);
    c.rev = p.rev & ~O::bit(O::top - x);
    c.eff = p.eff & O::range(x + 1, O::top);
    if (new_generator_minimal(p, x)) {
      c.eff = c.eff | O::bit(x + p.m);
      c.g_anc = child_genus;
      c.h_anc = O::popcount(c.eff);
    } else {
      c.g_anc = p.g_anc;
      c.h_anc = p.h_anc;
    }
    return c;
  }

  void count_leaves(const Node<M>& p, GenusCounters& out) const {
    auto g = static_cast<std::size_t>(max_genus_);
    checked_add(out.n[g], static_cast<std::uint64_t>(O::popcount(p.eff)));
    // every child f' = x; x = m only for an ordinary parent, where f' = m < 3(m + 1)
    checked_add(out.t[g], static_cast<std::uint64_t>(O::popcount(p.eff & O::range(0, 3 * p.m - 1))));
    if (!partition_) return;
    for (M rest = p.eff; O::any(rest); rest = O::drop_lowest(rest)) {
      int x = O::lowest(rest);
      Node<M> child = make_child(p, x, max_genus_);
      bump_class(partition_class(child.g_anc, child.h_anc, max_genus_), g, out);
    }
  }

  int max_genus_;
  bool partition_;
};

template <class M>
GenusCounters count_with(int max_genus, unsigned threads, int split_depth, bool partition) {
  GenusCounters total(max_genus, partition);
  Engine<M> engine(max_genus, partition);
  Node<M> root = Engine<M>::root();
  engine.tally(root, 0, total);
  if (threads <= 1 || split_depth <= 0 || split_depth >= max_genus - 1) {
    engine.run(root, 0, total);
    return total;
  }
  std::vector<Node<M>> frontier;
  engine.run(root, 0, total, split_depth, &frontier);

  std::atomic<std::size_t> next{0};
  std::vector<GenusCounters> partial(threads, GenusCounters(max_genus, partition));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < frontier.size(); i = next.fetch_add(1))
          engine.run(frontier[i], split_depth, partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace detail

struct CountOptions {
  unsigned threads = 0;  // 0: one per hardware thread
  int split_depth = 14;
  bool partition = false;
};

inline constexpr int kMaxCountGenus = 85;

inline GenusCounters count_ng(int max_genus, CountOptions options = {}) {
  if (max_genus < 0) throw std::invalid_argument("max_genus must be non-negative");
  if (max_genus > kMaxCountGenus)
    throw LimitExceeded("count_ng supports max_genus <= " + std::to_string(kMaxCountGenus));
  unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  // f + m <= 3g - 1 must fit in the mask
  if (3 * max_genus - 1 <= 127)
    return detail::count_with<detail::u128>(max_genus, threads, options.split_depth, options.partition);
  return detail::count_with<detail::Wide<4>>(max_genus, threads, options.split_depth, options.partition);
}

/// Same counts produced by walking semigroup values; slow, used to cross-check.
inline GenusCounters count_ng_reference(int max_genus, bool partition = true) {
  GenusCounters out(max_genus, partition);
  std::vector<std::pair<int, int>> ancestor(static_cast<std::size_t>(max_genus) + 1);
  enumerate_tree(max_genus, [&](const NumericalSemigroup& s, int depth, std::optional<Descent>) {
    auto g = static_cast<std::size_t>(depth);
    ++out.n[g];
    if (s.frobenius() < 3 * s.multiplicity()) ++out.t[g];
    if (is_strongly_descended(s)) ancestor[g] = {s.genus(), s.efficacy()};
    else ancestor[g] = ancestor[g - 1];
    int cls = partition_class(ancestor[g].first, ancestor[g].second, depth);
    ++(cls == 1 ? out.n1[g] : cls == 2 ? out.n2[g] : out.n3[g]);
  });
  if (!partition) out.n1 = out.n2 = out.n3 = std::vector<std::uint64_t>(out.n.size(), 0);
  return out;
}

}  // namespace nsg
