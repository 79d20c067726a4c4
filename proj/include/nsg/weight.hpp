#pragma once

// The (m, f, d)-weight of a finite set of positive integers.
//
// A subset U of S is admissible when no two of its elements (an element may
// pair with itself) sum to f + m, and U is closed upward along +m inside S.
// For admissible U:
//   E(U, S)  = { x in S : x, x + m not in U, x - d in U }
//   E'(U, S) = { x in U : x + m in U }
//   s(U, S)  = |E| - |E'|
// and w(S) = sum over admissible U of phi^(-s(U, S)), with w(empty) = 1.
//
// S splits into maximal +m runs; an admissible U meets each run in a suffix,
// so enumeration picks one suffix per run and prunes on the pairing rule.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "golden.hpp"
#include "tree.hpp"

namespace nsg {

struct WeightContext {
  int m;
  int f;
  int d;

  WeightContext(int m_, int f_, int d_) : m(m_), f(f_), d(d_) {
    if (m < 1 || f < 1 || d < 1) throw std::invalid_argument("weight context needs positive m, f, d");
    if (d >= f) throw std::invalid_argument("weight context needs d < f");
  }
  int pair_sum() const { return f + m; }
};

using GroundSet = std::vector<int>;

inline GroundSet make_ground_set(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (int x : xs)
    if (x <= 0) throw std::invalid_argument("ground sets hold positive integers");
  return xs;
}

inline constexpr std::size_t kDefaultSubsetLimit = 22;

namespace detail {

inline bool has(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

/// Membership table over [0, top].
struct Marks {
  std::vector<char> bits;
  explicit Marks(int top) : bits(static_cast<std::size_t>(std::max(top, 0)) + 1, 0) {}
  bool operator[](long x) const { return x >= 0 && x < static_cast<long>(bits.size()) && bits[static_cast<std::size_t>(x)]; }
  void set(int x, bool v) { bits[static_cast<std::size_t>(x)] = v ? 1 : 0; }
};

inline std::vector<std::vector<int>> runs_of(const GroundSet& s, int m) {
  std::vector<std::vector<int>> runs;
  for (int x : s) {
    if (has(s, x - m)) continue;
    std::vector<int> run{x};
    while (has(s, run.back() + m)) run.push_back(run.back() + m);
    runs.push_back(std::move(run));
  }
  return runs;
}

inline int s_from_marks(const GroundSet& s, const Marks& in_u, const WeightContext& ctx) {
  int e = 0, e_prime = 0;
  for (int x : s) {
    if (in_u[x]) {
      if (in_u[x + ctx.m]) ++e_prime;
    } else if (!in_u[x + ctx.m] && in_u[x - ctx.d]) {
      ++e;
    }
  }
  return e - e_prime;
}

}  // namespace detail

inline void require_within_limit(const GroundSet& s, std::size_t limit) {
  if (s.size() > limit)
    throw LimitExceeded("ground set of size " + std::to_string(s.size()) + " exceeds the brute-force limit " +
                        std::to_string(limit));
}

/// Calls `visit(U)` (U sorted) for every admissible subset, empty set included.
template <class Visit>
void for_each_admissible(const GroundSet& s, const WeightContext& ctx, Visit&& visit,
                         std::size_t limit = kDefaultSubsetLimit) {
  require_within_limit(s, limit);
  auto runs = detail::runs_of(s, ctx.m);
  int top = s.empty() ? 0 : s.back();
  detail::Marks in_u(top);
  std::vector<int> chosen;
  const int target = ctx.pair_sum();

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == runs.size()) {
      std::vector<int> u = chosen;
      std::sort(u.begin(), u.end());
      visit(static_cast<const std::vector<int>&>(u));
      return;
    }
    const auto& run = runs[k];
    // start == run.size() means this run contributes nothing
    for (std::size_t start = run.size() + 1; start-- > 0;) {
      bool ok = true;
      std::size_t placed = 0;
      for (std::size_t i = start; i < run.size(); ++i) {
        int x = run[i];
        if (2 * x == target || in_u[target - x]) {
          ok = false;
          break;
        }
        in_u.set(x, true);
        chosen.push_back(x);
        ++placed;
      }
      if (ok) rec(k + 1);
      for (std::size_t i = 0; i < placed; ++i) {
        in_u.set(chosen.back(), false);
        chosen.pop_back();
      }
      // a longer suffix contains this one, so a clash now persists
      if (!ok) break;
    }
  };
  rec(0);
}

inline std::vector<std::vector<int>> admissible_subsets(const GroundSet& s, const WeightContext& ctx,
                                                        std::size_t limit = kDefaultSubsetLimit) {
  std::vector<std::vector<int>> out;
  for_each_admissible(s, ctx, [&](const std::vector<int>& u) { out.push_back(u); }, limit);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_admissible(const std::vector<int>& u, const GroundSet& s, const WeightContext& ctx) {
  for (int x : u) {
    if (!detail::has(s, x)) return false;
    if (detail::has(u, ctx.pair_sum() - x)) return false;  // covers 2x = f + m
    if (detail::has(s, x + ctx.m) && !detail::has(u, x + ctx.m)) return false;
  }
  return true;
}

// E, E' and s are well defined for any U inside S; admissibility is not enforced.
inline std::vector<int> e_set(const std::vector<int>& u, const GroundSet& s, const WeightContext& ctx) {
  std::vector<int> out;
  for (int x : s)
    if (!detail::has(u, x) && !detail::has(u, x + ctx.m) && detail::has(u, x - ctx.d)) out.push_back(x);
  return out;
}

inline std::vector<int> e_prime_set(const std::vector<int>& u, const GroundSet& s, const WeightContext& ctx) {
  (void)s;
  std::vector<int> out;
  for (int x : u)
    if (detail::has(u, x + ctx.m)) out.push_back(x);
  return out;
}

inline int s_stat(const std::vector<int>& u, const GroundSet& s, const WeightContext& ctx) {
  return static_cast<int>(e_set(u, s, ctx).size()) - static_cast<int>(e_prime_set(u, s, ctx).size());
}

/// count of admissible subsets per value of s
inline std::map<int, std::uint64_t> s_histogram(const GroundSet& s, const WeightContext& ctx,
                                                std::size_t limit = kDefaultSubsetLimit) {
  std::map<int, std::uint64_t> hist;
  detail::Marks in_u(s.empty() ? 0 : s.back());
  for_each_admissible(
      s, ctx,
      [&](const std::vector<int>& u) {
        for (int x : u) in_u.set(x, true);
        ++hist[detail::s_from_marks(s, in_u, ctx)];
        for (int x : u) in_u.set(x, false);
      },
      limit);
  return hist;
}

inline QuadraticNumber weight(const GroundSet& s, const WeightContext& ctx, std::size_t limit = kDefaultSubsetLimit) {
  if (s.empty()) return 1;
  QuadraticNumber total;
  for (auto [value, count] : s_histogram(s, ctx, limit))
    total += phi_pow(-value) * QuadraticNumber(static_cast<long>(count));
  return total;
}

/// V_k(S) = { x in S : x > k }
inline GroundSet truncate(const GroundSet& s, int k) {
  GroundSet out;
  for (int x : s)
    if (x > k) out.push_back(x);
  return out;
}

inline GroundSet without(const GroundSet& s, std::initializer_list<int> drop) {
  GroundSet out;
  for (int x : s)
    if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Residue classes

inline int mod(int a, int m) { return ((a % m) + m) % m; }

struct ResidueSet {
  int r;
  int I;      // integers in [m, f] congruent to r
  int ell;    // (f - r) mod m
  bool self_paired;  // r == f - r (mod m)
  GroundSet set;
};

inline ResidueSet residue_set(int r, const WeightContext& ctx) {
  if (r < 0 || r >= ctx.m) throw std::out_of_range("residue r must lie in [0, m - 1]");
  ResidueSet out{r, 0, mod(ctx.f - r, ctx.m), mod(2 * r - ctx.f, ctx.m) == 0, {}};
  for (int x = ctx.m; x <= ctx.f; ++x) {
    if (mod(x, ctx.m) == r) ++out.I;
    if (mod(x, ctx.m) == r || mod(x, ctx.m) == out.ell) out.set.push_back(x);
  }
  return out;
}

/// least n >= 0 with r + n d >= ell - n d
inline int n_of_r(int r, const WeightContext& ctx) {
  int ell = residue_set(r, ctx).ell;
  int n = 0;
  while (r + n * ctx.d < ell - n * ctx.d) ++n;
  return n;
}

inline GroundSet t_of_r(int r, const WeightContext& ctx) {
  std::set<int> acc;
  int n = n_of_r(r, ctx);
  for (int i = 0; i < n; ++i) {
    auto part = residue_set(r + i * ctx.d, ctx).set;
    acc.insert(part.begin(), part.end());
  }
  return {acc.begin(), acc.end()};
}

// ---------------------------------------------------------------------------
// Signatures: an admissible U inside S(r), r != f - r (mod m), is
//   { r + (i+1)m, ..., r + I m }  u  { f - r, ..., f - r - (j-1)m }.

struct Signature {
  int i;
  int j;
  int I;
  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.i) + ", " + std::to_string(s.j) + ", " + std::to_string(s.I) + ")";
}

inline bool is_valid(const Signature& s) {
  return s.I >= 0 && s.i >= 0 && s.j >= 0 && s.i <= s.I && s.j <= s.I && (s.i == s.I || s.j == 0 || s.i >= s.j);
}

inline void require_valid(const Signature& s) {
  if (!is_valid(s)) throw std::invalid_argument("invalid signature " + to_string(s));
}

inline Signature signature_of(const std::vector<int>& u, int r, const WeightContext& ctx) {
  ResidueSet rs = residue_set(r, ctx);
  if (rs.self_paired) throw std::invalid_argument("signatures need r != f - r (mod m)");
  int low = 0, high = 0;
  for (int x : u) {
    if (!detail::has(rs.set, x)) throw std::invalid_argument("subset is not inside S(r)");
    (mod(x, ctx.m) == r ? low : high)++;
  }
  Signature sig{rs.I - low, high, rs.I};
  // the canonical shape is forced by the counts; reject anything else
  for (int k = sig.i + 1; k <= rs.I; ++k)
    if (!detail::has(u, r + k * ctx.m)) throw std::invalid_argument("subset is not of canonical admissible shape");
  for (int k = 0; k < sig.j; ++k)
    if (!detail::has(u, ctx.f - r - k * ctx.m)) throw std::invalid_argument("subset is not of canonical admissible shape");
  require_valid(sig);
  return sig;
}

/// |E'(U, S(r))| from the signature alone.
inline int e_prime_from_signature(const Signature& s) {
  require_valid(s);
  if (s.i == s.I) return s.j == 0 ? 0 : s.j - 1;
  if (s.j == 0) return s.I - s.i - 1;
  return s.I - s.i + s.j - 2;
}

/// e_i: elements of E(U, T(r)) attributed to the step from class i to i + 1.
inline int e_between_from_signatures(const Signature& a, const Signature& b, int I) {
  require_valid(a);
  require_valid(b);
  if (a.I != I || b.I != I) throw std::invalid_argument("signatures disagree on I");
  int low = b.i == I ? I - a.i : std::max(b.i - a.i - 1, 0);
  int high = a.j == 0 ? b.j : std::max(b.j - a.j - 1, 0);
  return low + high;
}

inline int g_exponent(const Signature& a, const Signature& b) {
  return e_between_from_signatures(a, b, a.I) - e_prime_from_signature(a);
}

inline std::vector<Signature> signature_order(int I) {
  if (I == 1) return {{1, 0, 1}, {1, 1, 1}, {0, 0, 1}};
  if (I == 2) return {{2, 0, 2}, {2, 1, 2}, {1, 0, 2}, {1, 1, 2}, {0, 0, 2}, {2, 2, 2}};
  throw std::domain_error("transfer matrices exist only for I = 1 and I = 2");
}

struct TransferMatrix {
  std::vector<Signature> signatures;
  ExactMatrix M;
  std::vector<QuadraticNumber> v;
};

/// Built from the two signature formulas.
inline TransferMatrix transfer_matrix(int I) {
  auto sigs = signature_order(I);
  std::size_t k = sigs.size();
  std::vector<QuadraticNumber> entries;
  for (const auto& a : sigs)
    for (const auto& b : sigs) entries.push_back(phi_pow(-g_exponent(a, b)));
  std::vector<QuadraticNumber> v;
  for (const auto& s : sigs) v.push_back(phi_pow(e_prime_from_signature(s)));
  return {sigs, ExactMatrix(k, entries), v};
}

/// The matrices as displayed next to W_n in the appendix. For I = 2 this is
/// the same matrix the formulas give; for I = 1 the display differs.
inline TransferMatrix appendix_matrix(int I) {
  auto sigs = signature_order(I);
  auto p = [](long k) { return phi_pow(k); };
  if (I == 1)
    return {sigs,
            ExactMatrix(3, {p(0), p(0), p(0),  //
                            p(-1), p(0), p(0),  //
                            p(-2), p(0), p(-1)}),
            {1, 1, 1}};
  return {sigs,
          ExactMatrix(6, {p(0),  p(-1), p(0),  p(-1), p(0),  p(-2),  //
                          p(0),  p(0),  p(0),  p(0),  p(0),  p(0),   //
                          p(-1), p(-2), p(0),  p(-1), p(0),  p(-3),  //
                          p(-1), p(-1), p(0),  p(0),  p(0),  p(-1),  //
                          p(-1), p(-2), p(1),  p(0),  p(1),  p(-3),  //
                          p(1),  p(1),  p(1),  p(1),  p(1),  p(1)}),
          {1, 1, 1, 1, p(1), p(1)}};
}

/// 1^T M^(n-1) v
inline QuadraticNumber bound_value(const TransferMatrix& tm, unsigned long n) {
  if (n < 1) throw std::invalid_argument("the matrix bound needs n >= 1");
  auto mv = mat_vec(mat_pow(tm.M, n - 1), tm.v);
  QuadraticNumber total;
  for (const auto& x : mv) total += x;
  return total;
}

/// W_n for the formula-derived matrix.
inline QuadraticNumber transfer_bound(int I, unsigned long n) { return bound_value(transfer_matrix(I), n); }

/// W_n, n = 1..count, by repeated multiplication (cheaper than separate powers).
inline std::vector<QuadraticNumber> bound_sequence(const TransferMatrix& tm, std::size_t count) {
  std::vector<QuadraticNumber> out;
  std::vector<QuadraticNumber> vec = tm.v;
  for (std::size_t n = 1; n <= count; ++n) {
    QuadraticNumber total;
    for (const auto& x : vec) total += x;
    out.push_back(total);
    vec = mat_vec(tm.M, vec);
  }
  return out;
}

/// The matrix bound on w(T(r)); needs I(r) in {1, 2}, r != f - r and N(r) >= 1.
inline QuadraticNumber matrix_bound_weight(int r, const WeightContext& ctx) {
  ResidueSet rs = residue_set(r, ctx);
  if (rs.self_paired) throw std::domain_error("matrix bound needs r != f - r (mod m)");
  if (rs.I != 1 && rs.I != 2) throw std::domain_error("matrix bound supports I(r) = 1 or 2 only");
  int n = n_of_r(r, ctx);
  if (n < 1) throw std::domain_error("matrix bound needs N(r) >= 1");
  return transfer_bound(rs.I, static_cast<unsigned long>(n));
}

/// 1 + phi^(ceil((I-1)/2) + 1) - phi, the bound on w(S(r)) when r = f - r.
inline QuadraticNumber closed_form_diagonal_weight_bound(int I) {
  if (I < 0) throw std::invalid_argument("I must be non-negative");
  long half_up = I / 2;  // ceil((I - 1) / 2) for I >= 0
  return QuadraticNumber(1) + phi_pow(half_up + 1) - QuadraticNumber::phi();
}

/// 1 + 2 phi^(I-1) + sum_{k=0}^{I-2} (k + 3) phi^k
inline QuadraticNumber w_big_formula(int I) {
  if (I < 1) throw std::invalid_argument("I must be at least 1");
  QuadraticNumber total = QuadraticNumber(1) + QuadraticNumber(2) * phi_pow(I - 1);
  for (int k = 0; k <= I - 2; ++k) total += QuadraticNumber(k + 3) * phi_pow(k);
  return total;
}

}  // namespace nsg
