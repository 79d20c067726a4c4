#pragma once

/**
 * @file golden.hpp
 * @brief Exact arithmetic in the quadratic field Q(sqrt 5).
 *
 * Every value is stored as (a + b*sqrt5)/c with integers a, b and a positive
 * denominator c, reduced so that gcd(|a|, |b|, c) = 1. Zero is (0, 0, 1).
 * Because the form is canonical, structural equality is value equality.
 *
 * Integers are GMP arbitrary-precision, so no operation can overflow.
 * Ordering is decided without floating point: the sign of p + q*sqrt5 follows
 * from the signs of p and q and, when they differ, from comparing p^2 with 5q^2.
 */

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsg {

using BigInt = mpz_class;

class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long n) : a_(n) {}  // NOLINT: integers embed implicitly
  QuadraticNumber(BigInt a, BigInt b, BigInt c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    canonicalize();
  }

  static QuadraticNumber rational(const BigInt& num, const BigInt& den) {
    return {num, 0, den};
  }
  static QuadraticNumber sqrt5() { return {0, 1, 1}; }
  static QuadraticNumber phi() { return {1, 1, 2}; }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// -1, 0 or +1.
  int sign() const { return surd_sign(a_, b_); }

  QuadraticNumber conjugate() const { return {a_, -b_, c_}; }

  QuadraticNumber operator-() const { return {-a_, -b_, c_}; }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_};
  }
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a_ * y.c_ - y.a_ * x.c_, x.b_ * y.c_ - y.b_ * x.c_, x.c_ * y.c_};
  }
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_};
  }
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (y.is_zero()) throw std::domain_error("QuadraticNumber: division by zero");
    // 1/y = c (a - b sqrt5) / (a^2 - 5 b^2); the norm is nonzero for y != 0.
    BigInt norm = y.a_ * y.a_ - 5 * y.b_ * y.b_;
    QuadraticNumber inv{y.c_ * y.a_, -(y.c_ * y.b_), norm};
    return x * inv;
  }

  QuadraticNumber& operator+=(const QuadraticNumber& y) { return *this = *this + y; }
  QuadraticNumber& operator-=(const QuadraticNumber& y) { return *this = *this - y; }
  QuadraticNumber& operator*=(const QuadraticNumber& y) { return *this = *this * y; }
  QuadraticNumber& operator/=(const QuadraticNumber& y) { return *this = *this / y; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }

  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
    // Denominators are positive, so the sign of x - y is the sign of its numerator.
    int s = surd_sign(x.a_ * y.c_ - y.a_ * x.c_, x.b_ * y.c_ - y.b_ * x.c_);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Canonical text form "(a + b*sqrt5)/c"; the sign of b is pulled into the operator.
  std::string to_string() const {
    std::string out = "(" + a_.get_str();
    out += b_ < 0 ? " - " : " + ";
    BigInt mag = abs(b_);
    out += mag.get_str() + "*sqrt5)/" + c_.get_str();
    return out;
  }

  /// Accepts exactly the grammar produced by to_string(), with optional blanks.
  static QuadraticNumber parse(std::string_view text);

  /// Decimal rendering with `significant` digits, round-half-even. For reports only.
  std::string to_decimal(int significant = 12) const;

  double to_double() const { return std::stod(to_decimal(17)); }

  /// Floor of |x| * 10^shift, plus whether that product is an exact integer.
  std::pair<BigInt, bool> scaled_floor_abs(long shift) const;

 private:
  static int sgn(const BigInt& v) { return sgn_impl(v); }
  static int sgn_impl(const BigInt& v) {
    int s = mpz_sgn(v.get_mpz_t());
    return (s > 0) - (s < 0);
  }

  static int surd_sign(const BigInt& p, const BigInt& q) {
    int sp = sgn(p);
    int sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // Opposite signs; p^2 == 5 q^2 is impossible for q != 0.
    int cmp = sgn(BigInt(p * p - 5 * q * q));
    return sp > 0 ? cmp : -cmp;
  }

  void canonicalize() {
    if (c_ == 0) throw std::domain_error("QuadraticNumber: zero denominator");
    if (c_ < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g != 1) {
      mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(c_.get_mpz_t(), c_.get_mpz_t(), g.get_mpz_t());
    }
  }

  BigInt a_{0};
  BigInt b_{0};
  BigInt c_{1};
};

inline std::strong_ordering compare(const QuadraticNumber& x, const QuadraticNumber& y) {
  return x <=> y;
}

/// phi^k for any integer k, through phi^n = (L_n + F_n sqrt5)/2 and
/// phi^-n = (-1)^n (L_n - F_n sqrt5)/2.
inline QuadraticNumber phi_pow(long k) {
  unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  BigInt fib;
  BigInt luc;
  mpz_fib_ui(fib.get_mpz_t(), n);
  mpz_lucnum_ui(luc.get_mpz_t(), n);
  if (k >= 0) return {luc, fib, 2};
  if (n % 2 == 0) return {luc, -fib, 2};
  return {-luc, fib, 2};
}

/// x^n for n >= 0 by repeated squaring.
inline QuadraticNumber pow(QuadraticNumber base, unsigned long n) {
  QuadraticNumber acc{1};
  while (n > 0) {
    if (n & 1U) acc *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return acc;
}

/// Exact decimal constant such as "1.618" or "0.7726".
inline QuadraticNumber decimal_constant(std::string_view text) {
  std::string digits;
  long scale = 0;
  bool after_point = false;
  bool negative = false;
  for (char ch : text) {
    if (ch == '-' && digits.empty() && !negative) {
      negative = true;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (after_point) ++scale;
    } else {
      throw std::invalid_argument("decimal_constant: bad literal '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("decimal_constant: empty literal");
  BigInt num(digits, 10);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  return QuadraticNumber::rational(negative ? BigInt(-num) : num, den);
}

inline QuadraticNumber QuadraticNumber::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const char* what) {
    throw std::invalid_argument("QuadraticNumber::parse: " + std::string(what) + " in '" +
                                std::string(text) + "'");
  };
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto expect = [&](std::string_view token) {
    skip();
    if (text.substr(pos, token.size()) != token) fail("unexpected token");
    pos += token.size();
  };
  auto integer = [&](bool allow_sign) {
    skip();
    std::size_t start = pos;
    if (allow_sign && pos < text.size() && text[pos] == '-') ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits) fail("expected digits");
    return BigInt(std::string(text.substr(start, pos - start)), 10);
  };

  expect("(");
  BigInt a = integer(true);
  skip();
  if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) fail("expected + or -");
  bool minus = text[pos] == '-';
  ++pos;
  BigInt b = integer(false);
  expect("*sqrt5");
  expect(")");
  expect("/");
  BigInt c = integer(false);
  skip();
  if (pos != text.size()) fail("trailing characters");
  if (c == 0) fail("zero denominator");
  return {a, minus ? BigInt(-b) : b, c};
}

inline std::pair<BigInt, bool> QuadraticNumber::scaled_floor_abs(long shift) const {
  BigInt p = a_;
  BigInt q = b_;
  BigInt den = c_;
  if (sign() < 0) {
    p = -p;
    q = -q;
  }
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    p *= ten_pow;
    q *= ten_pow;
  } else {
    den *= ten_pow;
  }
  // floor(q sqrt5): isqrt(5 q^2) for q >= 0, and -(isqrt(5 q^2) + 1) otherwise.
  BigInt root;
  BigInt five_q2 = 5 * q * q;
  mpz_sqrt(root.get_mpz_t(), five_q2.get_mpz_t());
  BigInt floor_surd = q >= 0 ? root : BigInt(-(root + 1));
  BigInt numer = p + floor_surd;
  BigInt result;
  mpz_fdiv_q(result.get_mpz_t(), numer.get_mpz_t(), den.get_mpz_t());
  bool exact = q == 0 && mpz_divisible_p(p.get_mpz_t(), den.get_mpz_t()) != 0;
  return {result, exact};
}

inline std::string QuadraticNumber::to_decimal(int significant) const {
  if (significant < 1) throw std::invalid_argument("to_decimal: need at least one digit");
  if (is_zero()) return "0.0";

  // Decimal exponent E with 10^E <= |x| < 10^(E+1).
  long exponent = 0;
  auto [whole, whole_exact] = scaled_floor_abs(0);
  (void)whole_exact;
  if (whole > 0) {
    exponent = static_cast<long>(whole.get_str().size()) - 1;
  } else {
    long shift = 1;
    while (scaled_floor_abs(shift).first == 0) ++shift;
    exponent = -shift;
  }

  long shift = significant - 1 - exponent;
  BigInt kept = scaled_floor_abs(shift).first;
  auto [extended, extended_exact] = scaled_floor_abs(shift + 1);
  BigInt rem = extended % 10;
  long next_digit = rem.get_si();
  bool round_up = next_digit > 5 || (next_digit == 5 && (!extended_exact || (kept % 2 != 0)));
  if (round_up) kept += 1;
  std::string digits = kept.get_str();
  if (static_cast<int>(digits.size()) > significant) {
    // Carry rolled over into a new leading digit.
    ++exponent;
    digits.pop_back();
  }

  std::string out = sign() < 0 ? "-" : "";
  if (exponent >= 0) {
    auto int_len = static_cast<std::size_t>(exponent + 1);
    if (digits.size() <= int_len) {
      out += digits + std::string(int_len - digits.size(), '0');
      out += ".0";
      return out;
    }
    out += digits.substr(0, int_len) + "." + digits.substr(int_len);
  } else {
    out += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  }
  while (out.back() == '0' && out[out.size() - 2] != '.') out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Small dense matrices over Q(sqrt 5).

class ExactMatrix {
 public:
  explicit ExactMatrix(std::size_t dimension)
      : dim_(dimension), entries_(dimension * dimension) {
    if (dimension == 0) throw std::invalid_argument("ExactMatrix: dimension must be positive");
  }

  ExactMatrix(std::size_t dimension, std::vector<QuadraticNumber> row_major)
      : dim_(dimension), entries_(std::move(row_major)) {
    if (dimension == 0) throw std::invalid_argument("ExactMatrix: dimension must be positive");
    if (entries_.size() != dim_ * dim_)
      throw std::invalid_argument("ExactMatrix: entry count must be dimension^2");
  }

  static ExactMatrix identity(std::size_t dimension) {
    std::vector<QuadraticNumber> e(dimension * dimension);
    for (std::size_t i = 0; i < dimension; ++i) e[i * dimension + i] = 1;
    return {dimension, std::move(e)};
  }

  std::size_t dimension() const { return dim_; }
  const QuadraticNumber& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<QuadraticNumber>& entries() const { return entries_; }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<QuadraticNumber> entries_;
};

inline ExactMatrix mat_mul(const ExactMatrix& lhs, const ExactMatrix& rhs) {
  if (lhs.dimension() != rhs.dimension())
    throw std::invalid_argument("mat_mul: dimension mismatch");
  std::size_t n = lhs.dimension();
  std::vector<QuadraticNumber> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (lhs(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += lhs(i, k) * rhs(k, j);
    }
  return {n, std::move(out)};
}

inline ExactMatrix mat_add(const ExactMatrix& lhs, const ExactMatrix& rhs) {
  if (lhs.dimension() != rhs.dimension())
    throw std::invalid_argument("mat_add: dimension mismatch");
  std::vector<QuadraticNumber> out(lhs.entries());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.entries()[i];
  return {lhs.dimension(), std::move(out)};
}

inline ExactMatrix mat_scale(const ExactMatrix& a, const QuadraticNumber& s) {
  std::vector<QuadraticNumber> out(a.entries());
  for (auto& e : out) e *= s;
  return {a.dimension(), std::move(out)};
}

inline ExactMatrix mat_pow(const ExactMatrix& a, unsigned long n) {
  ExactMatrix acc = ExactMatrix::identity(a.dimension());
  ExactMatrix base = a;
  while (n > 0) {
    if (n & 1U) acc = mat_mul(acc, base);
    n >>= 1U;
    if (n > 0) base = mat_mul(base, base);
  }
  return acc;
}

inline std::vector<QuadraticNumber> mat_vec(const ExactMatrix& a, const std::vector<QuadraticNumber>& v) {
  if (v.size() != a.dimension()) throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<QuadraticNumber> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

inline QuadraticNumber dot(const std::vector<QuadraticNumber>& x, const std::vector<QuadraticNumber>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  QuadraticNumber acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

inline QuadraticNumber trace(const ExactMatrix& a) {
  QuadraticNumber acc;
  for (std::size_t i = 0; i < a.dimension(); ++i) acc += a(i, i);
  return acc;
}

/// Characteristic polynomial det(xI - A), monic, highest degree first:
/// {1, c_{n-1}, ..., c_0}. Faddeev-LeVerrier; exact because Q(sqrt5) is a field.
inline std::vector<QuadraticNumber> char_poly(const ExactMatrix& a) {
  std::size_t n = a.dimension();
  std::vector<QuadraticNumber> coeff(n + 1);
  coeff[0] = 1;
  ExactMatrix aux(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    ExactMatrix m = mat_add(mat_mul(a, aux), mat_scale(ExactMatrix::identity(n), coeff[k - 1]));
    coeff[k] = -(trace(mat_mul(a, m)) / QuadraticNumber(static_cast<long>(k)));
    aux = std::move(m);
  }
  return coeff;
}

/// p(A) for coefficients listed highest degree first (Horner).
inline ExactMatrix poly_eval(const std::vector<QuadraticNumber>& coeff, const ExactMatrix& a) {
  if (coeff.empty()) throw std::invalid_argument("poly_eval: empty polynomial");
  ExactMatrix acc(a.dimension());
  ExactMatrix id = ExactMatrix::identity(a.dimension());
  for (const auto& c : coeff) acc = mat_add(mat_mul(acc, a), mat_scale(id, c));
  return acc;
}

}  // namespace nsg
