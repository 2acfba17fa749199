#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace critweb {

// Thrown when an operation's preconditions are violated (bad denominator,
// non-distinct triple, overlapping sets, ...).
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline long long checked_narrow(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error(std::string("rational overflow in ") + what);
  }
  return static_cast<long long>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Exact rational with value semantics. Stored reduced, denominator > 0.
// Arithmetic runs through 128-bit intermediates; results that do not fit
// back into 64 bits throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}

  Rational(long long num, long long den) { assign(num, den); }
  Rational(long long num) : num_(num), den_(1) {}  // NOLINT: implicit by design

  static Rational from128(__int128 num, __int128 den, const char* what = "from128") {
    if (den == 0) throw invalid_input("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = detail::gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    Rational r;
    r.num_ = detail::checked_narrow(num, what);
    r.den_ = detail::checked_narrow(den, what);
    return r;
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                   (__int128)a.den_ * b.den_, "+");
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                   (__int128)a.den_ * b.den_, "-");
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_, "*");
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw invalid_input("rational division by zero");
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_, "/");
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = (__int128)a.num_ * b.den_;
    __int128 rhs = (__int128)b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "p/q" for non-integers, plain "p" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void assign(long long num, long long den) {
    if (den == 0) throw invalid_input("rational with zero denominator");
    *this = from128(num, den, "assign");
  }

  long long num_;
  long long den_;
};

// Parses "p/q" or "p" with an optional leading minus. Throws invalid_input.
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  if (s.empty()) throw invalid_input("empty rational literal");
  std::size_t slash = s.find('/');
  try {
    std::size_t used = 0;
    long long num = std::stoll(s.substr(0, slash), &used);
    if (slash == std::string::npos) {
      if (used != s.size()) throw invalid_input("trailing characters in rational: " + text);
      return Rational(num);
    }
    if (used != slash) throw invalid_input("trailing characters in rational: " + text);
    std::string den_part = s.substr(slash + 1);
    long long den = std::stoll(den_part, &used);
    if (used != den_part.size()) throw invalid_input("trailing characters in rational: " + text);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw invalid_input("malformed rational literal: " + text);
  } catch (const std::out_of_range&) {
    throw invalid_input("rational literal out of range: " + text);
  }
}

inline long long checked_pow(long long base, int exp, const char* what = "pow") {
  __int128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > INT64_MAX) throw std::overflow_error(std::string("integer overflow in ") + what);
  }
  return static_cast<long long>(acc);
}

inline unsigned long long pow_mod(unsigned long long base, unsigned long long exp,
                                  unsigned long long mod) {
  if (mod == 1) return 0;
  unsigned __int128 acc = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<unsigned long long>(acc);
}

}  // namespace critweb
