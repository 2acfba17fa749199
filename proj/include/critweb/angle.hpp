#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "critweb/rational.hpp"

namespace critweb {

// A point of the circle R/Z as an exact reduced fraction in [0, 1).
class Angle {
 public:
  constexpr Angle() : num_(0), den_(1) {}

  // Reduced representative of (num mod den)/den. den must be positive.
  static Angle of(long long num, long long den) {
    if (den <= 0) throw invalid_input("angle denominator must be positive");
    __int128 n = (__int128)num % den;
    if (n < 0) n += den;
    Rational r = Rational::from128(n, den, "angle");
    Angle a;
    a.num_ = r.num();
    a.den_ = r.den();
    return a;
  }

  // Wraps an arbitrary rational into [0, 1).
  static Angle wrap(const Rational& r) { return of(r.num(), r.den()); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  Rational value() const { return Rational(num_, den_); }
  bool is_zero() const { return num_ == 0; }

  std::string str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Angle& a, const Angle& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    __int128 lhs = (__int128)a.num_ * b.den_;
    __int128 rhs = (__int128)b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  long long num_;
  long long den_;
};

// Parses a non-negative "p/q" (or integer) angle literal, wrapped mod 1.
inline Angle parse_angle(const std::string& text) {
  Rational r = parse_rational(text);
  if (r.num() < 0) throw invalid_input("negative angle literal: " + text);
  return Angle::wrap(r);
}

// (to - from) mod 1 as an exact rational in [0, 1).
inline Rational cyclic_gap(const Angle& from, const Angle& to) {
  Rational d = to.value() - from.value();
  if (d < Rational(0)) d += Rational(1);
  return d;
}

// theta |-> d * theta mod 1, the angle dynamics of a degree-d polynomial.
inline Angle md(const Angle& a, int degree) {
  if (degree < 2) throw invalid_input("multiplier degree must be at least 2");
  __int128 n = (__int128)a.num() * degree % a.den();
  return Angle::of(detail::checked_narrow(n, "md"), a.den());
}

inline Angle md_iter(Angle a, int degree, int times) {
  for (int i = 0; i < times; ++i) a = md(a, degree);
  return a;
}

// Forward orbit split at the first repetition.
struct OrbitDecomposition {
  std::vector<Angle> preperiod;
  std::vector<Angle> cycle;

  bool is_periodic() const { return preperiod.empty(); }
  int length() const { return static_cast<int>(preperiod.size() + cycle.size()); }
};

inline OrbitDecomposition orbit(const Angle& start, int degree) {
  OrbitDecomposition out;
  std::map<Angle, int> seen;
  std::vector<Angle> trail;
  Angle a = start;
  while (true) {
    auto it = seen.find(a);
    if (it != seen.end()) {
      out.preperiod.assign(trail.begin(), trail.begin() + it->second);
      out.cycle.assign(trail.begin() + it->second, trail.end());
      return out;
    }
    seen.emplace(a, static_cast<int>(trail.size()));
    trail.push_back(a);
    a = md(a, degree);
  }
}

inline bool is_periodic(const Angle& a, int degree) { return orbit(a, degree).is_periodic(); }

// True iff walking counterclockwise from a one meets b before c.
inline bool cyclically_ordered(const Angle& a, const Angle& b, const Angle& c) {
  if (a == b || b == c || a == c) {
    throw invalid_input("cyclically_ordered requires pairwise distinct angles");
  }
  return cyclic_gap(a, b) < cyclic_gap(a, c);
}

// Half-open circular arc (start, end], wrapping through 0 when end <= start.
struct Arc {
  Angle start;
  Angle end;

  Arc(const Angle& s, const Angle& e) : start(s), end(e) {
    if (s == e) throw invalid_input("degenerate arc " + s.str());
  }

  Rational length() const { return cyclic_gap(start, end); }

  bool contains(const Angle& theta) const {
    if (start < end) return start < theta && theta <= end;
    return theta > start || theta <= end;
  }

  std::string str() const { return "(" + start.str() + "," + end.str() + "]"; }

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.start == b.start && a.end == b.end;
  }
  friend std::strong_ordering operator<=>(const Arc& a, const Arc& b) {
    if (auto c = a.start <=> b.start; c != 0) return c;
    return a.end <=> b.end;
  }
};

// Intersection of two half-open arcs; zero, one or two arcs.
inline std::vector<Arc> arc_intersection(const Arc& a, const Arc& b) {
  // Unroll to intervals (s, e] with e in (s, s+1].
  Rational as = a.start.value();
  Rational ae = a.end.value();
  if (!(ae > as)) ae += Rational(1);
  Rational bs = b.start.value();
  Rational be = b.end.value();
  if (!(be > bs)) be += Rational(1);

  std::vector<Arc> out;
  for (int shift = -1; shift <= 1; ++shift) {
    Rational off(shift);
    Rational lo = std::max(as, bs + off);
    Rational hi = std::min(ae, be + off);
    if (lo < hi) out.emplace_back(Angle::wrap(lo), Angle::wrap(hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Rational total_length(const std::vector<Arc>& arcs) {
  Rational sum(0);
  for (const Arc& a : arcs) sum += a.length();
  return sum;
}

namespace detail {

inline std::vector<Angle> sorted_unique(std::vector<Angle> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool disjoint_sorted(const std::vector<Angle>& a, const std::vector<Angle>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

}  // namespace detail

// True iff T fits inside the closure of one component of R/Z - S, i.e. the
// chords spanned by S and T can be drawn without crossing. Requires S, T
// nonempty and disjoint.
inline bool unlinked(const std::vector<Angle>& s_in, const std::vector<Angle>& t_in) {
  std::vector<Angle> s = detail::sorted_unique(s_in);
  std::vector<Angle> t = detail::sorted_unique(t_in);
  if (s.empty() || t.empty()) throw invalid_input("unlinked requires nonempty sets");
  if (!detail::disjoint_sorted(s, t)) {
    throw invalid_input("unlinked requires disjoint sets (shared point present)");
  }
  if (s.size() == 1) return true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Arc gap(s[i], s[(i + 1) % s.size()]);
    bool all = true;
    for (const Angle& x : t) {
      if (!gap.contains(x)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// True iff T fits inside a single half-open gap (g1, g2] between consecutive
// elements of S. Shared points are allowed; this is the one-sided relaxation
// of unlinked. Requires |S| >= 2.
inline bool weakly_unlinked_right(const std::vector<Angle>& s_in,
                                  const std::vector<Angle>& t_in) {
  std::vector<Angle> s = detail::sorted_unique(s_in);
  std::vector<Angle> t = detail::sorted_unique(t_in);
  if (s.size() < 2) throw invalid_input("weakly_unlinked_right requires |S| >= 2");
  if (t.empty()) throw invalid_input("weakly_unlinked_right requires nonempty T");
  for (std::size_t i = 0; i < s.size(); ++i) {
    Arc gap(s[i], s[(i + 1) % s.size()]);
    bool all = true;
    for (const Angle& x : t) {
      if (!gap.contains(x)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace critweb
