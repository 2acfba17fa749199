#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "critweb/address.hpp"

namespace critweb {

// Eventually periodic symbol sequence of piece ids, stored in canonical form:
// the cycle is primitive and the preperiod is minimal.
struct Itinerary {
  std::vector<int> preperiod;
  std::vector<int> cycle;

  friend bool operator==(const Itinerary& a, const Itinerary& b) {
    return a.preperiod == b.preperiod && a.cycle == b.cycle;
  }
  friend bool operator<(const Itinerary& a, const Itinerary& b) {
    if (a.preperiod != b.preperiod) return a.preperiod < b.preperiod;
    return a.cycle < b.cycle;
  }

  int symbol_at(std::size_t k) const {
    if (k < preperiod.size()) return preperiod[k];
    return cycle[(k - preperiod.size()) % cycle.size()];
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < preperiod.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(preperiod[i]);
    }
    out += "](";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(cycle[i]);
    }
    return out + ")*";
  }
};

inline Itinerary canonical_itinerary(std::vector<int> pre, std::vector<int> cyc) {
  if (cyc.empty()) throw invalid_input("itinerary needs a nonempty cycle");
  // Primitive cycle.
  for (std::size_t p = 1; p <= cyc.size() / 2; ++p) {
    if (cyc.size() % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < cyc.size() && periodic; ++i) {
      periodic = cyc[i] == cyc[i % p];
    }
    if (periodic) {
      cyc.resize(p);
      break;
    }
  }
  // Minimal preperiod: fold matching tail symbols into the cycle.
  while (!pre.empty() && pre.back() == cyc.back()) {
    pre.pop_back();
    std::rotate(cyc.begin(), cyc.end() - 1, cyc.end());
  }
  return Itinerary{std::move(pre), std::move(cyc)};
}

// Drops the first symbol; canonical form of the itinerary of m_d(theta).
inline Itinerary shift(const Itinerary& it) {
  std::vector<int> pre = it.preperiod;
  std::vector<int> cyc = it.cycle;
  if (pre.empty()) {
    std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  } else {
    pre.erase(pre.begin());
  }
  return canonical_itinerary(std::move(pre), std::move(cyc));
}

namespace detail {

template <typename AddressFn>
Itinerary itinerary_of(const AddressSystem& sys, const Angle& theta, AddressFn address) {
  OrbitDecomposition o = orbit(theta, sys.degree());
  std::vector<int> pre, cyc;
  pre.reserve(o.preperiod.size());
  cyc.reserve(o.cycle.size());
  for (const Angle& a : o.preperiod) pre.push_back(address(sys, a));
  for (const Angle& a : o.cycle) cyc.push_back(address(sys, a));
  return canonical_itinerary(std::move(pre), std::move(cyc));
}

}  // namespace detail

inline Itinerary left_itinerary(const AddressSystem& sys, const Angle& theta) {
  return detail::itinerary_of(sys, theta, [](const AddressSystem& s, const Angle& a) {
    return s.address_left(a);
  });
}

inline Itinerary right_itinerary(const AddressSystem& sys, const Angle& theta) {
  return detail::itinerary_of(sys, theta, [](const AddressSystem& s, const Angle& a) {
    return s.address_right(a);
  });
}

namespace detail {

// d-smooth candidates s <= cap whose prime exponents fit inside d^m.
inline void smooth_parts(long long d, int m, long long cap, std::vector<long long>& out) {
  std::vector<std::pair<long long, int>> primes;  // prime, exponent in d
  long long rest = d;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      primes.emplace_back(p, e);
    }
  }
  if (rest > 1) primes.emplace_back(rest, 1);

  out.assign(1, 1);
  for (auto [p, e] : primes) {
    std::vector<long long> next;
    for (long long base : out) {
      long long v = base;
      next.push_back(v);
      for (int i = 0; i < e * m; ++i) {
        if (v > cap / p) break;
        v *= p;
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

inline bool matches_itinerary(const AddressSystem& sys, const Angle& theta,
                              const Itinerary& want) {
  // Cheap prefix rejection before the full orbit walk.
  Angle a = theta;
  std::size_t probe = std::min<std::size_t>(want.preperiod.size() + 2 * want.cycle.size(), 32);
  for (std::size_t k = 0; k < probe; ++k) {
    if (sys.address_left(a) != want.symbol_at(k)) return false;
    a = md(a, sys.degree());
  }
  return left_itinerary(sys, theta) == want;
}

}  // namespace detail

// All angles whose left itinerary equals `it`, found by exact search over
// reduced denominators q = s * t with s dividing d^m and ord_t(d) dividing a
// small multiple of the cycle length (angles realizing a symbolic p-cycle are
// m_d-periodic with period k*p, k bounded by the number of elementary arcs).
// Denominators above `max_denominator` are not searched; every candidate that
// is returned has been verified exactly.
inline std::vector<Angle> decode_itinerary(const AddressSystem& sys, const Itinerary& it_in,
                                           long long max_denominator = 20000) {
  Itinerary it = canonical_itinerary(it_in.preperiod, it_in.cycle);
  int d = sys.degree();
  for (int sym : it.preperiod) {
    if (sym < 0 || sym >= d) throw invalid_input("itinerary symbol out of range");
  }
  for (int sym : it.cycle) {
    if (sym < 0 || sym >= d) throw invalid_input("itinerary symbol out of range");
  }

  int m = static_cast<int>(it.preperiod.size());
  long long p = static_cast<long long>(it.cycle.size());
  long long k_max = std::max<long long>(8, static_cast<long long>(sys.cuts().size()) + 2);

  std::vector<long long> smooth;
  detail::smooth_parts(d, m, max_denominator, smooth);

  std::vector<Angle> out;
  for (long long t = 1; t <= max_denominator; ++t) {
    if (std::gcd(t, (long long)d) != 1) continue;
    bool tail_ok = t == 1;
    for (long long k = 1; !tail_ok && k <= k_max; ++k) {
      tail_ok = pow_mod((unsigned long long)d, (unsigned long long)(k * p),
                        (unsigned long long)t) == 1;
    }
    if (!tail_ok) continue;
    for (long long s : smooth) {
      if (s > max_denominator / t) break;
      long long q = s * t;
      for (long long a = q == 1 ? 0 : 1; a < q; ++a) {
        if (q > 1 && std::gcd(a, q) != 1) continue;
        Angle theta = Angle::of(a, q);
        if (detail::matches_itinerary(sys, theta, it)) out.push_back(theta);
        if (q == 1) break;
      }
    }
  }
  return detail::sorted_unique(std::move(out));
}

}  // namespace critweb
