#pragma once

#include <vector>

#include "critweb/rational.hpp"

namespace critweb {

// Untwisting data around a critical cycle: local degrees d_i, measured twist
// differences y_i, and the solved twists x_i with x_i = x_{i+1}/d_i + y_i.
// Twists are plain turn counts; nothing is reduced mod 1.
struct TwistSystem {
  std::vector<long long> degrees;
  std::vector<Rational> differences;
  std::vector<Rational> solution;
  long long total_degree = 1;
};

// Unique solution of t - t/d = difference; for difference k/d this is k/(d-1).
inline Rational solve_external_twist(long long degree, const Rational& difference) {
  if (degree < 2) throw invalid_input("external twist needs degree >= 2");
  return Rational(degree) * difference / Rational(degree - 1);
}

// Closed-form exact solution of the cyclic system x_i = x_{i+1}/d_i + y_i:
// x_0 = (D/(D-1)) * sum_i y_i / (d_0...d_{i-1}), the rest by forward
// substitution; the defining equations are re-checked before returning.
inline TwistSystem solve_cycle_twists(const std::vector<long long>& degrees,
                                      const std::vector<Rational>& differences) {
  std::size_t n = degrees.size();
  if (n == 0 || differences.size() != n) {
    throw invalid_input("degree and difference lists must have equal positive length");
  }
  for (long long d : degrees) {
    if (d < 2) throw invalid_input("local degrees must be at least 2");
  }

  TwistSystem sys;
  sys.degrees = degrees;
  sys.differences = differences;
  __int128 total = 1;
  for (long long d : degrees) {
    total *= d;
    if (total > INT64_MAX) throw std::overflow_error("total degree overflow");
  }
  sys.total_degree = static_cast<long long>(total);

  Rational sum(0);
  Rational prefix(1);  // d_0 ... d_{i-1}
  for (std::size_t i = 0; i < n; ++i) {
    sum += differences[i] / prefix;
    prefix *= Rational(degrees[i]);
  }
  Rational big_d(sys.total_degree);
  sys.solution.resize(n);
  sys.solution[0] = big_d / (big_d - Rational(1)) * sum;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sys.solution[i + 1] = Rational(degrees[i]) * (sys.solution[i] - differences[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational residue =
        sys.solution[i] - sys.solution[(i + 1) % n] / Rational(degrees[i]) - differences[i];
    if (!residue.is_zero()) throw std::logic_error("cycle twist residue nonzero");
  }
  return sys;
}

// Strictly preperiodic critical points untwist independently: x = y.
inline Rational solve_preperiodic_twist(const Rational& y) { return y; }

}  // namespace critweb
