#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "critweb/twist.hpp"

using namespace critweb;

namespace {

// Independent oracle: exact Gaussian elimination on the n x n system
// x_i - x_{i+1}/d_i = y_i.
std::vector<Rational> solve_by_elimination(const std::vector<long long>& degrees,
                                           const std::vector<Rational>& y) {
  std::size_t n = degrees.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = Rational(1);
    m[i][(i + 1) % n] += Rational(-1, degrees[i]);
    m[i][n] = y[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    REQUIRE(pivot < n);
    std::swap(m[col], m[pivot]);
    Rational lead = m[col][col];
    for (std::size_t k = col; k <= n; ++k) m[col][k] /= lead;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Rational f = m[row][col];
      for (std::size_t k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace

TEST_CASE("external twist equation") {
  CHECK(solve_external_twist(3, Rational(1)) == Rational(3, 2));
  CHECK(solve_external_twist(3, Rational(1, 3)) == Rational(1, 2));
  CHECK(solve_external_twist(5, Rational(0)) == Rational(0));
  CHECK_THROWS_AS(solve_external_twist(1, Rational(1)), invalid_input);

  for (long long d = 2; d <= 9; ++d) {
    for (long long k = 0; k < 2 * d; ++k) {
      CHECK(solve_external_twist(d, Rational(k, d)) == Rational(k, d - 1));
    }
  }
}

TEST_CASE("cycle twists") {
  TwistSystem one = solve_cycle_twists({3}, {Rational(1)});
  CHECK(one.total_degree == 3);
  CHECK(one.solution == std::vector<Rational>{Rational(3, 2)});

  TwistSystem two = solve_cycle_twists({2, 2}, {Rational(1, 2), Rational(1, 2)});
  CHECK(two.total_degree == 4);
  CHECK(two.solution == std::vector<Rational>{Rational(1), Rational(1)});

  TwistSystem zero = solve_cycle_twists({4, 3, 2}, {Rational(0), Rational(0), Rational(0)});
  for (const Rational& x : zero.solution) CHECK(x.is_zero());

  CHECK_THROWS_AS(solve_cycle_twists({}, {}), invalid_input);
  CHECK_THROWS_AS(solve_cycle_twists({3}, {Rational(1), Rational(1)}), invalid_input);
  CHECK_THROWS_AS(solve_cycle_twists({1}, {Rational(1)}), invalid_input);
}

TEST_CASE("preperiodic twist is the identity") {
  CHECK(solve_preperiodic_twist(Rational(1, 2)) == Rational(1, 2));
  CHECK(solve_preperiodic_twist(Rational(0)) == Rational(0));
  CHECK(solve_preperiodic_twist(Rational(-2, 3)) == Rational(-2, 3));
}

TEST_CASE("exhaustive residue and denominator checks") {
  // All degree lists with n <= 5, d_i in {2..5}; differences k_i/d_i with
  // k_i in {0, 1, d_i}.
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<long long> degrees;
      for (int v : idx) degrees.push_back(v + 2);

      std::vector<int> choice(static_cast<std::size_t>(n), 0);
      while (true) {
        std::vector<Rational> y;
        for (int i = 0; i < n; ++i) {
          long long k = choice[static_cast<std::size_t>(i)] == 0   ? 0
                        : choice[static_cast<std::size_t>(i)] == 1 ? 1
                                                                   : degrees[static_cast<std::size_t>(i)];
          y.emplace_back(k, degrees[static_cast<std::size_t>(i)]);
        }
        TwistSystem sys = solve_cycle_twists(degrees, y);
        for (int i = 0; i < n; ++i) {
          Rational residue = sys.solution[static_cast<std::size_t>(i)] -
                             sys.solution[static_cast<std::size_t>((i + 1) % n)] /
                                 Rational(degrees[static_cast<std::size_t>(i)]) -
                             y[static_cast<std::size_t>(i)];
          CHECK(residue.is_zero());
          // Solutions live in (1/(D-1)) Z when each y_i has denominator d_i.
          Rational scaled = sys.solution[static_cast<std::size_t>(i)] *
                            Rational(sys.total_degree - 1);
          CHECK(scaled.is_integer());
        }
        int pos = 0;
        while (pos < n && ++choice[static_cast<std::size_t>(pos)] == 3) {
          choice[static_cast<std::size_t>(pos)] = 0;
          ++pos;
        }
        if (pos == n) break;
      }

      int pos = 0;
      while (pos < n && ++idx[static_cast<std::size_t>(pos)] == 4) {
        idx[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
  }
}

TEST_CASE("solver agrees with exact elimination") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> len(1, 5), deg(2, 5), num(-6, 6), den(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    int n = len(rng);
    std::vector<long long> degrees;
    std::vector<Rational> y;
    for (int i = 0; i < n; ++i) {
      degrees.push_back(deg(rng));
      y.emplace_back(num(rng), den(rng));
    }
    TwistSystem sys = solve_cycle_twists(degrees, y);
    CHECK(sys.solution == solve_by_elimination(degrees, y));
  }
}
