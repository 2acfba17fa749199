#pragma once

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "critweb/classes.hpp"

namespace testutil {

using namespace critweb;

inline Angle ang(long long n, long long d) { return Angle::of(n, d); }

// F = {{1/4, 7/12}, {3/4, 1/12}}, degree 3. The running cubic example with
// two critical pairs whose rays 1/4 and 3/4 land together.
inline CriticalPortrait cubic_two_pairs() {
  return CriticalPortrait::make({{ang(1, 4), ang(7, 12)}, {ang(3, 4), ang(1, 12)}}, {});
}

// F = {{0, 1/3, 2/3}}, degree 3: the z^3 blueprint with a fixed triangle.
inline CriticalPortrait cubic_fixed_triangle() {
  return CriticalPortrait::make({{Angle(), ang(1, 3), ang(2, 3)}}, {});
}

// J = {{1/4, 3/4}}, degree 2: a single julia-type pair.
inline CriticalPortrait quadratic_julia_pair() {
  return CriticalPortrait::make({}, {{ang(1, 4), ang(3, 4)}});
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_file(const std::string& name) {
  return std::string(CRITWEB_DATA_DIR) + "/" + name;
}

// Parses set-of-sets notation as printed by the classes command, e.g.
// "{{1/12, 3/4}, {1/4}}".
inline std::vector<std::vector<Angle>> parse_angle_families(const std::string& text) {
  std::vector<std::vector<Angle>> out;
  std::vector<Angle> current;
  std::string token;
  int depth = 0;
  auto flush_token = [&]() {
    if (!token.empty()) {
      current.push_back(parse_angle(token));
      token.clear();
    }
  };
  for (char ch : text) {
    if (ch == '{') {
      ++depth;
      if (depth == 2) current.clear();
    } else if (ch == '}') {
      if (depth == 2) {
        flush_token();
        out.push_back(current);
      }
      --depth;
    } else if (ch == ',') {
      flush_token();
    } else if (ch != ' ') {
      token += ch;
    }
  }
  return out;
}

// Random admissible critical portraits: degree d in [2,6], every angle with
// denominator <= 120. Sets are built as subsets of m_d-preimage fans placed
// inside a single region of the current chord arrangement, which makes all
// admissibility conditions hold by construction.
class PortraitGenerator {
 public:
  explicit PortraitGenerator(unsigned long long seed) : rng_(seed) {}

  CriticalPortrait next() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      if (auto p = try_generate()) return *p;
    }
    throw std::runtime_error("portrait generation stalled");
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  using Region = std::vector<Arc>;

  Angle random_target(int d) {
    long long max_q = 120 / d;
    std::uniform_int_distribution<long long> den(1, max_q);
    long long q = den(rng_);
    std::uniform_int_distribution<long long> num(0, q - 1);
    return Angle::of(num(rng_), q);
  }

  static bool region_contains(const Region& r, const Angle& x) {
    for (const Arc& a : r) {
      if (a.contains(x)) return true;
    }
    return false;
  }

  // Splits the host region along the set's angles, one sub-region per gap.
  static std::vector<Region> split_region(const Region& host, const std::vector<Angle>& angles) {
    Region cut = critweb::detail::cut_region(host, angles);
    std::vector<Region> out(angles.size());
    for (const Arc& arc : cut) {
      for (std::size_t k = 0; k < angles.size(); ++k) {
        Arc gap(angles[k], angles[(k + 1) % angles.size()]);
        if (gap.contains(arc.end)) {
          out[k].push_back(arc);
          break;
        }
      }
    }
    for (auto& r : out) std::sort(r.begin(), r.end());
    return out;
  }

  std::optional<CriticalPortrait> try_generate() {
    std::uniform_int_distribution<int> deg_dist(2, 6);
    int d = deg_dist(rng_);
    int budget = d - 1;

    std::vector<std::vector<Angle>> sets;
    std::set<Angle> used;
    std::vector<Region> regions;

    // First set: any fan subset works.
    {
      Angle target = random_target(d);
      std::uniform_int_distribution<int> size_dist(2, std::min(d, budget + 1));
      int s = size_dist(rng_);
      std::vector<int> ks(static_cast<std::size_t>(d));
      std::iota(ks.begin(), ks.end(), 0);
      std::shuffle(ks.begin(), ks.end(), rng_);
      std::vector<Angle> angles;
      for (int i = 0; i < s; ++i) {
        angles.push_back(Angle::of(target.num() + (long long)ks[static_cast<std::size_t>(i)] *
                                                      target.den(),
                                   target.den() * d));
      }
      angles = critweb::detail::sorted_unique(std::move(angles));
      if (static_cast<int>(angles.size()) != s) return std::nullopt;
      sets.push_back(angles);
      used.insert(angles.begin(), angles.end());
      budget -= s - 1;
      for (std::size_t i = 0; i < angles.size(); ++i) {
        regions.push_back({Arc(angles[i], angles[(i + 1) % angles.size()])});
      }
    }

    while (budget > 0) {
      bool placed = false;
      for (int attempt = 0; attempt < 120 && !placed; ++attempt) {
        Angle target = random_target(d);
        std::vector<Angle> fan;
        for (int k = 0; k < d; ++k) {
          Angle x = Angle::of(target.num() + (long long)k * target.den(), target.den() * d);
          if (!used.count(x)) fan.push_back(x);
        }
        std::vector<std::size_t> order(regions.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng_);
        for (std::size_t ri : order) {
          std::vector<Angle> inside;
          for (const Angle& x : fan) {
            if (region_contains(regions[ri], x)) inside.push_back(x);
          }
          if (static_cast<int>(inside.size()) < 2) continue;
          int max_size = std::min<int>(static_cast<int>(inside.size()), budget + 1);
          std::uniform_int_distribution<int> size_dist(2, max_size);
          int s = size_dist(rng_);
          std::shuffle(inside.begin(), inside.end(), rng_);
          inside.resize(static_cast<std::size_t>(s));
          std::sort(inside.begin(), inside.end());
          sets.push_back(inside);
          used.insert(inside.begin(), inside.end());
          budget -= s - 1;
          std::vector<Region> split = split_region(regions[ri], inside);
          regions.erase(regions.begin() + static_cast<long>(ri));
          for (auto& r : split) regions.push_back(std::move(r));
          placed = true;
          break;
        }
      }
      if (!placed) return std::nullopt;
    }

    std::vector<std::vector<Angle>> fatou, julia;
    std::uniform_int_distribution<int> kind(0, 99);
    for (auto& s : sets) {
      if (kind(rng_) < 65) {
        fatou.push_back(std::move(s));
      } else {
        julia.push_back(std::move(s));
      }
    }
    return CriticalPortrait::make(fatou, julia);
  }

  std::mt19937_64 rng_;
};

}  // namespace testutil
