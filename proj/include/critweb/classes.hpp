#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "critweb/itinerary.hpp"

namespace critweb {

enum class PartRole { fatou, landing };

// One part of a marked partition. Fatou parts carry a preferred argument.
struct Part {
  std::vector<Angle> angles;  // sorted
  PartRole role = PartRole::landing;
  std::optional<Angle> preferred;

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < angles.size(); ++i) {
      if (i) out += ", ";
      out += angles[i].str();
    }
    return out + "}";
  }
};

struct MarkedPartition {
  std::vector<Part> parts;  // sorted by least angle

  std::vector<Angle> ground() const {
    std::vector<Angle> out;
    for (const Part& p : parts) out.insert(out.end(), p.angles.begin(), p.angles.end());
    return detail::sorted_unique(std::move(out));
  }

  int part_index_of(const Angle& a) const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (std::binary_search(parts[i].angles.begin(), parts[i].angles.end(), a)) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ", ";
      out += parts[i].str();
    }
    return out + "}";
  }
};

inline MarkedPartition make_partition(std::vector<std::vector<Angle>> groups, PartRole role) {
  MarkedPartition mp;
  for (auto& g : groups) {
    Part part;
    part.angles = detail::sorted_unique(std::move(g));
    part.role = role;
    if (!part.angles.empty()) mp.parts.push_back(std::move(part));
  }
  std::sort(mp.parts.begin(), mp.parts.end(),
            [](const Part& a, const Part& b) { return a.angles.front() < b.angles.front(); });
  return mp;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Classes of the relation grouping angles whose external rays are expected to
// land at the same point: equal left itineraries, chained through any julia
// set realizing both itineraries.
inline std::vector<std::vector<Angle>> landing_classes(const AddressSystem& sys,
                                                       const std::vector<Angle>& universe_in) {
  std::vector<Angle> universe = detail::sorted_unique(universe_in);
  detail::UnionFind uf(universe.size());

  std::map<Itinerary, std::vector<int>> by_itinerary;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    by_itinerary[left_itinerary(sys, universe[i])].push_back(static_cast<int>(i));
  }
  for (const auto& [it, members] : by_itinerary) {
    for (std::size_t i = 1; i < members.size(); ++i) uf.unite(members[0], members[i]);
  }
  // A julia set whose members realize two itineraries welds those groups.
  for (const CriticalSet& j : sys.portrait().julia_sets()) {
    int anchor = -1;
    for (const Angle& a : j.angles) {
      auto found = by_itinerary.find(left_itinerary(sys, a));
      if (found == by_itinerary.end() || found->second.empty()) continue;
      if (anchor < 0) {
        anchor = found->second.front();
      } else {
        uf.unite(anchor, found->second.front());
      }
    }
  }

  std::map<int, std::vector<Angle>> groups;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    groups[uf.find(static_cast<int>(i))].push_back(universe[i]);
  }
  std::vector<std::vector<Angle>> out;
  out.reserve(groups.size());
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

// True iff the rays of a and b are expected to land together, closing the
// one-step relation inside `universe`.
inline bool same_landing(const AddressSystem& sys, const Angle& a, const Angle& b,
                         const std::vector<Angle>& universe) {
  for (const auto& cls : landing_classes(sys, universe)) {
    bool has_a = std::binary_search(cls.begin(), cls.end(), a);
    bool has_b = std::binary_search(cls.begin(), cls.end(), b);
    if (has_a || has_b) return has_a && has_b;
  }
  return a == b;
}

// True iff lambda's ray approaches gamma's ray from the right: the orbits
// merge after finitely many steps, and until they do the left address of
// lambda's orbit equals the right address of gamma's orbit. gamma must be a
// periodic angle on the fatou orbit (anchors live on the critical cycles,
// which pass through non-critical angles too).
inline bool is_special_argument_for(const AddressSystem& sys, const Angle& lambda,
                                    const Angle& gamma) {
  const auto fatou_orbit = sys.portrait().fatou_orbit();
  if (!std::binary_search(fatou_orbit.begin(), fatou_orbit.end(), gamma)) {
    throw invalid_input("anchor " + gamma.str() + " is not on the fatou orbit");
  }
  int d = sys.degree();
  OrbitDecomposition og = orbit(gamma, d);
  if (!og.is_periodic()) {
    throw invalid_input("anchor " + gamma.str() + " is not periodic");
  }
  OrbitDecomposition ol = orbit(lambda, d);
  int horizon = static_cast<int>(std::max(ol.preperiod.size(), og.preperiod.size()));
  if (!(md_iter(lambda, d, horizon) == md_iter(gamma, d, horizon))) return false;

  Angle x = lambda, y = gamma;
  for (int k = 0; k < horizon; ++k) {
    if (x == y) return true;
    if (sys.address_left(x) != sys.address_right(y)) return false;
    x = md(x, d);
    y = md(y, d);
  }
  return true;
}

// Special arguments: for each periodic fatou angle gamma with period p, pull
// gamma back one full period through the pieces right of its own orbit. The
// full-period pullback is the special argument attached to gamma; partial
// pullbacks are kept too whenever they leave the fatou orbit, which keeps the
// returned set forward-invariant into Gamma ∪ O(F).
//
// Degenerate case: when the julia orbit meets the fatou cycle, an inverse
// branch can land exactly on a julia angle; such a ray lands at a julia
// critical point and supports no component, so that anchor's chain is
// dropped. (Once a chain leaves the fatou orbit it can only meet the julia
// orbit at its first off-orbit step, so nothing valid is lost.)
inline std::vector<Angle> generate_special_arguments(const AddressSystem& sys) {
  int d = sys.degree();
  std::vector<Angle> fatou_orbit = sys.portrait().fatou_orbit();
  std::vector<Angle> julia_orbit = sys.portrait().julia_orbit();
  std::set<Angle> gamma;
  for (const Angle& g : sys.portrait().fatou_union()) {
    OrbitDecomposition o = orbit(g, d);
    if (!o.is_periodic()) continue;
    int p = static_cast<int>(o.cycle.size());
    Angle x = g;
    std::vector<Angle> chain;
    bool degenerate = false;
    for (int j = p - 1; j >= 0 && !degenerate; --j) {
      x = sys.preimage_in_piece(sys.address_right(md_iter(g, d, j)), x);
      bool on_orbit = std::binary_search(fatou_orbit.begin(), fatou_orbit.end(), x);
      if (!on_orbit && std::binary_search(julia_orbit.begin(), julia_orbit.end(), x)) {
        degenerate = true;
      } else if (j == 0 || !on_orbit) {
        chain.push_back(x);
      }
    }
    if (!degenerate) gamma.insert(chain.begin(), chain.end());
  }
  return {gamma.begin(), gamma.end()};
}

// Forward invariance required of special arguments: m_d(G) ⊆ G ∪ O(F).
inline bool special_arguments_invariant(const AddressSystem& sys,
                                        const std::vector<Angle>& gamma) {
  std::vector<Angle> fatou_orbit = sys.portrait().fatou_orbit();
  std::vector<Angle> g = detail::sorted_unique(gamma);
  for (const Angle& a : g) {
    Angle image = md(a, sys.degree());
    if (!std::binary_search(g.begin(), g.end(), image) &&
        !std::binary_search(fatou_orbit.begin(), fatou_orbit.end(), image)) {
      return false;
    }
  }
  return true;
}

inline void require_invariant_gamma(const AddressSystem& sys, const std::vector<Angle>& gamma) {
  if (!special_arguments_invariant(sys, gamma)) {
    throw validation_error(validation_error::Code::gamma_invariance,
                           "special arguments are not forward-invariant");
  }
}

// Full marked set: fatou and julia orbits, the special arguments, and 0.
inline std::vector<Angle> marked_set(const AddressSystem& sys, const std::vector<Angle>& gamma) {
  std::vector<Angle> out = sys.portrait().fatou_orbit();
  auto j = sys.portrait().julia_orbit();
  out.insert(out.end(), j.begin(), j.end());
  out.insert(out.end(), gamma.begin(), gamma.end());
  out.push_back(Angle());
  return detail::sorted_unique(std::move(out));
}

// Partition of O(F) ∪ Gamma into fatou classes: the critical fatou sets,
// singletons for the rest of the orbit, and each special argument merged into
// the part of its anchor. Each part prefers its unique periodic member, the
// smallest angle otherwise.
inline MarkedPartition build_fatou_classes(const AddressSystem& sys,
                                           const std::vector<Angle>& gamma) {
  require_invariant_gamma(sys, gamma);
  int d = sys.degree();
  std::vector<Angle> fatou_orbit = sys.portrait().fatou_orbit();
  std::vector<Angle> fatou_union = sys.portrait().fatou_union();

  std::vector<std::vector<Angle>> groups;
  for (const CriticalSet& s : sys.portrait().fatou_sets()) groups.push_back(s.angles);
  for (const Angle& x : fatou_orbit) {
    if (!std::binary_search(fatou_union.begin(), fatou_union.end(), x)) groups.push_back({x});
  }

  std::vector<Angle> periodic_anchors;
  for (const Angle& g : fatou_orbit) {
    if (is_periodic(g, d)) periodic_anchors.push_back(g);
  }
  for (const Angle& lam : detail::sorted_unique(gamma)) {
    if (std::binary_search(fatou_orbit.begin(), fatou_orbit.end(), lam)) continue;
    bool merged = false;
    for (const Angle& g : periodic_anchors) {
      if (is_special_argument_for(sys, lam, g)) {
        for (auto& grp : groups) {
          if (std::find(grp.begin(), grp.end(), g) != grp.end()) {
            grp.push_back(lam);
            merged = true;
            break;
          }
        }
        break;
      }
    }
    if (!merged) groups.push_back({lam});
  }

  MarkedPartition mp = make_partition(std::move(groups), PartRole::fatou);
  for (Part& part : mp.parts) {
    part.preferred = part.angles.front();
    for (const Angle& a : part.angles) {
      if (is_periodic(a, d)) {
        part.preferred = a;
        break;
      }
    }
  }
  return mp;
}

// Partition of the full marked set into landing classes.
inline MarkedPartition build_landing_classes(const AddressSystem& sys,
                                             const std::vector<Angle>& gamma) {
  require_invariant_gamma(sys, gamma);
  return make_partition(landing_classes(sys, marked_set(sys, gamma)), PartRole::landing);
}

// Embeddability of the two families: landing parts pairwise unlinked, fatou
// parts pairwise unlinked, and every landing part inside a single half-open
// gap of every fatou part. This is exactly what lets the web embed with rays
// in angle order.
struct CompatibilityResult {
  bool ok = true;
  std::string detail;  // offending pair when !ok

  explicit operator bool() const { return ok; }
};

inline CompatibilityResult verify_embeddability(const MarkedPartition& fatou_classes,
                                                const MarkedPartition& landing_parts) {
  auto fail = [](const std::string& msg) { return CompatibilityResult{false, msg}; };
  const auto& jp = landing_parts.parts;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    for (std::size_t k = i + 1; k < jp.size(); ++k) {
      if (!unlinked(jp[i].angles, jp[k].angles)) {
        return fail("linked landing parts " + jp[i].str() + " vs " + jp[k].str());
      }
    }
  }
  const auto& fp = fatou_classes.parts;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    for (std::size_t k = i + 1; k < fp.size(); ++k) {
      if (!unlinked(fp[i].angles, fp[k].angles)) {
        return fail("linked fatou parts " + fp[i].str() + " vs " + fp[k].str());
      }
    }
  }
  for (const Part& f : fp) {
    if (f.angles.size() < 2) continue;
    for (const Part& j : jp) {
      if (!weakly_unlinked_right(f.angles, j.angles)) {
        return fail("landing part " + j.str() + " not weakly unlinked in the right to " +
                    f.str());
      }
    }
  }
  return {};
}

}  // namespace critweb
