#pragma once

#include <set>
#include <string>
#include <vector>

#include "critweb/angle.hpp"

namespace critweb {

// Admissibility failure. `code` is stable; `what()` names the offending sets.
struct validation_error : std::runtime_error {
  enum class Code {
    set_too_small,
    map_to_point,
    linked_sets,
    right_gap,        // a julia set not weakly unlinked in the right to a fatou set
    duplicate_angle,
    degree,
    gamma_invariance, // special arguments not forward-invariant
    obstruction,      // class families fail the embeddability check
  };

  validation_error(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

enum class SetKind { fatou, julia };

// One critical point's supporting angles: at least two, all with the same
// image under m_d.
struct CriticalSet {
  SetKind kind;
  std::vector<Angle> angles;  // sorted, distinct

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < angles.size(); ++i) {
      if (i) out += ", ";
      out += angles[i].str();
    }
    return out + "}";
  }
};

class CriticalPortrait {
 public:
  // Validates and canonicalizes the full portrait; throws validation_error.
  static CriticalPortrait make(const std::vector<std::vector<Angle>>& fatou,
                               const std::vector<std::vector<Angle>>& julia);

  int degree() const { return degree_; }
  const std::vector<CriticalSet>& fatou_sets() const { return fatou_; }
  const std::vector<CriticalSet>& julia_sets() const { return julia_; }

  std::vector<Angle> fatou_union() const {
    std::vector<Angle> out;
    for (const auto& s : fatou_) out.insert(out.end(), s.angles.begin(), s.angles.end());
    return detail::sorted_unique(std::move(out));
  }
  std::vector<Angle> julia_union() const {
    std::vector<Angle> out;
    for (const auto& s : julia_) out.insert(out.end(), s.angles.begin(), s.angles.end());
    return detail::sorted_unique(std::move(out));
  }
  std::vector<Angle> all_angles() const {
    std::vector<Angle> out = fatou_union();
    auto j = julia_union();
    out.insert(out.end(), j.begin(), j.end());
    return detail::sorted_unique(std::move(out));
  }

  // Forward orbit closure of a set of angles.
  std::vector<Angle> orbit_closure(const std::vector<Angle>& seeds) const {
    std::set<Angle> acc;
    for (const Angle& s : seeds) {
      OrbitDecomposition o = orbit(s, degree_);
      acc.insert(o.preperiod.begin(), o.preperiod.end());
      acc.insert(o.cycle.begin(), o.cycle.end());
    }
    return {acc.begin(), acc.end()};
  }

  std::vector<Angle> fatou_orbit() const { return orbit_closure(fatou_union()); }
  std::vector<Angle> julia_orbit() const { return orbit_closure(julia_union()); }

 private:
  std::vector<CriticalSet> fatou_;
  std::vector<CriticalSet> julia_;
  int degree_ = 0;
};

namespace detail {

inline CriticalSet make_set(SetKind kind, const std::vector<Angle>& angles_in) {
  CriticalSet s{kind, sorted_unique(angles_in)};
  if (s.angles.size() < 2) {
    throw validation_error(validation_error::Code::set_too_small,
                           "critical set " + s.str() + " needs at least two angles");
  }
  return s;
}

}  // namespace detail

inline CriticalPortrait CriticalPortrait::make(const std::vector<std::vector<Angle>>& fatou,
                                               const std::vector<std::vector<Angle>>& julia) {
  CriticalPortrait p;
  for (const auto& a : fatou) p.fatou_.push_back(detail::make_set(SetKind::fatou, a));
  for (const auto& a : julia) p.julia_.push_back(detail::make_set(SetKind::julia, a));

  auto by_least = [](const CriticalSet& a, const CriticalSet& b) {
    return a.angles.front() < b.angles.front();
  };
  std::sort(p.fatou_.begin(), p.fatou_.end(), by_least);
  std::sort(p.julia_.begin(), p.julia_.end(), by_least);

  std::vector<const CriticalSet*> all;
  for (const auto& s : p.fatou_) all.push_back(&s);
  for (const auto& s : p.julia_) all.push_back(&s);

  int degree = 1;
  for (const auto* s : all) degree += static_cast<int>(s->angles.size()) - 1;
  if (degree < 2) {
    throw validation_error(validation_error::Code::degree,
                           "degree < 2 (portrait needs at least one critical set)");
  }
  p.degree_ = degree;

  // Distinctness across sets.
  std::set<Angle> seen;
  for (const auto* s : all) {
    for (const Angle& a : s->angles) {
      if (!seen.insert(a).second) {
        throw validation_error(validation_error::Code::duplicate_angle,
                               "angle " + a.str() + " appears in more than one set");
      }
    }
  }

  // Pairwise unlinked.
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!unlinked(all[i]->angles, all[j]->angles)) {
        throw validation_error(validation_error::Code::linked_sets,
                               "linked sets: " + all[i]->str() + " vs " + all[j]->str());
      }
    }
  }

  // Each set collapses to a single point under m_d.
  for (const auto* s : all) {
    Angle image = md(s->angles.front(), degree);
    for (const Angle& a : s->angles) {
      if (!(md(a, degree) == image)) {
        throw validation_error(validation_error::Code::map_to_point,
                               "set " + s->str() + " does not map to a single point");
      }
    }
  }

  // Every julia set sits in a single half-open gap of every fatou set.
  for (const auto& f : p.fatou_) {
    for (const auto& j : p.julia_) {
      if (!weakly_unlinked_right(f.angles, j.angles)) {
        throw validation_error(validation_error::Code::right_gap,
                               "julia set " + j.str() + " is not weakly unlinked in the right to " +
                                   f.str());
      }
    }
  }
  return p;
}

}  // namespace critweb
