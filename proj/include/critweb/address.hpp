#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "critweb/portrait.hpp"

namespace critweb {

// One of the d pieces cut out of the circle by the portrait's chords: a union
// of half-open arcs of total length exactly 1/d.
struct Piece {
  int id = -1;
  std::vector<Arc> arcs;  // sorted by start

  Rational length() const { return total_length(arcs); }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (i) out += ", ";
      out += arcs[i].str();
    }
    return out + "}";
  }
};

// The d-piece address system of a portrait. Left addresses use the (a,b]
// convention, right addresses the mirrored [a,b) one, so every angle has a
// well-defined piece on each side. m_d restricted to any piece is a bijection
// onto the circle, which makes inverse branches single-valued.
class AddressSystem {
 public:
  static AddressSystem build(const CriticalPortrait& portrait);

  const CriticalPortrait& portrait() const { return portrait_; }
  int degree() const { return portrait_.degree(); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Piece& piece(int id) const { return pieces_.at(static_cast<std::size_t>(id)); }
  const std::vector<Angle>& cuts() const { return cuts_; }

  // Piece containing theta under (a,b]; encodes the left-sided limit.
  int address_left(const Angle& theta) const {
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), theta);
    std::size_t idx = static_cast<std::size_t>(it - cuts_.begin());
    return arc_piece_[(idx + cuts_.size() - 1) % cuts_.size()];
  }

  // Piece containing (theta, theta + eps); the mirrored [a,b) convention.
  int address_right(const Angle& theta) const {
    auto it = std::upper_bound(cuts_.begin(), cuts_.end(), theta);
    std::size_t idx = static_cast<std::size_t>(it - cuts_.begin());
    return arc_piece_[(idx + cuts_.size() - 1) % cuts_.size()];
  }

  // The unique preimage of x under m_d lying in the given piece.
  Angle preimage_in_piece(int piece_id, const Angle& x) const {
    int d = degree();
    if (piece_id < 0 || piece_id >= d) throw invalid_input("bad piece id");
    for (int k = 0; k < d; ++k) {
      Angle cand = Angle::of(x.num() + (long long)k * x.den(), x.den() * d);
      if (address_left(cand) == piece_id) return cand;
    }
    throw std::logic_error("piece " + std::to_string(piece_id) + " has no preimage of " + x.str());
  }

 private:
  CriticalPortrait portrait_;
  std::vector<Piece> pieces_;
  std::vector<Angle> cuts_;      // all portrait angles, sorted
  std::vector<int> arc_piece_;   // elementary arc (cuts[k], cuts[k+1]) -> piece id
};

namespace detail {

using Region = std::vector<Arc>;  // disjoint arcs, sorted by start

inline bool region_contains(const Region& r, const Angle& x) {
  for (const Arc& a : r) {
    if (a.contains(x)) return true;
  }
  return false;
}

// Cuts every arc containing one of the points strictly inside.
inline Region cut_region(const Region& r, const std::vector<Angle>& points) {
  Region out;
  for (Arc arc : r) {
    std::vector<Angle> inside;
    for (const Angle& p : points) {
      if (arc.contains(p) && !(p == arc.end)) inside.push_back(p);
    }
    std::sort(inside.begin(), inside.end(), [&](const Angle& a, const Angle& b) {
      return cyclic_gap(arc.start, a) < cyclic_gap(arc.start, b);
    });
    Angle cursor = arc.start;
    for (const Angle& p : inside) {
      out.emplace_back(cursor, p);
      cursor = p;
    }
    out.emplace_back(cursor, arc.end);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline AddressSystem AddressSystem::build(const CriticalPortrait& portrait) {
  AddressSystem sys;
  sys.portrait_ = portrait;

  std::vector<const CriticalSet*> sets;
  for (const auto& s : portrait.fatou_sets()) sets.push_back(&s);
  for (const auto& s : portrait.julia_sets()) sets.push_back(&s);

  // Insert sets one at a time. Each new set lies inside exactly one current
  // region (pairwise unlinkedness) and splits it along its angles.
  std::vector<detail::Region> regions;
  {
    const auto& first = sets.front()->angles;
    for (std::size_t i = 0; i < first.size(); ++i) {
      regions.push_back({Arc(first[i], first[(i + 1) % first.size()])});
    }
  }
  for (std::size_t si = 1; si < sets.size(); ++si) {
    const auto& angles = sets[si]->angles;
    std::size_t host = regions.size();
    for (std::size_t ri = 0; ri < regions.size(); ++ri) {
      if (detail::region_contains(regions[ri], angles.front())) {
        host = ri;
        break;
      }
    }
    if (host == regions.size()) throw std::logic_error("angle outside every region");
    for (const Angle& a : angles) {
      if (!detail::region_contains(regions[host], a)) {
        throw std::logic_error("set " + sets[si]->str() + " straddles regions");
      }
    }
    detail::Region cut = detail::cut_region(regions[host], angles);
    std::vector<detail::Region> split(angles.size());
    for (const Arc& arc : cut) {
      bool placed = false;
      for (std::size_t k = 0; k < angles.size(); ++k) {
        Arc gap(angles[k], angles[(k + 1) % angles.size()]);
        if (gap.contains(arc.end)) {
          split[k].push_back(arc);
          placed = true;
          break;
        }
      }
      if (!placed) throw std::logic_error("arc not inside any gap");
    }
    regions.erase(regions.begin() + static_cast<long>(host));
    for (auto& r : split) {
      std::sort(r.begin(), r.end());
      regions.push_back(std::move(r));
    }
  }

  if (static_cast<int>(regions.size()) != portrait.degree()) {
    throw std::logic_error("region count does not match degree");
  }

  std::sort(regions.begin(), regions.end(),
            [](const detail::Region& a, const detail::Region& b) {
              return a.front().start < b.front().start;
            });

  Rational expected = Rational(1) / Rational(portrait.degree());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    Piece p;
    p.id = static_cast<int>(i);
    p.arcs = regions[i];
    if (!(p.length() == expected)) {
      throw std::logic_error("piece " + p.str() + " has length " + p.length().str());
    }
    sys.pieces_.push_back(std::move(p));
  }

  // Every piece arc runs between consecutive portrait angles (later cuts only
  // ever land inside the host region), so elementary arcs and piece arcs
  // coincide; map each one to its piece via the closed endpoint.
  sys.cuts_ = portrait.all_angles();
  sys.arc_piece_.assign(sys.cuts_.size(), -1);
  for (std::size_t k = 0; k < sys.cuts_.size(); ++k) {
    const Angle& end = sys.cuts_[(k + 1) % sys.cuts_.size()];
    int found = -1;
    for (const Piece& p : sys.pieces_) {
      for (const Arc& a : p.arcs) {
        if (a.contains(end)) {
          found = p.id;
          break;
        }
      }
      if (found >= 0) break;
    }
    if (found < 0) throw std::logic_error("elementary arc without a piece");
    sys.arc_piece_[k] = found;
  }
  return sys;
}

}  // namespace critweb
