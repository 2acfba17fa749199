#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "critweb/classes.hpp"

namespace critweb {

// Abstract web graph: a vertex at infinity, one ray per marked angle landing
// on its landing-class vertex, and hub vertices for the fatou classes joined
// to the landing points of their angles. Only the circular order of rays is
// kept; embedding is the renderer's business.
struct Web {
  struct Ray {
    Angle angle;
    int landing_part;  // index into landing.parts
    bool preferred;    // the ray at angle 0
  };
  struct InternalEdge {
    Angle angle;
    int from_landing_part;
    int to_fatou_part;
    bool preferred;  // carries the part's preferred argument
  };

  int degree = 0;
  MarkedPartition fatou;
  MarkedPartition landing;
  std::vector<Ray> rays;                    // sorted by angle = circular order at infinity
  std::vector<InternalEdge> internal_edges; // sorted by angle

  std::size_t vertex_count() const { return 1 + landing.parts.size() + fatou.parts.size(); }

  const Ray* ray_at(const Angle& a) const {
    for (const Ray& r : rays) {
      if (r.angle == a) return &r;
    }
    return nullptr;
  }
};

inline Web build_web(const AddressSystem& sys, const MarkedPartition& fatou_classes,
                     const MarkedPartition& landing_parts) {
  CompatibilityResult compat = verify_embeddability(fatou_classes, landing_parts);
  if (!compat) {
    throw validation_error(validation_error::Code::obstruction,
                           "web would not embed with rays in circular order: " + compat.detail);
  }
  Web w;
  w.degree = sys.degree();
  w.fatou = fatou_classes;
  w.landing = landing_parts;

  for (const Angle& theta : landing_parts.ground()) {
    w.rays.push_back({theta, landing_parts.part_index_of(theta), theta.is_zero()});
  }
  if (w.rays.empty() || !w.rays.front().angle.is_zero()) {
    throw std::logic_error("marked set must contain the angle 0");
  }
  for (std::size_t fi = 0; fi < fatou_classes.parts.size(); ++fi) {
    const Part& part = fatou_classes.parts[fi];
    for (const Angle& g : part.angles) {
      int lp = landing_parts.part_index_of(g);
      if (lp < 0) throw std::logic_error("fatou angle " + g.str() + " missing from marked set");
      bool pref = part.preferred && *part.preferred == g;
      w.internal_edges.push_back({g, lp, static_cast<int>(fi), pref});
    }
  }
  std::sort(w.internal_edges.begin(), w.internal_edges.end(),
            [](const Web::InternalEdge& a, const Web::InternalEdge& b) {
              return a.angle < b.angle;
            });
  return w;
}

// Self-map of the web induced by m_d on angle labels.
struct WebMap {
  int degree = 0;
  std::vector<int> landing_image;  // landing part -> landing part
  std::vector<int> fatou_image;    // fatou part -> fatou part
};

inline WebMap build_web_map(const Web& w) {
  WebMap m;
  m.degree = w.degree;

  auto image_of_part = [&](const MarkedPartition& mp, const Part& part, const char* kind) {
    int target = -1;
    for (const Angle& a : part.angles) {
      int img = mp.part_index_of(md(a, w.degree));
      if (img < 0) {
        throw std::logic_error(std::string(kind) + " part " + part.str() +
                               " maps outside the marked set at " + a.str());
      }
      if (target < 0) target = img;
      if (img != target) {
        throw std::logic_error(std::string(kind) + " part " + part.str() +
                               " does not map into a single part");
      }
    }
    return target;
  };

  for (const Part& part : w.landing.parts) {
    m.landing_image.push_back(image_of_part(w.landing, part, "landing"));
  }
  for (const Part& part : w.fatou.parts) {
    m.fatou_image.push_back(image_of_part(w.fatou, part, "fatou"));
  }

  // Endpoint consistency: edge images agree with vertex images.
  for (const Web::Ray& r : w.rays) {
    const Web::Ray* img = w.ray_at(md(r.angle, w.degree));
    if (!img || m.landing_image[r.landing_part] != img->landing_part) {
      throw std::logic_error("ray map inconsistent at " + r.angle.str());
    }
  }
  for (const Web::InternalEdge& e : w.internal_edges) {
    Angle ia = md(e.angle, w.degree);
    bool found = false;
    for (const Web::InternalEdge& img : w.internal_edges) {
      if (img.angle == ia) {
        found = true;
        if (m.landing_image[e.from_landing_part] != img.from_landing_part ||
            m.fatou_image[e.to_fatou_part] != img.to_fatou_part) {
          throw std::logic_error("internal edge map inconsistent at " + e.angle.str());
        }
      }
    }
    if (!found) throw std::logic_error("internal edge image missing at " + e.angle.str());
  }

  // Preferred edges along critical cycles map to preferred edges. (For
  // strictly preperiodic parts no choice of preferred argument can make this
  // hold in general, so only periodic parts are checked.)
  for (const Web::InternalEdge& e : w.internal_edges) {
    if (!e.preferred || !is_periodic(e.angle, w.degree)) continue;
    Angle ia = md(e.angle, w.degree);
    for (const Web::InternalEdge& img : w.internal_edges) {
      if (img.angle == ia && !img.preferred) {
        throw std::logic_error("preferred edge at " + e.angle.str() +
                               " maps to a non-preferred edge");
      }
    }
  }
  return m;
}

enum class EdgeClass { periodic, preperiodic };

struct EdgeClassification {
  std::map<Angle, EdgeClass> rays;
  std::map<Angle, EdgeClass> internal_edges;
};

// An edge is periodic iff some iterate of the edge map returns it to itself;
// edges are labeled by angles and the map multiplies labels by d, so this is
// periodicity of the label.
inline EdgeClassification classify_edges(const Web& w) {
  EdgeClassification out;
  for (const Web::Ray& r : w.rays) {
    out.rays[r.angle] =
        is_periodic(r.angle, w.degree) ? EdgeClass::periodic : EdgeClass::preperiodic;
  }
  for (const Web::InternalEdge& e : w.internal_edges) {
    out.internal_edges[e.angle] =
        is_periodic(e.angle, w.degree) ? EdgeClass::periodic : EdgeClass::preperiodic;
  }
  return out;
}

// Combinatorial web lifting: ground set becomes the full m_d-preimage of the
// input ground set, parts become landing classes of that preimage set. Each
// output part maps into a single input part.
inline MarkedPartition lift_classes(const AddressSystem& sys, const MarkedPartition& parts) {
  if (parts.parts.empty()) return {};
  int d = sys.degree();
  std::vector<Angle> preimages;
  for (const Angle& x : parts.ground()) {
    for (int k = 0; k < d; ++k) {
      preimages.push_back(Angle::of(x.num() + (long long)k * x.den(), x.den() * d));
    }
  }
  MarkedPartition lifted =
      make_partition(landing_classes(sys, preimages), PartRole::landing);
  for (const Part& part : lifted.parts) {
    int target = -1;
    for (const Angle& a : part.angles) {
      int img = parts.part_index_of(md(a, d));
      if (img < 0 || (target >= 0 && img != target)) {
        throw std::logic_error("lifted part " + part.str() +
                               " does not map into a single part");
      }
      target = img;
    }
  }
  return lifted;
}

// X_n: the set of angles whose first n left addresses match those of theta,
// as exact arcs. Total measure is exactly d^-n; every arc is at most that
// long. n = 0 is the unconstrained circle, returned as two half-circle arcs.
struct PullbackResult {
  std::vector<Arc> arcs;
  Rational total_length;
  Rational length_bound;  // d^-n, exact
};

inline PullbackResult pullback_arcs(const AddressSystem& sys, const Angle& theta, int n) {
  if (n < 0) throw invalid_input("pullback iteration count must be nonnegative");
  int d = sys.degree();

  std::vector<int> symbols;
  {
    Angle a = theta;
    for (int k = 0; k < n; ++k) {
      symbols.push_back(sys.address_left(a));
      a = md(a, d);
    }
  }

  std::vector<Arc> current = {Arc(Angle(), Angle::of(1, 2)), Arc(Angle::of(1, 2), Angle())};
  for (int j = n - 1; j >= 0; --j) {
    const Piece& piece = sys.piece(symbols[static_cast<std::size_t>(j)]);
    std::vector<Arc> next;
    for (const Arc& arc : current) {
      // The d preimage copies of arc, clipped to the piece. Unroll wrapping
      // arcs first so both endpoints scale consistently.
      Rational s = arc.start.value();
      Rational e = arc.end.value();
      if (!(e > s)) e += Rational(1);
      for (int k = 0; k < d; ++k) {
        Rational off(k);
        Arc copy(Angle::wrap((s + off) / Rational(d)), Angle::wrap((e + off) / Rational(d)));
        for (const Arc& pa : piece.arcs) {
          for (const Arc& piece_bit : arc_intersection(copy, pa)) next.push_back(piece_bit);
        }
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }

  // Glue fragments that abut so each connected component is one arc. The full
  // circle (n = 0) stays split in two, not being representable as one arc.
  if (n > 0 && current.size() > 1) {
    std::vector<Arc> merged;
    for (const Arc& arc : current) {
      if (!merged.empty() && merged.back().end == arc.start) {
        merged.back() = Arc(merged.back().start, arc.end);
      } else {
        merged.push_back(arc);
      }
    }
    if (merged.size() > 1 && merged.back().end == merged.front().start) {
      merged.front() = Arc(merged.back().start, merged.front().end);
      merged.pop_back();
    }
    current = std::move(merged);
  }

  PullbackResult out;
  out.arcs = std::move(current);
  out.total_length = total_length(out.arcs);
  Rational bound(1);
  for (int i = 0; i < n; ++i) bound /= Rational(d);
  out.length_bound = bound;
  if (!(out.total_length == bound)) {
    throw std::logic_error("pullback measure " + out.total_length.str() + " != " + bound.str());
  }
  return out;
}

// Levy-cycle diagnostic. A cycle of essential curves would force two periodic
// marked angles with equal left itineraries to sit at distinct vertices, so
// the report lists every periodic pair with equal itineraries that the
// candidate partition separates. Empty report means no Levy cycle.
struct LevyReport {
  std::vector<std::pair<Angle, Angle>> witnesses;
  bool clean() const { return witnesses.empty(); }
};

inline LevyReport check_levy(const AddressSystem& sys, const MarkedPartition& candidate,
                             const std::vector<Angle>& gamma) {
  std::vector<Angle> marked = marked_set(sys, gamma);
  if (candidate.ground() != marked) {
    throw invalid_input("candidate does not partition the marked set");
  }
  std::vector<Angle> periodic;
  for (const Angle& a : marked) {
    if (is_periodic(a, sys.degree())) periodic.push_back(a);
  }
  LevyReport report;
  for (std::size_t i = 0; i < periodic.size(); ++i) {
    for (std::size_t k = i + 1; k < periodic.size(); ++k) {
      if (candidate.part_index_of(periodic[i]) == candidate.part_index_of(periodic[k])) continue;
      if (left_itinerary(sys, periodic[i]) == left_itinerary(sys, periodic[k])) {
        report.witnesses.emplace_back(periodic[i], periodic[k]);
      }
    }
  }
  return report;
}

}  // namespace critweb
