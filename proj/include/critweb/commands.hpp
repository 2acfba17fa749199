#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "critweb/document.hpp"
#include "critweb/svg.hpp"
#include "critweb/twist.hpp"
#include "critweb/web.hpp"

namespace critweb {

// Stable exit-code contract: 0 success, 1 validation failure, 2 parse error.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

enum class GammaMode { automatic, none, from_document, supplied };

struct GammaChoice {
  GammaMode mode = GammaMode::from_document;
  std::vector<Angle> supplied;  // used when mode == supplied
};

// Resolves the special arguments for a run: an explicit list wins, otherwise
// the document's, otherwise generation. Supplied sets must be forward-invariant.
inline std::vector<Angle> resolve_gamma(const AddressSystem& sys, const PortraitDocument& doc,
                                        const GammaChoice& choice) {
  switch (choice.mode) {
    case GammaMode::none:
      return {};
    case GammaMode::supplied:
      require_invariant_gamma(sys, choice.supplied);
      return detail::sorted_unique(choice.supplied);
    case GammaMode::from_document:
      if (doc.gamma) {
        auto g = document_gamma(doc);
        require_invariant_gamma(sys, g);
        return g;
      }
      [[fallthrough]];
    case GammaMode::automatic:
    default:
      return generate_special_arguments(sys);
  }
}

namespace detail {

inline std::string angle_set_str(const std::vector<Angle>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + "}";
}

}  // namespace detail

// Wraps a command body with the exit-code contract.
template <typename Body>
CommandResult run_command(Body&& body) {
  CommandResult result;
  std::ostringstream os;
  try {
    std::forward<Body>(body)(os);
    result.exit_code = 0;
  } catch (const parse_error& e) {
    os << "parse error: " << e.what() << "\n";
    result.exit_code = 2;
  } catch (const validation_error& e) {
    os << "FAIL: " << e.what() << "\n";
    result.exit_code = 1;
  } catch (const invalid_input& e) {
    os << "invalid input: " << e.what() << "\n";
    result.exit_code = 1;
  }
  result.output = os.str();
  return result;
}

// validate: per-condition PASS lines; stops at the first violation.
inline CommandResult cmd_validate(const std::string& document_text, const GammaChoice& gamma) {
  return run_command([&](std::ostringstream& os) {
    PortraitDocument doc = parse_portrait_document(document_text);
    CriticalPortrait portrait = portrait_of(doc);  // throws with the condition named
    os << "degree = " << portrait.degree() << "\n";
    os << "distinct angles: PASS\n";
    os << "pairwise unlinked: PASS\n";
    os << "map to point: PASS\n";
    os << "julia right gaps: PASS\n";
    AddressSystem sys = AddressSystem::build(portrait);
    std::vector<Angle> g = resolve_gamma(sys, doc, gamma);
    MarkedPartition fc = build_fatou_classes(sys, g);
    MarkedPartition lc = build_landing_classes(sys, g);
    CompatibilityResult compat = verify_embeddability(fc, lc);
    if (!compat) {
      throw validation_error(validation_error::Code::obstruction, compat.detail);
    }
    os << "class compatibility: PASS\n";
  });
}

// classes: gamma, fatou classes and landing classes in canonical notation.
inline CommandResult cmd_classes(const std::string& document_text, const GammaChoice& gamma) {
  return run_command([&](std::ostringstream& os) {
    PortraitDocument doc = parse_portrait_document(document_text);
    CriticalPortrait portrait = portrait_of(doc);
    AddressSystem sys = AddressSystem::build(portrait);
    std::vector<Angle> g = resolve_gamma(sys, doc, gamma);
    MarkedPartition fc = build_fatou_classes(sys, g);
    MarkedPartition lc = build_landing_classes(sys, g);
    os << "degree = " << portrait.degree() << "\n";
    os << "gamma = " << detail::angle_set_str(g) << "\n";
    os << "fatou classes = " << fc.str() << "\n";
    os << "landing classes = " << lc.str() << "\n";
  });
}

inline std::string format_web(const Web& w, const WebMap& m, const EdgeClassification& cls) {
  std::ostringstream os;
  auto cls_str = [](EdgeClass c) { return c == EdgeClass::periodic ? "periodic" : "preperiodic"; };

  os << "degree " << w.degree << "\n";
  os << "vertices " << w.vertex_count() << "\n";
  os << "v infinity preferred-ray 0\n";
  for (std::size_t i = 0; i < w.landing.parts.size(); ++i) {
    os << "j" << i << " " << w.landing.parts[i].str() << "\n";
  }
  for (std::size_t i = 0; i < w.fatou.parts.size(); ++i) {
    os << "f" << i << " " << w.fatou.parts[i].str();
    if (w.fatou.parts[i].preferred) os << " preferred " << w.fatou.parts[i].preferred->str();
    os << "\n";
  }
  os << "rays " << w.rays.size() << "\n";
  for (const Web::Ray& r : w.rays) {
    os << r.angle.str() << " -> j" << r.landing_part;
    if (r.preferred) os << " preferred";
    os << " " << cls_str(cls.rays.at(r.angle)) << "\n";
  }
  os << "internal-edges " << w.internal_edges.size() << "\n";
  for (const Web::InternalEdge& e : w.internal_edges) {
    os << e.angle.str() << " : j" << e.from_landing_part << " -> f" << e.to_fatou_part;
    if (e.preferred) os << " preferred";
    os << " " << cls_str(cls.internal_edges.at(e.angle)) << "\n";
  }
  os << "ray-order";
  for (const Web::Ray& r : w.rays) os << " " << r.angle.str();
  os << "\n";
  os << "vertex-map infinity->infinity";
  for (std::size_t i = 0; i < m.landing_image.size(); ++i) {
    os << " j" << i << "->j" << m.landing_image[i];
  }
  for (std::size_t i = 0; i < m.fatou_image.size(); ++i) {
    os << " f" << i << "->f" << m.fatou_image[i];
  }
  os << "\n";
  return os.str();
}

// web: deterministic serialization of the web, its self-map and edge classes.
inline CommandResult cmd_web(const std::string& document_text, const GammaChoice& gamma) {
  return run_command([&](std::ostringstream& os) {
    PortraitDocument doc = parse_portrait_document(document_text);
    AddressSystem sys = AddressSystem::build(portrait_of(doc));
    std::vector<Angle> g = resolve_gamma(sys, doc, gamma);
    Web w = build_web(sys, build_fatou_classes(sys, g), build_landing_classes(sys, g));
    WebMap m = build_web_map(w);
    os << format_web(w, m, classify_edges(w));
  });
}

// levy: diagnostic against the canonical partition or a supplied one.
inline CommandResult cmd_levy(const std::string& document_text, const GammaChoice& gamma,
                              const std::string* partition_text) {
  return run_command([&](std::ostringstream& os) {
    PortraitDocument doc = parse_portrait_document(document_text);
    AddressSystem sys = AddressSystem::build(portrait_of(doc));
    std::vector<Angle> g = resolve_gamma(sys, doc, gamma);
    MarkedPartition candidate;
    if (partition_text) {
      candidate = make_partition(parse_partition_file(*partition_text), PartRole::landing);
    } else {
      candidate = build_landing_classes(sys, g);
    }
    LevyReport report = check_levy(sys, candidate, g);
    os << "marked angles = " << marked_set(sys, g).size() << "\n";
    if (report.clean()) {
      os << "levy witnesses: none\n";
    } else {
      for (const auto& [a, b] : report.witnesses) {
        os << "LEVY WITNESS: (" << a.str() << ", " << b.str() << ")\n";
      }
    }
  });
}

// twist: solves the cyclic system for comma-separated degree/difference lists.
inline CommandResult cmd_twist(const std::string& degrees_csv, const std::string& differences_csv) {
  return run_command([&](std::ostringstream& os) {
    auto split = [](const std::string& csv) {
      std::vector<std::string> out;
      std::string cur;
      for (char ch : csv) {
        if (ch == ',') {
          out.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      out.push_back(cur);
      return out;
    };
    std::vector<long long> degrees;
    std::vector<Rational> differences;
    for (const std::string& tok : split(degrees_csv)) {
      Rational r = parse_rational(tok);
      if (!r.is_integer()) throw invalid_input("degree must be an integer: " + tok);
      degrees.push_back(r.num());
    }
    for (const std::string& tok : split(differences_csv)) {
      differences.push_back(parse_rational(tok));
    }
    TwistSystem sys = solve_cycle_twists(degrees, differences);
    for (std::size_t i = 0; i < sys.solution.size(); ++i) {
      os << "x_" << i << " = " << sys.solution[i].str() << "\n";
    }
  });
}

// pullback: the arcs whose first n left addresses match theta's.
inline CommandResult cmd_pullback(const std::string& document_text, const std::string& theta_str,
                                  int n, const GammaChoice& = {}) {
  return run_command([&](std::ostringstream& os) {
    PortraitDocument doc = parse_portrait_document(document_text);
    AddressSystem sys = AddressSystem::build(portrait_of(doc));
    Angle theta;
    try {
      theta = parse_angle(theta_str);
    } catch (const invalid_input& e) {
      throw parse_error(std::string("theta: ") + e.what());
    }
    PullbackResult res = pullback_arcs(sys, theta, n);
    os << "theta = " << theta.str() << "\n";
    os << "n = " << n << "\n";
    os << "arcs = " << res.arcs.size() << "\n";
    for (const Arc& a : res.arcs) os << "arc " << a.str() << "\n";
    os << "total length = " << res.total_length.str() << "\n";
    os << "max arc length = " << res.length_bound.str() << "\n";
  });
}

// svg: deterministic figure; the output field holds the SVG text.
inline CommandResult cmd_svg(const std::string& document_text, const GammaChoice& gamma,
                             const std::optional<bool>& labels_override = {}) {
  return run_command([&](std::ostringstream& os) {
    PortraitDocument doc = parse_portrait_document(document_text);
    AddressSystem sys = AddressSystem::build(portrait_of(doc));
    std::vector<Angle> g = resolve_gamma(sys, doc, gamma);
    Web w = build_web(sys, build_fatou_classes(sys, g), build_landing_classes(sys, g));
    RenderOptions opt = doc.render.value_or(RenderOptions{});
    if (labels_override) opt.labels = *labels_override;
    os << render_svg(sys, w, g, opt);
  });
}

}  // namespace critweb
