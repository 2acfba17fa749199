#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "critweb/document.hpp"
#include "critweb/web.hpp"

namespace critweb {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid the "-0.00" artifact so output is stable across code paths.
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

struct Canvas {
  double cx, cy, r;

  double px(const Angle& a) const { return cx + r * std::cos(2 * M_PI * a.value().to_double()); }
  double py(const Angle& a) const { return cy - r * std::sin(2 * M_PI * a.value().to_double()); }
};

}  // namespace detail

// Static chord diagram of a portrait and its web: the circle, one chord
// polygon per critical set, ray ticks at every marked angle, landing hubs for
// classes of two or more rays, and ticks for the special arguments. Straight
// chords are enough to show the linkage structure. Output is deterministic.
inline std::string render_svg(const AddressSystem& sys, const Web& web,
                              const std::vector<Angle>& gamma, const RenderOptions& opt) {
  const double r = opt.size;
  const double margin = 0.22 * r;
  const double side = 2 * (r + margin);
  detail::Canvas c{r + margin, r + margin, r};

  std::string out;
  auto line = [&out](const std::string& s) {
    out += s;
    out += "\n";
  };

  line("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       detail::fmt(side) + "\" height=\"" + detail::fmt(side) + "\" viewBox=\"0 0 " +
       detail::fmt(side) + " " + detail::fmt(side) + "\">");
  line("<circle class=\"disk\" cx=\"" + detail::fmt(c.cx) + "\" cy=\"" + detail::fmt(c.cy) +
       "\" r=\"" + detail::fmt(r) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>");

  auto chord_polygon = [&](const CriticalSet& set, const char* cls, const char* color) {
    std::string d;
    for (std::size_t i = 0; i < set.angles.size(); ++i) {
      d += (i == 0 ? "M " : "L ");
      d += detail::fmt(c.px(set.angles[i])) + " " + detail::fmt(c.py(set.angles[i])) + " ";
    }
    d += "Z";
    line("<path class=\"chord " + std::string(cls) + "\" d=\"" + d + "\" fill=\"none\" stroke=\"" +
         color + "\" stroke-width=\"1.5\"/>");
  };
  for (const CriticalSet& s : sys.portrait().fatou_sets()) chord_polygon(s, "fatou", "#1f77b4");
  for (const CriticalSet& s : sys.portrait().julia_sets()) chord_polygon(s, "julia", "#d62728");

  // Landing hubs: rays of one class meet at a point pulled toward the center.
  for (const Part& part : web.landing.parts) {
    if (part.angles.size() < 2) continue;
    double hx = 0, hy = 0;
    for (const Angle& a : part.angles) {
      hx += c.px(a);
      hy += c.py(a);
    }
    hx /= static_cast<double>(part.angles.size());
    hy /= static_cast<double>(part.angles.size());
    for (const Angle& a : part.angles) {
      line("<line class=\"hub-leg\" x1=\"" + detail::fmt(c.px(a)) + "\" y1=\"" +
           detail::fmt(c.py(a)) + "\" x2=\"" + detail::fmt(hx) + "\" y2=\"" + detail::fmt(hy) +
           "\" stroke=\"#9467bd\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>");
    }
    line("<circle class=\"hub\" cx=\"" + detail::fmt(hx) + "\" cy=\"" + detail::fmt(hy) +
         "\" r=\"2.5\" fill=\"#9467bd\"/>");
  }

  // Ray ticks just outside the circle, one per marked angle.
  std::vector<Angle> gamma_sorted = detail::sorted_unique(gamma);
  for (const Web::Ray& ray : web.rays) {
    bool special = std::binary_search(gamma_sorted.begin(), gamma_sorted.end(), ray.angle);
    double x = c.px(ray.angle), y = c.py(ray.angle);
    double dx = (x - c.cx) / r, dy = (y - c.cy) / r;
    double tick = 0.06 * r;
    line("<line class=\"ray\" x1=\"" + detail::fmt(x) + "\" y1=\"" + detail::fmt(y) + "\" x2=\"" +
         detail::fmt(x + tick * dx) + "\" y2=\"" + detail::fmt(y + tick * dy) + "\" stroke=\"" +
         (special ? "#2ca02c" : "#333333") + "\" stroke-width=\"" + (ray.preferred ? "2.5" : "1.5") +
         "\"/>");
    if (opt.labels) {
      line("<text class=\"label\" x=\"" + detail::fmt(x + (tick + 14) * dx) + "\" y=\"" +
           detail::fmt(y + (tick + 14) * dy) +
           "\" font-size=\"11\" font-family=\"monospace\" text-anchor=\"middle\" "
           "dominant-baseline=\"middle\">" +
           ray.angle.str() + "</text>");
    }
  }
  line("</svg>");
  return out;
}

}  // namespace critweb
