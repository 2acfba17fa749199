#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "critweb/classes.hpp"

namespace critweb {

// Input that the tool could not read: malformed JSON, bad field types,
// malformed angle literals. what() carries the location (field or byte).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RenderOptions {
  int size = 320;  // disk radius in pixels
  bool labels = true;
};

// A portrait document as shipped on disk. Angle lists stay as strings so the
// document round-trips byte-identically through parse -> serialize.
struct PortraitDocument {
  std::optional<int> degree;
  std::vector<std::vector<std::string>> fatou;
  std::vector<std::vector<std::string>> julia;
  std::optional<std::vector<std::string>> gamma;
  std::optional<RenderOptions> render;
};

namespace detail {

inline std::vector<std::vector<std::string>> string_lists(const nlohmann::ordered_json& node,
                                                          const char* field) {
  if (!node.is_array()) throw parse_error(std::string("field '") + field + "' must be a list");
  std::vector<std::vector<std::string>> out;
  for (const auto& inner : node) {
    if (!inner.is_array()) {
      throw parse_error(std::string("field '") + field + "' must hold lists of angle strings");
    }
    std::vector<std::string> group;
    for (const auto& s : inner) {
      if (!s.is_string()) {
        throw parse_error(std::string("field '") + field + "' must hold angle strings");
      }
      group.push_back(s.get<std::string>());
    }
    out.push_back(std::move(group));
  }
  return out;
}

}  // namespace detail

inline PortraitDocument parse_portrait_document(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("document root must be an object");

  PortraitDocument doc;
  for (const auto& [key, value] : j.items()) {
    if (key == "degree") {
      if (!value.is_number_integer()) throw parse_error("field 'degree' must be an integer");
      doc.degree = value.get<int>();
    } else if (key == "fatou") {
      doc.fatou = detail::string_lists(value, "fatou");
    } else if (key == "julia") {
      doc.julia = detail::string_lists(value, "julia");
    } else if (key == "gamma") {
      if (!value.is_array()) throw parse_error("field 'gamma' must be a list of angle strings");
      std::vector<std::string> g;
      for (const auto& s : value) {
        if (!s.is_string()) throw parse_error("field 'gamma' must be a list of angle strings");
        g.push_back(s.get<std::string>());
      }
      doc.gamma = std::move(g);
    } else if (key == "render") {
      if (!value.is_object()) throw parse_error("field 'render' must be an object");
      RenderOptions opt;
      if (value.contains("size")) {
        if (!value["size"].is_number_integer() || value["size"].get<int>() <= 0) {
          throw parse_error("field 'render.size' must be a positive integer");
        }
        opt.size = value["size"].get<int>();
      }
      if (value.contains("labels")) {
        if (!value["labels"].is_boolean()) throw parse_error("field 'render.labels' must be a boolean");
        opt.labels = value["labels"].get<bool>();
      }
      doc.render = opt;
    } else {
      throw parse_error("unknown field '" + key + "'");
    }
  }
  if (!j.contains("fatou")) throw parse_error("missing field 'fatou'");
  if (!j.contains("julia")) throw parse_error("missing field 'julia'");
  return doc;
}

inline std::string serialize_portrait_document(const PortraitDocument& doc) {
  nlohmann::ordered_json j;
  if (doc.degree) j["degree"] = *doc.degree;
  j["fatou"] = doc.fatou;
  j["julia"] = doc.julia;
  if (doc.gamma) j["gamma"] = *doc.gamma;
  if (doc.render) {
    j["render"] = {{"size", doc.render->size}, {"labels", doc.render->labels}};
  }
  return j.dump(2) + "\n";
}

namespace detail {

inline std::vector<std::vector<Angle>> angle_lists(
    const std::vector<std::vector<std::string>>& lists, const char* field) {
  std::vector<std::vector<Angle>> out;
  for (const auto& group : lists) {
    std::vector<Angle> angles;
    for (const auto& s : group) {
      try {
        angles.push_back(parse_angle(s));
      } catch (const invalid_input& e) {
        throw parse_error(std::string("field '") + field + "': " + e.what());
      }
    }
    out.push_back(std::move(angles));
  }
  return out;
}

}  // namespace detail

// Validates the document's portrait; degree, if present, must agree.
inline CriticalPortrait portrait_of(const PortraitDocument& doc) {
  CriticalPortrait p = CriticalPortrait::make(detail::angle_lists(doc.fatou, "fatou"),
                                              detail::angle_lists(doc.julia, "julia"));
  if (doc.degree && *doc.degree != p.degree()) {
    throw validation_error(validation_error::Code::degree,
                           "declared degree " + std::to_string(*doc.degree) +
                               " does not match computed degree " + std::to_string(p.degree()));
  }
  return p;
}

inline std::vector<Angle> document_gamma(const PortraitDocument& doc) {
  std::vector<Angle> out;
  if (doc.gamma) {
    for (const auto& s : *doc.gamma) {
      try {
        out.push_back(parse_angle(s));
      } catch (const invalid_input& e) {
        throw parse_error(std::string("field 'gamma': ") + e.what());
      }
    }
  }
  return detail::sorted_unique(std::move(out));
}

// Partition file for the levy command: a JSON list of lists of angle strings.
inline std::vector<std::vector<Angle>> parse_partition_file(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("partition file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw parse_error("partition file must be a list of lists");
  std::vector<std::vector<Angle>> out;
  for (const auto& inner : j) {
    if (!inner.is_array()) throw parse_error("partition file must be a list of lists");
    std::vector<Angle> part;
    for (const auto& s : inner) {
      if (!s.is_string()) throw parse_error("partition parts must hold angle strings");
      try {
        part.push_back(parse_angle(s.get<std::string>()));
      } catch (const invalid_input& e) {
        throw parse_error(std::string("partition file: ") + e.what());
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

// JSON list of angle strings (for --gamma PATH).
inline std::vector<Angle> parse_gamma_file(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("gamma file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw parse_error("gamma file must be a list of angle strings");
  std::vector<Angle> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw parse_error("gamma file must be a list of angle strings");
    try {
      out.push_back(parse_angle(s.get<std::string>()));
    } catch (const invalid_input& e) {
      throw parse_error(std::string("gamma file: ") + e.what());
    }
  }
  return detail::sorted_unique(std::move(out));
}

}  // namespace critweb
