#pragma once
// Deterministic serialization: a presheaf model saves to a canonical JSON
// document (sorted keys, integer numbers, cells sorted by label) so that
// structurally equal models produce byte-identical files, plus line-based
// CSV ingestion for edge lists and group records.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "highergraph/category.hpp"
#include "highergraph/presheaf.hpp"

namespace highergraph {

inline constexpr const char* kFormatVersion = "1";

/// Canonical bytes for a validated model.  The cells are re-sorted by label
/// first, so two equal models built in different orders serialize the same.
/// Only the standard indexing of the category tag is representable.
inline std::string save_model(const Presheaf& model) {
  Presheaf canon = canonicalize(model);
  nlohmann::json doc;
  doc["format_version"] = kFormatVersion;
  doc["model"] = tag_name(canon.cat().tag());
  doc["index_cat"] = {{"tag", tag_name(canon.cat().tag())},
                      {"truncation", canon.cat().truncation()}};
  doc["cells"] = nlohmann::json::object();
  for (const auto& [o, labels] : canon.all_cells())
    if (!labels.empty()) doc["cells"][object_key(o)] = labels;
  doc["action"] = nlohmann::json::object();
  for (const auto& [m, table] : canon.all_actions()) doc["action"][morphism_key(m)] = table;
  return doc.dump(2) + "\n";
}

/// Parses a model document without checking functoriality: labels and tables
/// are read as-is.  Throws std::runtime_error with the parse location on
/// malformed JSON or unknown keys.  Most callers want load_model instead.
inline Presheaf load_document(const std::string& bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("load_model: ") + e.what());
  }
  auto fail = [](const std::string& why) -> std::runtime_error {
    return std::runtime_error("load_model: " + why);
  };
  if (!doc.is_object()) throw fail("document is not an object");
  if (doc.value("format_version", "") != kFormatVersion)
    throw fail("unsupported or missing format_version");
  if (!doc.contains("index_cat") || !doc["index_cat"].is_object())
    throw fail("missing index_cat descriptor");
  auto tag = tag_from_name(doc["index_cat"].value("tag", ""));
  if (!tag) throw fail("unknown category tag");
  if (!doc["index_cat"].contains("truncation") ||
      !doc["index_cat"]["truncation"].is_number_integer())
    throw fail("missing integer truncation");
  int truncation = doc["index_cat"]["truncation"].get<int>();
  if (doc.contains("model") && doc["model"].get<std::string>() != tag_name(*tag))
    throw fail("model tag does not match the index category tag");

  IndexingCategory idx = [&] {
    try {
      return standard_indexing(*tag, truncation);
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
  }();

  std::map<ObjectId, std::vector<std::string>> cells;
  if (doc.contains("cells")) {
    if (!doc["cells"].is_object()) throw fail("cells must be an object");
    for (const auto& [key, value] : doc["cells"].items()) {
      auto o = parse_object_key(idx.cat, key);
      if (!o) throw fail("unknown object key '" + key + "'");
      if (!value.is_array()) throw fail("cells at '" + key + "' must be an array");
      std::vector<std::string> labels;
      for (const auto& l : value) {
        if (!l.is_string()) throw fail("cell labels at '" + key + "' must be strings");
        labels.push_back(l.get<std::string>());
      }
      cells[*o] = std::move(labels);
    }
  }
  std::map<MorphismId, std::vector<int>> action;
  if (doc.contains("action")) {
    if (!doc["action"].is_object()) throw fail("action must be an object");
    for (const auto& [key, value] : doc["action"].items()) {
      auto m = parse_morphism_key(idx.cat, key);
      if (!m) throw fail("unknown morphism key '" + key + "'");
      if (!value.is_array()) throw fail("action at '" + key + "' must be an array");
      std::vector<int> table;
      for (const auto& v : value) {
        if (!v.is_number_integer()) throw fail("action at '" + key + "' must hold integers");
        table.push_back(v.get<int>());
      }
      action[*m] = std::move(table);
    }
  }
  return Presheaf(std::move(idx), std::move(cells), std::move(action));
}

/// Parses and validates a model document.  Throws std::runtime_error with the
/// parse location on malformed JSON, and with the embedded validation report
/// when the document does not describe a functor.
inline Presheaf load_model(const std::string& bytes) {
  Presheaf model = load_document(bytes);
  auto report = validate_presheaf(model);
  if (!report.ok()) {
    std::string why = "load_model: document does not describe a valid model:";
    for (const auto& p : report.all_problems()) why += "\n  " + p;
    throw std::runtime_error(why);
  }
  return model;
}

namespace detail {
inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();  // trailing newline
  return lines;
}

inline std::vector<std::string> split_fields(const std::string& line, int lineno) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? comma : comma - start);
    if (field.empty())
      throw std::runtime_error("line " + std::to_string(lineno) + ": empty field");
    fields.push_back(std::move(field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}
}  // namespace detail

/// One `src,dst` pair per line.  Empty lines and empty fields are errors; an
/// empty file is an empty edge list.
inline std::vector<std::pair<std::string, std::string>> load_edges_csv(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  int lineno = 0;
  for (const auto& line : detail::split_lines(text)) {
    ++lineno;
    if (line.empty()) throw std::runtime_error("line " + std::to_string(lineno) + ": empty line");
    auto fields = detail::split_fields(line, lineno);
    if (fields.size() != 2)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected exactly src,dst");
    out.emplace_back(std::move(fields[0]), std::move(fields[1]));
  }
  return out;
}

/// One comma-separated group per line, order preserved, duplicates kept.
inline std::vector<std::vector<std::string>> load_groups_csv(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  int lineno = 0;
  for (const auto& line : detail::split_lines(text)) {
    ++lineno;
    if (line.empty()) throw std::runtime_error("line " + std::to_string(lineno) + ": empty line");
    out.push_back(detail::split_fields(line, lineno));
  }
  return out;
}

/// Entity names in order of first appearance across the edge list.
inline std::vector<std::string> vertices_from_edges(
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<std::string> out;
  std::map<std::string, bool> seen;
  for (const auto& [s, t] : edges) {
    if (!seen[s]) out.push_back(s);
    seen[s] = true;
    if (!seen[t]) out.push_back(t);
    seen[t] = true;
  }
  return out;
}

/// Entity names in order of first appearance across the group records.
inline std::vector<std::string> vertices_from_groups(
    const std::vector<std::vector<std::string>>& groups) {
  std::vector<std::string> out;
  std::map<std::string, bool> seen;
  for (const auto& g : groups)
    for (const auto& name : g) {
      if (!seen[name]) out.push_back(name);
      seen[name] = true;
    }
  return out;
}

}  // namespace highergraph
