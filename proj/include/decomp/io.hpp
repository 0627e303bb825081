#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "decomp/errors.hpp"
#include "decomp/model.hpp"
#include "decomp/scoring.hpp"

namespace decomp {

using nlohmann::json;

namespace detail {

inline void warn(std::vector<std::string>* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(ErrorKind::parse_error, e.what());
  }
}

inline const json& require_field(const json& obj, const char* field,
                                 const char* where) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw DomainError(ErrorKind::parse_error,
                      std::string(where) + " is missing field '" + field + "'");
  return *it;
}

inline std::string require_string(const json& obj, const char* field,
                                  const char* where) {
  const json& v = require_field(obj, field, where);
  if (!v.is_string())
    throw DomainError(ErrorKind::parse_error, std::string(where) + " field '" +
                                                  field + "' must be a string");
  return v.get<std::string>();
}

inline void warn_unknown_fields(const json& obj,
                                std::initializer_list<std::string_view> known,
                                const char* where,
                                std::vector<std::string>* warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      warn(warnings, std::string("ignoring unknown ") + where + " field '" +
                         it.key() + "'");
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Call-graph documents:
//   {"name": ..., "classes": [{"id": ...}, ...],
//    "edges": [{"src":..., "dst":..., "kind":"static"|"runtime", "count":N}]}
// ---------------------------------------------------------------------------

inline MonolithGraph load_graph_json(const std::string& text,
                                     std::vector<std::string>* warnings =
                                         nullptr) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object())
    throw DomainError(ErrorKind::parse_error,
                      "graph document must be a JSON object");
  detail::warn_unknown_fields(doc, {"name", "classes", "edges"}, "graph",
                              warnings);
  std::string name = detail::require_string(doc, "name", "graph document");
  const json& jclasses =
      detail::require_field(doc, "classes", "graph document");
  if (!jclasses.is_array())
    throw DomainError(ErrorKind::parse_error, "'classes' must be an array");

  std::vector<ClassNode> classes;
  classes.reserve(jclasses.size());
  for (const json& jc : jclasses) {
    if (!jc.is_object())
      throw DomainError(ErrorKind::parse_error,
                        "class entries must be objects");
    detail::warn_unknown_fields(jc, {"id", "attributes"}, "class", warnings);
    ClassNode node;
    node.id = detail::require_string(jc, "id", "class entry");
    if (auto it = jc.find("attributes"); it != jc.end()) {
      if (!it->is_object())
        throw DomainError(ErrorKind::parse_error,
                          "'attributes' must be an object");
      for (auto a = it->begin(); a != it->end(); ++a) {
        if (!a.value().is_string())
          throw DomainError(ErrorKind::parse_error,
                            "attribute '" + a.key() + "' of class '" +
                                node.id + "' must be a string");
        node.attributes[a.key()] = a.value().get<std::string>();
      }
    }
    classes.push_back(std::move(node));
  }

  std::vector<CallEdge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array())
      throw DomainError(ErrorKind::parse_error, "'edges' must be an array");
    edges.reserve(it->size());
    for (const json& je : *it) {
      if (!je.is_object())
        throw DomainError(ErrorKind::parse_error,
                          "edge entries must be objects");
      detail::warn_unknown_fields(je, {"src", "dst", "kind", "count"}, "edge",
                                  warnings);
      CallEdge edge;
      edge.src = detail::require_string(je, "src", "edge entry");
      edge.dst = detail::require_string(je, "dst", "edge entry");
      if (auto k = je.find("kind"); k != je.end()) {
        if (!k->is_string())
          throw DomainError(ErrorKind::parse_error,
                            "edge 'kind' must be a string");
        const std::string kind = k->get<std::string>();
        if (kind == "static")
          edge.kind = CallKind::static_call;
        else if (kind == "runtime")
          edge.kind = CallKind::runtime_call;
        else
          throw DomainError(ErrorKind::parse_error,
                            "edge 'kind' must be \"static\" or \"runtime\", "
                            "got \"" + kind + "\"");
      }
      if (auto c = je.find("count"); c != je.end()) {
        if (!c->is_number_integer())
          throw DomainError(ErrorKind::parse_error,
                            "edge 'count' must be an integer");
        edge.count = c->get<std::int64_t>();
      }
      edges.push_back(std::move(edge));
    }
  }
  return MonolithGraph(std::move(name), std::move(classes), std::move(edges));
}

// Canonical form: classes sorted by id, edges sorted by (src, dst, kind),
// object keys alphabetical, two-space indent, trailing newline. Equal graphs
// serialize to identical bytes.
inline std::string save_graph_json(const MonolithGraph& graph) {
  json doc;
  doc["name"] = graph.name();
  std::vector<ClassNode> classes = graph.classes();
  std::sort(classes.begin(), classes.end(),
            [](const ClassNode& a, const ClassNode& b) { return a.id < b.id; });
  doc["classes"] = json::array();
  for (const ClassNode& c : classes) {
    json jc;
    jc["id"] = c.id;
    if (!c.attributes.empty()) jc["attributes"] = c.attributes;
    doc["classes"].push_back(std::move(jc));
  }
  std::vector<CallEdge> edges = graph.edges();
  std::sort(edges.begin(), edges.end(),
            [](const CallEdge& a, const CallEdge& b) {
              return std::tie(a.src, a.dst, a.kind) <
                     std::tie(b.src, b.dst, b.kind);
            });
  doc["edges"] = json::array();
  for (const CallEdge& e : edges) {
    json je;
    je["src"] = e.src;
    je["dst"] = e.dst;
    je["kind"] = to_string(e.kind);
    je["count"] = e.count;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Decomposition documents:
//   {"tool": ..., "system": ..., "services": [{"name":..., "classes":[...]}]}
// Loading validates the services against the graph.
// ---------------------------------------------------------------------------

inline Decomposition load_decomposition_json(
    const std::string& text, const MonolithGraph& graph,
    std::vector<std::string>* warnings = nullptr) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object())
    throw DomainError(ErrorKind::parse_error,
                      "decomposition document must be a JSON object");
  detail::warn_unknown_fields(doc, {"tool", "system", "services"},
                              "decomposition", warnings);
  Decomposition d;
  d.tool = doc.value("tool", std::string{});
  d.system = doc.value("system", graph.name());
  const json& jservices =
      detail::require_field(doc, "services", "decomposition document");
  if (!jservices.is_array())
    throw DomainError(ErrorKind::parse_error, "'services' must be an array");
  std::size_t index = 0;
  for (const json& js : jservices) {
    ++index;
    if (!js.is_object())
      throw DomainError(ErrorKind::parse_error,
                        "service entries must be objects");
    detail::warn_unknown_fields(js, {"name", "classes"}, "service", warnings);
    Service svc;
    svc.name = js.value("name", "s" + std::to_string(index));
    const json& jclasses = detail::require_field(js, "classes", "service entry");
    if (!jclasses.is_array())
      throw DomainError(ErrorKind::parse_error,
                        "service 'classes' must be an array");
    for (const json& jc : jclasses) {
      if (!jc.is_string())
        throw DomainError(ErrorKind::parse_error,
                          "service class lists must contain strings");
      svc.classes.push_back(jc.get<std::string>());
    }
    d.services.push_back(std::move(svc));
  }
  validate_decomposition(graph, d);
  return d;
}

// Canonical form: service order preserved, classes sorted within a service,
// keys alphabetical.
inline std::string save_decomposition_json(const Decomposition& d) {
  json doc;
  doc["tool"] = d.tool;
  doc["system"] = d.system;
  doc["services"] = json::array();
  for (const Service& svc : d.services) {
    json js;
    js["name"] = svc.name;
    std::vector<std::string> classes = svc.classes;
    std::sort(classes.begin(), classes.end());
    js["classes"] = classes;
    doc["services"].push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Metric tables: CSV with header tool,sm,ifn,icp,ned and optional micro.
// '#' lines and blank lines are skipped; extra columns are ignored with a
// warning; rows with a missing metric value are set aside as incomplete.
// ---------------------------------------------------------------------------

struct MetricTable {
  std::vector<MetricRow> rows;
  std::vector<std::string> incomplete;  // tool names lacking metric values
};

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

inline double parse_double_cell(std::string_view cell, std::size_t line_no,
                                std::string_view column) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw DomainError(ErrorKind::non_numeric_cell,
                      "line " + std::to_string(line_no) + ", column '" +
                          std::string(column) + "': '" + std::string(cell) +
                          "' is not a number");
  return value;
}

inline std::int64_t parse_int_cell(std::string_view cell, std::size_t line_no,
                                   std::string_view column) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw DomainError(ErrorKind::non_numeric_cell,
                      "line " + std::to_string(line_no) + ", column '" +
                          std::string(column) + "': '" + std::string(cell) +
                          "' is not an integer");
  return value;
}

}  // namespace detail

inline MetricTable load_metric_csv(const std::string& text,
                                   std::vector<std::string>* warnings =
                                       nullptr) {
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::string_view> header;
  std::size_t col_tool = kAbsent, col_sm = kAbsent, col_ifn = kAbsent,
              col_icp = kAbsent, col_ned = kAbsent, col_micro = kAbsent;
  MetricTable table;
  bool saw_data = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos, (eol == std::string::npos
                                                  ? text.size()
                                                  : eol) - pos);
    pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    const std::string_view stripped = detail::trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    if (header.empty()) {
      header = detail::split_csv_line(stripped);
      for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string_view name = header[i];
        std::size_t* slot = nullptr;
        if (name == "tool") slot = &col_tool;
        else if (name == "sm") slot = &col_sm;
        else if (name == "ifn") slot = &col_ifn;
        else if (name == "icp") slot = &col_icp;
        else if (name == "ned") slot = &col_ned;
        else if (name == "micro") slot = &col_micro;
        if (!slot) {
          detail::warn(warnings, "ignoring unknown column '" +
                                     std::string(name) + "'");
          continue;
        }
        if (*slot != kAbsent)
          throw DomainError(ErrorKind::parse_error,
                            "duplicate column '" + std::string(name) + "'");
        *slot = i;
      }
      const std::pair<const char*, std::size_t> required[] = {
          {"tool", col_tool},
          {"sm", col_sm},
          {"ifn", col_ifn},
          {"icp", col_icp},
          {"ned", col_ned}};
      for (const auto& [name, col] : required) {
        if (col == kAbsent)
          throw DomainError(ErrorKind::parse_error,
                            std::string("header is missing column '") + name +
                                "'");
      }
      continue;
    }

    const auto cells = detail::split_csv_line(stripped);
    if (cells.size() != header.size())
      throw DomainError(ErrorKind::parse_error,
                        "line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) +
                            " cells, expected " +
                            std::to_string(header.size()));
    saw_data = true;
    const std::string_view tool = cells[col_tool];
    if (tool.empty())
      throw DomainError(ErrorKind::parse_error,
                        "line " + std::to_string(line_no) +
                            ": empty tool name");
    const std::string_view vsm = cells[col_sm], vifn = cells[col_ifn],
                           vicp = cells[col_icp], vned = cells[col_ned];
    if (vsm.empty() || vifn.empty() || vicp.empty() || vned.empty()) {
      table.incomplete.emplace_back(tool);
      continue;
    }
    MetricRow row;
    row.tool = std::string(tool);
    row.sm = detail::parse_double_cell(vsm, line_no, "sm");
    row.ifn = detail::parse_double_cell(vifn, line_no, "ifn");
    row.icp = detail::parse_double_cell(vicp, line_no, "icp");
    row.ned = detail::parse_double_cell(vned, line_no, "ned");
    if (col_micro != kAbsent && !cells[col_micro].empty())
      row.micro = detail::parse_int_cell(cells[col_micro], line_no, "micro");
    table.rows.push_back(std::move(row));
  }

  if (header.empty())
    throw DomainError(ErrorKind::empty_table, "metric table has no header");
  if (!saw_data)
    throw DomainError(ErrorKind::empty_table, "metric table has no data rows");
  return table;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DomainError(ErrorKind::io_error,
                      "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
    throw DomainError(ErrorKind::io_error,
                      "failed while reading '" + path.string() + "'");
  return std::move(buffer).str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw DomainError(ErrorKind::io_error,
                      "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out)
    throw DomainError(ErrorKind::io_error,
                      "failed while writing '" + path.string() + "'");
}

// JSON files in `dir`, sorted by filename.
inline std::vector<std::filesystem::path> list_json_files(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw DomainError(ErrorKind::io_error,
                      "'" + dir.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  if (ec)
    throw DomainError(ErrorKind::io_error,
                      "cannot list '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace decomp
