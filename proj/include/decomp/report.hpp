#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "decomp/errors.hpp"
#include "decomp/metrics.hpp"
#include "decomp/scoring.hpp"

namespace decomp {

using nlohmann::json;

enum class RenderFormat { markdown, csv, structured };

inline RenderFormat parse_render_format(const std::string& name) {
  if (name == "markdown") return RenderFormat::markdown;
  if (name == "csv") return RenderFormat::csv;
  if (name == "structured") return RenderFormat::structured;
  throw DomainError(ErrorKind::bad_spec,
                    "unknown output format '" + name +
                        "' (expected markdown, csv or structured)");
}

// Two decimals, halves away from zero (0.125 -> "0.13"), no negative zero.
// Plain printf %.2f rounds halves to even, which is not what tables of small
// hand-checked values should do.
inline std::string format_fixed2(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  double r = std::round(v * 100.0) / 100.0;
  if (r == 0.0) r = 0.0;  // collapse -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", r);
  return buf;
}

// Shortest representation that parses back to the same double.
inline std::string format_full(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace detail {

inline std::string service_label(const MetricReport& report, std::size_t s) {
  return s < report.services.size() ? report.services[s]
                                    : "s" + std::to_string(s + 1);
}

inline json report_json(const MetricReport& r) {
  json doc;
  doc["system"] = r.system;
  doc["tool"] = r.tool;
  doc["micro"] = r.micro;
  doc["policy"] = {{"sm_source", to_string(r.policy.sm_source)},
                   {"icp_source", to_string(r.policy.icp_source)},
                   {"cohesion_self_edges",
                    r.policy.include_self_edges_in_cohesion}};

  json sm;
  sm["value"] = r.sm.sm;
  sm["mu"] = r.sm.mu;
  sm["scoh"] = r.sm.scoh;
  sm["pairs"] = json::array();
  for (const auto& [pair, g] : r.sm.gamma) {
    json jp;
    jp["a"] = service_label(r, pair.first);
    jp["b"] = service_label(r, pair.second);
    jp["gamma"] = g;
    jp["scop"] = r.sm.scop.at(pair);
    sm["pairs"].push_back(std::move(jp));
  }
  doc["sm"] = std::move(sm);

  json ifn;
  ifn["value"] = r.ifn.ifn;
  ifn["per_service"] = json::array();
  for (std::size_t s = 0; s < r.ifn.interfaces.size(); ++s) {
    json js;
    js["service"] = service_label(r, s);
    js["count"] = r.ifn.counts[s];
    js["interfaces"] = r.ifn.interfaces[s];
    ifn["per_service"].push_back(std::move(js));
  }
  doc["ifn"] = std::move(ifn);

  json icp;
  icp["value"] = r.icp.aggregate;
  icp["inter_calls"] = r.icp.inter_calls;
  icp["total_calls"] = r.icp.total_calls;
  icp["pairs"] = json::array();
  for (const auto& [pair, fraction] : r.icp.pair_fractions) {
    json jp;
    jp["from"] = service_label(r, pair.first);
    jp["to"] = service_label(r, pair.second);
    jp["fraction"] = fraction;
    icp["pairs"].push_back(std::move(jp));
  }
  doc["icp"] = std::move(icp);

  json ned;
  ned["value"] = r.ned.ned;
  ned["bounds"] = {r.ned.bounds.lower, r.ned.bounds.upper};
  ned["sizes"] = r.ned.sizes;
  ned["in_range"] = r.ned.in_range;
  doc["ned"] = std::move(ned);
  return doc;
}

inline json table_json(const ScoreTable& t) {
  json doc;
  doc["benchmark"] = t.benchmark;
  doc["convention"] = to_string(t.convention);
  doc["weights"] = {{"sm", t.weights.sm},
                    {"ifn", t.weights.ifn},
                    {"icp", t.weights.icp},
                    {"ned", t.weights.ned}};
  doc["mean"] = t.mean;
  doc["stddev"] = t.stddev;
  doc["entries"] = json::array();
  for (const ScoreEntry& e : t.entries) {
    json je;
    je["tool"] = e.tool;
    je["rank"] = e.rank;
    je["score"] = e.score;
    je["raw"] = {{"sm", e.raw[0]},
                 {"ifn", e.raw[1]},
                 {"icp", e.raw[2]},
                 {"ned", e.raw[3]}};
    je["z"] = {{"sm", e.z[0]},
               {"ifn", e.z[1]},
               {"icp", e.z[2]},
               {"ned", e.z[3]}};
    if (e.micro) je["micro"] = *e.micro;
    doc["entries"].push_back(std::move(je));
  }
  doc["not_scored"] = t.not_scored;
  return doc;
}

}  // namespace detail

inline std::string render_report(const MetricReport& r, RenderFormat format) {
  if (format == RenderFormat::structured)
    return detail::report_json(r).dump(2) + "\n";
  if (format == RenderFormat::csv) {
    std::string out = "tool,sm,ifn,icp,ned,micro\n";
    out += r.tool + "," + format_full(r.sm.sm) + "," + format_full(r.ifn.ifn) +
           "," + format_full(r.icp.aggregate) + "," + format_full(r.ned.ned) +
           "," + std::to_string(r.micro) + "\n";
    return out;
  }

  std::string out;
  out += "# Metrics: " + r.system + " / " + r.tool + "\n\n";
  out += "| system | tool | sm | ifn | icp | ned | micro |\n";
  out += "|---|---|---:|---:|---:|---:|---:|\n";
  out += "| " + r.system + " | " + r.tool + " | " + format_fixed2(r.sm.sm) +
         " | " + format_fixed2(r.ifn.ifn) + " | " +
         format_fixed2(r.icp.aggregate) + " | " + format_fixed2(r.ned.ned) +
         " | " + std::to_string(r.micro) + " |\n\n";
  out += "policy: sm-source=" + std::string(to_string(r.policy.sm_source)) +
         ", icp-source=" + to_string(r.policy.icp_source) +
         ", cohesion-self-edges=" +
         (r.policy.include_self_edges_in_cohesion ? "true" : "false") + "\n\n";
  out += "## Services\n\n";
  out += "| service | size | scoh | interfaces |\n";
  out += "|---|---:|---:|---|\n";
  for (std::size_t s = 0; s < r.services.size(); ++s) {
    std::string names;
    for (const std::string& id : r.ifn.interfaces[s]) {
      if (!names.empty()) names += " ";
      names += id;
    }
    out += "| " + detail::service_label(r, s) + " | " +
           std::to_string(r.ned.sizes[s]) + " | " +
           format_fixed2(r.sm.scoh[s]) + " | " + names + " |\n";
  }
  if (!r.icp.pair_fractions.empty()) {
    out += "\n## Inter-service calls\n\n";
    out += std::to_string(r.icp.inter_calls) + " of " +
           std::to_string(r.icp.total_calls) + " calls cross services\n\n";
    out += "| from | to | fraction |\n";
    out += "|---|---|---:|\n";
    for (const auto& [pair, fraction] : r.icp.pair_fractions)
      out += "| " + detail::service_label(r, pair.first) + " | " +
             detail::service_label(r, pair.second) + " | " +
             format_fixed2(fraction) + " |\n";
  }
  return out;
}

inline std::string render_table(const ScoreTable& t, RenderFormat format) {
  if (format == RenderFormat::structured)
    return detail::table_json(t).dump(2) + "\n";
  if (format == RenderFormat::csv) {
    std::string out = "tool,sm,ifn,icp,ned,micro,score,rank\n";
    for (const ScoreEntry& e : t.entries) {
      out += e.tool + "," + format_full(e.raw[0]) + "," +
             format_full(e.raw[1]) + "," + format_full(e.raw[2]) + "," +
             format_full(e.raw[3]) + "," +
             (e.micro ? std::to_string(*e.micro) : std::string{}) + "," +
             format_full(e.score) + "," + std::to_string(e.rank) + "\n";
    }
    return out;
  }

  std::string out;
  out += "# Ranking: " + t.benchmark + "\n\n";
  out += "weights: sm=" + format_full(t.weights.sm) +
         ", ifn=" + format_full(t.weights.ifn) +
         ", icp=" + format_full(t.weights.icp) +
         ", ned=" + format_full(t.weights.ned) +
         "; std: " + to_string(t.convention) + "\n\n";
  out += "| rank | tool | score | sm | ifn | icp | ned | micro |\n";
  out += "|---:|---|---:|---:|---:|---:|---:|---:|\n";
  for (const ScoreEntry& e : t.entries) {
    out += "| " + std::to_string(e.rank) + " | " + e.tool + " | " +
           format_fixed2(e.score) + " | " + format_fixed2(e.raw[0]) + " | " +
           format_fixed2(e.raw[1]) + " | " + format_fixed2(e.raw[2]) + " | " +
           format_fixed2(e.raw[3]) + " | " +
           (e.micro ? std::to_string(*e.micro) : std::string{}) + " |\n";
  }
  if (!t.not_scored.empty()) {
    out += "\nnot scored (incomplete metrics):";
    for (const std::string& tool : t.not_scored) out += " " + tool;
    out += "\n";
  }
  return out;
}

}  // namespace decomp
