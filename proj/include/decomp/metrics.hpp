#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "decomp/errors.hpp"
#include "decomp/model.hpp"

namespace decomp {

// Which edges feed structural modularity / interface counting, and which feed
// the communication metric. Published tools disagree on this, so it is an
// explicit knob with conservative defaults.
enum class SmSource {
  static_distinct,   // each distinct static edge weighs 1
  static_weighted,   // static edges weigh their count
  runtime_weighted,  // runtime edges weigh their count
};

enum class IcpSource {
  runtime_else_static,  // runtime counts when any exist, else static counts
  runtime_only,         // runtime counts; error when the graph has none
  static_only,          // static counts
};

struct EdgePolicy {
  SmSource sm_source = SmSource::static_distinct;
  IcpSource icp_source = IcpSource::runtime_else_static;
  // Self calls (src == dst) can count toward a service's internal edges; they
  // never count toward coupling either way.
  bool include_self_edges_in_cohesion = true;

  friend bool operator==(const EdgePolicy&, const EdgePolicy&) = default;
};

inline const char* to_string(SmSource s) {
  switch (s) {
    case SmSource::static_distinct: return "static_distinct";
    case SmSource::static_weighted: return "static_weighted";
    case SmSource::runtime_weighted: return "runtime_weighted";
  }
  return "?";
}

inline const char* to_string(IcpSource s) {
  switch (s) {
    case IcpSource::runtime_else_static: return "runtime_else_static";
    case IcpSource::runtime_only: return "runtime_only";
    case IcpSource::static_only: return "static_only";
  }
  return "?";
}

namespace detail {

// Weight of an edge under the SM edge selection; 0 means "not selected".
inline std::int64_t sm_weight(const IndexedEdge& e, SmSource source) {
  switch (source) {
    case SmSource::static_distinct:
      return e.kind == CallKind::static_call ? 1 : 0;
    case SmSource::static_weighted:
      return e.kind == CallKind::static_call ? e.count : 0;
    case SmSource::runtime_weighted:
      return e.kind == CallKind::runtime_call ? e.count : 0;
  }
  return 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Structural modularity
//
//   SM = (1/M) * sum_i mu_i / m_i^2
//      - (1/(M(M-1)/2)) * sum_{i<j} gamma_ij / (2 m_i m_j)
//
// where mu_i is the selected-edge weight inside service i, gamma_ij the
// selected-edge weight between services i and j in either direction, and m_i
// the class count of service i. A single service has no pair term.
// ---------------------------------------------------------------------------

struct SmBreakdown {
  std::vector<std::int64_t> mu;   // internal edge weight per service
  std::vector<double> scoh;      // mu_i / m_i^2
  // Both keyed by service index pairs (i, j) with i < j; zero pairs omitted.
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> gamma;
  std::map<std::pair<std::size_t, std::size_t>, double> scop;
  double sm = 0.0;
};

inline SmBreakdown compute_sm(const MonolithGraph& graph,
                              const ValidatedPartition& partition,
                              const EdgePolicy& policy = {}) {
  const std::size_t services = partition.service_count();
  SmBreakdown out;
  out.mu.assign(services, 0);
  out.scoh.assign(services, 0.0);
  for (const IndexedEdge& e : graph.indexed_edges()) {
    const std::int64_t w = detail::sm_weight(e, policy.sm_source);
    if (w == 0) continue;
    const std::size_t a = partition.service_of(e.src);
    const std::size_t b = partition.service_of(e.dst);
    if (a == b) {
      if (e.src == e.dst && !policy.include_self_edges_in_cohesion) continue;
      out.mu[a] += w;
    } else {
      out.gamma[{std::min(a, b), std::max(a, b)}] += w;
    }
  }
  double scoh_sum = 0.0;
  for (std::size_t i = 0; i < services; ++i) {
    const double m = static_cast<double>(partition.size_of(i));
    out.scoh[i] = static_cast<double>(out.mu[i]) / (m * m);
    scoh_sum += out.scoh[i];
  }
  double scop_sum = 0.0;
  for (const auto& [pair, g] : out.gamma) {
    const double mi = static_cast<double>(partition.size_of(pair.first));
    const double mj = static_cast<double>(partition.size_of(pair.second));
    const double scop = static_cast<double>(g) / (2.0 * mi * mj);
    out.scop[pair] = scop;
    scop_sum += scop;
  }
  if (services == 0) return out;
  out.sm = scoh_sum / static_cast<double>(services);
  if (services > 1) {
    const double pairs = static_cast<double>(services) *
                         static_cast<double>(services - 1) / 2.0;
    out.sm -= scop_sum / pairs;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interface number: a class is an interface of its service when at least one
// selected edge from another service targets it. IFN is the mean interface
// count per service. Edge selection follows the SM source.
// ---------------------------------------------------------------------------

struct IfnBreakdown {
  std::vector<std::vector<std::string>> interfaces;  // sorted ids per service
  std::vector<std::size_t> counts;                   // |interfaces[i]|
  double ifn = 0.0;
};

inline IfnBreakdown compute_ifn(const MonolithGraph& graph,
                                const ValidatedPartition& partition,
                                const EdgePolicy& policy = {}) {
  const std::size_t services = partition.service_count();
  std::vector<std::set<std::size_t>> targets(services);
  for (const IndexedEdge& e : graph.indexed_edges()) {
    if (detail::sm_weight(e, policy.sm_source) == 0) continue;
    const std::size_t a = partition.service_of(e.src);
    const std::size_t b = partition.service_of(e.dst);
    if (a != b) targets[b].insert(e.dst);
  }
  IfnBreakdown out;
  out.interfaces.resize(services);
  out.counts.resize(services);
  std::size_t total = 0;
  for (std::size_t s = 0; s < services; ++s) {
    for (std::size_t ci : targets[s]) out.interfaces[s].push_back(graph.id_of(ci));
    std::sort(out.interfaces[s].begin(), out.interfaces[s].end());
    out.counts[s] = out.interfaces[s].size();
    total += out.counts[s];
  }
  if (services > 0)
    out.ifn = static_cast<double>(total) / static_cast<double>(services);
  return out;
}

// ---------------------------------------------------------------------------
// Inter-partition communication. Call volume between ordered service pairs:
// pair_fractions holds c_ij / sum of all inter-service calls (they sum to 1
// when any exist); aggregate is inter-service calls / all calls, the single
// number usually reported.
// ---------------------------------------------------------------------------

struct IcpBreakdown {
  // Keyed by ordered (caller service, callee service), zero pairs omitted.
  std::map<std::pair<std::size_t, std::size_t>, double> pair_fractions;
  std::int64_t inter_calls = 0;
  std::int64_t total_calls = 0;
  double aggregate = 0.0;  // inter_calls / total_calls, 0 when no calls
};

inline IcpBreakdown compute_icp(const MonolithGraph& graph,
                                const ValidatedPartition& partition,
                                const EdgePolicy& policy = {}) {
  bool use_runtime = false;
  switch (policy.icp_source) {
    case IcpSource::runtime_only:
      if (!graph.has_runtime_edges())
        throw DomainError(ErrorKind::no_runtime_data,
                          "graph '" + graph.name() +
                              "' has no runtime edges but the communication "
                              "policy is runtime_only");
      use_runtime = true;
      break;
    case IcpSource::runtime_else_static:
      use_runtime = graph.has_runtime_edges();
      break;
    case IcpSource::static_only:
      use_runtime = false;
      break;
  }
  const CallKind kind =
      use_runtime ? CallKind::runtime_call : CallKind::static_call;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> inter;
  IcpBreakdown out;
  for (const IndexedEdge& e : graph.indexed_edges()) {
    if (e.kind != kind) continue;
    out.total_calls += e.count;
    const std::size_t a = partition.service_of(e.src);
    const std::size_t b = partition.service_of(e.dst);
    if (a != b) {
      inter[{a, b}] += e.count;
      out.inter_calls += e.count;
    }
  }
  if (out.inter_calls > 0) {
    for (const auto& [pair, c] : inter)
      out.pair_fractions[pair] =
          static_cast<double>(c) / static_cast<double>(out.inter_calls);
  }
  if (out.total_calls > 0)
    out.aggregate = static_cast<double>(out.inter_calls) /
                    static_cast<double>(out.total_calls);
  return out;
}

// ---------------------------------------------------------------------------
// Non-extreme distribution: share of services whose size falls outside
// [lower, upper] (defaults 5..20). 0 is best - every service is in range.
// ---------------------------------------------------------------------------

struct SizeBounds {
  std::size_t lower = 5;
  std::size_t upper = 20;
};

struct NedBreakdown {
  std::vector<std::size_t> sizes;  // per service
  std::size_t in_range = 0;
  SizeBounds bounds;
  double ned = 0.0;
};

inline NedBreakdown compute_ned(const ValidatedPartition& partition,
                                const SizeBounds& bounds = {}) {
  if (bounds.lower < 1 || bounds.upper < bounds.lower)
    throw DomainError(ErrorKind::invalid_bounds,
                      "size bounds " + std::to_string(bounds.lower) + ".." +
                          std::to_string(bounds.upper) +
                          " are not a positive range");
  NedBreakdown out;
  out.bounds = bounds;
  const std::size_t services = partition.service_count();
  out.sizes.reserve(services);
  for (std::size_t s = 0; s < services; ++s) {
    const std::size_t m = partition.size_of(s);
    out.sizes.push_back(m);
    if (m >= bounds.lower && m <= bounds.upper) ++out.in_range;
  }
  if (services > 0)
    out.ned = 1.0 - static_cast<double>(out.in_range) /
                        static_cast<double>(services);
  return out;
}

// ---------------------------------------------------------------------------
// One-shot evaluation of a decomposition against a graph.
// ---------------------------------------------------------------------------

struct MetricReport {
  std::string system;
  std::string tool;
  EdgePolicy policy;
  std::vector<std::string> services;  // names, in decomposition order
  SmBreakdown sm;
  IfnBreakdown ifn;
  IcpBreakdown icp;
  NedBreakdown ned;
  std::size_t micro = 0;  // number of services
};

inline MetricReport evaluate_decomposition(const MonolithGraph& graph,
                                           const Decomposition& d,
                                           const EdgePolicy& policy = {},
                                           const SizeBounds& bounds = {}) {
  const ValidatedPartition partition = validate_decomposition(graph, d);
  MetricReport report;
  report.system = graph.name();
  report.tool = d.tool;
  report.policy = policy;
  report.services = partition.service_names();
  report.sm = compute_sm(graph, partition, policy);
  report.ifn = compute_ifn(graph, partition, policy);
  report.icp = compute_icp(graph, partition, policy);
  report.ned = compute_ned(partition, bounds);
  report.micro = partition.service_count();
  return report;
}

}  // namespace decomp
