#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decomp/errors.hpp"
#include "decomp/model.hpp"
#include "decomp/rng.hpp"

namespace decomp {

// Planted-partition instance description: `services` blocks with sizes drawn
// uniformly from `size_range`; each ordered pair of distinct classes gets a
// static edge with probability p_intra (same block) or p_inter (other block),
// and, when `runtime_count_range` is set, a matching runtime edge whose count
// is drawn from that range.
struct PlantedSpec {
  std::string name = "planted";
  std::size_t services = 3;
  std::pair<std::size_t, std::size_t> size_range = {5, 10};
  double p_intra = 0.8;
  double p_inter = 0.05;
  std::optional<std::pair<std::int64_t, std::int64_t>> runtime_count_range;
  std::uint64_t seed = 0;
};

struct PlantedInstance {
  MonolithGraph graph;
  Decomposition truth;  // the planted blocks, tool name "truth"
};

inline PlantedInstance generate_planted(const PlantedSpec& spec) {
  if (spec.services < 1)
    throw DomainError(ErrorKind::bad_spec, "need at least one service block");
  if (spec.size_range.first < 1 || spec.size_range.second < spec.size_range.first)
    throw DomainError(ErrorKind::bad_spec,
                      "size range " + std::to_string(spec.size_range.first) +
                          ".." + std::to_string(spec.size_range.second) +
                          " is not a positive range");
  if (spec.p_intra < 0.0 || spec.p_intra > 1.0 || spec.p_inter < 0.0 ||
      spec.p_inter > 1.0 || spec.p_inter > spec.p_intra)
    throw DomainError(ErrorKind::bad_spec,
                      "edge probabilities must satisfy 0 <= p_inter <= "
                      "p_intra <= 1");
  if (spec.runtime_count_range) {
    const auto [lo, hi] = *spec.runtime_count_range;
    if (lo < 1 || hi < lo)
      throw DomainError(ErrorKind::bad_spec,
                        "runtime count range " + std::to_string(lo) + ".." +
                            std::to_string(hi) + " is not a positive range");
  }

  Rng rng(spec.seed);
  std::vector<ClassNode> classes;
  std::vector<std::size_t> block_of;
  Decomposition truth;
  truth.tool = "truth";
  truth.system = spec.name;
  for (std::size_t b = 0; b < spec.services; ++b) {
    const std::size_t size = static_cast<std::size_t>(rng.range(
        static_cast<std::int64_t>(spec.size_range.first),
        static_cast<std::int64_t>(spec.size_range.second)));
    Service svc;
    svc.name = "b" + std::to_string(b + 1);
    for (std::size_t j = 0; j < size; ++j) {
      std::string id =
          "b" + std::to_string(b + 1) + "_c" + std::to_string(j + 1);
      svc.classes.push_back(id);
      classes.push_back({std::move(id), {}});
      block_of.push_back(b);
    }
    truth.services.push_back(std::move(svc));
  }

  std::vector<CallEdge> edges;
  const std::size_t n = classes.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double p =
          block_of[u] == block_of[v] ? spec.p_intra : spec.p_inter;
      if (rng.unit() >= p) continue;
      edges.push_back(
          {classes[u].id, classes[v].id, CallKind::static_call, 1});
      if (spec.runtime_count_range) {
        const auto [lo, hi] = *spec.runtime_count_range;
        edges.push_back({classes[u].id, classes[v].id, CallKind::runtime_call,
                         rng.range(lo, hi)});
      }
    }
  }

  return PlantedInstance{
      MonolithGraph(spec.name, std::move(classes), std::move(edges)),
      std::move(truth)};
}

}  // namespace decomp
