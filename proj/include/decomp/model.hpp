#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "decomp/errors.hpp"

namespace decomp {

enum class CallKind { static_call, runtime_call };

inline const char* to_string(CallKind kind) {
  return kind == CallKind::static_call ? "static" : "runtime";
}

struct ClassNode {
  std::string id;
  std::map<std::string, std::string> attributes;

  friend bool operator==(const ClassNode&, const ClassNode&) = default;
};

struct CallEdge {
  std::string src;
  std::string dst;
  CallKind kind = CallKind::static_call;
  std::int64_t count = 1;

  friend bool operator==(const CallEdge&, const CallEdge&) = default;
};

// A CallEdge with endpoints resolved to class indices.
struct IndexedEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  CallKind kind = CallKind::static_call;
  std::int64_t count = 1;
};

// Class-level call graph of the monolith. Construction validates the inputs
// and resolves edge endpoints; instances are immutable afterwards.
class MonolithGraph {
 public:
  MonolithGraph(std::string name, std::vector<ClassNode> classes,
                std::vector<CallEdge> edges)
      : name_(std::move(name)),
        classes_(std::move(classes)),
        edges_(std::move(edges)) {
    index_by_id_.reserve(classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      const std::string& id = classes_[i].id;
      if (id.empty())
        throw DomainError(ErrorKind::bad_spec, "class id must be non-empty");
      if (!index_by_id_.emplace(id, i).second)
        throw DomainError(ErrorKind::duplicate_class,
                          "class '" + id + "' declared more than once");
    }
    std::map<std::tuple<std::size_t, std::size_t, CallKind>, bool> seen;
    indexed_.reserve(edges_.size());
    for (const CallEdge& e : edges_) {
      const std::size_t src = require_index(e.src);
      const std::size_t dst = require_index(e.dst);
      if (e.count < 1)
        throw DomainError(ErrorKind::bad_count,
                          "edge " + e.src + " -> " + e.dst +
                              " has non-positive count " +
                              std::to_string(e.count));
      if (!seen.emplace(std::make_tuple(src, dst, e.kind), true).second)
        throw DomainError(ErrorKind::duplicate_edge,
                          std::string(to_string(e.kind)) + " edge " + e.src +
                              " -> " + e.dst + " listed more than once");
      indexed_.push_back({src, dst, e.kind, e.count});
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<ClassNode>& classes() const { return classes_; }
  const std::vector<CallEdge>& edges() const { return edges_; }
  const std::vector<IndexedEdge>& indexed_edges() const { return indexed_; }

  std::size_t size() const { return classes_.size(); }

  const std::string& id_of(std::size_t index) const {
    return classes_[index].id;
  }

  bool contains(const std::string& id) const {
    return index_by_id_.count(id) != 0;
  }

  std::size_t index_of(const std::string& id) const {
    auto it = index_by_id_.find(id);
    if (it == index_by_id_.end())
      throw DomainError(ErrorKind::unknown_class,
                        "class '" + id + "' is not in graph '" + name_ + "'");
    return it->second;
  }

  bool has_runtime_edges() const {
    return std::any_of(indexed_.begin(), indexed_.end(), [](const auto& e) {
      return e.kind == CallKind::runtime_call;
    });
  }

 private:
  std::size_t require_index(const std::string& id) const {
    auto it = index_by_id_.find(id);
    if (it == index_by_id_.end())
      throw DomainError(ErrorKind::unknown_edge_endpoint,
                        "edge endpoint '" + id + "' is not a declared class");
    return it->second;
  }

  std::string name_;
  std::vector<ClassNode> classes_;
  std::vector<CallEdge> edges_;
  std::vector<IndexedEdge> indexed_;
  std::unordered_map<std::string, std::size_t> index_by_id_;
};

struct Service {
  std::string name;
  std::vector<std::string> classes;

  friend bool operator==(const Service&, const Service&) = default;
};

// A candidate decomposition as written by a tool: named services over class
// ids. May be structurally invalid; validate_decomposition checks it against
// a graph.
struct Decomposition {
  std::string tool;
  std::string system;
  std::vector<Service> services;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// Index-level view of a decomposition proven to partition a graph's classes.
class ValidatedPartition {
 public:
  ValidatedPartition(std::vector<std::string> service_names,
                     std::vector<std::vector<std::size_t>> members,
                     std::vector<std::size_t> assignment)
      : service_names_(std::move(service_names)),
        members_(std::move(members)),
        assignment_(std::move(assignment)) {}

  std::size_t service_count() const { return members_.size(); }
  std::size_t class_count() const { return assignment_.size(); }

  const std::vector<std::string>& service_names() const {
    return service_names_;
  }

  // Class indices of service s, ascending.
  const std::vector<std::size_t>& members(std::size_t s) const {
    return members_[s];
  }

  std::size_t size_of(std::size_t s) const { return members_[s].size(); }

  std::size_t service_of(std::size_t class_index) const {
    return assignment_[class_index];
  }

  const std::vector<std::size_t>& assignment() const { return assignment_; }

  friend bool operator==(const ValidatedPartition&,
                         const ValidatedPartition&) = default;

 private:
  std::vector<std::string> service_names_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> assignment_;
};

// Checks that `d` is a partition of the classes of `graph`:
//   - every referenced class exists        (UnknownClass)
//   - no class appears twice               (DuplicateAssignment)
//   - no service is empty                  (EmptyService)
//   - every class of the graph is covered  (MissingClass)
inline ValidatedPartition validate_decomposition(const MonolithGraph& graph,
                                                 const Decomposition& d) {
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> assignment(graph.size(), kUnassigned);
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> members;
  names.reserve(d.services.size());
  members.reserve(d.services.size());
  for (std::size_t s = 0; s < d.services.size(); ++s) {
    const Service& svc = d.services[s];
    if (svc.classes.empty())
      throw DomainError(ErrorKind::empty_service,
                        "service '" + svc.name + "' has no classes");
    std::vector<std::size_t> idx;
    idx.reserve(svc.classes.size());
    for (const std::string& id : svc.classes) {
      if (!graph.contains(id))
        throw DomainError(ErrorKind::unknown_class,
                          "class '" + id + "' is not in graph '" +
                              graph.name() + "'");
      const std::size_t ci = graph.index_of(id);
      if (assignment[ci] != kUnassigned)
        throw DomainError(ErrorKind::duplicate_assignment,
                          "class '" + id + "' assigned to more than one service");
      assignment[ci] = s;
      idx.push_back(ci);
    }
    std::sort(idx.begin(), idx.end());
    names.push_back(svc.name);
    members.push_back(std::move(idx));
  }
  for (std::size_t ci = 0; ci < graph.size(); ++ci) {
    if (assignment[ci] == kUnassigned)
      throw DomainError(ErrorKind::missing_class,
                        "class '" + graph.id_of(ci) +
                            "' is not assigned to any service");
  }
  return ValidatedPartition(std::move(names), std::move(members),
                            std::move(assignment));
}

// Builds a decomposition from a per-class service-id vector. Services are
// emitted in order of their smallest class index and named s1, s2, ...;
// classes inside a service are sorted by id. Empty slots are dropped.
inline Decomposition decomposition_from_assignment(
    const MonolithGraph& graph, const std::vector<std::size_t>& assignment,
    std::string tool) {
  std::map<std::size_t, std::vector<std::string>> buckets;  // slot -> ids
  std::vector<std::size_t> order;                           // slots by first use
  for (std::size_t ci = 0; ci < assignment.size(); ++ci) {
    auto [it, fresh] = buckets.try_emplace(assignment[ci]);
    if (fresh) order.push_back(assignment[ci]);
    it->second.push_back(graph.id_of(ci));
  }
  Decomposition d;
  d.tool = std::move(tool);
  d.system = graph.name();
  d.services.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Service svc;
    svc.name = "s" + std::to_string(i + 1);
    svc.classes = std::move(buckets[order[i]]);
    std::sort(svc.classes.begin(), svc.classes.end());
    d.services.push_back(std::move(svc));
  }
  return d;
}

}  // namespace decomp
