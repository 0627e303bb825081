#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace decomp {

// Every recoverable failure in the library surfaces as a DomainError carrying
// one of these kinds. The CLI maps any DomainError to exit code 1 and prints
// the kind name followed by the message.
enum class ErrorKind {
  duplicate_class,
  unknown_edge_endpoint,
  duplicate_edge,
  bad_count,
  unknown_class,
  missing_class,
  duplicate_assignment,
  empty_service,
  invalid_bounds,
  no_runtime_data,
  too_few_rows,
  parse_error,
  non_numeric_cell,
  empty_table,
  empty_graph,
  bad_k,
  infeasible_bounds,
  bad_threshold,
  bad_spec,
  io_error,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::duplicate_class: return "DuplicateClass";
    case ErrorKind::unknown_edge_endpoint: return "UnknownEdgeEndpoint";
    case ErrorKind::duplicate_edge: return "DuplicateEdge";
    case ErrorKind::bad_count: return "BadCount";
    case ErrorKind::unknown_class: return "UnknownClass";
    case ErrorKind::missing_class: return "MissingClass";
    case ErrorKind::duplicate_assignment: return "DuplicateAssignment";
    case ErrorKind::empty_service: return "EmptyService";
    case ErrorKind::invalid_bounds: return "InvalidBounds";
    case ErrorKind::no_runtime_data: return "NoRuntimeData";
    case ErrorKind::too_few_rows: return "TooFewRows";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::non_numeric_cell: return "NonNumericCell";
    case ErrorKind::empty_table: return "EmptyTable";
    case ErrorKind::empty_graph: return "EmptyGraph";
    case ErrorKind::bad_k: return "BadK";
    case ErrorKind::infeasible_bounds: return "InfeasibleBounds";
    case ErrorKind::bad_threshold: return "BadThreshold";
    case ErrorKind::bad_spec: return "BadSpec";
    case ErrorKind::io_error: return "IoError";
  }
  return "UnknownError";
}

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace decomp
