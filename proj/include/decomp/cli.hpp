#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "decomp/decomposers.hpp"
#include "decomp/errors.hpp"
#include "decomp/generator.hpp"
#include "decomp/io.hpp"
#include "decomp/metrics.hpp"
#include "decomp/report.hpp"
#include "decomp/scoring.hpp"

namespace decomp {

namespace detail {

// Bad flag values that CLI11's own validators cannot express; mapped to the
// usage exit code (2) like any other command-line mistake.
struct UsageError {
  std::string message;
};

inline std::pair<std::uint64_t, std::uint64_t> parse_range_flag(
    const std::string& text, const char* flag) {
  const auto bad = [&] {
    throw UsageError{std::string(flag) + " expects LO:HI, got '" + text + "'"};
  };
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) bad();
  std::uint64_t lo = 0, hi = 0;
  const char* b = text.data();
  auto r1 = std::from_chars(b, b + colon, lo);
  auto r2 = std::from_chars(b + colon + 1, b + text.size(), hi);
  if (r1.ec != std::errc{} || r1.ptr != b + colon || r2.ec != std::errc{} ||
      r2.ptr != b + text.size())
    bad();
  return {lo, hi};
}

inline WeightVector parse_weights_flag(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const char* b = text.data() + start;
      const char* e = text.data() + i;
      double v = 0.0;
      const auto r = std::from_chars(b, e, v);
      if (r.ec != std::errc{} || r.ptr != e)
        throw UsageError{"--weights expects four comma-separated numbers, "
                         "got '" + text + "'"};
      values.push_back(v);
      start = i + 1;
    }
  }
  if (values.size() != 4)
    throw UsageError{"--weights expects four comma-separated numbers, got '" +
                     text + "'"};
  return WeightVector{values[0], values[1], values[2], values[3]};
}

inline SmSource parse_sm_source(const std::string& name) {
  if (name == "static_distinct") return SmSource::static_distinct;
  if (name == "static_weighted") return SmSource::static_weighted;
  return SmSource::runtime_weighted;
}

inline IcpSource parse_icp_source(const std::string& name) {
  if (name == "runtime_else_static") return IcpSource::runtime_else_static;
  if (name == "runtime_only") return IcpSource::runtime_only;
  return IcpSource::static_only;
}

inline Linkage parse_linkage(const std::string& name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  return Linkage::average;
}

}  // namespace detail

// Runs the command line (without argv[0]); returns the process exit code:
// 0 success, 1 domain error, 2 usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"evaluate and generate microservice decompositions of a "
               "class-level call graph"};
  app.name("decomp");
  app.require_subcommand(1);

  // --- evaluate ---
  std::string ev_graph, ev_dec, ev_out;
  std::string ev_format = "markdown";
  std::string ev_sm = "static_distinct", ev_icp = "runtime_else_static";
  bool ev_self = true;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "compute the quality metrics of one decomposition");
  evaluate->add_option("--graph", ev_graph, "call-graph JSON file")
      ->required();
  evaluate->add_option("--decomposition", ev_dec, "decomposition JSON file")
      ->required();
  evaluate->add_option("--format", ev_format, "output format")
      ->check(CLI::IsMember({"markdown", "csv", "structured"}));
  evaluate
      ->add_option("--sm-source", ev_sm,
                   "edges feeding modularity and interface counting")
      ->check(CLI::IsMember(
          {"static_distinct", "static_weighted", "runtime_weighted"}));
  evaluate
      ->add_option("--icp-source", ev_icp,
                   "edges feeding the communication metric")
      ->check(CLI::IsMember(
          {"runtime_else_static", "runtime_only", "static_only"}));
  evaluate->add_option("--cohesion-self-edges", ev_self,
                       "count self calls as internal edges (true/false)");
  evaluate->add_option("-o,--output", ev_out, "write here instead of stdout");

  // --- compare ---
  std::string cp_metrics, cp_graph, cp_dir, cp_out, cp_benchmark;
  std::string cp_format = "markdown", cp_std = "population";
  std::string cp_weights_text;
  std::string cp_sm = "static_distinct", cp_icp = "runtime_else_static";
  bool cp_self = true;
  CLI::App* compare = app.add_subcommand(
      "compare", "rank tools by composite score on one benchmark");
  compare->add_option("--metrics", cp_metrics, "metric table CSV file");
  compare->add_option("--graph", cp_graph, "call-graph JSON file");
  compare->add_option("--decompositions", cp_dir,
                      "directory of decomposition JSON files");
  compare->add_option("--weights", cp_weights_text,
                      "metric weights as sm,ifn,icp,ned");
  compare->add_option("--std", cp_std, "standard deviation convention")
      ->check(CLI::IsMember({"population", "sample"}));
  compare->add_option("--benchmark", cp_benchmark, "benchmark label");
  compare->add_option("--format", cp_format, "output format")
      ->check(CLI::IsMember({"markdown", "csv", "structured"}));
  compare
      ->add_option("--sm-source", cp_sm,
                   "edges feeding modularity and interface counting")
      ->check(CLI::IsMember(
          {"static_distinct", "static_weighted", "runtime_weighted"}));
  compare
      ->add_option("--icp-source", cp_icp,
                   "edges feeding the communication metric")
      ->check(CLI::IsMember(
          {"runtime_else_static", "runtime_only", "static_only"}));
  compare->add_option("--cohesion-self-edges", cp_self,
                      "count self calls as internal edges (true/false)");
  compare->add_option("-o,--output", cp_out, "write here instead of stdout");

  // --- decompose ---
  std::string dc_graph, dc_algo, dc_out;
  std::string dc_linkage = "average";
  std::uint64_t dc_k = 0, dc_seed = 0, dc_restarts = 20, dc_max_iter = 0;
  std::uint64_t dc_min_services = 0, dc_max_services = 0, dc_min_cluster = 1;
  double dc_threshold = 0.0;
  std::uint64_t dc_clusters = 0;
  CLI::App* decompose =
      app.add_subcommand("decompose", "run a baseline decomposer");
  decompose->add_option("--graph", dc_graph, "call-graph JSON file")
      ->required();
  decompose->add_option("--algo", dc_algo, "decomposer")
      ->required()
      ->check(CLI::IsMember(
          {"monolith", "singletons", "random", "hillclimb", "hierarchical"}));
  decompose->add_option("--k", dc_k, "service count (random)");
  decompose->add_option("--seed", dc_seed, "random seed");
  decompose->add_option("--restarts", dc_restarts, "hillclimb restarts");
  decompose->add_option("--max-iterations", dc_max_iter,
                        "hillclimb iteration cap (0 = 10x classes)");
  decompose->add_option("--min-services", dc_min_services,
                        "hillclimb lower bound on services");
  decompose->add_option("--max-services", dc_max_services,
                        "hillclimb upper bound on services");
  decompose->add_option("--linkage", dc_linkage, "hierarchical linkage")
      ->check(CLI::IsMember({"average", "single", "complete"}));
  decompose->add_option("--threshold", dc_threshold,
                        "hierarchical cut distance in (0,1]");
  decompose->add_option("--clusters", dc_clusters,
                        "hierarchical target cluster count");
  decompose->add_option("--min-cluster-size", dc_min_cluster,
                        "merge smaller hierarchical clusters into neighbors");
  decompose->add_option("-o,--output", dc_out, "write here instead of stdout");

  // --- generate ---
  std::string gn_name = "planted", gn_out, gn_truth;
  std::string gn_sizes, gn_runtime;
  std::uint64_t gn_services = 0, gn_seed = 0;
  double gn_p_intra = 0.0, gn_p_inter = 0.0;
  CLI::App* generate = app.add_subcommand(
      "generate", "produce a planted-partition benchmark instance");
  generate->add_option("--name", gn_name, "graph name");
  generate->add_option("--services", gn_services, "number of planted blocks")
      ->required();
  generate->add_option("--size-range", gn_sizes, "block sizes as LO:HI")
      ->required();
  generate->add_option("--p-intra", gn_p_intra, "edge probability in a block")
      ->required();
  generate
      ->add_option("--p-inter", gn_p_inter, "edge probability across blocks")
      ->required();
  generate->add_option("--runtime", gn_runtime,
                       "also draw runtime counts from LO:HI");
  generate->add_option("--seed", gn_seed, "random seed");
  generate->add_option("-o,--output", gn_out, "call-graph JSON output file")
      ->required();
  generate->add_option("--truth", gn_truth, "planted decomposition JSON file")
      ->required();

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::vector<std::string> warnings;
  const auto emit = [&](const std::string& path, const std::string& text) {
    if (path.empty())
      out << text;
    else
      write_file(path, text);
  };
  const auto flush_warnings = [&] {
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    warnings.clear();
  };

  try {
    if (app.got_subcommand(evaluate)) {
      EdgePolicy policy{detail::parse_sm_source(ev_sm),
                        detail::parse_icp_source(ev_icp), ev_self};
      const MonolithGraph graph =
          load_graph_json(read_file(ev_graph), &warnings);
      const Decomposition d =
          load_decomposition_json(read_file(ev_dec), graph, &warnings);
      flush_warnings();
      const MetricReport report = evaluate_decomposition(graph, d, policy);
      emit(ev_out, render_report(report, parse_render_format(ev_format)));
      return 0;
    }

    if (app.got_subcommand(compare)) {
      const bool metrics_mode = !cp_metrics.empty();
      const bool graph_mode = !cp_graph.empty() || !cp_dir.empty();
      if (metrics_mode == graph_mode)
        throw detail::UsageError{
            "compare needs either --metrics or --graph with "
            "--decompositions"};
      if (graph_mode && (cp_graph.empty() || cp_dir.empty()))
        throw detail::UsageError{
            "compare with --graph also needs --decompositions (and vice "
            "versa)"};
      const WeightVector weights = cp_weights_text.empty()
                                       ? WeightVector{}
                                       : detail::parse_weights_flag(
                                             cp_weights_text);
      const StdConvention convention = cp_std == "sample"
                                           ? StdConvention::sample
                                           : StdConvention::population;
      std::vector<MetricRow> rows;
      std::vector<std::string> incomplete;
      std::string benchmark = cp_benchmark;
      if (metrics_mode) {
        const MetricTable table =
            load_metric_csv(read_file(cp_metrics), &warnings);
        rows = table.rows;
        incomplete = table.incomplete;
        if (benchmark.empty())
          benchmark = std::filesystem::path(cp_metrics).stem().string();
      } else {
        EdgePolicy policy{detail::parse_sm_source(cp_sm),
                          detail::parse_icp_source(cp_icp), cp_self};
        const MonolithGraph graph =
            load_graph_json(read_file(cp_graph), &warnings);
        for (const std::filesystem::path& path : list_json_files(cp_dir)) {
          const Decomposition d =
              load_decomposition_json(read_file(path), graph, &warnings);
          const MetricReport r = evaluate_decomposition(graph, d, policy);
          MetricRow row;
          row.tool = d.tool.empty() ? path.stem().string() : d.tool;
          row.sm = r.sm.sm;
          row.ifn = r.ifn.ifn;
          row.icp = r.icp.aggregate;
          row.ned = r.ned.ned;
          row.micro = static_cast<std::int64_t>(r.micro);
          rows.push_back(std::move(row));
        }
        if (benchmark.empty()) benchmark = graph.name();
      }
      flush_warnings();
      ScoreTable table =
          composite_scores(benchmark, rows, weights, convention);
      table.not_scored = std::move(incomplete);
      emit(cp_out, render_table(table, parse_render_format(cp_format)));
      return 0;
    }

    if (app.got_subcommand(decompose)) {
      const MonolithGraph graph =
          load_graph_json(read_file(dc_graph), &warnings);
      flush_warnings();
      Decomposition d;
      if (dc_algo == "monolith") {
        d = decompose_monolith(graph);
      } else if (dc_algo == "singletons") {
        d = decompose_singletons(graph);
      } else if (dc_algo == "random") {
        if (decompose->count("--k") == 0)
          throw detail::UsageError{"--algo random needs --k"};
        d = decompose_random(graph, dc_k, dc_seed);
      } else if (dc_algo == "hillclimb") {
        HillClimbParams params;
        params.restarts = dc_restarts;
        params.max_iterations = dc_max_iter;
        params.seed = dc_seed;
        if (decompose->count("--min-services"))
          params.min_services = dc_min_services;
        if (decompose->count("--max-services"))
          params.max_services = dc_max_services;
        d = decompose_hillclimb(graph, params);
      } else {
        HierarchicalParams params;
        params.linkage = detail::parse_linkage(dc_linkage);
        if (decompose->count("--threshold"))
          params.distance_threshold = dc_threshold;
        if (decompose->count("--clusters"))
          params.target_clusters = dc_clusters;
        params.min_cluster_size = dc_min_cluster;
        d = decompose_hierarchical(graph, params);
      }
      emit(dc_out, save_decomposition_json(d));
      return 0;
    }

    if (app.got_subcommand(generate)) {
      PlantedSpec spec;
      spec.name = gn_name;
      spec.services = gn_services;
      const auto sizes = detail::parse_range_flag(gn_sizes, "--size-range");
      spec.size_range = {sizes.first, sizes.second};
      spec.p_intra = gn_p_intra;
      spec.p_inter = gn_p_inter;
      if (generate->count("--runtime")) {
        const auto counts = detail::parse_range_flag(gn_runtime, "--runtime");
        spec.runtime_count_range = {static_cast<std::int64_t>(counts.first),
                                    static_cast<std::int64_t>(counts.second)};
      }
      spec.seed = gn_seed;
      const PlantedInstance instance = generate_planted(spec);
      write_file(gn_out, save_graph_json(instance.graph));
      write_file(gn_truth, save_decomposition_json(instance.truth));
      return 0;
    }
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.message << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace decomp
