#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "plancanon/bench.hpp"
#include "plancanon/error.hpp"
#include "plancanon/export.hpp"
#include "plancanon/generators.hpp"
#include "plancanon/io.hpp"
#include "plancanon/iso.hpp"
#include "plancanon/khc.hpp"

namespace plancanon {

namespace detail {

// Applies fn to every item on a small worker pool; results keep the input
// order. The first failure (by input position) is rethrown.
template <typename T, typename Fn>
auto ordered_map(const std::vector<T>& items, Fn fn, unsigned workers = 0) {
  using R = decltype(fn(items.front()));
  std::vector<R> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(items.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const NotPlanarError& e) {
      std::string where = "graph " + std::to_string(i + 1) + " is not planar";
      if (!e.witness().empty()) {
        where += "; Kuratowski subgraph edges:";
        for (auto [u, v] : e.witness()) where += " " + std::to_string(u) + "-" + std::to_string(v);
      }
      throw NotPlanarError(where, e.witness());
    }
  }
  return results;
}

inline std::vector<Graph> load_graphs(const std::string& path, std::istream& in) {
  if (path == "-") return read_graphs(in);
  std::ifstream file(path);
  if (!file) throw Error("cannot open " + path);
  return read_graphs(file);
}

inline std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1 || v > INT32_MAX) throw std::invalid_argument(item);
      sizes.push_back(static_cast<int>(v));
    } catch (const std::exception&) {
      throw ArgumentError("invalid size '" + item + "' in --sizes");
    }
  }
  if (sizes.empty()) throw ArgumentError("--sizes needs at least one value");
  return sizes;
}

}  // namespace detail

// Entry point of the plancanon tool. Exit codes: 0 success, 1 domain error
// (parse, validation, non-planar input), 2 usage error.
inline int cli_main(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Canonical codes and decompositions of planar graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, file2, out_path, kind, format = "graph6", sizes = "2000,10000";
  int n = 1, count = 1;
  int m = -1;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  auto* canon = app.add_subcommand("canon", "print the canonical code of every graph in a file");
  canon->add_option("file", file, "graph6 or edge-list JSON lines, '-' for stdin")->required();
  canon->add_option("--threads", threads, "worker threads (default: hardware concurrency)");

  auto* iso = app.add_subcommand("iso", "decide isomorphism of the graphs on matching lines of two files");
  iso->add_option("file1", file, "first input")->required();
  iso->add_option("file2", file2, "second input")->required();

  auto* dec = app.add_subcommand("decompose", "write one decomposition record (JSON) per graph");
  dec->add_option("file", file, "graph6 or edge-list JSON lines, '-' for stdin")->required();
  dec->add_option("--out", out_path, "output file (default stdout)");
  dec->add_option("--threads", threads, "worker threads (default: hardware concurrency)");

  auto* gen = app.add_subcommand("gen", "generate graphs");
  gen->add_option("kind", kind, "p3r, planar or tree")->required()->check(CLI::IsMember({"p3r", "planar", "tree"}));
  gen->add_option("--n", n, "node count");
  gen->add_option("--m", m, "edge target for planar graphs (default 2n, clamped)");
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_option("--count", count, "number of graphs");
  gen->add_option("--format", format, "graph6 or json")->check(CLI::IsMember({"graph6", "json"}));

  auto* wl = app.add_subcommand("wl1", "print the stable 1-WL color histogram of every graph");
  wl->add_option("file", file, "graph6 or edge-list JSON lines, '-' for stdin")->required();

  auto* bench_cmd = app.add_subcommand("bench", "time decomposition and coding on random planar graphs");
  bench_cmd->add_option("--sizes", sizes, "comma separated node counts");
  bench_cmd->add_option("--seed", seed, "64-bit seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    if (*canon) {
      auto graphs = detail::load_graphs(file, in);
      auto codes = detail::ordered_map(graphs, [](const Graph& g) { return graph_code(g).to_string(); }, threads);
      for (const auto& c : codes) out << c << "\n";
    } else if (*iso) {
      auto a = detail::load_graphs(file, in);
      auto b = detail::load_graphs(file2, in);
      if (a.size() != b.size()) throw ArgumentError("iso inputs hold different numbers of graphs");
      std::vector<std::pair<Graph, Graph>> pairs;
      for (std::size_t i = 0; i < a.size(); ++i) pairs.emplace_back(a[i], b[i]);
      auto verdicts = detail::ordered_map(
          pairs, [](const std::pair<Graph, Graph>& p) { return is_isomorphic(p.first, p.second) ? 1 : 0; }, threads);
      for (int v : verdicts) out << (v ? "isomorphic" : "not isomorphic") << "\n";
    } else if (*dec) {
      auto graphs = detail::load_graphs(file, in);
      auto lines = detail::ordered_map(
          graphs, [](const Graph& g) { return serialize_record(export_decomposition(g)); }, threads);
      std::ofstream file_out;
      std::ostream* sink = &out;
      if (!out_path.empty()) {
        file_out.open(out_path);
        if (!file_out) throw Error("cannot write " + out_path);
        sink = &file_out;
      }
      for (const auto& l : lines) *sink << l << "\n";
    } else if (*gen) {
      GenSpec spec;
      spec.n = n;
      spec.seed = seed;
      spec.count = count;
      if (kind == "p3r") {
        spec.kind = GenSpec::Kind::kP3r;
      } else if (kind == "planar") {
        spec.kind = GenSpec::Kind::kRandomPlanar;
        spec.m = m >= 0 ? m : bench_edge_target(n);
      } else {
        spec.kind = GenSpec::Kind::kRandomTree;
      }
      const auto fmt = format == "json" ? GraphFormat::kEdgeList : GraphFormat::kGraph6;
      for (const auto& g : generate(spec)) out << serialize_graph(g, fmt) << "\n";
    } else if (*wl) {
      for (const auto& g : detail::load_graphs(file, in)) {
        const WlColoring c = wl1_histogram(g);
        nlohmann::json j = {{"rounds", c.rounds}, {"histogram", c.histogram}};
        out << j.dump() << "\n";
      }
    } else if (*bench_cmd) {
      out << bench_csv(bench(detail::parse_sizes(sizes), seed));
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out.flush();
  return 0;
}

}  // namespace plancanon
