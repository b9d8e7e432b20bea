#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "plancanon/generators.hpp"
#include "plancanon/khc.hpp"

namespace plancanon {

struct BenchRow {
  int n = 0;
  double preprocess_ms = 0;  // planarity test and both decompositions
  double code_ms = 0;        // canonical code from the decomposition
};

// Edge target of the benchmark graphs: 2n, clamped to what a connected
// planar graph on n nodes allows.
inline int bench_edge_target(int n) {
  const int upper = n >= 3 ? 3 * n - 6 : n - 1;
  return std::max(n - 1, std::min(2 * n, upper));
}

inline std::vector<BenchRow> bench(const std::vector<int>& sizes, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  std::vector<BenchRow> rows;
  for (int n : sizes) {
    if (n < 1) throw ArgumentError("bench sizes must be positive");
    Graph g = gen_random_planar(n, bench_edge_target(n), derive_seed(seed, static_cast<std::uint64_t>(n)));
    const auto t0 = clock::now();
    GraphDecomposition d = decompose(g);
    const auto t1 = clock::now();
    Code c = graph_code(d);
    const auto t2 = clock::now();
    rows.push_back(BenchRow{n, ms(t0, t1), ms(t1, t2)});
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "n,preprocess_ms,code_ms\n";
  for (const auto& r : rows) out << r.n << ',' << r.preprocess_ms << ',' << r.code_ms << '\n';
  return out.str();
}

}  // namespace plancanon
