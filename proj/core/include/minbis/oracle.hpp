#pragma once

#include <cstdint>
#include <vector>

#include "minbis/cut.hpp"
#include "minbis/graph.hpp"

namespace minbis {

constexpr int kExactMaxVertices = 28;

struct ExactResult {
  long long width = 0;
  Cut witness;
  long long explored = 0;  // search nodes visited; varies with thread count
};

// Minimum bisection by depth-first search over balanced partitions with
// vertex 0 fixed on side 1. Accepts any multigraph with even n <= 28.
// Width and witness are independent of the thread count.
ExactResult exact_bisection(const Multigraph& g, int threads = 1);

// Unpruned enumeration of every balanced subset containing vertex 0.
ExactResult naive_bisection(const Multigraph& g);

struct HeuristicRow {
  std::uint64_t seed = 0;
  long long exact = 0;
  long long wave = 0;
  long long local = 0;
  bool local_monotone = true;
};

struct HeuristicReport {
  int n = 0;
  std::vector<HeuristicRow> rows;
  int violations = 0;  // heuristic below the exact width
  int non_monotone = 0;
  double mean_gap_wave = 0;  // mean (wave - exact) / exact over rows with exact > 0
  double mean_gap_local = 0;
};

HeuristicReport exact_vs_heuristic(int batch, int n, std::uint64_t seed, int threads = 1);

}  // namespace minbis
