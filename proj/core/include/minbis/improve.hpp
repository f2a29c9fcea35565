#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minbis/cut.hpp"
#include "minbis/graph.hpp"

namespace minbis {

struct MoveBudget {
  int max_set_size = 8;
  long long max_rounds = 1'000'000;
  std::uint64_t rng_seed = 0;  // used for random initial cuts
  bool verify = false;         // recount the cut after every accepted exchange
};

enum class Shape { Singleton, Chain, Star, Neighborhood };
std::string to_string(Shape s);

struct Candidate {
  std::vector<VertexId> vertices;  // ascending
  int side = 1;
  Shape shape = Shape::Singleton;
  SetClass cls;
};

// Catalog sets on one side: singletons, runs of degree-two-in-part vertices,
// a vertex with all its in-part neighbours, and a vertex with the
// degree-two runs hanging off it. Sorted by (gain desc, size asc, min id).
std::vector<Candidate> enumerate_candidates(const Multigraph& g, const Cut& c, int side,
                                            const MoveBudget& budget = {});

struct Exchange {
  std::vector<VertexId> s1;  // moves from side 1 to side 2
  std::vector<VertexId> s2;  // moves from side 2 to side 1
  long long gain = 0;        // crossing decrease
};

std::optional<Exchange> find_improvement(const Multigraph& g, const Cut& c, const MoveBudget& budget = {});

struct RoundRecord {
  long long round = 0;
  long long cut_size = 0;
  long long move_gain = 0;
  int size1 = 0;
  int size2 = 0;
};

struct LocalSearchResult {
  Cut cut;
  std::vector<RoundRecord> trace;
  int sweeps = 0;
};

LocalSearchResult local_search_traced(const Multigraph& g, const Cut& c, const MoveBudget& budget = {});
Cut local_search(const Multigraph& g, const Cut& c, const MoveBudget& budget = {});

}  // namespace minbis
