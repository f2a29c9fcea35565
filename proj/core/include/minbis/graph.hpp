#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace minbis {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

// Derives an independent 64-bit seed for a named subsystem from a global seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// A perfect matching on 3n points; point p lives in bucket p / 3.
struct Configuration {
  int n = 0;
  std::vector<std::int32_t> partner;
};

Configuration sample_configuration(int n, std::uint64_t seed);
bool is_valid_configuration(const Configuration& c);

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  bool is_loop() const { return u == v; }
  VertexId other(VertexId x) const { return x == u ? v : u; }
};

// Undirected multigraph with stable edge ids. A loop appears twice in the
// incidence list of its vertex, so degree(v) == incident(v).size().
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const EdgeId> incident(VertexId v) const {
    auto b = offsets_[static_cast<std::size_t>(v)];
    auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {incidences_.data() + b, static_cast<std::size_t>(e - b)};
  }
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
  bool is_regular(int d) const;

  bool operator==(const Multigraph& o) const { return n_ == o.n_ && canonical_pairs() == o.canonical_pairs(); }

  // Sorted list of (min, max) endpoint pairs, the canonical form used for I/O.
  std::vector<std::pair<VertexId, VertexId>> canonical_pairs() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> offsets_{0};
  std::vector<EdgeId> incidences_;
};

Multigraph to_multigraph(const Configuration& c);
// Draws configurations until the multigraph is simple.
Multigraph sample_cubic_graph(int n, std::uint64_t seed, bool simple = false);

bool is_simple(const Multigraph& g);
std::vector<VertexId> ball(const Multigraph& g, VertexId v, int r);
int count_short_cycle_vertices(const Multigraph& g, int max_length);
// Length of the shortest cycle through v, or -1 if none has length <= max_length.
int shortest_cycle_through(const Multigraph& g, VertexId v, int max_length);
bool is_typical(const Multigraph& g, int max_length = 20);

struct InducedSubgraph {
  std::vector<VertexId> vertices;  // original ids, ascending
  Multigraph graph;                // relabeled 0..k-1 in the same order
};
InducedSubgraph two_core(const Multigraph& g);

struct CherryRef {
  VertexId center = 0;
  VertexId end1 = 0;
  VertexId end2 = 0;
  EdgeId edge1 = 0;
  EdgeId edge2 = 0;
};
// One cherry per unordered pair of incidence slots at each vertex. A loop
// occupies two slots, so the pair formed by its own two slots yields a
// cherry whose two edge ids coincide.
std::vector<CherryRef> cherries(const Multigraph& g);

void write_edge_list(std::ostream& out, const Multigraph& g);
Multigraph read_edge_list(std::istream& in);
std::string to_edge_list_string(const Multigraph& g);
Multigraph from_edge_list_string(const std::string& text);

}  // namespace minbis
