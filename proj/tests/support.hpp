#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "minbis/border.hpp"
#include "minbis/graph.hpp"

namespace testing_support {

using minbis::Edge;
using minbis::Multigraph;
using minbis::VertexId;

inline Multigraph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b});
  return Multigraph(n, std::move(edges));
}

inline Multigraph complete4() { return from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

inline Multigraph cycle(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i) p.push_back({i, (i + 1) % n});
  return from_pairs(n, p);
}

// Two triangles 0-1-2 and 3-4-5 joined by the matching i -- i+3.
inline Multigraph prism() {
  return from_pairs(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

// Two triangles joined by a crossed matching.
inline Multigraph crossed_prism() {
  return from_pairs(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 4}, {1, 5}, {2, 3}});
}

inline Multigraph k33() {
  std::vector<std::pair<int, int>> p;
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) p.push_back({a, b});
  return from_pairs(6, p);
}

// The 3-cube: vertex i adjacent to i ^ 1, i ^ 2, i ^ 4.
inline Multigraph cube() {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < 8; ++i)
    for (int b : {1, 2, 4})
      if (i < (i ^ b)) p.push_back({i, i ^ b});
  return from_pairs(8, p);
}

// Arbitrary multigraph with loops and parallel edges allowed.
inline Multigraph random_multigraph(int n, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({pick(rng), pick(rng)});
  return Multigraph(n, std::move(edges));
}

inline Multigraph relabel(const Multigraph& g, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]});
  return Multigraph(g.num_vertices(), std::move(edges));
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Random bipartite graph with maximum degree 2: sides of the given sizes,
// built from disjoint paths and even cycles alternating between the sides,
// plus some parallel pairs and isolated vertices.
inline minbis::BorderGraph random_border_graph(int size1, int size2, std::mt19937_64& rng) {
  minbis::BorderGraph h;
  for (int i = 0; i < size1; ++i) h.side1.push_back(2 * i);
  for (int i = 0; i < size2; ++i) h.side2.push_back(2 * i + 1);
  std::vector<VertexId> a = h.side1, b = h.side2;
  std::shuffle(a.begin(), a.end(), rng);
  std::shuffle(b.begin(), b.end(), rng);
  std::size_t ia = 0, ib = 0;
  std::uniform_int_distribution<int> kind(0, 4), len(1, 6);
  while (ia < a.size() && ib < b.size()) {
    const int k = kind(rng);
    if (k == 0) {  // leave one vertex isolated
      if (rng() & 1) ++ia;
      else ++ib;
      continue;
    }
    if (k == 1) {  // double edge
      h.edges.push_back({a[ia], b[ib]});
      h.edges.push_back({a[ia], b[ib]});
      ++ia, ++ib;
      continue;
    }
    // alternating walk; k == 2 closes it into a cycle when possible
    const int want = len(rng);
    std::vector<std::pair<VertexId, VertexId>> path;
    const std::size_t sa = ia, sb = ib;
    bool start_a = rng() & 1;
    VertexId prev = -1;
    bool prev_is_a = false;
    for (int step = 0; step < 2 * want; ++step) {
      const bool use_a = (step % 2 == 0) == start_a;
      if (use_a && ia >= a.size()) break;
      if (!use_a && ib >= b.size()) break;
      const VertexId v = use_a ? a[ia++] : b[ib++];
      if (prev >= 0) {
        path.push_back(prev_is_a ? std::make_pair(prev, v) : std::make_pair(v, prev));
      }
      prev = v;
      prev_is_a = use_a;
    }
    const std::size_t used_a = ia - sa, used_b = ib - sb;
    if (k == 2 && used_a == used_b && used_a >= 2) {
      // close the even cycle: first vertex and last vertex are on opposite sides
      const VertexId first = start_a ? a[sa] : b[sb];
      path.push_back(start_a ? std::make_pair(first, prev) : std::make_pair(prev, first));
    }
    h.edges.insert(h.edges.end(), path.begin(), path.end());
  }
  return h;
}

}  // namespace testing_support
