#pragma once

#include <utility>
#include <vector>

#include "minbis/cut.hpp"
#include "minbis/graph.hpp"
#include "minbis/wavecut.hpp"

namespace minbis {

inline bool positive_sign(double x) { return x >= 0.0; }

std::vector<CherryRef> border_cherries(const Multigraph& g, const WaveField& f);

// Bipartite graph on the centers of exactly one border cherry. Edges are the
// crossing edges of the sign cut with both ends retained, so parallel edges
// of g stay parallel here.
struct BorderGraph {
  std::vector<VertexId> side1;
  std::vector<VertexId> side2;
  std::vector<std::pair<VertexId, VertexId>> edges;  // (side1 vertex, side2 vertex)

  int degree(VertexId v) const;
  std::vector<VertexId> isolated() const;
  // The same graph without the given vertices (and their edges).
  BorderGraph without(const std::vector<VertexId>& removed) const;
};

BorderGraph build_border_graph(const Multigraph& g, const WaveField& f);

// Throws std::invalid_argument unless h is bipartite between its sides with
// maximum degree 2 and no repeated vertex.
void validate_border_graph(const BorderGraph& h);

struct IndependentSplit {
  std::vector<VertexId> in1;  // subset of side1
  std::vector<VertexId> in2;  // subset of side2
};

// Independent set with |I1| >= ceil(|side1|/2) - 1 and |I2| >= ceil(|side2|/2) - 1.
// With saturate, vertices that can still be added without conflict are
// added at the end.
IndependentSplit independent_split(const BorderGraph& h, bool saturate = true);

Cut isolated_switch(const Multigraph& g, const Cut& c, const BorderGraph& h);

}  // namespace minbis
