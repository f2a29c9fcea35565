#include "minbis/border.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace minbis {

std::vector<CherryRef> border_cherries(const Multigraph& g, const WaveField& f) {
  if (f.values.size() != static_cast<std::size_t>(g.num_vertices())) throw std::invalid_argument("border_cherries: field size differs from n");
  auto sgn = [&](VertexId v) { return positive_sign(f.values[static_cast<std::size_t>(v)]); };
  std::vector<CherryRef> out;
  for (const auto& ch : cherries(g))
    if (sgn(ch.center) != sgn(ch.end1) && sgn(ch.center) != sgn(ch.end2)) out.push_back(ch);
  return out;
}

int BorderGraph::degree(VertexId v) const {
  int d = 0;
  for (const auto& [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

std::vector<VertexId> BorderGraph::isolated() const {
  std::unordered_map<VertexId, int> deg;
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  std::vector<VertexId> out;
  for (const auto* side : {&side1, &side2})
    for (auto v : *side)
      if (!deg.contains(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

BorderGraph BorderGraph::without(const std::vector<VertexId>& removed) const {
  std::vector<VertexId> r(removed);
  std::sort(r.begin(), r.end());
  auto gone = [&](VertexId v) { return std::binary_search(r.begin(), r.end(), v); };
  BorderGraph out;
  for (auto v : side1)
    if (!gone(v)) out.side1.push_back(v);
  for (auto v : side2)
    if (!gone(v)) out.side2.push_back(v);
  for (const auto& e : edges)
    if (!gone(e.first) && !gone(e.second)) out.edges.push_back(e);
  return out;
}

BorderGraph build_border_graph(const Multigraph& g, const WaveField& f) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (f.values.size() != n) throw std::invalid_argument("build_border_graph: field size differs from n");
  std::vector<int> border_count(n, 0);
  for (const auto& ch : border_cherries(g, f)) ++border_count[static_cast<std::size_t>(ch.center)];

  BorderGraph h;
  for (std::size_t v = 0; v < n; ++v) {
    if (border_count[v] != 1) continue;
    (positive_sign(f.values[v]) ? h.side1 : h.side2).push_back(static_cast<VertexId>(v));
  }
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    auto su = positive_sign(f.values[static_cast<std::size_t>(e.u)]);
    auto sv = positive_sign(f.values[static_cast<std::size_t>(e.v)]);
    if (su == sv) continue;
    if (border_count[static_cast<std::size_t>(e.u)] != 1 || border_count[static_cast<std::size_t>(e.v)] != 1) continue;
    h.edges.emplace_back(su ? e.u : e.v, su ? e.v : e.u);
  }
  return h;
}

void validate_border_graph(const BorderGraph& h) {
  std::unordered_map<VertexId, int> part;
  for (auto v : h.side1)
    if (!part.emplace(v, 0).second) throw std::invalid_argument("border graph: repeated vertex");
  for (auto v : h.side2)
    if (!part.emplace(v, 1).second) throw std::invalid_argument("border graph: vertex on both sides or repeated");
  std::unordered_map<VertexId, int> deg;
  for (const auto& [a, b] : h.edges) {
    auto ia = part.find(a), ib = part.find(b);
    if (ia == part.end() || ib == part.end()) throw std::invalid_argument("border graph: edge endpoint is not a vertex");
    if (ia->second != 0 || ib->second != 1) throw std::invalid_argument("border graph: edge does not join side1 to side2");
    if (++deg[a] > 2 || ++deg[b] > 2) throw std::invalid_argument("border graph: degree exceeds 2");
  }
}

namespace {

// Local view of h: vertices 0..m-1 with part 0 (side1) or 1 (side2).
struct Local {
  std::vector<VertexId> id;
  std::vector<int> part;
  std::vector<std::vector<int>> adj;
};

Local localize(const BorderGraph& h) {
  Local L;
  std::unordered_map<VertexId, int> index;
  for (int p = 0; p < 2; ++p)
    for (auto v : p == 0 ? h.side1 : h.side2) {
      index.emplace(v, static_cast<int>(L.id.size()));
      L.id.push_back(v);
      L.part.push_back(p);
    }
  L.adj.resize(L.id.size());
  for (const auto& [a, b] : h.edges) {
    int x = index.at(a), y = index.at(b);
    L.adj[static_cast<std::size_t>(x)].push_back(y);
    L.adj[static_cast<std::size_t>(y)].push_back(x);
  }
  return L;
}

// Walks a path from an end vertex, or a cycle from any vertex.
std::vector<int> trace_component(const Local& L, int start) {
  std::vector<int> seq{start};
  int prev = -1, cur = start;
  while (true) {
    const auto& nb = L.adj[static_cast<std::size_t>(cur)];
    int next = -1;
    for (int w : nb)
      if (w != prev) {
        next = w;
        break;
      }
    if (next < 0 || next == start) break;
    seq.push_back(next);
    prev = cur;
    cur = next;
  }
  return seq;
}

}  // namespace

IndependentSplit independent_split(const BorderGraph& h, bool saturate) {
  validate_border_graph(h);
  const Local L = localize(h);
  const int m = static_cast<int>(L.id.size());
  std::vector<char> in(static_cast<std::size_t>(m), 0);
  auto deg = [&](int v) { return static_cast<int>(L.adj[static_cast<std::size_t>(v)].size()); };

  // Isolated vertices can always join.
  for (int v = 0; v < m; ++v)
    if (deg(v) == 0) in[static_cast<std::size_t>(v)] = 1;

  // Split the rest into cycles and even-length paths (odd vertex count).
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> cycles, paths;
  auto mark = [&](const std::vector<int>& seq) {
    for (int v : seq) seen[static_cast<std::size_t>(v)] = 1;
  };
  for (int v = 0; v < m; ++v) {
    if (seen[static_cast<std::size_t>(v)] || deg(v) != 1) continue;
    auto seq = trace_component(L, v);
    mark(seq);
    // Odd-length paths are closed into cycles by joining their ends.
    (seq.size() % 2 == 0 ? cycles : paths).push_back(std::move(seq));
  }
  for (int v = 0; v < m; ++v) {
    if (seen[static_cast<std::size_t>(v)] || deg(v) != 2) continue;
    auto seq = trace_component(L, v);
    mark(seq);
    cycles.push_back(std::move(seq));
  }

  // The part with more path ends becomes the primary part A.
  std::vector<std::vector<int>> pa, pb;
  for (auto& p : paths) (L.part[static_cast<std::size_t>(p.front())] == 0 ? pa : pb).push_back(std::move(p));
  const int primary = pa.size() >= pb.size() ? 0 : 1;
  if (primary == 1) std::swap(pa, pb);
  auto by_size = [](const auto& x, const auto& y) { return x.size() != y.size() ? x.size() < y.size() : x < y; };
  std::sort(pa.begin(), pa.end(), by_size);
  std::sort(pb.begin(), pb.end(), by_size);

  // The largest A-paths alternate with the B-paths into one long cycle.
  const std::size_t keep = pa.size() - pb.size();
  if (!pb.empty()) {
    std::vector<int> joined;
    for (std::size_t i = 0; i < pb.size(); ++i) {
      joined.insert(joined.end(), pa[keep + i].begin(), pa[keep + i].end());
      joined.insert(joined.end(), pb[i].begin(), pb[i].end());
    }
    cycles.push_back(std::move(joined));
  }
  pa.resize(keep);

  // Every cycle starts on the primary part so that even positions are A.
  for (auto& c : cycles)
    if (L.part[static_cast<std::size_t>(c.front())] != primary) std::rotate(c.begin(), c.begin() + 1, c.end());

  int count_a = 0;
  for (int v = 0; v < m; ++v)
    if (deg(v) > 0 && L.part[static_cast<std::size_t>(v)] == primary) ++count_a;
  const int target = (count_a + 1) / 2 - 1;
  auto add = [&](int v) { in[static_cast<std::size_t>(v)] = 1; };

  int taken = 0;
  int path_a = 0;
  for (const auto& p : pa) path_a += static_cast<int>(p.size() + 1) / 2;

  if (path_a <= target) {
    for (const auto& p : pa)
      for (std::size_t i = 0; i < p.size(); i += 2) add(p[i]);
    taken = path_a;
    for (const auto& c : cycles) {
      const int s = static_cast<int>(c.size()) / 2;
      if (taken >= target) {
        for (int i = 1; i < 2 * s; i += 2) add(c[static_cast<std::size_t>(i)]);
        continue;
      }
      int j = 0;
      while (j < s && taken < target) {
        add(c[static_cast<std::size_t>(2 * j)]);
        ++taken;
        ++j;
      }
      // Skip the next A vertex, then take every B vertex up to the one
      // before the wrap-around back to c[0].
      if (j < s)
        for (int i = 2 * j + 1; i <= 2 * s - 3; i += 2) add(c[static_cast<std::size_t>(i)]);
    }
  } else {
    for (const auto& p : pa)
      for (std::size_t i = 0; i < p.size() && taken < target; i += 2) {
        add(p[i]);
        ++taken;
      }
    for (int v = 0; v < m; ++v) {
      if (deg(v) == 0 || L.part[static_cast<std::size_t>(v)] == primary) continue;
      bool free = true;
      for (int w : L.adj[static_cast<std::size_t>(v)]) free = free && !in[static_cast<std::size_t>(w)];
      if (free) add(v);
    }
  }

  if (saturate) {
    for (int v = 0; v < m; ++v) {
      if (in[static_cast<std::size_t>(v)]) continue;
      bool free = true;
      for (int w : L.adj[static_cast<std::size_t>(v)]) free = free && !in[static_cast<std::size_t>(w)];
      if (free) add(v);
    }
  }

  IndependentSplit out;
  for (int v = 0; v < m; ++v) {
    if (!in[static_cast<std::size_t>(v)]) continue;
    (L.part[static_cast<std::size_t>(v)] == 0 ? out.in1 : out.in2).push_back(L.id[static_cast<std::size_t>(v)]);
  }
  std::sort(out.in1.begin(), out.in1.end());
  std::sort(out.in2.begin(), out.in2.end());
  return out;
}

Cut isolated_switch(const Multigraph& g, const Cut& c, const BorderGraph& h) {
  Cut out = c;
  for (auto v : h.isolated()) {
    int d = flip_delta(g, out, v);
    if (d < 0) out.flip(v, d);
  }
  return out;
}

}  // namespace minbis
