#include "minbis/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace minbis {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  // FNV-1a over the tag, then mixed with the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + 0x632be59bd9b4e019ULL * (index + 1));
}

Configuration sample_configuration(int n, std::uint64_t seed) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("sample_configuration: n must be even and positive");
  const int points = 3 * n;
  std::vector<std::int32_t> order(static_cast<std::size_t>(points));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(seed, "configuration"));
  std::shuffle(order.begin(), order.end(), rng);

  Configuration c;
  c.n = n;
  c.partner.assign(static_cast<std::size_t>(points), -1);
  for (int i = 0; i < points; i += 2) {
    auto a = order[static_cast<std::size_t>(i)];
    auto b = order[static_cast<std::size_t>(i) + 1];
    c.partner[static_cast<std::size_t>(a)] = b;
    c.partner[static_cast<std::size_t>(b)] = a;
  }
  return c;
}

bool is_valid_configuration(const Configuration& c) {
  if (c.n <= 0 || c.n % 2 != 0) return false;
  if (c.partner.size() != static_cast<std::size_t>(3 * c.n)) return false;
  for (std::size_t p = 0; p < c.partner.size(); ++p) {
    auto q = c.partner[p];
    if (q < 0 || static_cast<std::size_t>(q) >= c.partner.size()) return false;
    if (static_cast<std::size_t>(q) == p) return false;
    if (static_cast<std::size_t>(c.partner[static_cast<std::size_t>(q)]) != p) return false;
  }
  return true;
}

Multigraph::Multigraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("Multigraph: negative vertex count");
  std::vector<std::int32_t> deg(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw std::invalid_argument("Multigraph: edge endpoint out of range");
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
  incidences_.assign(static_cast<std::size_t>(offsets_.back()), 0);
  std::vector<std::int32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    incidences_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.u)]++)] = static_cast<EdgeId>(id);
    incidences_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.v)]++)] = static_cast<EdgeId>(id);
  }
}

bool Multigraph::is_regular(int d) const {
  for (int v = 0; v < n_; ++v)
    if (degree(v) != d) return false;
  return true;
}

std::vector<std::pair<VertexId, VertexId>> Multigraph::canonical_pairs() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(out.begin(), out.end());
  return out;
}

Multigraph to_multigraph(const Configuration& c) {
  std::vector<Edge> edges;
  edges.reserve(c.partner.size() / 2);
  for (std::size_t p = 0; p < c.partner.size(); ++p) {
    auto q = static_cast<std::size_t>(c.partner[p]);
    if (p < q) edges.push_back({static_cast<VertexId>(p / 3), static_cast<VertexId>(q / 3)});
  }
  return Multigraph(c.n, std::move(edges));
}

Multigraph sample_cubic_graph(int n, std::uint64_t seed, bool simple) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto s = attempt == 0 ? seed : derive_seed(seed, attempt);
    auto g = to_multigraph(sample_configuration(n, s));
    if (!simple || is_simple(g)) return g;
    if (attempt > 100000) throw std::runtime_error("sample_cubic_graph: no simple graph after 100000 attempts");
  }
}

bool is_simple(const Multigraph& g) {
  auto pairs = g.canonical_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i].second) return false;
    if (i > 0 && pairs[i] == pairs[i - 1]) return false;
  }
  return true;
}

std::vector<VertexId> ball(const Multigraph& g, VertexId v, int r) {
  if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("ball: vertex out of range");
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<VertexId> out{v};
  dist[static_cast<std::size_t>(v)] = 0;
  for (std::size_t head = 0; head < out.size(); ++head) {
    auto x = out[head];
    if (dist[static_cast<std::size_t>(x)] == r) continue;
    for (auto e : g.incident(x)) {
      auto y = g.edge(e).other(x);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// BFS from the root where every vertex remembers the root edge its tree path
// starts with. A non-tree edge between two different branches closes a
// cycle through the root of length d(x) + d(y) + 1, and the shortest such
// cycle is always witnessed within depth floor(L/2).
class CycleProbe {
 public:
  explicit CycleProbe(const Multigraph& g)
      : g_(g),
        dist_(static_cast<std::size_t>(g.num_vertices()), -1),
        branch_(static_cast<std::size_t>(g.num_vertices()), -1),
        parent_edge_(static_cast<std::size_t>(g.num_vertices()), -1) {}

  int shortest(VertexId root, int max_length) {
    int best = -1;
    auto offer = [&](int len) {
      if (len <= max_length && (best < 0 || len < best)) best = len;
    };
    for (auto e : g_.incident(root))
      if (g_.edge(e).is_loop()) offer(1);
    if (best == 1 || max_length < 2) return best;

    const int depth = max_length / 2;
    queue_.clear();
    queue_.push_back(root);
    dist_[static_cast<std::size_t>(root)] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      auto x = queue_[head];
      auto dx = dist_[static_cast<std::size_t>(x)];
      if (best >= 0 && 2 * dx >= best) break;
      for (auto e : g_.incident(x)) {
        if (e == parent_edge_[static_cast<std::size_t>(x)]) continue;
        const auto& edge = g_.edge(e);
        if (edge.is_loop()) continue;
        auto y = edge.other(x);
        auto label = x == root ? e : branch_[static_cast<std::size_t>(x)];
        auto dy = dist_[static_cast<std::size_t>(y)];
        if (dy < 0) {
          if (dx + 1 > depth) continue;
          dist_[static_cast<std::size_t>(y)] = dx + 1;
          branch_[static_cast<std::size_t>(y)] = label;
          parent_edge_[static_cast<std::size_t>(y)] = e;
          queue_.push_back(y);
        } else if (y == root) {
          offer(dx + 1);
        } else if (branch_[static_cast<std::size_t>(y)] != label) {
          offer(dx + dy + 1);
        }
      }
    }
    for (auto x : queue_) {
      dist_[static_cast<std::size_t>(x)] = -1;
      branch_[static_cast<std::size_t>(x)] = -1;
      parent_edge_[static_cast<std::size_t>(x)] = -1;
    }
    return best;
  }

 private:
  const Multigraph& g_;
  std::vector<int> dist_;
  std::vector<EdgeId> branch_;
  std::vector<EdgeId> parent_edge_;
  std::vector<VertexId> queue_;
};

}  // namespace

int shortest_cycle_through(const Multigraph& g, VertexId v, int max_length) {
  if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("shortest_cycle_through: vertex out of range");
  CycleProbe probe(g);
  return probe.shortest(v, max_length);
}

int count_short_cycle_vertices(const Multigraph& g, int max_length) {
  if (max_length < 1) throw std::invalid_argument("count_short_cycle_vertices: L must be >= 1");
  CycleProbe probe(g);
  int count = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (probe.shortest(v, max_length) >= 0) ++count;
  return count;
}

bool is_typical(const Multigraph& g, int max_length) {
  if (g.num_vertices() < 2) throw std::invalid_argument("is_typical: n must be >= 2");
  return count_short_cycle_vertices(g, max_length) <= std::log(static_cast<double>(g.num_vertices()));
}

InducedSubgraph two_core(const Multigraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<VertexId> stack;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree(static_cast<VertexId>(v));
    if (deg[v] <= 1) {
      removed[v] = 1;
      stack.push_back(static_cast<VertexId>(v));
    }
  }
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto e : g.incident(x)) {
      auto y = static_cast<std::size_t>(g.edge(e).other(x));
      if (removed[y]) continue;
      if (--deg[y] <= 1) {
        removed[y] = 1;
        stack.push_back(static_cast<VertexId>(y));
      }
    }
  }

  InducedSubgraph out;
  std::vector<VertexId> relabel(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) {
      relabel[v] = static_cast<VertexId>(out.vertices.size());
      out.vertices.push_back(static_cast<VertexId>(v));
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    auto a = relabel[static_cast<std::size_t>(e.u)];
    auto b = relabel[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) edges.push_back({a, b});
  }
  out.graph = Multigraph(static_cast<int>(out.vertices.size()), std::move(edges));
  return out;
}

std::vector<CherryRef> cherries(const Multigraph& g) {
  std::vector<CherryRef> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        out.push_back({v, g.edge(inc[i]).other(v), g.edge(inc[j]).other(v), inc[i], inc[j]});
  }
  return out;
}

void write_edge_list(std::ostream& out, const Multigraph& g) {
  auto pairs = g.canonical_pairs();
  out << g.num_vertices() << ' ' << pairs.size() << '\n';
  for (const auto& [u, v] : pairs) out << u << ' ' << v << '\n';
}

Multigraph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("edge list: malformed header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge list: endpoint out of range");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("edge list: trailing data");
  return Multigraph(static_cast<int>(n), std::move(edges));
}

std::string to_edge_list_string(const Multigraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

Multigraph from_edge_list_string(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

}  // namespace minbis
