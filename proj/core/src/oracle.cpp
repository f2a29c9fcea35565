#include "minbis/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>

#include "minbis/improve.hpp"
#include "minbis/pipeline.hpp"
#include "minbis/wavecut.hpp"

namespace minbis {

namespace {

void check_size(const Multigraph& g, int limit, const char* who) {
  const int n = g.num_vertices();
  if (n % 2 != 0) throw std::invalid_argument(std::string(who) + ": n must be even");
  if (n > limit) throw std::invalid_argument(std::string(who) + ": n exceeds " + std::to_string(limit));
}

// Breadth-first order over all components so that most vertices already
// have assigned neighbours when the search reaches them.
std::vector<VertexId> bfs_order(const Multigraph& g) {
  const int n = g.num_vertices();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> order;
  for (VertexId r = 0; r < n; ++r) {
    if (seen[static_cast<std::size_t>(r)]) continue;
    std::queue<VertexId> q;
    q.push(r);
    seen[static_cast<std::size_t>(r)] = 1;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      order.push_back(v);
      for (auto e : g.incident(v)) {
        auto w = g.edge(e).other(v);
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
      }
    }
  }
  return order;
}

class Searcher {
 public:
  Searcher(const std::vector<std::vector<int>>& adj, int half, std::atomic<long long>& shared, long long local_best)
      : adj_(adj), half_(half), shared_(shared), best_(local_best), c_(adj.size(), {0, 0}), side_(adj.size(), 0) {}

  void assign(int pos, int s) {
    const int i = s - 1;
    auto& cp = c_[static_cast<std::size_t>(pos)];
    partial_ += cp[static_cast<std::size_t>(1 - i)];
    sum_min_ -= std::min(cp[0], cp[1]);
    side_[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(s);
    ++count_[static_cast<std::size_t>(i)];
    for (int w : adj_[static_cast<std::size_t>(pos)]) {
      if (side_[static_cast<std::size_t>(w)]) continue;
      auto& cw = c_[static_cast<std::size_t>(w)];
      const int old = std::min(cw[0], cw[1]);
      ++cw[static_cast<std::size_t>(i)];
      sum_min_ += std::min(cw[0], cw[1]) - old;
    }
  }

  void unassign(int pos) {
    const int i = side_[static_cast<std::size_t>(pos)] - 1;
    side_[static_cast<std::size_t>(pos)] = 0;
    for (int w : adj_[static_cast<std::size_t>(pos)]) {
      if (side_[static_cast<std::size_t>(w)]) continue;
      auto& cw = c_[static_cast<std::size_t>(w)];
      const int old = std::min(cw[0], cw[1]);
      --cw[static_cast<std::size_t>(i)];
      sum_min_ += std::min(cw[0], cw[1]) - old;
    }
    --count_[static_cast<std::size_t>(i)];
    auto& cp = c_[static_cast<std::size_t>(pos)];
    sum_min_ += std::min(cp[0], cp[1]);
    partial_ -= cp[static_cast<std::size_t>(1 - i)];
  }

  bool can_take(int s) const { return count_[static_cast<std::size_t>(s - 1)] < half_; }

  // A node is abandoned when it cannot beat this task's best, or cannot
  // match the best found anywhere. Keeping ties with the global value makes
  // the first optimal leaf of every task reachable, whatever the schedule.
  bool pruned() const {
    const long long lb = partial_ + sum_min_;
    return lb >= best_ || lb > shared_.load(std::memory_order_relaxed);
  }

  void run(int depth) {
    ++explored;
    const int n = static_cast<int>(adj_.size());
    if (depth == n) {
      if (partial_ < best_) {
        best_ = partial_;
        witness = side_;
        long long cur = shared_.load();
        while (partial_ < cur && !shared_.compare_exchange_weak(cur, partial_)) {
        }
      }
      return;
    }
    for (int s : {1, 2}) {
      if (!can_take(s)) continue;
      assign(depth, s);
      if (!pruned()) run(depth + 1);
      unassign(depth);
    }
  }

  long long best() const { return best_; }
  bool found() const { return !witness.empty(); }

  std::vector<std::uint8_t> witness;  // by position
  long long explored = 0;

 private:
  const std::vector<std::vector<int>>& adj_;
  int half_;
  std::atomic<long long>& shared_;
  long long best_;
  std::vector<std::array<int, 2>> c_;
  std::vector<std::uint8_t> side_;
  long long partial_ = 0, sum_min_ = 0;
  std::array<int, 2> count_{0, 0};
};

}  // namespace

ExactResult exact_bisection(const Multigraph& g, int threads) {
  check_size(g, kExactMaxVertices, "exact_bisection");
  if (threads < 1) throw std::invalid_argument("exact_bisection: threads must be >= 1");
  const int n = g.num_vertices();
  ExactResult res;
  if (n == 0) {
    res.witness = Cut(g, {});
    return res;
  }
  const auto order = bfs_order(g);
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    const int a = pos[static_cast<std::size_t>(e.u)], b = pos[static_cast<std::size_t>(e.v)];
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }

  auto to_cut = [&](const std::vector<std::uint8_t>& by_pos) {
    std::vector<std::uint8_t> sides(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) sides[static_cast<std::size_t>(v)] = by_pos[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])];
    return Cut(g, std::move(sides));
  };

  // Upper bound from the first half of the search order.
  std::vector<std::uint8_t> greedy(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) greedy[static_cast<std::size_t>(i)] = i < n / 2 ? 1 : 2;
  const long long greedy_width = to_cut(greedy).crossing();
  std::atomic<long long> shared{greedy_width};

  // Work items fix the sides of positions 1..k (position 0 is always side 1).
  const int k = threads > 1 ? std::min(n - 1, 10) : 0;
  std::vector<std::uint32_t> prefixes;
  for (std::uint32_t m = 0; m < (1u << k); ++m) {
    const int ones = std::popcount(m);  // bits set mean side 2
    if (k - ones + 1 <= n / 2 && ones <= n / 2) prefixes.push_back(m);
  }
  // Bit j of the mask is position j+1, most significant first so that
  // task order matches depth-first order.
  auto side_at = [&](std::uint32_t m, int j) { return (m >> (k - 1 - j)) & 1u ? 2 : 1; };

  struct TaskResult {
    long long width = std::numeric_limits<long long>::max();
    std::vector<std::uint8_t> witness;
    long long explored = 0;
  };
  std::vector<TaskResult> results(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < prefixes.size();) {
      Searcher s(adj, n / 2, shared, greedy_width + 1);
      s.assign(0, 1);
      bool ok = true;
      for (int j = 0; j < k; ++j) {
        const int sd = side_at(prefixes[t], j);
        if (!s.can_take(sd)) {
          ok = false;
          break;
        }
        s.assign(j + 1, sd);
      }
      if (ok && !s.pruned()) s.run(k + 1);
      results[t].explored = s.explored;
      if (s.found()) {
        results[t].width = s.best();
        results[t].witness = std::move(s.witness);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  const TaskResult* best = nullptr;
  for (const auto& r : results) {
    res.explored += r.explored;
    if (!r.witness.empty() && (!best || r.width < best->width)) best = &r;
  }
  if (!best) throw std::logic_error("exact_bisection: search found no balanced partition");
  res.width = best->width;
  res.witness = to_cut(best->witness);
  if (res.witness.crossing() != res.width || !is_bisection(res.witness, 0))
    throw std::logic_error("exact_bisection: witness does not match the width");
  return res;
}

ExactResult naive_bisection(const Multigraph& g) {
  check_size(g, 24, "naive_bisection");
  const int n = g.num_vertices();
  ExactResult res;
  if (n == 0) {
    res.witness = Cut(g, {});
    return res;
  }
  long long best = std::numeric_limits<long long>::max();
  std::uint32_t best_mask = 0;
  // Bit v set: vertex v on side 1; vertex 0 always is.
  for (std::uint32_t rest = 0; rest < (1u << (n - 1)); ++rest) {
    if (std::popcount(rest) != n / 2 - 1) continue;
    const std::uint32_t mask = (rest << 1) | 1u;
    ++res.explored;
    long long cross = 0;
    for (const auto& e : g.edges()) cross += ((mask >> e.u) & 1u) != ((mask >> e.v) & 1u);
    if (cross < best) {
      best = cross;
      best_mask = mask;
    }
  }
  std::vector<std::uint8_t> sides(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) sides[static_cast<std::size_t>(v)] = (best_mask >> v) & 1u ? 1 : 2;
  res.width = best;
  res.witness = Cut(g, std::move(sides));
  return res;
}

HeuristicReport exact_vs_heuristic(int batch, int n, std::uint64_t seed, int threads) {
  if (batch < 0) throw std::invalid_argument("exact_vs_heuristic: batch must be non-negative");
  if (n < 2 || n % 2 != 0 || n > kExactMaxVertices) throw std::invalid_argument("exact_vs_heuristic: need even 2 <= n <= 28");
  HeuristicReport rep;
  rep.n = n;
  int gap_rows = 0;
  for (int i = 0; i < batch; ++i) {
    HeuristicRow row;
    row.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const auto g = sample_cubic_graph(n, row.seed);
    row.exact = exact_bisection(g, threads).width;

    WaveParams wp;
    wp.seed = derive_seed(row.seed, "wave");
    wp.radius = default_radius(n);
    const auto wave = wave_bisect(g, wp);
    row.wave = wave.crossing();

    const auto start = random_bisection(g, derive_seed(row.seed, "init"));
    const auto ls = local_search_traced(g, start);
    row.local = ls.cut.crossing();
    long long prev = start.crossing();
    for (const auto& r : ls.trace) {
      row.local_monotone = row.local_monotone && r.cut_size <= prev;
      prev = r.cut_size;
    }
    row.local_monotone = row.local_monotone && row.local <= start.crossing();

    const bool balanced = is_bisection(wave, 0) && is_bisection(ls.cut, 0);
    if (row.wave < row.exact || row.local < row.exact || !balanced) ++rep.violations;
    if (!row.local_monotone) ++rep.non_monotone;
    if (row.exact > 0) {
      rep.mean_gap_wave += static_cast<double>(row.wave - row.exact) / static_cast<double>(row.exact);
      rep.mean_gap_local += static_cast<double>(row.local - row.exact) / static_cast<double>(row.exact);
      ++gap_rows;
    }
    rep.rows.push_back(row);
  }
  if (gap_rows > 0) {
    rep.mean_gap_wave /= gap_rows;
    rep.mean_gap_local /= gap_rows;
  }
  return rep;
}

}  // namespace minbis
