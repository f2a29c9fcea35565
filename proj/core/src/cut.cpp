#include "minbis/cut.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>

namespace minbis {

Cut::Cut(const Multigraph& g, std::vector<std::uint8_t> sides) : sides_(std::move(sides)) {
  if (sides_.size() != static_cast<std::size_t>(g.num_vertices())) throw std::invalid_argument("Cut: side vector length differs from n");
  for (auto s : sides_) {
    if (s != 1 && s != 2) throw std::invalid_argument("Cut: sides must be 1 or 2");
    ++counts_[s - 1];
  }
  crossing_ = count_crossing(g, sides_);
}

void Cut::flip(VertexId v, long long delta) {
  auto& s = sides_[static_cast<std::size_t>(v)];
  --counts_[s - 1];
  s = static_cast<std::uint8_t>(3 - s);
  ++counts_[s - 1];
  crossing_ += delta;
}

long long count_crossing(const Multigraph& g, const std::vector<std::uint8_t>& sides) {
  long long crossing = 0;
  for (const auto& e : g.edges())
    if (sides[static_cast<std::size_t>(e.u)] != sides[static_cast<std::size_t>(e.v)]) ++crossing;
  return crossing;
}

long long cut_size(const Multigraph& g, const Cut& c) { return count_crossing(g, c.sides()); }

bool is_bisection(const Cut& c, int slack) {
  auto [a, b] = c.counts();
  return std::abs(a - b) <= slack;
}

int flip_delta(const Multigraph& g, const Cut& c, VertexId v) {
  int delta = 0;
  for (auto e : g.incident(v)) {
    const auto& edge = g.edge(e);
    if (edge.is_loop()) continue;
    delta += c.side(edge.other(v)) == c.side(v) ? 1 : -1;
  }
  return delta;
}

SetClass SetClass::from_gain(long long gain) {
  if (gain > 0) return {Kind::Winning, static_cast<int>(gain)};
  if (gain < 0) return {Kind::Losing, static_cast<int>(-gain)};
  return {Kind::Indifferent, 0};
}

std::string to_string(const SetClass& s) {
  switch (s.kind) {
    case SetClass::Kind::Winning: return "Winning(" + std::to_string(s.ell) + ")";
    case SetClass::Kind::Losing: return "Losing(" + std::to_string(s.ell) + ")";
    default: return "Indifferent";
  }
}

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> s, const char* what) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument(std::string(what) + ": repeated vertex");
  return s;
}

bool contains(const std::vector<VertexId>& sorted, VertexId v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

// Crossing decrease when every vertex of `moved` (sorted) switches sides.
long long move_gain(const Multigraph& g, const Cut& c, const std::vector<VertexId>& moved) {
  long long gain = 0;
  for (auto v : moved) {
    for (auto e : g.incident(v)) {
      const auto& edge = g.edge(e);
      if (edge.is_loop()) continue;
      auto w = edge.other(v);
      // An edge with both ends moving keeps its status; count the rest once.
      if (contains(moved, w)) continue;
      gain += c.side(w) != c.side(v) ? 1 : -1;
    }
  }
  return gain;
}

void check_side(const Cut& c, const std::vector<VertexId>& s, int side, const char* what) {
  for (auto v : s) {
    if (v < 0 || v >= c.num_vertices()) throw std::out_of_range(std::string(what) + ": vertex out of range");
    if (c.side(v) != side) throw std::invalid_argument(std::string(what) + ": vertex " + std::to_string(v) + " is not on side " + std::to_string(side));
  }
}

}  // namespace

long long set_gain(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s) {
  return move_gain(g, c, sorted_unique(s, "set_gain"));
}

long long exchange_gain(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s1,
                        const std::vector<VertexId>& s2) {
  std::vector<VertexId> all(s1);
  all.insert(all.end(), s2.begin(), s2.end());
  return move_gain(g, c, sorted_unique(std::move(all), "exchange_gain"));
}

SetClass classify_set(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s, int side) {
  check_side(c, s, side, "classify_set");
  return SetClass::from_gain(set_gain(g, c, s));
}

Cut apply_exchange(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s1,
                   const std::vector<VertexId>& s2) {
  if (s1.size() != s2.size()) throw std::invalid_argument("apply_exchange: sets differ in size");
  check_side(c, s1, 1, "apply_exchange");
  check_side(c, s2, 2, "apply_exchange");
  auto a = sorted_unique(s1, "apply_exchange");
  auto b = sorted_unique(s2, "apply_exchange");

  // Each edge between the sets stays crossing, yet both one-sided gains
  // counted it as fixed, hence the correction of 2 per joining edge.
  long long joining = 0;
  for (auto v : a)
    for (auto e : g.incident(v))
      if (contains(b, g.edge(e).other(v))) ++joining;
  long long gain = move_gain(g, c, a) + move_gain(g, c, b) - 2 * joining;

  Cut out = c;
  for (auto v : a) out.flip(v, 0);
  for (auto v : b) out.flip(v, 0);
  out.adjust_crossing(-gain);
  return out;
}

Cut repair_balance(const Multigraph& g, const Cut& c, int slack) {
  if (slack < 0) throw std::invalid_argument("repair_balance: negative slack");
  Cut out = c;
  const int n = c.num_vertices();
  for (int moves = 0; moves <= n; ++moves) {
    int diff = out.imbalance();
    // A move shifts the difference by 2, so |diff| == 1 cannot be improved.
    if (std::abs(diff) <= slack || std::abs(diff) < 2) return out;
    int from = diff > 0 ? 1 : 2;
    VertexId best = -1;
    int best_delta = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (out.side(v) != from) continue;
      int d = flip_delta(g, out, v);
      if (best < 0 || d < best_delta) {
        best = v;
        best_delta = d;
      }
    }
    out.flip(best, best_delta);
  }
  throw std::logic_error("repair_balance: failed to terminate");
}

Cut random_bisection(const Multigraph& g, std::uint64_t seed) {
  const int n = g.num_vertices();
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(seed, "random_bisection"));
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint8_t> sides(static_cast<std::size_t>(n), 2);
  for (int i = 0; i < (n + 1) / 2; ++i) sides[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
  return Cut(g, std::move(sides));
}

std::string to_side_string(const Cut& c) {
  std::string out;
  out.reserve(c.sides().size());
  for (auto s : c.sides()) out.push_back(static_cast<char>('0' + s));
  return out;
}

Cut from_side_string(const Multigraph& g, const std::string& text) {
  std::vector<std::uint8_t> sides;
  sides.reserve(text.size());
  for (char ch : text) {
    if (ch == '\n' || ch == '\r') continue;
    if (ch != '1' && ch != '2') throw std::invalid_argument("side string: expected only '1' and '2'");
    sides.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return Cut(g, std::move(sides));
}

}  // namespace minbis
