#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "minbis/graph.hpp"

namespace minbis {

// Two-sided vertex assignment. Sides are stored as 1 or 2.
class Cut {
 public:
  Cut() = default;
  // Computes the crossing count from scratch.
  Cut(const Multigraph& g, std::vector<std::uint8_t> sides);

  int num_vertices() const { return static_cast<int>(sides_.size()); }
  int side(VertexId v) const { return sides_[static_cast<std::size_t>(v)]; }
  const std::vector<std::uint8_t>& sides() const { return sides_; }
  long long crossing() const { return crossing_; }
  std::array<int, 2> counts() const { return counts_; }
  int imbalance() const { return counts_[0] - counts_[1]; }

  // Moves v to the other side and adjusts the crossing count by delta, which
  // the caller has computed for this graph.
  void flip(VertexId v, long long delta);
  void adjust_crossing(long long delta) { crossing_ += delta; }

  bool operator==(const Cut& o) const { return sides_ == o.sides_ && crossing_ == o.crossing_; }

 private:
  std::vector<std::uint8_t> sides_;
  long long crossing_ = 0;
  std::array<int, 2> counts_{0, 0};
};

long long cut_size(const Multigraph& g, const Cut& c);
long long count_crossing(const Multigraph& g, const std::vector<std::uint8_t>& sides);
// Default slack 10 accepts the almost balanced cuts used by the heuristics.
bool is_bisection(const Cut& c, int slack = 10);

// Crossing-count change (after minus before) when v alone switches sides.
int flip_delta(const Multigraph& g, const Cut& c, VertexId v);

struct SetClass {
  enum class Kind { Winning, Indifferent, Losing };
  Kind kind = Kind::Indifferent;
  int ell = 0;  // >= 1 for Winning and Losing, 0 for Indifferent

  static SetClass from_gain(long long gain);
  long long gain() const { return kind == Kind::Winning ? ell : kind == Kind::Losing ? -ell : 0; }
  bool operator==(const SetClass&) const = default;
};
std::string to_string(const SetClass& s);

// Decrease of the crossing count when the vertices of s, all on side
// `side`, are moved together to the other side.
long long set_gain(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s);
// Decrease of the crossing count when s1 and s2 exchange sides.
long long exchange_gain(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s1,
                        const std::vector<VertexId>& s2);

SetClass classify_set(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s, int side);
Cut apply_exchange(const Multigraph& g, const Cut& c, const std::vector<VertexId>& s1,
                   const std::vector<VertexId>& s2);
Cut repair_balance(const Multigraph& g, const Cut& c, int slack = 0);

Cut random_bisection(const Multigraph& g, std::uint64_t seed);

std::string to_side_string(const Cut& c);
Cut from_side_string(const Multigraph& g, const std::string& text);

}  // namespace minbis
