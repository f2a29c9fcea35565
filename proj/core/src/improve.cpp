#include "minbis/improve.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>

namespace minbis {

std::string to_string(Shape s) {
  switch (s) {
    case Shape::Singleton: return "singleton";
    case Shape::Chain: return "chain";
    case Shape::Star: return "star";
    case Shape::Neighborhood: return "neighborhood";
  }
  return "unknown";
}

namespace {

int in_part_degree(const Multigraph& g, const Cut& c, VertexId v) {
  int d = 0;
  for (auto e : g.incident(v))
    if (c.side(g.edge(e).other(v)) == c.side(v)) ++d;
  return d;
}

bool candidate_before(const Candidate& a, const Candidate& b) {
  auto ga = a.cls.gain(), gb = b.cls.gain();
  if (ga != gb) return ga > gb;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

// Neighbours of v inside its own part reached through non-loop edges, with
// the edge used, so that parallel edges stay distinguishable.
std::vector<std::pair<VertexId, EdgeId>> part_links(const Multigraph& g, const Cut& c, VertexId v) {
  std::vector<std::pair<VertexId, EdgeId>> out;
  for (auto e : g.incident(v)) {
    const auto& edge = g.edge(e);
    if (edge.is_loop()) continue;
    auto w = edge.other(v);
    if (c.side(w) == c.side(v)) out.emplace_back(w, e);
  }
  return out;
}

class CatalogBuilder {
 public:
  CatalogBuilder(const Multigraph& g, const Cut& c, int side, int max_size)
      : g_(g), c_(c), side_(side), max_size_(max_size), indeg_(static_cast<std::size_t>(g.num_vertices()), -1) {
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (c.side(v) == side) indeg_[static_cast<std::size_t>(v)] = in_part_degree(g, c, v);
  }

  std::vector<Candidate> build() {
    for (VertexId v = 0; v < g_.num_vertices(); ++v)
      if (on_side(v)) add({v}, Shape::Singleton);
    if (max_size_ >= 2) add_chains();
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (!on_side(v) || is_run_vertex(v) || indeg(v) == 0) continue;
      add_star(v);
      add_neighborhood(v);
    }

    std::sort(raw_.begin(), raw_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < raw_.size(); ++i) {
      if (i > 0 && raw_[i].first == raw_[i - 1].first) continue;
      Candidate cand;
      cand.vertices = raw_[i].first;
      cand.side = side_;
      cand.shape = raw_[i].second;
      cand.cls = SetClass::from_gain(set_gain(g_, c_, cand.vertices));
      out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), candidate_before);
    return out;
  }

 private:
  bool on_side(VertexId v) const { return indeg_[static_cast<std::size_t>(v)] >= 0; }
  int indeg(VertexId v) const { return indeg_[static_cast<std::size_t>(v)]; }
  // Degree-two-in-part vertex without a loop: an interior point of a run.
  bool is_run_vertex(VertexId v) const { return on_side(v) && indeg(v) == 2 && part_links(g_, c_, v).size() == 2; }

  void add(std::vector<VertexId> s, Shape shape) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (static_cast<int>(s.size()) > max_size_ || s.empty()) return;
    raw_.emplace_back(std::move(s), shape);
  }

  void add_chains() {
    std::vector<char> seen(static_cast<std::size_t>(g_.num_vertices()), 0);
    auto walk = [&](VertexId start, EdgeId via) {
      std::vector<VertexId> seq{start};
      seen[static_cast<std::size_t>(start)] = 1;
      VertexId cur = start;
      EdgeId came = via;
      bool cyclic = false;
      while (true) {
        VertexId next = -1;
        EdgeId used = -1;
        for (auto [w, e] : part_links(g_, c_, cur)) {
          if (e == came || !is_run_vertex(w)) continue;
          next = w;
          used = e;
          break;
        }
        if (next < 0) break;
        if (next == start) {
          cyclic = true;
          break;
        }
        if (seen[static_cast<std::size_t>(next)]) break;
        seen[static_cast<std::size_t>(next)] = 1;
        seq.push_back(next);
        cur = next;
        came = used;
      }
      return std::make_pair(seq, cyclic);
    };
    auto windows = [&](const std::vector<VertexId>& seq, bool cyclic) {
      const int len = static_cast<int>(seq.size());
      for (int size = 2; size <= std::min(len, max_size_); ++size) {
        const int starts = cyclic ? (size == len ? 1 : len) : len - size + 1;
        for (int s = 0; s < starts; ++s) {
          std::vector<VertexId> w;
          for (int k = 0; k < size; ++k) w.push_back(seq[static_cast<std::size_t>((s + k) % len)]);
          add(std::move(w), Shape::Chain);
        }
      }
    };

    // Open runs start at a run vertex with a neighbour outside the runs.
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (!is_run_vertex(v) || seen[static_cast<std::size_t>(v)]) continue;
      auto links = part_links(g_, c_, v);
      int outside = 0;
      EdgeId exit_edge = -1;
      for (auto [w, e] : links)
        if (!is_run_vertex(w)) {
          ++outside;
          exit_edge = e;
        }
      if (outside == 0) continue;
      auto [seq, cyclic] = walk(v, exit_edge);
      windows(seq, cyclic);
    }
    // Whatever is left lies on cycles made only of run vertices.
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (!is_run_vertex(v) || seen[static_cast<std::size_t>(v)]) continue;
      auto [seq, cyclic] = walk(v, -1);
      windows(seq, cyclic);
    }
  }

  void add_star(VertexId v) {
    std::vector<VertexId> s{v};
    for (auto [w, e] : part_links(g_, c_, v)) s.push_back(w);
    if (s.size() > 1) add(std::move(s), Shape::Star);
  }

  void add_neighborhood(VertexId v) {
    std::vector<VertexId> s{v};
    for (auto [w, e] : part_links(g_, c_, v)) {
      VertexId cur = w;
      EdgeId came = e;
      while (is_run_vertex(cur) && cur != v && static_cast<int>(s.size()) <= max_size_) {
        s.push_back(cur);
        VertexId next = -1;
        EdgeId used = -1;
        for (auto [x, f] : part_links(g_, c_, cur))
          if (f != came) {
            next = x;
            used = f;
          }
        if (next < 0) break;
        cur = next;
        came = used;
      }
    }
    if (s.size() > 1) add(std::move(s), Shape::Neighborhood);
  }

  const Multigraph& g_;
  const Cut& c_;
  int side_;
  int max_size_;
  std::vector<int> indeg_;
  std::vector<std::pair<std::vector<VertexId>, Shape>> raw_;
};

// Candidate lists for both sides plus the partner index: by gain (desc) and
// then by size, so a lead can skip whole buckets that cannot reach gain 1.
struct SweepState {
  std::vector<Candidate> cands[2];
  std::map<long long, std::map<int, std::vector<int>>, std::greater<>> buckets[2];
  std::vector<VertexId> pool[2];  // padding vertices, re-checked on use

  SweepState(const Multigraph& g, const Cut& c, const MoveBudget& budget) {
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (in_part_degree(g, c, v) == 2) pool[c.side(v) - 1].push_back(v);
    for (int s = 0; s < 2; ++s) {
      cands[s] = enumerate_candidates(g, c, s + 1, budget);
      for (int i = 0; i < static_cast<int>(cands[s].size()); ++i) {
        const auto& cand = cands[s][static_cast<std::size_t>(i)];
        buckets[s][cand.cls.gain()][static_cast<int>(cand.vertices.size())].push_back(i);
      }
      // The empty partner: pure padding on that side.
      buckets[s][0][0].push_back(-1);
    }
  }
};

class ExchangeSearch {
 public:
  ExchangeSearch(const Multigraph& g, const MoveBudget& budget) : g_(g), budget_(budget) {}

  // Scans leads in catalog order. With `apply`, every verified improvement is
  // applied to `cut` at once and the scan continues; otherwise the first one
  // found is returned.
  std::optional<Exchange> sweep(Cut& cut, bool apply, std::vector<RoundRecord>* trace, long long& rounds) {
    SweepState st(g_, cut, budget_);
    std::vector<std::pair<int, int>> leads;  // (side index, candidate index)
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < static_cast<int>(st.cands[s].size()); ++i)
        if (st.cands[s][static_cast<std::size_t>(i)].cls.gain() >= 1) leads.emplace_back(s, i);
    std::stable_sort(leads.begin(), leads.end(), [&](const auto& a, const auto& b) {
      return candidate_before(st.cands[a.first][static_cast<std::size_t>(a.second)],
                              st.cands[b.first][static_cast<std::size_t>(b.second)]);
    });

    std::optional<Exchange> found;
    for (auto [s, i] : leads) {
      if (apply && rounds >= budget_.max_rounds) break;
      const auto& lead = st.cands[s][static_cast<std::size_t>(i)].vertices;
      if (!all_on(cut, lead, s + 1)) continue;
      long long g_lead = set_gain(g_, cut, lead);
      if (g_lead < 1) continue;
      auto ex = pair_up(cut, st, s, lead, g_lead);
      if (!ex) continue;
      if (!apply) return ex;
      const long long before = cut.crossing();
      cut = apply_exchange(g_, cut, ex->s1, ex->s2);
      if (budget_.verify) {
        auto recount = cut_size(g_, cut);
        if (recount != cut.crossing() || before - recount != ex->gain)
          throw std::logic_error("local_search: claimed exchange gain disagrees with recount");
      }
      ++rounds;
      if (trace) trace->push_back({rounds, cut.crossing(), ex->gain, static_cast<int>(ex->s1.size()), static_cast<int>(ex->s2.size())});
      found = std::move(ex);
    }
    return found;
  }

 private:
  bool all_on(const Cut& cut, const std::vector<VertexId>& s, int side) const {
    return std::all_of(s.begin(), s.end(), [&](VertexId v) { return cut.side(v) == side; });
  }

  std::optional<Exchange> pair_up(const Cut& cut, const SweepState& st, int s, const std::vector<VertexId>& lead,
                                  long long g_lead) {
    const int o = 1 - s;
    const int lead_size = static_cast<int>(lead.size());
    for (const auto& [g_bucket, by_size] : st.buckets[o]) {
      if (g_lead + g_bucket < 1) break;
      for (const auto& [size, members] : by_size) {
        // Each padding vertex costs at least one.
        const int pads = std::abs(lead_size - size);
        if (g_lead + g_bucket - pads < 1) continue;
        for (int idx : members) {
          std::vector<VertexId> partner;
          if (idx >= 0) {
            partner = st.cands[o][static_cast<std::size_t>(idx)].vertices;
            if (!all_on(cut, partner, o + 1)) continue;
          }
          auto ex = try_pair(cut, st, s, lead, partner);
          if (ex) return ex;
        }
      }
    }
    return std::nullopt;
  }

  bool touches(const std::vector<VertexId>& sorted, VertexId v) const {
    if (std::binary_search(sorted.begin(), sorted.end(), v)) return true;
    for (auto e : g_.incident(v))
      if (std::binary_search(sorted.begin(), sorted.end(), g_.edge(e).other(v))) return true;
    return false;
  }

  // Adds `count` degree-two-in-part vertices of `side` that avoid `blocked`
  // and its neighbourhood; returns false when not enough exist.
  bool pad(const Cut& cut, const SweepState& st, int side, int count, std::vector<VertexId>& target,
           std::vector<VertexId>& blocked) const {
    for (auto v : st.pool[side - 1]) {
      if (count == 0) break;
      if (cut.side(v) != side || in_part_degree(g_, cut, v) != 2) continue;
      if (touches(blocked, v)) continue;
      target.push_back(v);
      blocked.insert(std::upper_bound(blocked.begin(), blocked.end(), v), v);
      --count;
    }
    return count == 0;
  }

  std::optional<Exchange> try_pair(const Cut& cut, const SweepState& st, int s, const std::vector<VertexId>& lead,
                                   const std::vector<VertexId>& partner) {
    std::vector<VertexId> mine = lead, theirs = partner;
    std::vector<VertexId> blocked(lead);
    blocked.insert(blocked.end(), partner.begin(), partner.end());
    std::sort(blocked.begin(), blocked.end());
    const int diff = static_cast<int>(mine.size()) - static_cast<int>(theirs.size());
    if (diff > 0 && !pad(cut, st, (1 - s) + 1, diff, theirs, blocked)) return std::nullopt;
    if (diff < 0 && !pad(cut, st, s + 1, -diff, mine, blocked)) return std::nullopt;
    if (mine.empty()) return std::nullopt;

    long long gain = exchange_gain(g_, cut, mine, theirs);
    if (gain < 1) return std::nullopt;
    Exchange ex;
    ex.s1 = s == 0 ? mine : theirs;
    ex.s2 = s == 0 ? theirs : mine;
    std::sort(ex.s1.begin(), ex.s1.end());
    std::sort(ex.s2.begin(), ex.s2.end());
    ex.gain = gain;
    return ex;
  }

  const Multigraph& g_;
  MoveBudget budget_;
};

void check_budget(const MoveBudget& b) {
  if (b.max_set_size < 1) throw std::invalid_argument("MoveBudget: max_set_size must be >= 1");
  if (b.max_rounds < 0) throw std::invalid_argument("MoveBudget: max_rounds must be >= 0");
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const Multigraph& g, const Cut& c, int side, const MoveBudget& budget) {
  check_budget(budget);
  if (side != 1 && side != 2) throw std::invalid_argument("enumerate_candidates: side must be 1 or 2");
  return CatalogBuilder(g, c, side, budget.max_set_size).build();
}

std::optional<Exchange> find_improvement(const Multigraph& g, const Cut& c, const MoveBudget& budget) {
  check_budget(budget);
  Cut work = c;
  long long rounds = 0;
  return ExchangeSearch(g, budget).sweep(work, false, nullptr, rounds);
}

LocalSearchResult local_search_traced(const Multigraph& g, const Cut& c, const MoveBudget& budget) {
  check_budget(budget);
  LocalSearchResult res{c, {}, 0};
  ExchangeSearch search(g, budget);
  long long rounds = 0;
  while (rounds < budget.max_rounds) {
    ++res.sweeps;
    if (!search.sweep(res.cut, true, &res.trace, rounds)) break;
  }
  return res;
}

Cut local_search(const Multigraph& g, const Cut& c, const MoveBudget& budget) {
  return local_search_traced(g, c, budget).cut;
}

}  // namespace minbis
