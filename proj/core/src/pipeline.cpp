#include "minbis/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace minbis {

WaveBisectResult wave_bisect_traced(const Multigraph& g, const WaveParams& p, const MoveBudget& budget) {
  WaveBisectResult res;
  auto log = [&](const char* stage, const Cut& c) { res.stages.push_back({stage, c.crossing(), c.imbalance()}); };

  const auto field = wave_field(g, p);
  Cut cut = sign_cut(g, field);
  log("sign_cut", cut);

  const auto h = build_border_graph(g, field);
  res.border_vertices = static_cast<int>(h.side1.size() + h.side2.size());
  const auto lonely = h.isolated();
  res.isolated_centers = static_cast<int>(lonely.size());
  cut = isolated_switch(g, cut, h);
  log("isolated_switch", cut);

  // Flipping a center of one border cherry turns its two crossing edges
  // internal and its internal edge crossing. The split keeps the flipped
  // vertices pairwise non-adjacent in h, and flipping one per side keeps
  // the balance.
  const auto split = independent_split(h.without(lonely));
  const auto pairs = std::min(split.in1.size(), split.in2.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto a = split.in1[i], b = split.in2[i];
    const int da = flip_delta(g, cut, a);
    cut.flip(a, da);
    const int db = flip_delta(g, cut, b);
    // Earlier switches next to a or b can spoil the exchange; undo it then.
    if (da + db < 0) {
      cut.flip(b, db);
      ++res.swapped_pairs;
    } else {
      cut.flip(a, -da);
    }
  }
  log("independent_swap", cut);

  cut = repair_balance(g, cut, 0);
  log("repair_balance", cut);

  cut = local_search(g, cut, budget);
  log("local_search", cut);

  if (cut.crossing() != cut_size(g, cut)) throw std::logic_error("wave_bisect: cached crossing disagrees with recount");
  res.cut = std::move(cut);
  return res;
}

Cut wave_bisect(const Multigraph& g, const WaveParams& p, const MoveBudget& budget) {
  return wave_bisect_traced(g, p, budget).cut;
}

}  // namespace minbis
