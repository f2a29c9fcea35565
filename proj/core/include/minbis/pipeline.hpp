#pragma once

#include <string>
#include <vector>

#include "minbis/border.hpp"
#include "minbis/cut.hpp"
#include "minbis/improve.hpp"
#include "minbis/wavecut.hpp"

namespace minbis {

struct StageRecord {
  std::string stage;
  long long crossing = 0;
  int balance = 0;  // |V1| - |V2|
};

struct WaveBisectResult {
  Cut cut;
  std::vector<StageRecord> stages;
  int isolated_centers = 0;
  int swapped_pairs = 0;
  int border_vertices = 0;
};

// sign cut of the wave field, switch isolated border centers, swap an
// independent set of border centers pairwise, repair balance, local search.
WaveBisectResult wave_bisect_traced(const Multigraph& g, const WaveParams& p, const MoveBudget& budget = {});
Cut wave_bisect(const Multigraph& g, const WaveParams& p, const MoveBudget& budget = {});

}  // namespace minbis
