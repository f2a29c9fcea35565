#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "minbis/cut.hpp"
#include "minbis/graph.hpp"

namespace minbis {

inline const double kWaveLambda = 2.0 * std::sqrt(2.0);

struct WaveParams {
  double lambda = kWaveLambda;
  int radius = 2;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct WaveField {
  std::vector<double> values;
  WaveParams params;
};

// Covariance at distance k of the invariant Gaussian wave on the 3-regular
// tree with eigenvalue lambda: 1, lambda/3, then 2s[k+1] = lambda s[k] - s[k-1].
double sigma(int k, double lambda = kWaveLambda);
std::vector<double> sigma_table(int max_k, double lambda = kWaveLambda);

int default_radius(int n);

// X_v = sum over i <= R of sigma_i times the sum of Z_u over the sphere of
// radius i around v.
WaveField wave_field(const Multigraph& g, const WaveParams& p);

// Correlation of the truncated field at two tree vertices d apart.
double tree_correlation(int radius, int d, double lambda = kWaveLambda);

Cut sign_cut(const Multigraph& g, const WaveField& f);

struct OrthantProbs {
  double p_same = 0;    // all three signs of a cherry agree
  double p_one = 0;     // exactly one end differs from the center
  double p_border = 0;  // the center differs from both ends
};

// r1: correlation center-end, r2: correlation end-end.
OrthantProbs cherry_orthant_probs_from_correlations(double r1, double r2);
OrthantProbs cherry_orthant_probs(double lambda = kWaveLambda);

double lyons_rate_from_correlations(double r1, double r2);
double lyons_rate(double lambda = kWaveLambda);

}  // namespace minbis
