#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "minbis/wavecut.hpp"

namespace minbis {

// Seven tree vertices: v1, v2 hang off v3; v3 - v4 - v5; v6, v7 hang off v5.
// The center v4 (index 3) enters with its sign flipped, so the orthant
// {all coordinates > 0} is the event that v4 is an isolated border center.
constexpr int kOrthantDim = 7;
constexpr int kFlippedIndex = 3;

int tree7_distance(int i, int j);

Eigen::MatrixXd covariance_matrix_B(double lambda = kWaveLambda);
// V with V V^T = B from the symmetric eigendecomposition; tiny negative
// eigenvalues are clipped, anything below -1e-9 throws std::domain_error.
Eigen::MatrixXd factor_covariance(const Eigen::MatrixXd& cov);
Eigen::MatrixXd factor_B(double lambda = kWaveLambda);

struct OrthantSpec {
  Eigen::MatrixXd B;
  Eigen::MatrixXd V;
  int flipped = kFlippedIndex;
};
OrthantSpec make_orthant_spec(double lambda = kWaveLambda);

struct MCResult {
  double estimate = 0;
  double std_error = 0;
  long long samples = 0;
  long long hits = 0;
  std::uint64_t seed = 0;
};

struct MCOptions {
  int threads = 1;
  long long block_size = 1 << 16;
};

// Fraction of samples Y = V Z (Z standard normal) with every coordinate
// positive. Blocks of block_size samples use their own derived seeds, so the
// result does not depend on the thread count.
MCResult orthant_mc_general(const Eigen::MatrixXd& V, long long samples, std::uint64_t seed, const MCOptions& opt = {});
MCResult orthant_mc(long long samples, std::uint64_t seed, const MCOptions& opt = {});

// The same event written as bounds on one pivot coordinate of Z: every row
// of V gives a lower or an upper bound on Z_pivot given the others.
struct PivotReduction {
  int pivot = 0;
  Eigen::MatrixXd V;
};
PivotReduction make_pivot_reduction(const Eigen::MatrixXd& V);
bool all_positive(const Eigen::MatrixXd& V, const Eigen::VectorXd& z);
bool reduction_hit(const PivotReduction& r, const Eigen::VectorXd& z);

struct RigorousBound {
  double lambda = 0;
  OrthantProbs probs;
  double lyons = 0;
  double border_density = 0;  // |H1|/n = (3/2) p_border
  double xi = 0;              // |H1| / (2n)
  double bound = 0;           // lyons - 2 xi
};
RigorousBound rigorous_upper_bound(double lambda = kWaveLambda);
RigorousBound rigorous_upper_bound_from(double lyons, double p_border);

struct NonrigorousBound {
  RigorousBound base;
  double orthant_estimate = 0;
  double isolated_per_side = 0;  // 3 p7
  double gain_isolated = 0;      // both sides
  double remaining = 0;          // border density minus the isolated centers
  double gain_split = 0;
  double bound = 0;
};
NonrigorousBound nonrigorous_upper_bound(double orthant_estimate, double lambda = kWaveLambda);
NonrigorousBound nonrigorous_upper_bound(const MCResult& mc, double lambda = kWaveLambda);

}  // namespace minbis
