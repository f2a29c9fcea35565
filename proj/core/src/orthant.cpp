#include "minbis/orthant.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace minbis {

namespace {

// Parent of each tree vertex, -1 for the root v4.
constexpr int kParent[kOrthantDim] = {2, 2, 3, -1, 3, 4, 4};

int depth_of(int v) {
  int d = 0;
  for (; kParent[v] >= 0; v = kParent[v]) ++d;
  return d;
}

}  // namespace

int tree7_distance(int i, int j) {
  if (i < 0 || j < 0 || i >= kOrthantDim || j >= kOrthantDim) throw std::out_of_range("tree7_distance: index");
  int di = depth_of(i), dj = depth_of(j), d = 0;
  while (di > dj) i = kParent[i], --di, ++d;
  while (dj > di) j = kParent[j], --dj, ++d;
  while (i != j) i = kParent[i], j = kParent[j], d += 2;
  return d;
}

Eigen::MatrixXd covariance_matrix_B(double lambda) {
  const auto s = sigma_table(6, lambda);
  Eigen::MatrixXd B(kOrthantDim, kOrthantDim);
  for (int i = 0; i < kOrthantDim; ++i)
    for (int j = 0; j < kOrthantDim; ++j) {
      const double sign = (i == kFlippedIndex) != (j == kFlippedIndex) ? -1.0 : 1.0;
      B(i, j) = sign * s[static_cast<std::size_t>(tree7_distance(i, j))];
    }
  return B;
}

Eigen::MatrixXd factor_covariance(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols()) throw std::invalid_argument("factor_covariance: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) throw std::runtime_error("factor_covariance: eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-9) throw std::domain_error("factor_covariance: matrix is not positive semidefinite");
    if (ev(i) < 1e-12) ev(i) = 0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd factor_B(double lambda) { return factor_covariance(covariance_matrix_B(lambda)); }

OrthantSpec make_orthant_spec(double lambda) {
  OrthantSpec s;
  s.B = covariance_matrix_B(lambda);
  s.V = factor_covariance(s.B);
  return s;
}

MCResult orthant_mc_general(const Eigen::MatrixXd& V, long long samples, std::uint64_t seed, const MCOptions& opt) {
  if (samples < 1) throw std::invalid_argument("orthant_mc: samples must be >= 1");
  if (opt.block_size < 1) throw std::invalid_argument("orthant_mc: block size must be >= 1");
  if (opt.threads < 1) throw std::invalid_argument("orthant_mc: threads must be >= 1");
  const auto rows = static_cast<std::size_t>(V.rows()), cols = static_cast<std::size_t>(V.cols());
  // Row-major copy for the inner loop.
  std::vector<double> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m[i * cols + k] = V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));

  const long long blocks = (samples + opt.block_size - 1) / opt.block_size;
  std::atomic<long long> next{0}, hits{0};
  auto worker = [&] {
    std::vector<double> z(cols);
    long long local = 0;
    for (long long b; (b = next.fetch_add(1)) < blocks;) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
      std::normal_distribution<double> normal;
      const long long count = std::min(opt.block_size, samples - b * opt.block_size);
      for (long long s = 0; s < count; ++s) {
        for (auto& x : z) x = normal(rng);
        bool inside = true;
        for (std::size_t i = 0; i < rows && inside; ++i) {
          double y = 0;
          for (std::size_t k = 0; k < cols; ++k) y += m[i * cols + k] * z[k];
          inside = y > 0;
        }
        local += inside;
      }
    }
    hits += local;
  };
  const int nthreads = static_cast<int>(std::min<long long>(opt.threads, blocks));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
  }
  MCResult r;
  r.samples = samples;
  r.hits = hits.load();
  r.seed = seed;
  r.estimate = static_cast<double>(r.hits) / static_cast<double>(samples);
  r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(samples));
  return r;
}

MCResult orthant_mc(long long samples, std::uint64_t seed, const MCOptions& opt) {
  auto r = orthant_mc_general(factor_B(), samples, derive_seed(seed, "orthant_mc"), opt);
  r.seed = seed;
  return r;
}

PivotReduction make_pivot_reduction(const Eigen::MatrixXd& V) {
  PivotReduction r{0, V};
  double best = -1;
  for (Eigen::Index k = 0; k < V.cols(); ++k) {
    const double smallest = V.col(k).cwiseAbs().minCoeff();
    if (smallest > best) {
      best = smallest;
      r.pivot = static_cast<int>(k);
    }
  }
  if (best <= 1e-12) throw std::domain_error("make_pivot_reduction: no column without zero entries");
  return r;
}

bool all_positive(const Eigen::MatrixXd& V, const Eigen::VectorXd& z) { return ((V * z).array() > 0).all(); }

bool reduction_hit(const PivotReduction& r, const Eigen::VectorXd& z) {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < r.V.rows(); ++i) {
    double rest = 0;
    for (Eigen::Index k = 0; k < r.V.cols(); ++k)
      if (k != r.pivot) rest += r.V(i, k) * z(k);
    const double a = r.V(i, r.pivot), limit = -rest / a;
    if (a > 0) lo = std::max(lo, limit);
    else hi = std::min(hi, limit);
  }
  const double zp = z(r.pivot);
  return lo < zp && zp < hi;
}

RigorousBound rigorous_upper_bound_from(double lyons, double p_border) {
  RigorousBound b;
  b.lyons = lyons;
  b.probs.p_border = p_border;
  b.border_density = 1.5 * p_border;
  b.xi = b.border_density / 2;
  b.bound = lyons - 2 * b.xi;
  return b;
}

RigorousBound rigorous_upper_bound(double lambda) {
  const auto probs = cherry_orthant_probs(lambda);
  auto b = rigorous_upper_bound_from(lyons_rate(lambda), probs.p_border);
  b.lambda = lambda;
  b.probs = probs;
  return b;
}

NonrigorousBound nonrigorous_upper_bound(double orthant_estimate, double lambda) {
  NonrigorousBound nb;
  nb.base = rigorous_upper_bound(lambda);
  nb.orthant_estimate = orthant_estimate;
  nb.isolated_per_side = 3 * orthant_estimate;
  nb.gain_isolated = 2 * nb.isolated_per_side;
  nb.remaining = nb.base.border_density - nb.isolated_per_side;
  nb.gain_split = nb.remaining;
  nb.bound = nb.base.lyons - nb.gain_isolated - nb.gain_split;
  return nb;
}

NonrigorousBound nonrigorous_upper_bound(const MCResult& mc, double lambda) {
  return nonrigorous_upper_bound(mc.estimate, lambda);
}

}  // namespace minbis
