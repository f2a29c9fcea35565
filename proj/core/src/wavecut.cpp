#include "minbis/wavecut.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace minbis {

double sigma(int k, double lambda) {
  if (k < 0) throw std::invalid_argument("sigma: k must be >= 0");
  return sigma_table(k, lambda)[static_cast<std::size_t>(k)];
}

std::vector<double> sigma_table(int max_k, double lambda) {
  if (max_k < 0) throw std::invalid_argument("sigma_table: max_k must be >= 0");
  std::vector<double> s(static_cast<std::size_t>(std::max(max_k, 1)) + 1);
  s[0] = 1.0;
  s[1] = lambda / 3.0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) s[k + 1] = (lambda * s[k] - s[k - 1]) / 2.0;
  s.resize(static_cast<std::size_t>(max_k) + 1);
  return s;
}

int default_radius(int n) {
  if (n < 3) return 2;
  return std::max(2, static_cast<int>(std::floor(std::log(std::log(static_cast<double>(n))))));
}

namespace {

void field_range(const Multigraph& g, const std::vector<double>& z, const std::vector<double>& coef, int radius,
                 VertexId begin, VertexId end, std::vector<double>& out) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<VertexId> frontier, next;
  std::uint32_t epoch = 0;
  for (VertexId v = begin; v < end; ++v) {
    ++epoch;
    stamp[static_cast<std::size_t>(v)] = epoch;
    frontier.assign(1, v);
    double x = coef[0] * z[static_cast<std::size_t>(v)];
    for (int i = 1; i <= radius && !frontier.empty(); ++i) {
      next.clear();
      double sphere = 0.0;
      for (auto u : frontier) {
        for (auto e : g.incident(u)) {
          auto w = g.edge(e).other(u);
          if (stamp[static_cast<std::size_t>(w)] == epoch) continue;
          stamp[static_cast<std::size_t>(w)] = epoch;
          sphere += z[static_cast<std::size_t>(w)];
          next.push_back(w);
        }
      }
      x += coef[static_cast<std::size_t>(i)] * sphere;
      frontier.swap(next);
    }
    out[static_cast<std::size_t>(v)] = x;
  }
}

}  // namespace

WaveField wave_field(const Multigraph& g, const WaveParams& p) {
  if (p.radius < 0) throw std::invalid_argument("wave_field: radius must be >= 0");
  if (std::abs(p.lambda) > 3.0) throw std::invalid_argument("wave_field: |lambda| must be <= 3");
  const int n = g.num_vertices();
  std::vector<double> z(static_cast<std::size_t>(n));
  std::mt19937_64 rng(derive_seed(p.seed, "wave_field"));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& x : z) x = normal(rng);

  const auto coef = sigma_table(p.radius, p.lambda);
  WaveField f;
  f.params = p;
  f.values.assign(static_cast<std::size_t>(n), 0.0);
  const int workers = std::clamp(p.threads, 1, std::max(1, n / 256));
  if (workers == 1) {
    field_range(g, z, coef, p.radius, 0, n, f.values);
    return f;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    auto b = static_cast<VertexId>(static_cast<long long>(n) * w / workers);
    auto e = static_cast<VertexId>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&, b, e] { field_range(g, z, coef, p.radius, b, e, f.values); });
  }
  pool.clear();
  return f;
}

double tree_correlation(int radius, int d, double lambda) {
  if (radius < 0) throw std::invalid_argument("tree_correlation: radius must be >= 0");
  if (d < 0) throw std::invalid_argument("tree_correlation: distance must be >= 0");
  // Same recursion as sigma_table, in long double so that neither 2^h nor
  // sigma_k ~ k 2^(-k/2) leaves the representable range for large radii.
  std::vector<long double> s(static_cast<std::size_t>(std::max(radius, 1)) + 1);
  s[0] = 1.0L;
  s[1] = static_cast<long double>(lambda) / 3.0L;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) s[k + 1] = (static_cast<long double>(lambda) * s[k] - s[k - 1]) / 2.0L;
  auto a = [&](int i) { return i <= radius ? s[static_cast<std::size_t>(i)] : 0.0L; };

  // Sum over tree vertices z of a(d(u,z)) a(d(w,z)). Each z hangs at depth h
  // off the path vertex p_k nearest to it; the path ends have two free
  // branches (three when d = 0), interior path vertices one.
  auto cov = [&](int dist) {
    long double total = 0.0L;
    for (int k = 0; k <= dist; ++k) {
      const int branches = dist == 0 ? 3 : (k == 0 || k == dist) ? 2 : 1;
      total += a(k) * a(dist - k);
      long double count = branches;
      for (int h = 1; std::max(k, dist - k) + h <= radius; ++h, count *= 2.0L)
        total += count * a(k + h) * a(dist - k + h);
    }
    return total;
  };
  return static_cast<double>(cov(d) / cov(0));
}

Cut sign_cut(const Multigraph& g, const WaveField& f) {
  if (f.values.size() != static_cast<std::size_t>(g.num_vertices())) throw std::invalid_argument("sign_cut: field size differs from n");
  std::vector<std::uint8_t> sides(f.values.size());
  for (std::size_t v = 0; v < sides.size(); ++v) sides[v] = f.values[v] >= 0.0 ? 1 : 2;
  return Cut(g, std::move(sides));
}

OrthantProbs cherry_orthant_probs_from_correlations(double r1, double r2) {
  if (std::abs(r1) > 1.0 || std::abs(r2) > 1.0) throw std::domain_error("cherry_orthant_probs: correlation outside [-1, 1]");
  const double c = 1.0 / (4.0 * std::numbers::pi);
  OrthantProbs p;
  p.p_same = 2.0 * (0.125 + c * (2.0 * std::asin(r1) + std::asin(r2)));
  p.p_one = 4.0 * (0.125 + c * (std::asin(r1) + std::asin(-r1) + std::asin(-r2)));
  p.p_border = 2.0 * (0.125 + c * (2.0 * std::asin(-r1) + std::asin(r2)));
  return p;
}

OrthantProbs cherry_orthant_probs(double lambda) {
  return cherry_orthant_probs_from_correlations(sigma(1, lambda), sigma(2, lambda));
}

double lyons_rate_from_correlations(double r1, double r2) {
  auto p = cherry_orthant_probs_from_correlations(r1, r2);
  return (p.p_one + 2.0 * p.p_border) * 0.75;
}

double lyons_rate(double lambda) { return lyons_rate_from_correlations(sigma(1, lambda), sigma(2, lambda)); }

}  // namespace minbis
