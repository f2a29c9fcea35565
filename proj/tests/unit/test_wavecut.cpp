#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <random>
#include <set>

#include "minbis/border.hpp"
#include "minbis/oracle.hpp"
#include "minbis/pipeline.hpp"
#include "minbis/wavecut.hpp"
#include "oracles/brute_force.hpp"
#include "support.hpp"

using namespace minbis;
using testing_support::from_pairs;

namespace {

std::vector<int> bfs_distances(const Multigraph& g, VertexId s) {
  std::vector<int> d(static_cast<std::size_t>(g.num_vertices()), -1);
  std::queue<VertexId> q;
  d[static_cast<std::size_t>(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto e : g.incident(v)) {
      auto w = g.edge(e).other(v);
      if (d[static_cast<std::size_t>(w)] < 0) {
        d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
  }
  return d;
}

// The 3-regular tree cut off at the given depth around vertex 0.
Multigraph regular_tree(int depth) {
  std::vector<std::pair<int, int>> edges;
  int next = 1;
  std::vector<int> layer{0};
  for (int h = 0; h < depth; ++h) {
    std::vector<int> nl;
    for (int v : layer)
      for (int c = 0; c < (h == 0 ? 3 : 2); ++c) {
        edges.push_back({v, next});
        nl.push_back(next++);
      }
    layer = nl;
  }
  return from_pairs(next, edges);
}

// Correlation of X_0 and X_w for a vertex w at distance d, computed from the
// explicit coefficient vectors on a large enough tree.
double explicit_tree_correlation(int radius, int d) {
  const auto t = regular_tree(radius + d + 1);
  const auto s = sigma_table(radius);
  const auto du = bfs_distances(t, 0);
  VertexId w = 0;
  for (VertexId v = 0; v < t.num_vertices(); ++v)
    if (du[static_cast<std::size_t>(v)] == d) {
      w = v;
      break;
    }
  const auto dw = bfs_distances(t, w);
  auto a = [&](int k) { return k <= radius ? s[static_cast<std::size_t>(k)] : 0.0; };
  double cov = 0, var = 0;
  for (std::size_t z = 0; z < du.size(); ++z) {
    cov += a(du[z]) * a(dw[z]);
    var += a(du[z]) * a(du[z]);
  }
  return cov / var;
}

WaveField field_of(std::vector<double> v) {
  WaveField f;
  f.values = std::move(v);
  return f;
}

struct IndexedBorder {
  std::vector<std::vector<int>> adj;
  std::vector<int> part;
  std::map<VertexId, int> index;
};

IndexedBorder index_border(const BorderGraph& h) {
  IndexedBorder ib;
  for (auto v : h.side1) ib.index[v] = static_cast<int>(ib.part.size()), ib.part.push_back(0);
  for (auto v : h.side2) ib.index[v] = static_cast<int>(ib.part.size()), ib.part.push_back(1);
  ib.adj.resize(ib.part.size());
  for (auto [a, b] : h.edges) {
    ib.adj[static_cast<std::size_t>(ib.index[a])].push_back(ib.index[b]);
    ib.adj[static_cast<std::size_t>(ib.index[b])].push_back(ib.index[a]);
  }
  return ib;
}

int ceil_half_minus_one(std::size_t k) { return static_cast<int>((k + 1) / 2) - 1; }

void check_split(const BorderGraph& h, const IndependentSplit& sp) {
  std::set<VertexId> s1(h.side1.begin(), h.side1.end()), s2(h.side2.begin(), h.side2.end());
  std::set<VertexId> in(sp.in1.begin(), sp.in1.end());
  for (auto v : sp.in1) CHECK(s1.contains(v));
  for (auto v : sp.in2) CHECK(s2.contains(v));
  in.insert(sp.in2.begin(), sp.in2.end());
  CHECK(in.size() == sp.in1.size() + sp.in2.size());
  for (auto [a, b] : h.edges) CHECK_FALSE((in.contains(a) && in.contains(b)));
  CHECK(static_cast<int>(sp.in1.size()) >= ceil_half_minus_one(h.side1.size()));
  CHECK(static_cast<int>(sp.in2.size()) >= ceil_half_minus_one(h.side2.size()));
}

}  // namespace

TEST_SUITE("wavecut") {

TEST_CASE("covariance sequence matches its closed form") {
  for (int k = 0; k <= 30; ++k) CHECK(std::abs(sigma(k) - (1.0 + k / 3.0) * std::pow(2.0, -k / 2.0)) < 1e-12);
  const auto t = sigma_table(30);
  for (int k = 0; k <= 30; ++k) CHECK(t[static_cast<std::size_t>(k)] == sigma(k));
  CHECK(sigma(0, 1.3) == 1.0);
  CHECK(std::abs(sigma(1, 1.3) - 1.3 / 3) < 1e-15);
  CHECK_THROWS_AS(sigma(-1), std::invalid_argument);
}

TEST_CASE("tree correlations") {
  CHECK(std::abs(tree_correlation(1, 1) - 4 * std::sqrt(2.0) / 11) < 1e-12);
  CHECK(tree_correlation(0, 1) == 0.0);
  CHECK(tree_correlation(3, 0) == doctest::Approx(1.0).epsilon(1e-14));
  double prev = 0;
  for (int r = 1; r <= 40; ++r) {
    const double c = tree_correlation(r, 1);
    CHECK(c > prev);
    prev = c;
  }
  CHECK(std::abs(prev - 2 * std::sqrt(2.0) / 3) < 5e-2);
  for (int r = 0; r <= 5; ++r)
    for (int d = 1; d <= 2; ++d) CHECK(std::abs(tree_correlation(r, d) - explicit_tree_correlation(r, d)) < 1e-12);
}

TEST_CASE("wave field is the sphere-weighted sum of the white noise") {
  const auto g = to_multigraph(sample_configuration(300, 4));
  WaveParams p;
  p.seed = 77;
  p.radius = 0;
  const auto z = wave_field(g, p).values;
  for (int r : {1, 3, 5}) {
    p.radius = r;
    const auto x = wave_field(g, p);
    const auto s = sigma_table(r);
    for (VertexId v = 0; v < g.num_vertices(); v += 13) {
      const auto d = bfs_distances(g, v);
      double expect = 0;
      for (std::size_t u = 0; u < d.size(); ++u)
        if (d[u] >= 0 && d[u] <= r) expect += s[static_cast<std::size_t>(d[u])] * z[u];
      CHECK(std::abs(x.values[static_cast<std::size_t>(v)] - expect) < 1e-10);
    }
  }
}

TEST_CASE("wave field is reproducible and independent of threads") {
  const auto g = to_multigraph(sample_configuration(2000, 8));
  WaveParams p;
  p.seed = 5;
  p.radius = 4;
  const auto a = wave_field(g, p);
  p.threads = 4;
  const auto b = wave_field(g, p);
  CHECK(a.values == b.values);
  p.radius = -1;
  CHECK_THROWS_AS(wave_field(g, p), std::invalid_argument);
}

TEST_CASE("sign cut") {
  const auto g = to_multigraph(sample_configuration(50, 2));
  const auto pos = sign_cut(g, field_of(std::vector<double>(50, 1.0)));
  CHECK(pos.counts() == std::array<int, 2>{50, 0});
  WaveParams p;
  p.seed = 3;
  auto f = wave_field(g, p);
  const auto c = sign_cut(g, f);
  for (auto& x : f.values) x = -x;
  const auto neg = sign_cut(g, f);
  for (VertexId v = 0; v < 50; ++v) CHECK(c.side(v) + neg.side(v) == 3);
  CHECK(sign_cut(g, field_of(std::vector<double>(50, 0.0))).counts()[0] == 50);
}

TEST_CASE("orthant probabilities") {
  const auto p = cherry_orthant_probs();
  CHECK(std::abs(p.p_same - 0.798611) < 1e-6);
  CHECK(std::abs(p.p_one - 0.186429) < 1e-6);
  CHECK(std::abs(p.p_border - 0.0149586) < 1e-6);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(-2 * std::sqrt(2.0), 2 * std::sqrt(2.0));
  for (int t = 0; t < 100; ++t) {
    const auto q = cherry_orthant_probs(lam(rng));
    CHECK(std::abs(q.p_same + q.p_one + q.p_border - 1) < 1e-9);
    CHECK(q.p_same >= 0);
    CHECK(q.p_one >= 0);
    CHECK(q.p_border >= 0);
  }
  const auto ind = cherry_orthant_probs_from_correlations(0, 0);
  CHECK(ind.p_same == doctest::Approx(0.25));
  CHECK(ind.p_one == doctest::Approx(0.5));
  CHECK(ind.p_border == doctest::Approx(0.25));
  // at lambda = 0 the recursion gives sigma_2 = -1/2, so the signs are not independent
  const auto zero = cherry_orthant_probs(0.0);
  CHECK(zero.p_same == doctest::Approx(1.0 / 6));
  CHECK(zero.p_one == doctest::Approx(2.0 / 3));
  CHECK(zero.p_border == doctest::Approx(1.0 / 6));
  CHECK_THROWS_AS(cherry_orthant_probs_from_correlations(1.5, 0), std::domain_error);
}

TEST_CASE("orthant probabilities agree with sampling three correlated normals") {
  const double r1 = sigma(1), r2 = sigma(2);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  // center c, ends e = r1 c + sqrt(1 - r1^2) w with corr(w1, w2) = rho
  const double rho = (r2 - r1 * r1) / (1 - r1 * r1), side = std::sqrt(1 - r1 * r1);
  const int samples = 400000;
  int same = 0, border = 0;
  for (int i = 0; i < samples; ++i) {
    const double c = normal(rng), u1 = normal(rng), u2 = normal(rng);
    const double w1 = u1, w2 = rho * u1 + std::sqrt(1 - rho * rho) * u2;
    const double e1 = r1 * c + side * w1, e2 = r1 * c + side * w2;
    const bool sc = c >= 0, s1 = e1 >= 0, s2 = e2 >= 0;
    same += sc == s1 && sc == s2;
    border += sc != s1 && sc != s2;
  }
  const auto p = cherry_orthant_probs();
  auto close = [&](double hits, double prob) { return std::abs(hits / samples - prob) < 4 * std::sqrt(prob * (1 - prob) / samples); };
  CHECK(close(same, p.p_same));
  CHECK(close(border, p.p_border));
}

TEST_CASE("cut rates") {
  CHECK(std::abs(lyons_rate() - 0.16226) < 1e-5);
  CHECK(lyons_rate(0.0) == doctest::Approx(0.75));
  CHECK(lyons_rate_from_correlations(0, 0) == doctest::Approx(0.75));
  // finite-radius predictions decrease toward the limit
  double prev = 1;
  for (int r = 1; r <= 40; ++r) {
    const double rate = lyons_rate_from_correlations(tree_correlation(r, 1), tree_correlation(r, 2));
    CHECK(rate < prev);
    CHECK(rate > lyons_rate());
    prev = rate;
  }
  // large radii stay finite and keep closing in on the limit
  const double far = lyons_rate_from_correlations(tree_correlation(3000, 1), tree_correlation(3000, 2)) - lyons_rate();
  const double near = lyons_rate_from_correlations(tree_correlation(1000, 1), tree_correlation(1000, 2)) - lyons_rate();
  CHECK(std::isfinite(far));
  CHECK(far > 0);
  CHECK(far < near);
  CHECK(tree_correlation(3000, 1) < 1);
}

TEST_CASE("border cherries") {
  const auto path = from_pairs(3, {{0, 1}, {1, 2}});
  CHECK(border_cherries(path, field_of({1, -1, 1})).size() == 1);
  CHECK(border_cherries(path, field_of({1, 1, -1})).empty());
  CHECK(border_cherries(path, field_of({-1, 0, -1})).size() == 1);
  CHECK_THROWS_AS(border_cherries(path, field_of({1, 1})), std::invalid_argument);
}

TEST_CASE("border graph on hand-built fields") {
  const auto g = to_multigraph(sample_configuration(30, 1));
  CHECK(build_border_graph(g, field_of(std::vector<double>(30, 1.0))).side1.empty());
  CHECK(build_border_graph(g, field_of(std::vector<double>(30, 1.0))).edges.empty());

  // a(+) = 0 and b(-) = 1 adjacent; a also sees p1(+) = 2 and n1(-) = 3,
  // b sees p2(+) = 4 and n2(-) = 5; 6..9 form a positive path
  const auto h10 = from_pairs(10, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {6, 7}, {7, 8}, {8, 9}});
  const auto h = build_border_graph(h10, field_of({1, -1, 1, -1, 1, -1, 1, 1, 1, 1}));
  CHECK(h.side1 == std::vector<VertexId>{0});
  CHECK(h.side2 == std::vector<VertexId>{1});
  REQUIRE(h.edges.size() == 1);
  CHECK(h.edges[0] == std::pair<VertexId, VertexId>{0, 1});
  CHECK(h.isolated().empty());
  CHECK_NOTHROW(validate_border_graph(h));
}

TEST_CASE("border graphs have maximum degree two") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 * static_cast<int>(rng() % 100 + 1);
    const auto g = to_multigraph(sample_configuration(n, rng()));
    WaveField f;
    if (t % 2) {
      WaveParams p;
      p.seed = rng();
      p.radius = static_cast<int>(rng() % 4);
      f = wave_field(g, p);
    } else {
      for (int v = 0; v < n; ++v) f.values.push_back(normal(rng));
    }
    const auto h = build_border_graph(g, f);
    for (auto v : h.side1) CHECK(h.degree(v) <= 2);
    for (auto v : h.side2) CHECK(h.degree(v) <= 2);
    CHECK_NOTHROW(validate_border_graph(h));
    // each retained vertex is the center of exactly one border cherry
    std::map<VertexId, int> centers;
    for (const auto& ch : border_cherries(g, f)) ++centers[ch.center];
    std::size_t singles = 0;
    for (auto [v, k] : centers) singles += k == 1;
    CHECK(singles == h.side1.size() + h.side2.size());
  }
}

TEST_CASE("independent split on fixed graphs") {
  BorderGraph edge;
  edge.side1 = {0};
  edge.side2 = {1};
  edge.edges = {{0, 1}};
  check_split(edge, independent_split(edge));
  check_split(edge, independent_split(edge, false));

  BorderGraph lone;
  lone.side1 = {0, 2, 4};
  lone.side2 = {1, 3};
  const auto all = independent_split(lone);
  CHECK(all.in1.size() == 3);
  CHECK(all.in2.size() == 2);

  BorderGraph c8;
  for (int i = 0; i < 4; ++i) c8.side1.push_back(2 * i), c8.side2.push_back(2 * i + 1);
  for (int i = 0; i < 8; ++i) {
    const int a = i, b = (i + 1) % 8;
    c8.edges.push_back(a % 2 == 0 ? std::make_pair(a, b) : std::make_pair(b, a));
  }
  const auto sp = independent_split(c8);
  check_split(c8, sp);
  CHECK(sp.in1.size() >= 1);
  CHECK(sp.in2.size() >= 1);
  auto ib = index_border(c8);
  oracle::IndependentSearch search{ib.adj, ib.part, 1, 1};
  search.run();
  CHECK(search.feasible);

  BorderGraph bad = c8;
  bad.edges.push_back({0, 3});
  CHECK_THROWS_AS(independent_split(bad), std::invalid_argument);
  BorderGraph same_side;
  same_side.side1 = {0, 2};
  same_side.edges = {{0, 2}};
  CHECK_THROWS_AS(independent_split(same_side), std::invalid_argument);
}

TEST_CASE("independent split meets its bounds on random graphs") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto h = testing_support::random_border_graph(static_cast<int>(rng() % 13), static_cast<int>(rng() % 13), rng);
    REQUIRE_NOTHROW(validate_border_graph(h));
    const auto sp = independent_split(h);
    check_split(h, sp);
    check_split(h, independent_split(h, false));
    auto ib = index_border(h);
    oracle::IndependentSearch search{ib.adj, ib.part, ceil_half_minus_one(h.side1.size()), ceil_half_minus_one(h.side2.size())};
    search.run();
    CHECK(search.feasible);
    CHECK(static_cast<int>(sp.in1.size() + sp.in2.size()) <= search.max_size);
  }
}

TEST_CASE("isolated switch") {
  const auto g = to_multigraph(sample_configuration(20, 3));
  const auto c = random_bisection(g, 1);
  CHECK(isolated_switch(g, c, BorderGraph{}) == c);

  // center 0 (+) with neighbours 1(-), 2(-) and 3(+); 1 and 2 are leaves
  const auto star = from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  const auto f = field_of({1, -1, -1, 1, 1, 1});
  const auto h = build_border_graph(star, f);
  REQUIRE(h.isolated() == std::vector<VertexId>{0});
  const auto sc = sign_cut(star, f);
  const auto out = isolated_switch(star, sc, h);
  CHECK(out.crossing() == sc.crossing() - 1);
  CHECK(out.side(0) == 2);
  CHECK(oracle::recount(star, out.sides()) == out.crossing());
}

}  // TEST_SUITE

TEST_SUITE("pipeline") {

TEST_CASE("wave bisection is reproducible and balanced") {
  const auto g = sample_cubic_graph(500, 21);
  WaveParams p;
  p.seed = 4;
  p.radius = 3;
  const auto a = wave_bisect(g, p);
  CHECK(a == wave_bisect(g, p));
  CHECK(is_bisection(a, 0));
  CHECK(a.crossing() == oracle::recount(g, a.sides()));
}

TEST_CASE("stage cut sizes follow the pipeline bounds") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 * static_cast<int>(rng() % 400 + 10);
    const auto g = sample_cubic_graph(n, rng(), true);
    WaveParams p;
    p.seed = rng();
    p.radius = static_cast<int>(rng() % 5 + 1);
    const auto r = wave_bisect_traced(g, p);
    REQUIRE(r.stages.size() == 5);
    CHECK(r.stages[0].stage == "sign_cut");
    CHECK(r.stages[1].stage == "isolated_switch");
    CHECK(r.stages[2].stage == "independent_swap");
    CHECK(r.stages[3].stage == "repair_balance");
    CHECK(r.stages[4].stage == "local_search");
    CHECK(r.stages[1].crossing <= r.stages[0].crossing);
    CHECK(r.stages[2].crossing <= r.stages[1].crossing - 2LL * r.swapped_pairs);
    const int moved = std::abs(r.stages[2].balance) / 2;
    CHECK(r.stages[3].crossing <= r.stages[2].crossing + 3LL * moved);
    CHECK(r.stages[3].balance == 0);
    CHECK(r.stages[4].crossing <= r.stages[3].crossing);
    CHECK(r.stages[4].balance == 0);
    CHECK(r.stages[4].crossing == r.cut.crossing());
  }
}

TEST_CASE("wave bisection never beats the exact width") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 * static_cast<int>(rng() % 5 + 4);
    const auto g = sample_cubic_graph(n, rng());
    WaveParams p;
    p.seed = rng();
    CHECK(wave_bisect(g, p).crossing() >= exact_bisection(g).width);
  }
}

TEST_CASE("final cut fraction lies below the finite-radius sign-cut rate") {
  double total = 0;
  const int seeds = 20, n = 20000, radius = 6;
  for (int s = 0; s < seeds; ++s) {
    const auto g = sample_cubic_graph(n, static_cast<std::uint64_t>(100 + s));
    WaveParams p;
    p.seed = static_cast<std::uint64_t>(s);
    p.radius = radius;
    p.threads = 4;
    total += static_cast<double>(wave_bisect(g, p).crossing()) / n;
  }
  const double predicted = lyons_rate_from_correlations(tree_correlation(radius, 1), tree_correlation(radius, 2));
  CHECK(total / seeds < predicted);
}

}  // TEST_SUITE

TEST_SUITE("disputed_examples") {

// Kept as stated in the reference. With the unnormalized coefficients each
// white-noise value enters the field total with weight about 90 at radius 6,
// so the mean of the field is of order 90 / sqrt(n) and the expected
// imbalance at n = 20000 is several percent.
TEST_CASE("sign cut is nearly balanced at n = 20000") {
  for (int s = 0; s < 20; ++s) {
    const auto g = sample_cubic_graph(20000, static_cast<std::uint64_t>(s));
    WaveParams p;
    p.seed = static_cast<std::uint64_t>(s);
    p.radius = 6;
    const auto c = sign_cut(g, wave_field(g, p));
    CHECK(std::abs(c.imbalance()) / 20000.0 < 0.05);
  }
}

}  // TEST_SUITE
