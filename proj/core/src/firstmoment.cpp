#include "minbis/firstmoment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "nelder_mead.hpp"

namespace minbis {

namespace {

const double kLn2 = std::numbers::ln2;
const double kLn3 = std::log(3.0);
const double kLn6 = std::log(6.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double xlogx(double x) {
  if (x < 0) throw std::domain_error("xlogx: negative argument");
  return x == 0.0 ? 0.0 : x * std::log(x);
}

// ---------------------------------------------------------------------------
// Type one

namespace {

void check_type1(const Type1Point& p) {
  const double b = p.beta_prime, T = p.T;
  const double eps = 1e-15;
  if (!(b >= 0 && b < 0.25)) throw std::domain_error("type1: beta' must lie in [0, 0.25)");
  if (T < b - eps || T > 2 * b + eps) throw std::domain_error("type1: T must lie in [beta', 2 beta']");
  if (0.5 - b - T < -eps) throw std::domain_error("type1: 0.5 - beta' - T must be non-negative");
}

double clamp0(double x) { return x < 0 ? 0.0 : x; }

}  // namespace

double type1_lagrange_t(int i, const Type1Point& p) {
  const double b = p.beta_prime, T = p.T;
  if (i < 1) throw std::domain_error("type1_lagrange_t: i must be >= 1");
  if (!(b < T && T < 2 * b)) throw std::domain_error("type1_lagrange_t: requires beta' < T < 2 beta'");
  return (T - b) * (T - b) / (2 * b - T) * std::pow((2 * b - T) / b, i);
}

double type1_exponent(const Type1Point& p) {
  check_type1(p);
  const double b = p.beta_prime, T = p.T;
  const double u = clamp0(T - b), v = clamp0(2 * b - T);
  // The last term, -b[ln((T-b)^2/b) - ((2b-T)/b) ln((T-b)^2/(2b-T))], is
  // rewritten with x log x so that both ends of the T range are covered by
  // the same expression.
  const double tail = -2.0 * xlogx(u) + xlogx(b) - xlogx(v);
  return 0.5 * xlogx(1.5 - 5 * b) + (4 * b - 2 * T) * kLn2 + (2 * b + T - 1.5) * kLn3 + 0.5 * xlogx(1.5 - b) -
         xlogx(0.5 - b) - xlogx(clamp0(0.5 - b - T)) + tail;
}

std::array<double, 2> type1_gradient(const Type1Point& p) {
  check_type1(p);
  const double b = p.beta_prime, T = p.T;
  const double d_beta = -2.5 * (std::log(1.5 - 5 * b) + 1) + 4 * kLn2 + 2 * kLn3 - 0.5 * (std::log(1.5 - b) + 1) +
                        (std::log(0.5 - b) + 1) + (std::log(0.5 - b - T) + 1) + 2 * std::log(T - b) + std::log(b) + 1 -
                        2 * std::log(2 * b - T);
  const double d_T = kLn3 - 2 * kLn2 + std::log(0.5 - b - T) - 2 * std::log(T - b) + std::log(2 * b - T);
  return {d_beta, d_T};
}

double type1_best_T(double b) {
  if (!(b >= 0 && b < 0.25)) throw std::domain_error("type1_best_T: beta' must lie in [0, 0.25)");
  if (b == 0) return 0;
  // d/dT = 0 is (3/4)(0.5 - b - T)(2b - T) = (T - b)^2.
  const double B = 1.5 - 5 * b, C = 10 * b * b - 3 * b;
  const double T = (-B + std::sqrt(B * B - 4 * C)) / 2;
  return std::clamp(T, b, std::min(2 * b, 0.5 - b));
}

namespace {

double type1_profile_value(double b) { return type1_exponent({b, type1_best_T(b)}); }
double type1_profile_slope(double b) { return type1_gradient({b, type1_best_T(b)})[0]; }

}  // namespace

Type1Optimum type1_optimize(double lo, double hi, double step) {
  if (!(lo >= 0 && lo <= hi && hi < 0.25)) throw std::domain_error("type1_optimize: need 0 <= lo <= hi < 0.25");
  if (!(step > 0)) throw std::invalid_argument("type1_optimize: step must be positive");
  Type1Optimum out;
  if (lo == hi) {
    out.argmax = {lo, type1_best_T(lo)};
    out.max_value = out.certified_upper = type1_exponent(out.argmax);
    out.certified_negative = out.max_value < 0;
    out.grid_points = 1;
    return out;
  }

  const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / step - 1e-9)));
  const double h = (hi - lo) / cells;
  std::vector<double> b(static_cast<std::size_t>(cells) + 1), g(b.size()), slope(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    b[i] = i + 1 == b.size() ? hi : lo + h * static_cast<double>(i);
    g[i] = type1_profile_value(b[i]);
    slope[i] = type1_profile_slope(b[i]);
  }
  out.grid_points = static_cast<int>(b.size());
  out.step = h;

  // Slope and curvature bounds with a safety factor of 2.
  double max_slope = 0, max_curv = 0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    for (int k = 0; k <= 4; ++k) max_slope = std::max(max_slope, std::abs(type1_profile_slope(b[i] + h * k / 4.0)));
    max_curv = std::max(max_curv, std::abs(slope[i + 1] - slope[i]) / h);
  }
  max_slope *= 2;
  max_curv *= 2;

  double upper = -kInf;
  std::size_t best = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (g[i] > g[best]) best = i;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double lo_slope = std::min(slope[i], slope[i + 1]) - h * max_curv;
    const double hi_slope = std::max(slope[i], slope[i + 1]) + h * max_curv;
    double cell;
    if (std::isfinite(lo_slope) && lo_slope > 0) cell = g[i + 1];
    else if (std::isfinite(hi_slope) && hi_slope < 0) cell = g[i];
    else cell = std::max(g[i], g[i + 1]) + max_slope * h / 2;
    upper = std::max(upper, cell);
  }

  // Golden-section refinement when the best grid point is interior.
  double best_b = b[best], best_g = g[best];
  if (best > 0 && best + 1 < b.size()) {
    double a = b[best - 1], c = b[best + 1];
    const double r = (std::sqrt(5.0) - 1) / 2;
    double x1 = c - r * (c - a), x2 = a + r * (c - a);
    double f1 = type1_profile_value(x1), f2 = type1_profile_value(x2);
    for (int it = 0; it < 100 && c - a > 1e-13; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + r * (c - a);
        f2 = type1_profile_value(x2);
      } else {
        c = x2;
        x2 = x1;
        f2 = f1;
        x1 = c - r * (c - a);
        f1 = type1_profile_value(x1);
      }
    }
    const double xm = (a + c) / 2, fm = type1_profile_value(xm);
    if (fm > best_g) {
      best_g = fm;
      best_b = xm;
    }
  }
  out.max_value = best_g;
  out.argmax = {best_b, type1_best_T(best_b)};
  out.certified_upper = std::max(upper, best_g);
  out.certified_negative = out.certified_upper < 0;
  return out;
}

std::vector<CurvePoint> type1_zero_curve(double lo, double hi, double step) {
  if (!(lo > 0 && lo <= hi && hi < 0.25)) throw std::domain_error("type1_zero_curve: need 0 < lo <= hi < 0.25");
  if (!(step > 0)) throw std::invalid_argument("type1_zero_curve: step must be positive");
  std::vector<CurvePoint> out;
  const int cells = std::max(0, static_cast<int>(std::ceil((hi - lo) / step - 1e-9)));
  for (int i = 0; i <= cells; ++i) {
    const double b = i == cells ? hi : lo + step * i;
    const double t_star = type1_best_T(b);
    const double peak = type1_exponent({b, t_star});
    if (peak <= 0) continue;
    auto root = [&](double a, double c) {
      double fa = type1_exponent({b, a});
      for (int it = 0; it < 200 && c - a > 1e-15; ++it) {
        const double m = (a + c) / 2, fm = type1_exponent({b, m});
        if ((fm > 0) == (fa > 0)) {
          a = m;
          fa = fm;
        } else {
          c = m;
        }
      }
      return (a + c) / 2;
    };
    const double t_max = std::min(2 * b, 0.5 - b);
    if (type1_exponent({b, b}) < 0) {
      const double T = root(b, t_star);
      out.push_back({b, T, type1_exponent({b, T})});
    }
    if (type1_exponent({b, t_max}) < 0) {
      const double T = root(t_star, t_max);
      out.push_back({b, T, type1_exponent({b, T})});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Type two

namespace {

// Per-weight coefficient sums of each family with e^{lambda} factors
// removed: `a` is the sum of the constants c, `b` the sum of c (ln c + s)
// where s is the log of the leaf/automorphism factor of that member.
struct WeightTables {
  int max_weight = 0;
  std::vector<double> xa, xb, ja, jb, ya, yb;
};

std::shared_ptr<const WeightTables> build_tables(int max_weight) {
  auto t = std::make_shared<WeightTables>();
  t->max_weight = max_weight;
  const auto size = static_cast<std::size_t>(max_weight) + 1;
  t->xa.assign(size, 0.0);
  t->xb.assign(size, 0.0);
  t->ja.assign(size, 0.0);
  t->jb.assign(size, 0.0);
  t->ya.assign(size, 0.0);
  t->yb.assign(size, 0.0);
  const double e = std::numbers::e;
  auto put = [](std::vector<double>& a, std::vector<double>& bsum, std::size_t w, double count, double c, double s) {
    a[w] += count * c;
    bsum[w] += count * c * (std::log(c) + s);
  };
  for (int w = 1; w <= max_weight; ++w) {
    const auto W = static_cast<std::size_t>(w);
    put(t->xa, t->xb, W, 1, 1 / (8 * e), 3 * kLn2);
    if (w >= 2) {
      // x_{j,i} with i = w - 1 and 1 <= j <= floor(w/2); j = w/2 is the middle.
      const int middle = w % 2 == 0 ? 1 : 0;
      put(t->ja, t->jb, W, w / 2 - middle, 1 / (8 * e), 2 * kLn2);
      if (middle) put(t->ja, t->jb, W, 1, 1 / (16 * e), 3 * kLn2);
    }
    double distinct = 0, two_equal = 0, all_equal = 0;
    for (int i = 1; 3 * i <= w; ++i) {
      const int j_hi = (w - i) / 2;
      if (j_hi < i) continue;
      const int count = j_hi - i + 1;
      const int l_at_i = w - 2 * i;
      int special = 0;
      if (l_at_i == i) {
        ++all_equal;
        special = 1;
      } else {
        ++two_equal;  // j = i < l
        special = 1;
        if ((w - i) % 2 == 0 && j_hi > i) {
          ++two_equal;  // i < j = l
          special = 2;
        }
      }
      distinct += count - special;
    }
    put(t->ya, t->yb, W, distinct, 1 / (8 * e), 3 * kLn2);
    put(t->ya, t->yb, W, two_equal, 1 / (16 * e), 4 * kLn2);
    put(t->ya, t->yb, W, all_equal, 1 / (48 * e), 3 * kLn2 + kLn6);
  }
  return t;
}

std::shared_ptr<const WeightTables> tables_for(int max_weight) {
  static std::mutex mu;
  static std::shared_ptr<const WeightTables> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->max_weight < max_weight) cached = build_tables(std::max(max_weight, 256));
  return cached;
}

constexpr int kMaxCutoff = 200000;

int auto_cutoff(double lam3) {
  const double q = std::exp(lam3);
  // Family counts grow like w^2 and weights add one more factor of w.
  const double margin = 1e-14 * (1 - q) * (1 - q);
  int w = 16;
  while (std::pow(static_cast<double>(w), 3) * std::pow(q, w) > margin) {
    w = static_cast<int>(w * 1.25) + 1;
    if (w > kMaxCutoff) throw std::domain_error("type2_profile: lambda3 too close to 0 for the series cutoff");
  }
  return w;
}

}  // namespace

Type2Profile type2_profile(double lam1, double lam3, int cutoff) {
  if (!(lam3 < 0)) throw std::domain_error("type2_profile: series diverge unless lambda3 < 0");
  if (cutoff <= 0) cutoff = auto_cutoff(lam3);
  if (cutoff > kMaxCutoff) throw std::domain_error("type2_profile: cutoff too large");
  const auto t = tables_for(cutoff);
  const double el1 = std::exp(lam1);
  Type2Profile p;
  p.cutoff = cutoff;
  double qw = 1.0;
  const double q = std::exp(lam3);
  for (int w = 1; w <= cutoff; ++w) {
    qw *= q;
    if (qw == 0.0) break;
    const auto W = static_cast<std::size_t>(w);
    const double wl3 = w * lam3;
    const double x = qw * t->xa[W], j = el1 * qw * t->ja[W], y = qw * t->ya[W];
    p.x_count += x;
    p.xji_count += j;
    p.y_count += y;
    p.s_weight += w * (x + j + y);
    p.s_entropy += qw * (t->xb[W] + t->xa[W] * wl3) + el1 * qw * (t->jb[W] + t->ja[W] * (wl3 + lam1)) +
                   qw * (t->yb[W] + t->ya[W] * wl3);
  }
  p.s_count = p.x_count + p.xji_count + p.y_count;
  p.s_k = p.xji_count;
  return p;
}

Lambda2Solution type2_solve_lambda2(double lam1, double lam3, double beta_prime) {
  if (!(beta_prime > 0)) throw std::domain_error("type2_solve_lambda2: beta' must be positive");
  const auto p = type2_profile(lam1, lam3);
  if (!(p.s_weight > 0)) throw std::domain_error("type2_solve_lambda2: nonpositive weight sum");
  Lambda2Solution s;
  s.lam2 = std::log(beta_prime / p.s_weight);
  const double scale = beta_prime / p.s_weight;
  s.t = scale * p.s_count;
  s.k = scale * p.s_k;
  return s;
}

std::array<double, 3> type2_constraint_residuals(double lam1, double lam3, double beta_prime) {
  const auto sol = type2_solve_lambda2(lam1, lam3, beta_prime);
  const int cutoff = auto_cutoff(lam3);
  const double e = std::numbers::e;
  const double base = std::exp(sol.lam2);
  double sum_k = 0, sum_all = 0, sum_weight = 0;
  auto member = [&](double value, int weight) {
    sum_all += value;
    sum_weight += weight * value;
  };
  for (int i = 1; i <= cutoff; ++i) member(base * std::exp(i * lam3) / (8 * e), i);
  for (int i = 1; i + 1 <= cutoff; ++i)
    for (int j = 1; 2 * j <= i + 1; ++j) {
      const double v = base * std::exp(lam1 + (i + 1) * lam3) / ((2 * j == i + 1 ? 16 : 8) * e);
      member(v, i + 1);
      sum_k += v;
    }
  for (int i = 1; 3 * i <= cutoff; ++i)
    for (int j = i; i + 2 * j <= cutoff; ++j)
      for (int l = j; i + j + l <= cutoff; ++l) {
        const int equal = (i == j) + (j == l);
        const double denom = equal == 0 ? 8 : equal == 1 ? 16 : 48;
        member(base * std::exp((i + j + l) * lam3) / (denom * e), i + j + l);
      }
  return {sum_k - sol.k, sum_all - sol.t, sum_weight - beta_prime};
}

Type2Point make_type2_point(double beta1, double beta2, double lam1_a, double lam3_a, double lam1_b, double lam3_b) {
  Type2Point p{beta1, beta2, lam1_a, lam3_a, lam1_b, lam3_b};
  const auto a = type2_solve_lambda2(lam1_a, lam3_a, beta1);
  const auto b = type2_solve_lambda2(lam1_b, lam3_b, beta2);
  p.t1 = a.t;
  p.k1 = a.k;
  p.lam2_a = a.lam2;
  p.t2 = b.t;
  p.k2 = b.k;
  p.lam2_b = b.lam2;
  return p;
}

namespace {

// Contribution of one side: choice of the subdivision vertices and of their
// neighbours, the path families (entropy minus the leaf/automorphism
// factors), the remaining unmatched points, and the half of the matching
// attributed to this side.
double side_exponent(double b, double lam1, double lam3) {
  const auto prof = type2_profile(lam1, lam3);
  const double scale = b / prof.s_weight;
  const double lam2 = std::log(scale);
  const double t = scale * prof.s_count, k = scale * prof.s_k;
  const double a = 0.5 - 2 * b - t + k;
  const double c = 1.5 - 5 * b + 2 * k;
  if (!(a > 0 && c > 0 && b < 0.5)) throw std::domain_error("type2_exponent: point outside the admissible region");

  const double min_f = lam2 * t + scale * prof.s_entropy;
  const double choose = xlogx(0.5) - xlogx(b) - xlogx(0.5 - b);
  const double ends = xlogx(b) - b;
  const double families = -min_f + t;
  const double rest = xlogx(0.5 - b) - (0.5 - b) - xlogx(a) + a;
  const double pairing = 0.5 * xlogx(c) - 0.5 * c - a * kLn6;
  const double matching = 0.5 * (xlogx(b) - b);
  return choose + ends + families + rest + pairing + matching;
}

}  // namespace

double type2_exponent(const Type2Point& p) {
  if (!(p.beta1 > 0 && p.beta2 > 0)) throw std::domain_error("type2_exponent: beta' must be positive");
  const double side_a = side_exponent(p.beta1, p.lam1_a, p.lam3_a);
  const double side_b = side_exponent(p.beta2, p.lam1_b, p.lam3_b);
  const auto ka = type2_solve_lambda2(p.lam1_a, p.lam3_a, p.beta1).k;
  const auto kb = type2_solve_lambda2(p.lam1_b, p.lam3_b, p.beta2).k;
  // Regrouping binomial C(k1/2 + k2/2, k1/2) enters with a minus sign.
  const double regroup = -(xlogx((ka + kb) / 2) - xlogx(ka / 2) - xlogx(kb / 2));
  return kLn2 + kLn6 - 1.5 * kLn3 + 1.5 + regroup + side_a + side_b;
}

namespace {

double safe_exponent(double b1, double b2, double l1a, double l3a, double l1b, double l3b) {
  if (!(l3a < 0 && l3b < 0) || l3a < -40 || l3b < -40 || std::abs(l1a) > 40 || std::abs(l1b) > 40) return -kInf;
  try {
    return type2_exponent({b1, b2, l1a, l3a, l1b, l3b});
  } catch (const std::domain_error&) {
    return -kInf;
  }
}

}  // namespace

Type2Point type2_maximize_multipliers(double beta1, double beta2, bool shared) {
  auto shared_obj = [&](const std::vector<double>& x) { return -safe_exponent(beta1, beta2, x[0], x[1], x[0], x[1]); };
  detail::SimplexResult best;
  for (double l1 : {-1.0, 0.0, 1.0})
    for (double l3 : {-2.0, -1.4, -0.8}) {
      auto r = detail::nelder_mead(shared_obj, {l1, l3}, 0.25);
      if (!r.x.empty() && r.value < best.value) best = r;
    }
  if (best.x.empty()) throw std::domain_error("type2_maximize_multipliers: no admissible multipliers found");
  std::vector<double> m{best.x[0], best.x[1], best.x[0], best.x[1]};
  if (!shared) {
    auto full_obj = [&](const std::vector<double>& x) { return -safe_exponent(beta1, beta2, x[0], x[1], x[2], x[3]); };
    auto r = detail::nelder_mead(full_obj, m, 0.05);
    if (!r.x.empty() && r.value <= best.value) m = r.x;
  }
  return make_type2_point(beta1, beta2, m[0], m[1], m[2], m[3]);
}

Type2Optimum type2_optimize(double lo, double hi, const Type2Search& search) {
  if (!(lo > 0 && lo <= hi && hi < 0.2)) throw std::domain_error("type2_optimize: need 0 < lo <= hi < 0.2");
  const int G = lo == hi ? 1 : std::max(2, search.grid);
  std::vector<double> betas(static_cast<std::size_t>(G));
  for (int i = 0; i < G; ++i) betas[static_cast<std::size_t>(i)] = i + 1 == G ? hi : lo + (hi - lo) * i / (G - 1);

  Type2Optimum out;
  std::vector<std::vector<double>> value(static_cast<std::size_t>(G), std::vector<double>(static_cast<std::size_t>(G), kInf));
  std::vector<std::vector<Type2Point>> point(static_cast<std::size_t>(G), std::vector<Type2Point>(static_cast<std::size_t>(G)));
  double best = -kInf;
  for (int i = 0; i < G; ++i)
    for (int j = search.diagonal ? i : 0; j <= (search.diagonal ? i : G - 1); ++j) {
      const auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
      if (j < i) {
        // The exponent is symmetric under exchanging the sides.
        const auto& s = point[J][I];
        value[I][J] = value[J][I];
        point[I][J] = make_type2_point(s.beta2, s.beta1, s.lam1_b, s.lam3_b, s.lam1_a, s.lam3_a);
      } else {
        point[I][J] = type2_maximize_multipliers(betas[I], betas[J], search.shared_multipliers);
        value[I][J] = type2_exponent(point[I][J]);
      }
      out.grid.push_back({betas[I], betas[J], value[I][J]});
      if (value[I][J] > best) {
        best = value[I][J];
        out.worst = point[I][J];
      }
    }
  out.sup_base = std::exp(best);

  const double tol = 1e-12;
  bool monotone = true;
  double max_slope = 0;
  for (int i = 0; i + 1 < G; ++i) {
    const auto I = static_cast<std::size_t>(i);
    const double h = betas[I + 1] - betas[I];
    if (search.diagonal) {
      const double d = value[I + 1][I + 1] - value[I][I];
      monotone = monotone && d >= -tol;
      max_slope = std::max(max_slope, std::abs(d) / h);
      continue;
    }
    for (int j = 0; j < G; ++j) {
      const auto J = static_cast<std::size_t>(j);
      const double d1 = value[I + 1][J] - value[I][J];
      const double d2 = value[J][I + 1] - value[J][I];
      monotone = monotone && d1 >= -tol && d2 >= -tol;
      max_slope = std::max({max_slope, std::abs(d1) / h, std::abs(d2) / h});
    }
  }
  out.monotone = monotone;
  const auto top = static_cast<std::size_t>(G - 1);
  if (monotone) {
    out.certified = value[top][top] < 0;
  } else {
    const double h = G > 1 ? (hi - lo) / (G - 1) : 0.0;
    out.certified = best + 2 * max_slope * h * (search.diagonal ? 1.0 : 2.0) < 0;
  }
  return out;
}

}  // namespace minbis
