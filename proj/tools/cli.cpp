#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "minbis/firstmoment.hpp"
#include "minbis/graph.hpp"
#include "minbis/improve.hpp"
#include "minbis/oracle.hpp"
#include "minbis/orthant.hpp"
#include "minbis/pipeline.hpp"
#include "minbis/wavecut.hpp"

namespace minbis::cli {

using nlohmann::ordered_json;

namespace {

// Values quoted next to computed ones in the bounds report.
constexpr double kRefLyons = 0.16226;
constexpr double kRefRigorous = 0.139822;
constexpr double kRefNonrigorous = 0.131366;
constexpr double kRefOrthant = 0.002818666;
constexpr double kRefBorderQuoted = 0.0149595;
constexpr double kRefIsolatedQuoted = 0.0084912;
constexpr double kRefType1Beta = 0.1069, kRefType1T = 0.1802;
constexpr double kRefType2Beta = 0.103295, kRefLam1 = 0.002428, kRefLam3 = -1.412768;
constexpr double kType2Lo = 0.1;

double num(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Multigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return read_edge_list(in);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

ordered_json stage_json(const std::vector<StageRecord>& stages) {
  auto arr = ordered_json::array();
  for (const auto& s : stages) arr.push_back({{"stage", s.stage}, {"crossing", s.crossing}, {"balance", s.balance}});
  return arr;
}

struct Options {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string record;

  // gen
  int n = 0;
  bool simple = false;
  std::string out;

  // bisect / exact / stats
  std::string input;
  std::string method = "wave";
  std::string init = "random";
  int radius = 0;
  double lambda = kWaveLambda;
  int max_set_size = 8;
  long long max_rounds = 1'000'000;
  bool round_trace = false;
  bool stage_trace = false;
  bool emit_witness = false;
  int cycle_length = 20;

  // bench
  std::vector<int> ns;
  int seeds = 5;

  // bounds
  double beta = kRefType1Beta, T = kRefType1T;
  double lo = 0.10, hi = 0.1069, step = 1e-4;
  double beta1 = kRefType2Beta, beta2 = kRefType2Beta;
  double lam1 = kRefLam1, lam3 = kRefLam3;
  double lam1_b = NAN, lam3_b = NAN;
  double lo2 = kType2Lo, hi2 = kRefType2Beta;
  std::vector<double> range;
  int grid = 7;
  bool diagonal = false, shared = false;
  bool skip_mc = false, json = false;
  long long samples = 30'000'000;
  long long blocks = 0;
};

MCOptions mc_options(const Options& o) {
  MCOptions m;
  m.threads = o.threads;
  if (o.blocks > 0) m.block_size = std::max<long long>(1, (o.samples + o.blocks - 1) / o.blocks);
  return m;
}

// --- commands -------------------------------------------------------------

std::string cmd_gen(const Options& o) {
  const auto g = sample_cubic_graph(o.n, derive_seed(o.seed, "gen"), o.simple);
  return to_edge_list_string(g);
}

ordered_json cmd_bisect(const Options& o) {
  const auto g = load_graph(o.input);
  const int n = g.num_vertices();
  ordered_json j;
  j["method"] = o.method;
  j["n"] = n;
  Cut cut;
  std::vector<StageRecord> stages;
  MoveBudget budget;
  budget.max_set_size = o.max_set_size;
  budget.max_rounds = o.max_rounds;
  budget.rng_seed = derive_seed(o.seed, "local");
  std::vector<RoundRecord> rounds;
  if (o.method == "exact") {
    cut = exact_bisection(g, o.threads).witness;
  } else if (o.method == "wave") {
    WaveParams p;
    p.radius = o.radius > 0 ? o.radius : default_radius(n);
    p.seed = derive_seed(o.seed, "wave");
    p.lambda = o.lambda;
    p.threads = o.threads;
    auto r = wave_bisect_traced(g, p, budget);
    cut = r.cut;
    stages = r.stages;
    j["radius"] = p.radius;
  } else if (o.method == "local") {
    Cut start;
    if (o.init == "random") {
      start = random_bisection(g, derive_seed(o.seed, "init"));
    } else if (o.init == "sign") {
      WaveParams p;
      p.radius = o.radius > 0 ? o.radius : default_radius(n);
      p.seed = derive_seed(o.seed, "wave");
      p.lambda = o.lambda;
      p.threads = o.threads;
      start = repair_balance(g, sign_cut(g, wave_field(g, p)), 0);
    } else {
      throw std::invalid_argument("unknown --init: " + o.init);
    }
    stages.push_back({"init", start.crossing(), start.imbalance()});
    auto r = local_search_traced(g, start, budget);
    cut = r.cut;
    rounds = std::move(r.trace);
    stages.push_back({"local_search", cut.crossing(), cut.imbalance()});
  } else {
    throw std::invalid_argument("unknown --method: " + o.method);
  }
  j["crossing"] = cut.crossing();
  j["fraction"] = num(n > 0 ? static_cast<double>(cut.crossing()) / n : 0.0);
  j["balance"] = cut.imbalance();
  if (o.stage_trace) j["stage_trace"] = stage_json(stages);
  if (o.round_trace) {
    if (o.method != "local") throw std::invalid_argument("bisect: --round-trace needs --method local");
    auto& t = j["round_trace"] = ordered_json::array();
    for (const auto& r : rounds)
      t.push_back({{"round", r.round}, {"cut_size", r.cut_size}, {"move_gain", r.move_gain}, {"move_sizes", {r.size1, r.size2}}});
  }
  return j;
}

std::string cmd_bench(const Options& o) {
  if (o.method != "wave" && o.method != "local") throw std::invalid_argument("bench: --method must be wave or local");
  if (o.seeds < 1) throw std::invalid_argument("bench: --seeds must be >= 1");
  std::ostringstream csv;
  csv << "kind,n,seed,method,radius,crossing,fraction,balance,pre_fraction,stages\n";
  for (int n : o.ns) {
    std::vector<double> frac, pre, cross;
    int radius = 0;
    for (int s = 0; s < o.seeds; ++s) {
      const auto run_seed = derive_seed(o.seed, static_cast<std::uint64_t>(s));
      const auto g = sample_cubic_graph(n, derive_seed(run_seed, "gen"));
      MoveBudget budget;
      budget.max_set_size = o.max_set_size;
      budget.max_rounds = o.max_rounds;
      std::vector<StageRecord> stages;
      Cut cut;
      if (o.method == "wave") {
        WaveParams p;
        p.radius = radius = o.radius > 0 ? o.radius : default_radius(n);
        p.seed = derive_seed(run_seed, "wave");
        p.lambda = o.lambda;
        p.threads = o.threads;
        auto r = wave_bisect_traced(g, p, budget);
        cut = r.cut;
        stages = r.stages;
      } else {
        auto start = random_bisection(g, derive_seed(run_seed, "init"));
        stages.push_back({"init", start.crossing(), start.imbalance()});
        cut = local_search(g, start, budget);
        stages.push_back({"local_search", cut.crossing(), cut.imbalance()});
      }
      std::string stage_text;
      for (const auto& st : stages) stage_text += (stage_text.empty() ? "" : ";") + st.stage + "=" + std::to_string(st.crossing);
      const double f = static_cast<double>(cut.crossing()) / n;
      const double pf = static_cast<double>(stages.front().crossing) / n;
      frac.push_back(f);
      pre.push_back(pf);
      cross.push_back(static_cast<double>(cut.crossing()));
      csv << "run," << n << ',' << s << ',' << o.method << ',' << radius << ',' << cut.crossing() << ','
          << format_number(f) << ',' << cut.imbalance() << ',' << format_number(pf) << ',' << stage_text << '\n';
    }
    auto mean = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    auto se = [&](const std::vector<double>& v) {
      if (v.size() < 2) return 0.0;
      const double m = mean(v);
      double ss = 0;
      for (double x : v) ss += (x - m) * (x - m);
      return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    };
    csv << "mean," << n << ",," << o.method << ',' << radius << ',' << format_number(mean(cross)) << ','
        << format_number(mean(frac)) << ",," << format_number(mean(pre)) << ",\n";
    csv << "stderr," << n << ",," << o.method << ',' << radius << ',' << format_number(se(cross)) << ','
        << format_number(se(frac)) << ",," << format_number(se(pre)) << ",\n";
  }
  return csv.str();
}

ordered_json cmd_stats(const Options& o) {
  Multigraph g;
  if (!o.input.empty()) g = load_graph(o.input);
  else g = sample_cubic_graph(o.n, derive_seed(o.seed, "gen"));
  const int n = g.num_vertices();
  int loops = 0;
  for (const auto& e : g.edges()) loops += e.is_loop();
  const auto pairs = g.canonical_pairs();
  int multi = 0;
  for (std::size_t i = 1; i < pairs.size(); ++i)
    multi += pairs[i] == pairs[i - 1] && pairs[i].first != pairs[i].second;
  const auto core = two_core(g);
  ordered_json j;
  j["n"] = n;
  j["m"] = g.num_edges();
  j["cubic"] = g.is_regular(3);
  j["simple"] = is_simple(g);
  j["loops"] = loops;
  j["parallel_edges"] = multi;
  j["cherries"] = cherries(g).size();
  j["two_core_vertices"] = core.vertices.size();
  j["two_core_edges"] = core.graph.num_edges();
  j["cycle_length_limit"] = o.cycle_length;
  j["short_cycle_vertices"] = count_short_cycle_vertices(g, o.cycle_length);
  j["log_n"] = num(std::log(static_cast<double>(n)));
  j["typical"] = is_typical(g, o.cycle_length);
  return j;
}

ordered_json type1_json(const Type1Optimum& r, double lo, double hi) {
  return {{"range", {num(lo), num(hi)}},
          {"step", num(r.step)},
          {"grid_points", r.grid_points},
          {"max_value", num(r.max_value)},
          {"argmax_beta", num(r.argmax.beta_prime)},
          {"argmax_T", num(r.argmax.T)},
          {"certified_upper", num(r.certified_upper)},
          {"certified_negative", r.certified_negative}};
}

ordered_json type2_point_json(const Type2Point& p) {
  const double e = type2_exponent(p);
  return {{"beta1", num(p.beta1)},   {"beta2", num(p.beta2)},   {"lam1_a", num(p.lam1_a)}, {"lam3_a", num(p.lam3_a)},
          {"lam1_b", num(p.lam1_b)}, {"lam3_b", num(p.lam3_b)}, {"lam2_a", num(p.lam2_a)}, {"lam2_b", num(p.lam2_b)},
          {"t1", num(p.t1)},         {"t2", num(p.t2)},         {"k1", num(p.k1)},         {"k2", num(p.k2)},
          {"exponent", num(e)},      {"base", num(std::exp(e))}};
}

ordered_json type2_opt_json(const Type2Optimum& r, double lo, double hi, const Type2Search& s) {
  auto grid = ordered_json::array();
  for (const auto& gv : r.grid) grid.push_back({num(gv.beta1), num(gv.beta2), num(gv.exponent)});
  return {{"range", {num(lo), num(hi)}}, {"grid", s.grid},           {"diagonal", s.diagonal},
          {"shared_multipliers", s.shared_multipliers},           {"sup_base", num(r.sup_base)},
          {"monotone", r.monotone},     {"certified", r.certified}, {"worst", type2_point_json(r.worst)},
          {"values", grid}};
}

ordered_json cmd_eval_type1(const Options& o) {
  const Type1Point p{o.beta, o.T};
  ordered_json j{{"beta_prime", num(o.beta)}, {"T", num(o.T)}, {"exponent", num(type1_exponent(p))}};
  if (o.beta < o.T && o.T < 2 * o.beta) {
    const auto g = type1_gradient(p);
    j["gradient"] = {num(g[0]), num(g[1])};
  }
  j["best_T"] = num(type1_best_T(o.beta));
  j["best_exponent"] = num(type1_exponent({o.beta, type1_best_T(o.beta)}));
  return j;
}

ordered_json cmd_eval_type2(const Options& o) {
  const double l1b = std::isnan(o.lam1_b) ? o.lam1 : o.lam1_b;
  const double l3b = std::isnan(o.lam3_b) ? o.lam3 : o.lam3_b;
  auto j = type2_point_json(make_type2_point(o.beta1, o.beta2, o.lam1, o.lam3, l1b, l3b));
  const auto ra = type2_constraint_residuals(o.lam1, o.lam3, o.beta1);
  const auto rb = type2_constraint_residuals(l1b, l3b, o.beta2);
  j["residuals_a"] = {num(ra[0]), num(ra[1]), num(ra[2])};
  j["residuals_b"] = {num(rb[0]), num(rb[1]), num(rb[2])};
  return j;
}

ordered_json mc_json(const MCResult& r) {
  return {{"estimate", num(r.estimate)},
          {"std_error", num(r.std_error)},
          {"ci95", {num(r.estimate - 1.96 * r.std_error), num(r.estimate + 1.96 * r.std_error)}},
          {"samples", r.samples},
          {"hits", r.hits},
          {"seed", r.seed}};
}

ordered_json cmd_report(const Options& o) {
  ordered_json j;
  j["lambda"] = num(kWaveLambda);
  auto sig = ordered_json::array();
  for (double s : sigma_table(6)) sig.push_back(num(s));
  j["sigma"] = sig;
  const auto rb = rigorous_upper_bound();
  j["orthant"] = {{"p_same", num(rb.probs.p_same)},
                  {"p_one", num(rb.probs.p_one)},
                  {"p_border", num(rb.probs.p_border)},
                  {"sum", num(rb.probs.p_same + rb.probs.p_one + rb.probs.p_border)}};
  j["lyons_rate"] = {{"computed", num(rb.lyons)}, {"reference", kRefLyons}};
  j["rigorous"] = {{"border_density", num(rb.border_density)},
                   {"xi", num(rb.xi)},
                   {"bound", num(rb.bound)},
                   {"reference", kRefRigorous}};
  if (!o.skip_mc) {
    const auto mc = orthant_mc(o.samples, o.seed, mc_options(o));
    auto m = mc_json(mc);
    m["reference"] = kRefOrthant;
    m["z_score"] = num(mc.std_error > 0 ? (mc.estimate - kRefOrthant) / mc.std_error : 0.0);
    j["monte_carlo"] = m;
    const auto nb = nonrigorous_upper_bound(mc);
    const auto nref = nonrigorous_upper_bound(kRefOrthant);
    j["nonrigorous"] = {{"isolated_per_side", num(nb.isolated_per_side)},
                        {"gain_isolated", num(nb.gain_isolated)},
                        {"remaining", num(nb.remaining)},
                        {"gain_split", num(nb.gain_split)},
                        {"bound", num(nb.bound)},
                        {"bound_at_reference_estimate", num(nref.bound)},
                        {"reference", kRefNonrigorous}};
  }

  const auto t1 = type1_optimize(0.10, kRefType1Beta);
  auto t1j = type1_json(t1, 0.10, kRefType1Beta);
  t1j["value_at_reference_point"] = num(type1_exponent({kRefType1Beta, kRefType1T}));
  j["type1"] = t1j;

  const auto ref_point = make_type2_point(kRefType2Beta, kRefType2Beta, kRefLam1, kRefLam3, kRefLam1, kRefLam3);
  const auto best_point = type2_maximize_multipliers(kRefType2Beta, kRefType2Beta);
  const auto t2 = type2_optimize(kType2Lo, kRefType2Beta);
  j["type2"] = {{"threshold", kRefType2Beta},
                {"at_reference_multipliers", type2_point_json(ref_point)},
                {"at_optimized_multipliers", type2_point_json(best_point)},
                {"range", {kType2Lo, kRefType2Beta}},
                {"sup_base", num(t2.sup_base)},
                {"monotone", t2.monotone},
                {"certified", t2.certified}};

  const auto quoted_chain = nonrigorous_upper_bound(kRefOrthant);
  j["discrepancies"] = ordered_json::array(
      {{{"quantity", "border cherry probability"},
        {"reference", kRefBorderQuoted},
        {"computed", num(rb.probs.p_border)},
        {"note", "closed-form orthant value; the quoted figure differs in the 7th decimal"}},
       {{"quantity", "isolated centers subtracted per side"},
        {"reference", kRefIsolatedQuoted},
        {"computed", num(quoted_chain.isolated_per_side)},
        {"note", "3 x 0.00281866; the quoted subtraction uses a different value"}}});
  return j;
}

void print_report_text(const ordered_json& j, std::ostream& out) {
  auto f = [](const ordered_json& v) { return v.is_number() ? format_number(v.get<double>()) : v.dump(); };
  out << "wave eigenvalue lambda      " << f(j["lambda"]) << "\n";
  out << "sigma_0..6                 ";
  for (const auto& s : j["sigma"]) out << ' ' << f(s);
  out << "\n";
  out << "cherry p_same               " << f(j["orthant"]["p_same"]) << "\n";
  out << "cherry p_one                " << f(j["orthant"]["p_one"]) << "\n";
  out << "cherry p_border             " << f(j["orthant"]["p_border"]) << "\n";
  out << "lyons rate                  " << f(j["lyons_rate"]["computed"]) << "  (reference " << f(j["lyons_rate"]["reference"]) << ")\n";
  out << "border density |H1|/n       " << f(j["rigorous"]["border_density"]) << "\n";
  out << "xi                          " << f(j["rigorous"]["xi"]) << "\n";
  out << "rigorous upper bound        " << f(j["rigorous"]["bound"]) << "  (reference " << f(j["rigorous"]["reference"]) << ")\n";
  if (j.contains("monte_carlo")) {
    const auto& m = j["monte_carlo"];
    out << "orthant MC estimate         " << f(m["estimate"]) << " +- " << f(m["std_error"]) << "  95% CI [" << f(m["ci95"][0])
        << ", " << f(m["ci95"][1]) << "]  samples " << m["samples"].get<long long>() << "  (reference " << f(m["reference"])
        << ", z " << f(m["z_score"]) << ")\n";
    const auto& nr = j["nonrigorous"];
    out << "isolated centers per side   " << f(nr["isolated_per_side"]) << "\n";
    out << "gain from isolated switch   " << f(nr["gain_isolated"]) << "\n";
    out << "remaining border density    " << f(nr["remaining"]) << "\n";
    out << "gain from independent swap " << ' ' << f(nr["gain_split"]) << "\n";
    out << "non-rigorous upper bound    " << f(nr["bound"]) << "  (with reference estimate " << f(nr["bound_at_reference_estimate"])
        << ", reference " << f(nr["reference"]) << ")\n";
  }
  const auto& t1 = j["type1"];
  out << "type-one exponent at ref    " << f(t1["value_at_reference_point"]) << "\n";
  out << "type-one max on [" << f(t1["range"][0]) << ", " << f(t1["range"][1]) << "]  " << f(t1["max_value"]) << " at ("
      << f(t1["argmax_beta"]) << ", " << f(t1["argmax_T"]) << "), certified upper " << f(t1["certified_upper"])
      << (t1["certified_negative"].get<bool>() ? "  negative: yes" : "  negative: NO") << "\n";
  const auto& t2 = j["type2"];
  out << "type-two base at threshold  " << f(t2["at_reference_multipliers"]["base"]) << " (reference multipliers), "
      << f(t2["at_optimized_multipliers"]["base"]) << " (optimized)\n";
  out << "type-two sup on [" << f(t2["range"][0]) << ", " << f(t2["range"][1]) << "]  " << f(t2["sup_base"])
      << (t2["certified"].get<bool>() ? "  below 1: certified" : "  below 1: NOT certified") << "\n";
  out << "discrepancies:\n";
  for (const auto& d : j["discrepancies"])
    out << "  " << d["quantity"].get<std::string>() << ": reference " << f(d["reference"]) << ", computed " << f(d["computed"])
        << "  " << d["note"].get<std::string>() << "\n";
}

std::string cmd_curve(const Options& o) {
  std::ostringstream csv;
  csv << "beta_prime,T,value\n";
  for (const auto& p : type1_zero_curve(o.lo, o.hi, o.step))
    csv << format_number(p.beta_prime) << ',' << format_number(p.T) << ',' << format_number(p.value) << '\n';
  return csv.str();
}

ordered_json cmd_exact(const Options& o) {
  const auto g = load_graph(o.input);
  const auto r = exact_bisection(g, o.threads);
  ordered_json j{{"n", g.num_vertices()}, {"width", r.width}, {"explored", r.explored}};
  if (o.emit_witness) j["witness"] = to_side_string(r.witness);
  return j;
}

ordered_json collect_params(const CLI::App* app) {
  ordered_json p = ordered_json::object();
  for (const CLI::App* a = app; a; a = a->get_subcommands().empty() ? nullptr : a->get_subcommands().front()) {
    for (const auto* opt : a->get_options()) {
      const auto name = opt->get_name(false, true);
      if (opt->count() == 0 || name == "--help" || name == "--record" || name == "--config") continue;
      const auto& res = opt->results();
      if (res.size() == 1) p[name] = res.front();
      else p[name] = res;
    }
  }
  return p;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum bisection of random cubic graphs: sampling, heuristics, exact search and bound evaluation", "minbis"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Global seed; subsystems derive their own seeds from it")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker thread cap")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--record", o.record, "Write a JSON run record to this file");

  auto* gen = app.add_subcommand("gen", "Sample a cubic configuration-model multigraph as an edge list");
  gen->add_option("--n", o.n, "Number of vertices (even)")->required();
  gen->add_flag("--simple", o.simple, "Resample until the graph has no loops or parallel edges");
  gen->add_option("--out", o.out, "Output file (default stdout)");

  auto* bisect = app.add_subcommand("bisect", "Compute a bisection of an edge-list graph");
  bisect->add_option("--input", o.input, "Edge-list file")->required();
  bisect->add_option("--method", o.method, "wave, local or exact")->capture_default_str()->check(CLI::IsMember({"wave", "local", "exact"}));
  bisect->add_option("--init", o.init, "Initial cut for local: random or sign")->capture_default_str()->check(CLI::IsMember({"random", "sign"}));
  bisect->add_option("--radius", o.radius, "Wave truncation radius (default from n)");
  bisect->add_option("--lambda", o.lambda, "Wave eigenvalue")->capture_default_str();
  bisect->add_option("--max-set-size", o.max_set_size, "Largest exchange set in local search")->capture_default_str();
  bisect->add_option("--max-rounds", o.max_rounds, "Cap on accepted exchanges in local search")->capture_default_str();
  bisect->add_flag("--round-trace", o.round_trace, "Include every accepted exchange of the local search (method local)");
  bisect->add_flag("--stage-trace", o.stage_trace, "Include the crossing count after each stage");

  auto* bench = app.add_subcommand("bench", "Run a method over sampled graphs and write CSV with mean/stderr rows");
  bench->add_option("--n", o.ns, "Graph sizes");
  bench->add_option("--seeds", o.seeds, "Runs per size")->capture_default_str();
  bench->add_option("--method", o.method, "wave or local")->capture_default_str()->check(CLI::IsMember({"wave", "local"}));
  bench->add_option("--radius", o.radius, "Wave truncation radius (default from n)");
  bench->add_option("--lambda", o.lambda, "Wave eigenvalue")->capture_default_str();
  bench->add_option("--max-set-size", o.max_set_size, "Largest exchange set in local search")->capture_default_str();
  bench->add_option("--max-rounds", o.max_rounds, "Cap on accepted exchanges in local search")->capture_default_str();
  bench->add_option("--out", o.out, "CSV file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Cherry, 2-core and short-cycle diagnostics");
  auto* stats_in = stats->add_option("--input", o.input, "Edge-list file");
  stats->add_option("--n", o.n, "Sample a graph of this size instead")->excludes(stats_in);
  stats->add_option("--cycle-length", o.cycle_length, "Short-cycle length limit")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "First-moment exponents and the upper-bound chain");
  bounds->require_subcommand(1);
  auto* e1 = bounds->add_subcommand("eval-type1", "Type-one exponent at (beta', T)");
  e1->add_option("--beta", o.beta, "beta'")->capture_default_str();
  e1->add_option("--T", o.T, "T")->capture_default_str();
  auto* o1 = bounds->add_subcommand("opt-type1", "Maximize the type-one exponent over a beta' range");
  o1->add_option("--lo", o.lo)->capture_default_str();
  o1->add_option("--hi", o.hi)->capture_default_str();
  o1->add_option("--step", o.step)->capture_default_str();
  o1->add_option("--range", o.range, "beta' range as two numbers (overrides --lo/--hi)")->expected(2);
  auto* e2 = bounds->add_subcommand("eval-type2", "Type-two exponent at given multipliers");
  e2->add_option("--beta1", o.beta1)->capture_default_str();
  e2->add_option("--beta2", o.beta2)->capture_default_str();
  e2->add_option("--lam1", o.lam1)->capture_default_str();
  e2->add_option("--lam3", o.lam3)->capture_default_str();
  e2->add_option("--lam1-b,--lam1b", o.lam1_b, "Second-side lambda1 (default: same as --lam1)");
  e2->add_option("--lam3-b,--lam3b", o.lam3_b, "Second-side lambda3 (default: same as --lam3)");
  auto* o2 = bounds->add_subcommand("opt-type2", "Maximize the type-two exponent over a beta' box");
  o2->add_option("--lo", o.lo2)->capture_default_str();
  o2->add_option("--hi", o.hi2)->capture_default_str();
  o2->add_option("--range", o.range, "beta' range as two numbers (overrides --lo/--hi)")->expected(2);
  o2->add_option("--grid", o.grid, "Grid points per axis")->capture_default_str();
  o2->add_flag("--diagonal", o.diagonal, "Only beta1 == beta2");
  o2->add_flag("--shared", o.shared, "Same multipliers on both sides");
  auto* rep = bounds->add_subcommand("report", "Print every constant of the upper- and lower-bound chains");
  rep->add_flag("--skip-mc", o.skip_mc, "Omit the Monte Carlo estimate and the bound that depends on it");
  rep->add_flag("--json", o.json, "JSON output");
  rep->add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
  rep->add_option("--blocks", o.blocks, "Split the samples into this many seeded blocks (default: 65536 samples per block)");
  auto* curve = bounds->add_subcommand("curve", "Zero set of the type-one exponent as CSV");
  curve->add_option("--lo", o.lo)->capture_default_str();
  curve->add_option("--hi", o.hi)->capture_default_str();
  curve->add_option("--step", o.step)->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates");
  mc->require_subcommand(1);
  auto* orth = mc->add_subcommand("orthant", "Seven-dimensional orthant probability of an isolated border center");
  orth->add_option("--samples", o.samples)->capture_default_str()->check(CLI::PositiveNumber);
  orth->add_option("--blocks", o.blocks, "Split the samples into this many seeded blocks (default: 65536 samples per block)");

  auto* exact = app.add_subcommand("exact", "Exact bisection width of a small graph");
  exact->add_option("--input", o.input, "Edge-list file")->required();
  exact->add_flag("--emit-witness", o.emit_witness, "Include an optimal side assignment");

  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::ostringstream buf;
    ordered_json outputs;
    auto emit_json = [&](const ordered_json& j) {
      buf << j.dump(2) << "\n";
      outputs = j;
    };
    auto emit_text = [&](const std::string& text, const std::string& path) {
      write_text(path, text, buf);
      outputs = path.empty() || path == "-" ? ordered_json{{"text", text}} : ordered_json{{"file", path}, {"text", text}};
    };

    if (gen->parsed()) {
      emit_text(cmd_gen(o), o.out);
    } else if (bisect->parsed()) {
      emit_json(cmd_bisect(o));
    } else if (bench->parsed()) {
      emit_text(cmd_bench(o), o.out);
    } else if (stats->parsed()) {
      if (o.input.empty() && o.n == 0) throw std::invalid_argument("stats: give --input or --n");
      emit_json(cmd_stats(o));
    } else if (e1->parsed()) {
      emit_json(cmd_eval_type1(o));
    } else if (o1->parsed()) {
      if (!o.range.empty()) o.lo = o.range[0], o.hi = o.range[1];
      emit_json(type1_json(type1_optimize(o.lo, o.hi, o.step), o.lo, o.hi));
    } else if (e2->parsed()) {
      emit_json(cmd_eval_type2(o));
    } else if (o2->parsed()) {
      if (!o.range.empty()) o.lo2 = o.range[0], o.hi2 = o.range[1];
      Type2Search s{o.diagonal, o.shared, o.grid};
      emit_json(type2_opt_json(type2_optimize(o.lo2, o.hi2, s), o.lo2, o.hi2, s));
    } else if (rep->parsed()) {
      const auto j = cmd_report(o);
      outputs = j;
      if (o.json) buf << j.dump(2) << "\n";
      else print_report_text(j, buf);
    } else if (curve->parsed()) {
      emit_text(cmd_curve(o), "");
    } else if (orth->parsed()) {
      const auto r = orthant_mc(o.samples, o.seed, mc_options(o));
      auto j = mc_json(r);
      emit_json(j);
    } else if (exact->parsed()) {
      emit_json(cmd_exact(o));
    }
    out << buf.str();

    if (!o.record.empty()) {
      std::string command = "minbis";
      for (const auto& a : args) command += " " + a;
      ordered_json rec{{"command", command},
                       {"params", collect_params(&app)},
                       {"seed", o.seed},
                       {"outputs", outputs},
                       {"wall_time", num(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count())}};
      std::ofstream f(o.record);
      if (!f) throw std::invalid_argument("cannot open record file: " + o.record);
      f << rec.dump(2) << "\n";
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace minbis::cli
