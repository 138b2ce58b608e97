#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "graphopt/graphopt.hpp"

namespace graphopt::cli {

namespace detail {

/// stdout unless --out was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) file_ = graphopt::detail::open_out(path);
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline Sense parse_sense(const std::string& s) {
  if (s == "min") return Sense::Minimize;
  if (s == "max") return Sense::Maximize;
  throw std::invalid_argument("sense must be 'min' or 'max'");
}

template <class Scalar>
std::vector<Scalar> oriented(std::vector<Scalar> f, Sense sense) {
  if (sense == Sense::Maximize)
    for (auto& v : f) v = -v;
  return f;
}

inline std::string show(double v) { return format_double(v); }
inline std::string show(const Rational& v) { return v.str(); }

struct CertifyArgs {
  std::string graph, values, out, m, alpha, c, sense = "min";
  bool exact = false;
};

template <class Scalar>
int certify_with(const CertifyArgs& a, const Graph& g, const std::vector<Scalar>& f, std::ostream& out,
                 std::ostream& err) {
  auto num = [](const std::string& s) -> Scalar {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return parse_exact_or_throw(s);
    else
      return to_double(parse_exact_or_throw(s));
  };
  if (!a.m.empty()) {
    auto cert = certify_strongly_convex<Scalar>(g, f, num(a.m));
    out << "node,M(x)\n";
    for (NodeId x = 0; x < g.size(); ++x) {
      out << x << ',';
      if (cert.first_step[x]) out << show(*cert.first_step[x]);
      out << '\n';
    }
    err << "strongly convex at m=" << a.m << ": " << (cert.certified() ? "yes" : "no") << " ("
        << g.size() - cert.uncertifiable.size() << "/" << g.size() << " nodes certified, minimizer "
        << cert.minimizer << ")\n";
    return 0;
  }
  auto rep = certify_nearly_convex<Scalar>(g, f, num(a.alpha), num(a.c));
  out << "node,in_C,r(x)\n";
  for (NodeId x = 0; x < g.size(); ++x) {
    out << x << ',' << (rep.in_core[x] ? 1 : 0) << ',';
    if (rep.hops[x]) out << *rep.hops[x];
    out << '\n';
  }
  const std::size_t core = static_cast<std::size_t>(std::count(rep.in_core.begin(), rep.in_core.end(), true));
  err << "nearly convex at alpha=" << a.alpha << " c=" << a.c << ": " << (rep.feasible() ? "yes" : "no")
      << " (core " << core << "/" << g.size() << " including the minimizer " << rep.minimizer << ", r=" << rep.radius
      << ", " << rep.infeasible.size() << " unreachable)\n";
  return 0;
}

inline std::vector<std::size_t> to_sizes(const std::vector<std::string>& parts) {
  std::vector<std::size_t> v;
  for (const auto& p : parts) {
    auto x = graphopt::detail::parse_int<std::size_t>(graphopt::detail::trim(p));
    if (!x) throw std::invalid_argument("not a non-negative integer: '" + p + "'");
    v.push_back(*x);
  }
  return v;
}

}  // namespace detail

/// Entry point with injectable streams; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Noisy optimization on graphs: generators, certificates, solvers, bounds and benchmarks"};
  app.name("graphopt");
  app.require_subcommand(1);
  std::function<int()> action;

  // gen-grid
  auto* gg = app.add_subcommand("gen-grid", "Grid graph with 8-neighborhoods, augmented to a target degree");
  int gg_D = 10;
  std::size_t gg_degree = 15;
  std::optional<std::uint64_t> gg_seed;
  bool gg_plain = false;
  std::string gg_out, gg_values;
  gg->add_option("--D", gg_D, "Half width; coordinates range over -D..D")->required();
  gg->add_option("--degree", gg_degree, "Target degree after random augmentation")->capture_default_str();
  gg->add_flag("--plain", gg_plain, "Skip augmentation");
  gg->add_option("--seed", gg_seed, "Augmentation seed (required unless --plain)");
  gg->add_option("--out", gg_out, "Graph file (stdout if omitted)");
  gg->add_option("--values", gg_values, "Write node values here");
  gg->callback([&] {
    action = [&] {
      if (!gg_plain && !gg_seed) throw CLI::RequiredError("--seed");
      Graph g = gg_plain ? make_plain_grid_graph(gg_D)
                         : make_grid_graph(GridSpec{gg_D, gg_degree, *gg_seed}).graph;
      detail::Sink sink(gg_out, out);
      write_graph(*sink, g);
      if (!gg_values.empty()) {
        auto f = graphopt::detail::open_out(gg_values);
        write_values(f, ValueTable(grid_values(gg_D)));
      }
      return 0;
    };
  });

  // gen-points
  auto* gp = app.add_subcommand("gen-points", "Labeled two-Gaussian point cloud (label in the last column)");
  std::size_t gp_n = 2000, gp_dim = 10;
  double gp_sep = 3.3;
  std::uint64_t gp_seed = 0;
  std::string gp_out;
  gp->add_option("--n", gp_n)->capture_default_str();
  gp->add_option("--dim", gp_dim)->capture_default_str();
  gp->add_option("--separation", gp_sep, "Distance between the two means")->capture_default_str();
  gp->add_option("--seed", gp_seed)->required();
  gp->add_option("--out", gp_out);
  gp->callback([&] {
    action = [&] {
      detail::Sink sink(gp_out, out);
      write_points(*sink, make_two_gaussian_cloud(gp_n, gp_dim, gp_sep, gp_seed));
      return 0;
    };
  });

  // gen-knn
  auto* gk = app.add_subcommand("gen-knn", "Directed N-nearest-neighbor proximity graph over a point file");
  std::string gk_points, gk_out;
  std::size_t gk_N = 30;
  bool gk_labeled = false;
  gk->add_option("--points", gk_points)->required();
  gk->add_option("--N", gk_N, "Out-degree")->capture_default_str();
  gk->add_flag("--labeled", gk_labeled, "Point file carries a trailing label column");
  gk->add_option("--out", gk_out);
  gk->callback([&] {
    action = [&] {
      auto pts = load_points(gk_points, gk_labeled);
      detail::Sink sink(gk_out, out);
      write_graph(*sink, make_knn_graph(pts, gk_N));
      return 0;
    };
  });

  // certify
  auto* cf = app.add_subcommand("certify", "Strong convexity (--m) or near convexity (--alpha, --c) certificate");
  detail::CertifyArgs ca;
  cf->add_option("--graph", ca.graph)->required();
  cf->add_option("--values", ca.values)->required();
  auto* opt_m = cf->add_option("--m", ca.m, "Convexity constant, decimal or p/q");
  auto* opt_a = cf->add_option("--alpha", ca.alpha);
  auto* opt_c = cf->add_option("--c", ca.c, "Elevation cap");
  opt_m->excludes(opt_a)->excludes(opt_c);
  opt_a->needs(opt_c);
  opt_c->needs(opt_a);
  cf->add_flag("--exact", ca.exact, "Rational arithmetic on the decimal text of the values");
  cf->add_option("--sense", ca.sense, "min, or max to certify -f")->check(CLI::IsMember({"min", "max"}))->capture_default_str();
  cf->add_option("--out", ca.out);
  cf->callback([&] {
    action = [&] {
      if (ca.m.empty() && ca.alpha.empty()) throw CLI::RequiredError("--m or --alpha/--c");
      const Sense sense = detail::parse_sense(ca.sense);
      Graph g = load_graph(ca.graph);
      detail::Sink sink(ca.out, out);
      auto in = graphopt::detail::open_in(ca.values);
      if (ca.exact) return detail::certify_with<Rational>(ca, g, detail::oriented(read_values_exact(in, g.size()), sense), *sink, err);
      auto vt = read_values(in, g.size());
      std::vector<double> f(vt.means().begin(), vt.means().end());
      return detail::certify_with<double>(ca, g, detail::oriented(std::move(f), sense), *sink, err);
    };
  });

  // run
  auto* rn = app.add_subcommand("run", "Seeded trials; one CSV row per (budget, trial)");
  std::string rn_graph, rn_values, rn_out, rn_algo = "ed", rn_sense = "min", rn_noise = "bernoulli";
  std::optional<int> rn_grid;
  std::size_t rn_degree = 15, rn_trials = 100, rn_threads = 0;
  std::uint64_t rn_grid_seed = 0, rn_seed = 0;
  std::vector<std::string> rn_budgets;
  std::optional<std::size_t> rn_restarts, rn_steps;
  std::size_t rn_path = 4, rn_spe = 1;
  double rn_gamma = 250.0, rn_R = 0.5;
  bool rn_summary = false, rn_no_time = false;
  auto* o_graph = rn->add_option("--graph", rn_graph);
  auto* o_vals = rn->add_option("--values", rn_values);
  auto* o_grid = rn->add_option("--grid", rn_grid, "Generate the augmented grid with this half width");
  o_graph->needs(o_vals)->excludes(o_grid);
  o_vals->needs(o_graph);
  rn->add_option("--degree", rn_degree, "Degree for --grid")->capture_default_str();
  rn->add_option("--grid-seed", rn_grid_seed, "Augmentation seed for --grid")->capture_default_str();
  rn->add_option("--algo", rn_algo)->check(CLI::IsMember({"ed", "sa", "sr"}))->capture_default_str();
  rn->add_option("--budget,--budgets", rn_budgets, "Ascending budgets")->delimiter(',')->required();
  rn->add_option("--trials", rn_trials)->capture_default_str();
  rn->add_option("--seed", rn_seed, "Master seed")->required();
  rn->add_option("--sense", rn_sense)->check(CLI::IsMember({"min", "max"}))->capture_default_str();
  rn->add_option("--noise", rn_noise)->check(CLI::IsMember({"bernoulli", "gaussian"}))->capture_default_str();
  rn->add_option("--R", rn_R, "Gaussian noise standard deviation")->capture_default_str();
  rn->add_option("--path-len", rn_path, "Explore-Descend rounds")->capture_default_str();
  rn->add_option("--restarts", rn_restarts, "Explore-Descend restarts (default 1 + budget/1000)");
  rn->add_option("--gamma", rn_gamma, "Annealing inverse temperature")->capture_default_str();
  rn->add_option("--samples-per-eval", rn_spe)->capture_default_str();
  rn->add_option("--steps", rn_steps, "Annealing steps (default: until the budget is spent)");
  rn->add_option("--threads", rn_threads, "0 = hardware concurrency")->capture_default_str();
  rn->add_flag("--summary", rn_summary, "Print per-budget gap statistics instead of rows");
  rn->add_flag("--no-time", rn_no_time, "Zero the time column");
  rn->add_option("--out", rn_out);
  rn->callback([&] {
    action = [&] {
      if (rn_graph.empty() && !rn_grid) throw CLI::RequiredError("--graph/--values or --grid");
      std::optional<Graph> g;
      std::optional<ValueTable> vt;
      if (rn_grid) {
        auto inst = make_grid_graph(GridSpec{*rn_grid, rn_degree, rn_grid_seed});
        g = std::move(inst.graph);
        vt = std::move(inst.values);
      } else {
        auto [lg, lv] = load_graph(rn_graph, rn_values);
        g = std::move(lg);
        vt = std::move(*lv);
      }
      ExperimentConfig cfg;
      cfg.graph = std::move(*g);
      cfg.values = std::move(*vt);
      cfg.params.algo = parse_algo(rn_algo);
      cfg.params.path_length = rn_path;
      cfg.params.restarts = rn_restarts;
      cfg.params.gamma = rn_gamma;
      cfg.params.samples_per_eval = rn_spe;
      cfg.params.steps = rn_steps;
      cfg.noise = rn_noise == "gaussian" ? NoiseModel::gaussian(rn_R) : NoiseModel::bernoulli();
      cfg.sense = detail::parse_sense(rn_sense);
      cfg.budgets = detail::to_sizes(rn_budgets);
      cfg.trials = rn_trials;
      cfg.seed = rn_seed;
      cfg.threads = rn_threads;
      auto records = run_trials(cfg);
      detail::Sink sink(rn_out, out);
      if (rn_summary)
        write_summary_csv(*sink, gap_statistics(records));
      else
        write_trials_csv(*sink, records, CsvOptions{rn_no_time});
      std::size_t failed = 0;
      for (const auto& r : records)
        if (r.failed()) {
          if (failed++ < 5) err << "trial " << r.trial << " at budget " << r.budget << " failed: " << r.error << '\n';
        }
      return failed == records.size() ? 1 : 0;
    };
  });

  // nn
  auto* nn = app.add_subcommand("nn", "Nearest-neighbor classification of query points");
  std::string nn_points, nn_queries, nn_graph, nn_out, nn_algo = "sgnn";
  std::size_t nn_N = 30, nn_T = 1, nn_K = 50, nn_threads = 0;
  std::optional<std::size_t> nn_I, nn_J;
  std::optional<std::uint64_t> nn_seed;
  bool nn_qlabeled = false;
  nn->add_option("--points", nn_points, "Labeled training points")->required();
  nn->add_option("--queries", nn_queries)->required();
  nn->add_flag("--queries-labeled", nn_qlabeled, "Query file carries a trailing label column (ignored)");
  nn->add_option("--graph", nn_graph, "Proximity graph file (built with --N if omitted)");
  nn->add_option("--algo", nn_algo)->check(CLI::IsMember({"sgnn", "exact"}))->capture_default_str();
  nn->add_option("--N", nn_N)->capture_default_str();
  nn->add_option("--I", nn_I, "Restarts (default ceil(ln n))");
  nn->add_option("--J", nn_J, "Annealing rounds (default ceil(ln n))");
  nn->add_option("--T", nn_T, "Smoothing walk length")->capture_default_str();
  nn->add_option("--K", nn_K)->capture_default_str();
  nn->add_option("--seed", nn_seed, "Required for sgnn");
  nn->add_option("--threads", nn_threads)->capture_default_str();
  nn->add_option("--out", nn_out);
  nn->callback([&] {
    action = [&] {
      const NnAlgo algo = nn_algo == "exact" ? NnAlgo::Exact : NnAlgo::Sgnn;
      if (algo == NnAlgo::Sgnn && !nn_seed) throw CLI::RequiredError("--seed");
      auto pts = load_points(nn_points, true);
      auto qs = load_points(nn_queries, nn_qlabeled);
      Graph g = nn_graph.empty() ? (algo == NnAlgo::Sgnn ? make_knn_graph(pts, nn_N) : Graph{}) : load_graph(nn_graph);
      SgnnParams p;
      p.restarts = nn_I.value_or(log_rounds(pts.size()));
      p.rounds = nn_J.value_or(log_rounds(pts.size()));
      p.walk_length = nn_T;
      p.k = nn_K;
      auto rows = run_nn_benchmark(g, pts, qs, algo, p, nn_seed.value_or(0), nn_threads);
      detail::Sink sink(nn_out, out);
      *sink << "query_id,algo,predicted_label,recall_at_K,distance_evals,time_ms\n";
      for (const auto& r : rows) {
        char t[32];
        std::snprintf(t, sizeof t, "%.3f", r.time_ms);
        *sink << r.query_id << ',' << nn_algo << ',' << r.predicted_label << ',' << format_double(r.recall) << ','
              << r.distance_evals << ',' << t << '\n';
      }
      return 0;
    };
  });

  // bound
  auto* bd = app.add_subcommand("bound", "Closed-form error and round bounds");
  bd->require_subcommand(1);
  auto emit = [&](double v) {
    out << format_double(v) << '\n';
    return 0;
  };

  auto* b_sr = bd->add_subcommand("sr", "Successive rejects: K(K-1)/2 exp(-(B-K)/(logbar(K) H))");
  std::size_t bs_K = 2, bs_B = 0;
  double bs_H = 0;
  b_sr->add_option("--K", bs_K)->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  b_sr->add_option("--H", bs_H)->required()->check(CLI::PositiveNumber);
  b_sr->add_option("--B", bs_B)->required();
  b_sr->callback([&] { action = [&] { return emit(sr_error_bound(bs_K, bs_H, bs_B)); }; });

  auto* b_srl = bd->add_subcommand("sr-loose", "Successive rejects over n nodes with H <= n / gap^2");
  std::size_t bl_n = 2, bl_B = 0;
  double bl_gap = 0;
  b_srl->add_option("--n", bl_n)->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  b_srl->add_option("--gap", bl_gap, "Smallest gap")->required()->check(CLI::PositiveNumber);
  b_srl->add_option("--B", bl_B)->required();
  b_srl->callback([&] { action = [&] { return emit(sr_bound_loose(bl_n, bl_gap, bl_B)); }; });

  auto* b_ed = bd->add_subcommand("ed", "Explore-Descend union bound over rounds");
  std::size_t be_d = 2;
  std::vector<std::size_t> be_T;
  std::vector<double> be_gaps;
  b_ed->add_option("--d", be_d, "Degree")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  b_ed->add_option("--T", be_T, "Per-round budgets")->delimiter(',')->required();
  b_ed->add_option("--gaps", be_gaps, "Best-vs-second gap per round")->delimiter(',')->required();
  b_ed->callback([&] { action = [&] { return emit(ed_error_bound(be_d, be_T, be_gaps)); }; });

  auto* b_sac = bd->add_subcommand("sa-convex", "Annealing on a strongly convex function");
  double bc_alpha = 0, bc_d = 0, bc_eps = 0, bc_gap = 0;
  b_sac->add_option("--alpha", bc_alpha, "m / (m + 1)")->required();
  b_sac->add_option("--d", bc_d, "Degree")->required();
  b_sac->add_option("--eps", bc_eps)->required();
  b_sac->add_option("--gap0", bc_gap, "f(x0) - f(x*)")->required();
  b_sac->callback([&] {
    action = [&] {
      auto b = sa_round_bound_convex(bc_alpha, bc_d, bc_eps, bc_gap);
      out << "gamma,min_rounds\n" << format_double(b.gamma) << ',' << b.min_rounds << '\n';
      return 0;
    };
  });

  auto* b_san = bd->add_subcommand("sa-nearly", "Annealing on an (alpha, c, r)-nearly convex function");
  double bn_alpha = 0, bn_c = 0, bn_r = 0, bn_d = 0, bn_F = 1;
  b_san->add_option("--alpha", bn_alpha)->required();
  b_san->add_option("--c", bn_c)->required();
  b_san->add_option("--r", bn_r)->required();
  b_san->add_option("--d", bn_d, "Degree")->required();
  b_san->add_option("--F", bn_F, "Range of f")->required();
  b_san->callback([&] {
    action = [&] {
      auto b = sa_round_bound_nearly(bn_alpha, bn_c, bn_r, bn_d, bn_F);
      out << "gamma,beta,min_rounds,final_bound\n"
          << format_double(b.gamma) << ',' << format_double(b.beta) << ',' << b.min_rounds << ','
          << format_double(b.final_bound) << '\n';
      return 0;
    };
  });

  auto* b_ss = bd->add_subcommand("sample-size", "Samples per estimate: ceil(2 r gamma^2 R^2)");
  double bss_r = 0, bss_gamma = 0, bss_R = 0;
  b_ss->add_option("--r", bss_r)->required();
  b_ss->add_option("--gamma", bss_gamma)->required();
  b_ss->add_option("--R", bss_R)->required();
  b_ss->callback([&] {
    action = [&] {
      out << theory_sample_size(bss_r, bss_gamma, bss_R) << '\n';
      return 0;
    };
  });

  auto* b_gap = bd->add_subcommand("gap", "Gap bound (m + 1) / m * delta along a strongly convex path");
  double gap_m = 0, gap_delta = 0;
  b_gap->add_option("--m", gap_m)->required();
  b_gap->add_option("--delta", gap_delta, "First improvement")->required();
  b_gap->callback([&] { action = [&] { return emit(descent_gap_bound(gap_m, gap_delta)); }; });

  auto* b_h = bd->add_subcommand("hardness", "H = max_i i / gap_(i)^2");
  std::vector<double> bh_gaps;
  b_h->add_option("--gaps", bh_gaps, "Suboptimal gaps")->delimiter(',')->required();
  b_h->callback([&] { action = [&] { return emit(hardness_H(bh_gaps)); }; });

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
    return action ? action() : 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace graphopt::cli
