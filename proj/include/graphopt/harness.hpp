#pragma once

// Seeded trial runner behind gap-vs-budget curves. Every (budget, trial) pair
// gets a fresh capped oracle and its own rng stream hash(seed, budget, trial),
// so output does not depend on scheduling or on which other budgets are run.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "graphopt/annealing.hpp"
#include "graphopt/bandit.hpp"
#include "graphopt/descend.hpp"
#include "graphopt/graph.hpp"
#include "graphopt/graph_io.hpp"
#include "graphopt/oracle.hpp"
#include "graphopt/parallel.hpp"
#include "graphopt/record.hpp"
#include "graphopt/rng.hpp"
#include "graphopt/values.hpp"

namespace graphopt {

enum class Algo { ExploreDescend, Annealing, SuccessiveReject };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::ExploreDescend: return "ed";
    case Algo::Annealing: return "sa";
    case Algo::SuccessiveReject: return "sr";
  }
  return "?";
}

inline Algo parse_algo(std::string_view s) {
  if (s == "ed") return Algo::ExploreDescend;
  if (s == "sa") return Algo::Annealing;
  if (s == "sr") return Algo::SuccessiveReject;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

struct AlgoParams {
  Algo algo = Algo::ExploreDescend;
  // ed
  std::size_t path_length = 4;
  std::optional<std::size_t> restarts;  // unset: 1 + budget / 1000
  // sa
  double gamma = 250.0;
  std::size_t samples_per_eval = 1;
  std::optional<std::size_t> steps;  // unset: as many as the budget affords
};

struct ExperimentConfig {
  Graph graph;
  ValueTable values;
  AlgoParams params{};
  NoiseModel noise = NoiseModel::bernoulli();
  Sense sense = Sense::Minimize;
  std::vector<std::size_t> budgets;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// 0 uses the hardware concurrency.
  std::size_t threads = 0;
};

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.graph.size() == 0) throw std::invalid_argument("empty graph");
  if (cfg.values.size() != cfg.graph.size()) throw std::invalid_argument("values do not cover the graph");
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (cfg.budgets.empty()) throw std::invalid_argument("no budgets given");
  for (std::size_t i = 0; i < cfg.budgets.size(); ++i) {
    if (cfg.budgets[i] == 0) throw std::invalid_argument("budgets must be positive");
    if (i > 0 && cfg.budgets[i] <= cfg.budgets[i - 1]) throw std::invalid_argument("budgets must be ascending");
  }
  if (cfg.params.samples_per_eval == 0) throw std::invalid_argument("samples per evaluation must be >= 1");
}

/// Successive rejects over every node of the graph. When the budget cannot
/// cover one pull per node, B distinct uniform-random nodes are pulled once and
/// the best observation wins (ties to the first drawn).
inline TrialRecord successive_reject_nodes(const Graph& g, NoisyOracle& oracle, std::size_t budget, Sense sense,
                                           Rng& rng) {
  Stopwatch clock;
  const std::size_t meter0 = oracle.samples_used();
  const std::size_t n = g.size();
  auto reward = [&](NodeId x) -> std::optional<double> {
    auto s = oracle.sample(x, rng);
    if (!s) return std::nullopt;
    return sense == Sense::Minimize ? -*s : *s;
  };
  NodeId best = 0;
  if (budget > n && n >= 2) {
    best = static_cast<NodeId>(successive_reject(n, budget, [&](std::size_t arm) { return reward(static_cast<NodeId>(arm)); }).best);
  } else {
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    const std::size_t take = std::min(budget, n);
    std::optional<double> top;
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(order[i], order[i + uniform_index(rng, n - i)]);
      auto r = reward(order[i]);
      if (!r) break;
      if (!top || *r > *top) {
        top = r;
        best = order[i];
      }
    }
    if (!top) best = order.front();
  }
  TrialRecord rec;
  rec.algo = "sr";
  rec.node = best;
  rec.gap = oracle.values().gap(best, sense);
  rec.samples = oracle.samples_used() - meter0;
  rec.time_ms = clock.elapsed_ms();
  return rec;
}

inline TrialRecord run_single_trial(const ExperimentConfig& cfg, std::size_t budget, std::size_t trial) {
  Rng rng = make_rng({cfg.seed, budget, trial});
  NoisyOracle oracle(cfg.values, cfg.noise, budget);
  const AlgoParams& p = cfg.params;
  TrialRecord rec;
  switch (p.algo) {
    case Algo::ExploreDescend: {
      RestartConfig rc;
      if (p.restarts) rc.rule = fixed_restarts(*p.restarts);
      rc.path_length = p.path_length;
      rc.sense = cfg.sense;
      rec = explore_descend_restarts(cfg.graph, oracle, budget, rc, rng);
      break;
    }
    case Algo::Annealing: {
      SAConfig sc;
      sc.gamma = p.gamma;
      sc.samples_per_eval = p.samples_per_eval;
      sc.steps = p.steps.value_or(budget / (2 * p.samples_per_eval));
      sc.sense = cfg.sense;
      const NodeId x0 = static_cast<NodeId>(uniform_index(rng, cfg.graph.size()));
      rec = simulated_annealing(cfg.graph, oracle, x0, sc, rng);
      break;
    }
    case Algo::SuccessiveReject:
      rec = successive_reject_nodes(cfg.graph, oracle, budget, cfg.sense, rng);
      break;
  }
  rec.trial = trial;
  rec.budget = budget;
  rec.samples = oracle.samples_used();
  return rec;
}

/// Failures become rows with no node and a NaN gap; the run continues.
inline std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t b : cfg.budgets)
    for (std::size_t t = 0; t < cfg.trials; ++t) jobs.emplace_back(b, t);
  std::vector<TrialRecord> out(jobs.size());

  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    auto [budget, trial] = jobs[i];
    try {
      out[i] = run_single_trial(cfg, budget, trial);
    } catch (const std::exception& e) {
      TrialRecord bad;
      bad.trial = trial;
      bad.budget = budget;
      bad.algo = algo_name(cfg.params.algo);
      bad.error = e.what();
      out[i] = std::move(bad);
    }
  });
  std::stable_sort(out.begin(), out.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.algo, a.budget, a.trial) < std::tie(b.algo, b.budget, b.trial);
  });
  return out;
}

struct CsvOptions {
  /// Writes 0 in the time column so runs compare byte for byte.
  bool omit_time = false;
};

inline constexpr const char* kTrialCsvHeader = "trial,algo,budget,node,gap,samples,time_ms";

inline void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records, CsvOptions opt = {}) {
  out << kTrialCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.trial << ',' << r.algo << ',' << r.budget << ',';
    if (r.node)
      out << *r.node;
    else
      out << -1;
    out << ',' << (r.failed() ? std::string("nan") : format_double(r.gap)) << ',' << r.samples << ',';
    if (opt.omit_time) {
      out << 0;
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.time_ms);
      out << buf;
    }
    out << '\n';
  }
}

struct GapSummary {
  std::string algo;
  std::size_t budget = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double mean_gap = 0.0;
  double stderr_gap = 0.0;
  double mean_samples = 0.0;
  double mean_time_ms = 0.0;
};

/// Per-(algo, budget) aggregates over the successful trials, in key order.
/// The standard error uses the unbiased sample variance; it is 0 for one trial.
inline std::vector<GapSummary> gap_statistics(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");
  std::map<std::pair<std::string, std::size_t>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[{r.algo, r.budget}].push_back(&r);
  std::vector<GapSummary> out;
  for (const auto& [key, rows] : groups) {
    GapSummary s;
    s.algo = key.first;
    s.budget = key.second;
    double sum = 0.0, sum_samples = 0.0, sum_time = 0.0;
    for (const auto* r : rows) {
      if (r->failed()) {
        ++s.failures;
        continue;
      }
      ++s.trials;
      sum += r->gap;
      sum_samples += static_cast<double>(r->samples);
      sum_time += r->time_ms;
    }
    if (s.trials > 0) {
      const double n = static_cast<double>(s.trials);
      s.mean_gap = sum / n;
      s.mean_samples = sum_samples / n;
      s.mean_time_ms = sum_time / n;
      if (s.trials > 1) {
        double ss = 0.0;
        for (const auto* r : rows)
          if (!r->failed()) ss += (r->gap - s.mean_gap) * (r->gap - s.mean_gap);
        s.stderr_gap = std::sqrt(ss / (n - 1.0) / n);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_summary_csv(std::ostream& out, const std::vector<GapSummary>& rows) {
  out << "algo,budget,trials,failures,mean_gap,stderr_gap,mean_samples,mean_time_ms\n";
  for (const auto& s : rows)
    out << s.algo << ',' << s.budget << ',' << s.trials << ',' << s.failures << ',' << format_double(s.mean_gap)
        << ',' << format_double(s.stderr_gap) << ',' << format_double(s.mean_samples) << ','
        << format_double(s.mean_time_ms) << '\n';
}

}  // namespace graphopt
