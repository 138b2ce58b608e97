#pragma once

// Fixed-budget best-arm identification by successive rejects.
//
// With K arms and budget B the algorithm runs K - 1 rounds. Every surviving
// arm is pulled B_k - B_{k-1} times in round k, where
//   B_k = ceil((B - K) / (logbar(K) (K + 1 - k))),   B_0 = 0,
//   logbar(K) = 1/2 + sum_{i=2..K} 1/i,
// and the arm with the lowest empirical mean is then dropped. Rewards are
// maximized; callers negate for minimization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphopt {

inline double logbar(std::size_t arms) {
  if (arms < 2) throw std::invalid_argument("logbar needs K >= 2");
  double s = 0.5;
  for (std::size_t i = 2; i <= arms; ++i) s += 1.0 / static_cast<double>(i);
  return s;
}

struct BudgetSchedule {
  std::size_t arms = 0;
  std::size_t budget = 0;
  double logbar = 0.0;
  /// Cumulative per-arm pull targets B_0 .. B_{K-1}.
  std::vector<std::size_t> cumulative;

  std::size_t rounds() const noexcept { return arms - 1; }
  /// Pulls per surviving arm in round k (1-based).
  std::size_t round_pulls(std::size_t k) const { return cumulative.at(k) - cumulative.at(k - 1); }
  /// Arms alive during round k.
  std::size_t arms_in_round(std::size_t k) const noexcept { return arms + 1 - k; }
  std::size_t total_pulls() const {
    std::size_t t = 0;
    for (std::size_t k = 1; k <= rounds(); ++k) t += arms_in_round(k) * round_pulls(k);
    return t;
  }
};

inline BudgetSchedule budget_schedule(std::size_t arms, std::size_t budget) {
  if (arms < 2) throw std::invalid_argument("successive rejects needs K >= 2 arms");
  if (budget <= arms)
    throw std::invalid_argument("budget " + std::to_string(budget) + " must exceed arm count " +
                                std::to_string(arms));
  BudgetSchedule s;
  s.arms = arms;
  s.budget = budget;
  s.logbar = logbar(arms);
  s.cumulative.assign(arms, 0);
  const double spare = static_cast<double>(budget - arms);
  for (std::size_t k = 1; k < arms; ++k)
    s.cumulative[k] =
        static_cast<std::size_t>(std::ceil(spare / (s.logbar * static_cast<double>(arms + 1 - k))));
  return s;
}

struct ArmStats {
  std::size_t pulls = 0;
  double sum = 0.0;

  std::optional<double> mean() const {
    if (pulls == 0) return std::nullopt;
    return sum / static_cast<double>(pulls);
  }
};

struct SuccessiveRejectResult {
  std::size_t best = 0;
  std::vector<ArmStats> stats;
  /// Arms in the order they were rejected.
  std::vector<std::size_t> rejected;
  std::size_t pulls = 0;
  bool budget_exhausted = false;
};

/// `pull(arm)` returns one reward, or nullopt once the sampling budget behind
/// it is spent. Ties in elimination reject the highest arm index. Unpulled
/// arms rank below every pulled arm.
template <class Pull>
SuccessiveRejectResult successive_reject(std::size_t arms, std::size_t budget, Pull&& pull) {
  const BudgetSchedule schedule = budget_schedule(arms, budget);
  SuccessiveRejectResult res;
  res.stats.assign(arms, ArmStats{});
  std::vector<std::size_t> alive(arms);
  for (std::size_t i = 0; i < arms; ++i) alive[i] = i;

  auto score = [&](std::size_t arm) {
    auto m = res.stats[arm].mean();
    return m ? *m : -std::numeric_limits<double>::infinity();
  };

  for (std::size_t k = 1; k <= schedule.rounds(); ++k) {
    const std::size_t per_arm = schedule.round_pulls(k);
    for (std::size_t t = 0; t < per_arm && !res.budget_exhausted; ++t) {
      for (std::size_t arm : alive) {
        // The ceilings keep the plan within B; this guards the invariant.
        if (res.pulls >= budget) {
          res.budget_exhausted = true;
          break;
        }
        auto r = pull(arm);
        if (!r) {
          res.budget_exhausted = true;
          break;
        }
        ++res.pulls;
        res.stats[arm].pulls += 1;
        res.stats[arm].sum += *r;
      }
    }
    auto worst = alive.begin();
    for (auto it = alive.begin() + 1; it != alive.end(); ++it)
      if (score(*it) <= score(*worst)) worst = it;  // later (higher index) wins ties
    res.rejected.push_back(*worst);
    alive.erase(worst);
  }
  res.best = alive.front();
  return res;
}

/// H = max_i i / D_(i)^2 over the ascending gaps, where the optimal arm takes
/// the smallest suboptimal gap. `gaps` lists the K - 1 suboptimal arms.
inline double hardness_H(std::span<const double> gaps) {
  if (gaps.empty()) throw std::invalid_argument("hardness needs at least one suboptimal gap");
  std::vector<double> sorted(gaps.begin(), gaps.end());
  for (double g : sorted)
    if (!(g > 0.0)) throw std::invalid_argument("gaps must be strictly positive");
  std::sort(sorted.begin(), sorted.end());
  sorted.insert(sorted.begin(), sorted.front());
  double h = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    h = std::max(h, static_cast<double>(i + 1) / (sorted[i] * sorted[i]));
  return h;
}

/// Gaps mu* - mu_i of every arm except the first best one, ascending.
inline std::vector<double> suboptimal_gaps(std::span<const double> means) {
  if (means.size() < 2) throw std::invalid_argument("need at least two arms");
  const auto best = std::max_element(means.begin(), means.end());
  std::vector<double> gaps;
  for (auto it = means.begin(); it != means.end(); ++it)
    if (it != best) gaps.push_back(*best - *it);
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

/// Probability-of-error bound K(K-1)/2 exp(-(B - K) / (logbar(K) H)),
/// clamped to [0, 1]; 1 (vacuous) when B <= K.
inline double sr_error_bound(std::size_t arms, double hardness, std::size_t budget) {
  if (budget <= arms) return 1.0;
  const double k = static_cast<double>(arms);
  const double v = k * (k - 1.0) / 2.0 *
                   std::exp(-static_cast<double>(budget - arms) / (logbar(arms) * hardness));
  return std::clamp(v, 0.0, 1.0);
}

/// Same bound with H replaced by n / D_1^2: direct successive rejects over
/// all n nodes of a graph.
inline double sr_bound_loose(std::size_t nodes, double smallest_gap, std::size_t budget) {
  if (budget <= nodes) return 1.0;
  const double n = static_cast<double>(nodes);
  const double v = n * (n - 1.0) / 2.0 *
                   std::exp(-static_cast<double>(budget - nodes) * smallest_gap * smallest_gap /
                            (n * logbar(nodes)));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace graphopt
