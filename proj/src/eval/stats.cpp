#include "parity/eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parity/core/rng.hpp"

namespace parity::eval {

double accuracy(const std::vector<int>& outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("accuracy of an empty outcome set");
  std::int64_t correct = 0;
  for (int outcome : outcomes) {
    if (outcome != 0 && outcome != 1)
      throw std::invalid_argument("outcomes must be 0 or 1");
    correct += outcome;
  }
  return static_cast<double>(correct) / static_cast<double>(outcomes.size());
}

namespace {

double nearest_rank_quantile(const std::vector<double>& sorted, double p) {
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::int64_t>(std::ceil(p * n));
  rank = std::clamp<std::int64_t>(rank, 1, static_cast<std::int64_t>(sorted.size()));
  return sorted[static_cast<size_t>(rank - 1)];
}

}  // namespace

std::pair<double, double> bootstrap_ci(const std::vector<int>& outcomes, int iterations,
                                       double level, std::uint64_t seed) {
  if (outcomes.empty()) throw std::invalid_argument("bootstrap_ci on an empty outcome set");
  if (iterations < 1) throw std::invalid_argument("bootstrap iterations must be >= 1");
  if (level <= 0.0 || level >= 1.0) throw std::invalid_argument("level must be in (0,1)");
  for (int outcome : outcomes)
    if (outcome != 0 && outcome != 1)
      throw std::invalid_argument("outcomes must be 0 or 1");

  const size_t n = outcomes.size();
  SplitMix64 rng(seed);
  std::vector<double> means(static_cast<size_t>(iterations));
  for (double& mean : means) {
    std::int64_t total = 0;
    for (size_t draw = 0; draw < n; ++draw)
      total += outcomes[static_cast<size_t>(rng.uniform_below(n))];
    mean = static_cast<double>(total) / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());

  const double tail = (1.0 - level) / 2.0;
  return {nearest_rank_quantile(means, tail), nearest_rank_quantile(means, 1.0 - tail)};
}

}  // namespace parity::eval
