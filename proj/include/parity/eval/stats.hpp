#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace parity::eval {

// Mean of 0/1 outcomes. Throws std::invalid_argument on an empty set.
double accuracy(const std::vector<int>& outcomes);

// Percentile-method bootstrap interval over resampled means with
// nearest-rank quantiles at (1-level)/2 and 1-(1-level)/2. Deterministic for
// a given seed.
std::pair<double, double> bootstrap_ci(const std::vector<int>& outcomes, int iterations,
                                       double level, std::uint64_t seed);

}  // namespace parity::eval
