#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parity/core/types.hpp"

namespace parity::degrade {

// Parameters for one corruption operator. base_seed plus the per-question
// call index fully determines every random draw.
struct CorruptionSpec {
  CorruptionMethod method = CorruptionMethod::del;
  double alpha = 0.0;                   // delete / mask / substitute rate
  std::optional<std::int64_t> every_n;  // deterministic variant, delete/mask only
  std::string mask_token = "[MASK]";
  std::vector<std::string> vocab;       // substitution pool
  std::int64_t k = 0;                   // distractor count
  std::vector<std::string> pool;        // distractor sentences
  std::int64_t base_seed = 0;
  // Vocabulary entries matching this pattern are dropped before sampling.
  std::string avoid_special_pattern = R"(^<.*>$|^\[.*\]$)";
};

void validate(const CorruptionSpec& spec);

struct CorruptionResult {
  std::string text;
  CorruptionMeta meta;
};

// Pure function of (text, spec, call_index); words are whitespace-split and
// rejoined with single spaces.
CorruptionResult corrupt(std::string_view text, const CorruptionSpec& spec,
                         std::int64_t call_index);

// Vocabulary after the avoid_special filter; what substitution samples from.
std::vector<std::string> effective_vocab(const CorruptionSpec& spec);

// Newline-delimited file loader for vocab / distractor pools. Blank lines are
// skipped.
std::vector<std::string> load_line_file(const std::string& path);

}  // namespace parity::degrade
