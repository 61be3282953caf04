#include "parity/degrade/corrupt.hpp"

#include <fstream>
#include <regex>
#include <stdexcept>
#include <utility>

#include "parity/core/rng.hpp"
#include "parity/core/text.hpp"

namespace parity::degrade {

namespace {

bool is_rate_method(CorruptionMethod method) {
  return method == CorruptionMethod::del || method == CorruptionMethod::mask ||
         method == CorruptionMethod::substitute;
}

// First m entries of a partial Fisher-Yates shuffle over 0..n-1, in draw
// order. The draw order matters: substitution consumes one vocabulary draw
// per selected position in exactly this order.
std::vector<size_t> select_positions(SplitMix64& rng, size_t n, size_t m) {
  std::vector<size_t> indices(n);
  for (size_t i = 0; i < n; ++i) indices[i] = i;
  for (size_t i = 0; i < m; ++i) {
    const size_t j = i + static_cast<size_t>(rng.uniform_below(n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(m);
  return indices;
}

std::vector<size_t> every_n_positions(size_t n, std::int64_t every_n) {
  std::vector<size_t> positions;
  for (size_t pos = static_cast<size_t>(every_n); pos <= n; pos += static_cast<size_t>(every_n))
    positions.push_back(pos - 1);  // 1-based n, 2n, ... to 0-based
  return positions;
}

}  // namespace

std::vector<std::string> effective_vocab(const CorruptionSpec& spec) {
  if (spec.avoid_special_pattern.empty()) return spec.vocab;
  const std::regex special(spec.avoid_special_pattern);
  std::vector<std::string> filtered;
  for (const std::string& word : spec.vocab)
    if (!std::regex_search(word, special)) filtered.push_back(word);
  return filtered;
}

void validate(const CorruptionSpec& spec) {
  switch (spec.method) {
    case CorruptionMethod::del:
    case CorruptionMethod::mask:
      if (spec.alpha < 0.0 || spec.alpha > 1.0)
        throw std::invalid_argument("corruption alpha must be in [0,1]");
      if (spec.every_n && *spec.every_n < 2)
        throw std::invalid_argument("every_n must be >= 2");
      break;
    case CorruptionMethod::substitute:
      if (spec.alpha < 0.0 || spec.alpha > 1.0)
        throw std::invalid_argument("corruption alpha must be in [0,1]");
      if (spec.every_n) throw std::invalid_argument("every_n is only valid for delete/mask");
      if (effective_vocab(spec).empty())
        throw std::invalid_argument("substitute requires a nonempty vocabulary");
      break;
    case CorruptionMethod::distract:
      if (spec.every_n) throw std::invalid_argument("every_n is only valid for delete/mask");
      if (spec.k < 0) throw std::invalid_argument("distractor count must be >= 0");
      if (static_cast<std::int64_t>(spec.pool.size()) < spec.k)
        throw std::invalid_argument("distractor pool smaller than k");
      break;
    case CorruptionMethod::none:
      throw std::invalid_argument("corruption spec method must name an operator");
  }
}

CorruptionResult corrupt(std::string_view text, const CorruptionSpec& spec,
                         std::int64_t call_index) {
  validate(spec);
  std::vector<std::string> words = split_words(text);
  const size_t len = words.size();
  SplitMix64 rng(static_cast<std::uint64_t>(spec.base_seed + call_index));

  CorruptionResult result;
  result.meta.method = spec.method;
  result.meta.seed = spec.base_seed;
  result.meta.call_index = call_index;

  if (is_rate_method(spec.method)) {
    std::vector<size_t> positions;
    if (spec.every_n) {
      positions = every_n_positions(len, *spec.every_n);
      result.meta.level = static_cast<double>(*spec.every_n);
    } else {
      const size_t m = static_cast<size_t>(
          round_half_up(spec.alpha * static_cast<double>(len)));
      positions = select_positions(rng, len, m);
      result.meta.level = spec.alpha;
    }
    result.meta.affected_count = static_cast<std::int64_t>(positions.size());

    if (spec.method == CorruptionMethod::substitute) {
      const std::vector<std::string> vocab = effective_vocab(spec);
      for (size_t pos : positions)
        words[pos] = vocab[static_cast<size_t>(rng.uniform_below(vocab.size()))];
    } else if (spec.method == CorruptionMethod::mask) {
      for (size_t pos : positions) words[pos] = spec.mask_token;
    } else {
      std::vector<bool> dropped(len, false);
      for (size_t pos : positions) dropped[pos] = true;
      std::vector<std::string> kept;
      kept.reserve(len - positions.size());
      for (size_t i = 0; i < len; ++i)
        if (!dropped[i]) kept.push_back(std::move(words[i]));
      words = std::move(kept);
    }
  } else {  // distract
    result.meta.level = static_cast<double>(spec.k);
    result.meta.affected_count = spec.k;
    const std::vector<size_t> chosen =
        select_positions(rng, spec.pool.size(), static_cast<size_t>(spec.k));
    for (size_t pool_index : chosen) {
      const std::vector<std::string> sentence_words = split_words(spec.pool[pool_index]);
      const size_t boundary = static_cast<size_t>(rng.uniform_below(words.size() + 1));
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(boundary),
                   sentence_words.begin(), sentence_words.end());
    }
  }

  result.text = join_words(words);
  return result;
}

std::vector<std::string> load_line_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace parity::degrade
