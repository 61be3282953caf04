#include "parity/core/text.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace parity {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::int64_t visible_word_count(std::string_view text) {
  std::int64_t count = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

Tokens assumed_tokens(std::int64_t words) {
  if (words < 0) throw std::invalid_argument("assumed_tokens: negative word count");
  const std::int64_t numerator = words * 10;
  const std::int64_t quotient = numerator / 7;
  const std::int64_t remainder = numerator % 7;
  return quotient + (2 * remainder >= 7 ? 1 : 0);
}

std::string trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return std::string(text.substr(begin, end - begin));
}

std::string extract_after_think(std::string_view raw) {
  const size_t pos = raw.find(kThinkCloseTag);
  if (pos == std::string_view::npos) return trim(raw);
  return trim(raw.substr(pos + kThinkCloseTag.size()));
}

std::string extract_think_segment(std::string_view raw) {
  const size_t close = raw.find(kThinkCloseTag);
  if (close == std::string_view::npos) return "";
  size_t begin = 0;
  const size_t open = raw.find(kThinkOpenTag);
  if (open != std::string_view::npos && open < close) begin = open + kThinkOpenTag.size();
  return trim(raw.substr(begin, close - begin));
}

std::vector<Tokens> split_budget(Tokens total, int k) {
  if (k < 1) throw std::invalid_argument("split_budget: k must be >= 1");
  if (total < 0) throw std::invalid_argument("split_budget: negative budget");
  const Tokens base = total / k;
  const Tokens remainder = total % k;
  std::vector<Tokens> shares(static_cast<size_t>(k), base);
  for (Tokens i = 0; i < remainder; ++i) shares[static_cast<size_t>(i)] += 1;
  return shares;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

std::int64_t round_half_up(double value) {
  if (value < 0.0) throw std::invalid_argument("round_half_up: negative value");
  return static_cast<std::int64_t>(std::floor(value + 0.5));
}

}  // namespace parity
