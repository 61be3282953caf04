#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace parity {

using Tokens = std::int64_t;

// Number of maximal runs of non-whitespace characters.
std::int64_t visible_word_count(std::string_view text);

// Proxy token count: round-half-up(words * 10 / 7), exact integer arithmetic.
Tokens assumed_tokens(std::int64_t words);

// Substring after the first closing think tag, trimmed. Without a tag the
// whole input is returned trimmed (the backend already separated the answer).
std::string extract_after_think(std::string_view raw);

// Substring between the first opening and closing think tags, trimmed; empty
// when no think segment is present.
std::string extract_think_segment(std::string_view raw);

// Splits total into k shares that sum exactly to total and differ by at most
// one token; the remainder goes to the earliest entries. Throws
// std::invalid_argument when k < 1 or total < 0.
std::vector<Tokens> split_budget(Tokens total, int k);

std::string trim(std::string_view text);
std::vector<std::string> split_words(std::string_view text);
std::string join_words(const std::vector<std::string>& words);

// Round-half-up for nonnegative reals (0.5 rounds away from zero).
std::int64_t round_half_up(double value);

inline constexpr std::string_view kThinkOpenTag = "<think>";
inline constexpr std::string_view kThinkCloseTag = "</think>";

}  // namespace parity
