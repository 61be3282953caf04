#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "parity/provider/backend.hpp"

namespace parity::provider {

// Deterministic offline backend. Replies are keyed on a stable 64-bit hash of
// the concatenated message contents; trigger entries match when every listed
// substring occurs in the concatenation (scanned in registration order).
// Unregistered prompts fall back to a configurable default reply so large
// scripted corpora stay small. One "token" is one whitespace word.
class ScriptedBackend final : public Backend {
 public:
  struct Options {
    std::string id = "scripted";
    std::string default_answer = "UNKNOWN";
    Tokens provider_min = 0;
    bool can_disable_thinking = true;
  };

  ScriptedBackend() = default;
  explicit ScriptedBackend(Options options) : options_(std::move(options)) {}

  std::string id() const override { return options_.id; }
  bool supports_continuation() const override { return true; }
  Tokens provider_min() const override { return options_.provider_min; }
  bool supports_thought_disable() const override { return options_.can_disable_thinking; }

  // Replies matched when every substring in `all_of` appears in the
  // concatenated message contents.
  void register_reply(std::vector<std::string> all_of, std::string think, std::string answer);
  void register_reply(const std::string& trigger, std::string think, std::string answer);
  // Exact-prompt registration (hash of the concatenated contents).
  void register_exact(const std::vector<Message>& messages, std::string think,
                      std::string answer);

  void register_continuation(std::vector<std::string> all_of, std::string text);
  void register_continuation(const std::string& trigger, std::string text);
  void register_continuation_exact(const std::string& prelude, std::string text);

  // Loads a JSONL script: {"trigger": "..."|["..",".."], "think": "...",
  // "answer": "..."} for chat entries, plus {"type": "continuation",
  // "trigger": ..., "text": "..."} for raw continuations.
  void load_script(const std::string& path);

  std::int64_t chat_calls() const { return chat_calls_.load(); }
  std::int64_t continuation_calls() const { return continuation_calls_.load(); }

  static std::string concatenate_contents(const std::vector<Message>& messages);

 protected:
  ChatResponse do_complete_chat(const ChatRequest& request) override;
  ContinuationResult do_complete_continuation(const ContinuationRequest& request) override;

 private:
  struct Reply {
    std::vector<std::string> all_of;  // empty => exact entry
    std::uint64_t exact_hash = 0;
    std::string think;
    std::string answer;
  };
  struct Continuation {
    std::vector<std::string> all_of;
    std::uint64_t exact_hash = 0;
    std::string text;
  };

  const Reply* find_reply(const std::string& haystack) const;
  const Continuation* find_continuation(const std::string& prelude) const;

  Options options_;
  std::vector<Reply> exact_replies_;
  std::vector<Reply> trigger_replies_;
  std::vector<Continuation> exact_continuations_;
  std::vector<Continuation> trigger_continuations_;
  mutable std::mutex mutex_;
  std::atomic<std::int64_t> chat_calls_{0};
  std::atomic<std::int64_t> continuation_calls_{0};
};

}  // namespace parity::provider
