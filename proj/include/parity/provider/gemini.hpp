#pragma once

#include <string>

#include "parity/provider/backend.hpp"

namespace parity::provider {

// Gemini-style backend: the request carries a thinking-budget integer and an
// include-thoughts flag; the response carries thought parts and a
// thought-token usage count. Pure chat API, so no raw-prefix continuation.
class GeminiBackend final : public Backend {
 public:
  struct Options {
    std::string base_url;
    std::string model;
    std::string api_key;
    Tokens provider_min = 0;
    bool can_disable_thinking = true;
    RetryPolicy retry;
  };

  explicit GeminiBackend(Options options);

  std::string id() const override;
  bool supports_continuation() const override { return false; }
  Tokens provider_min() const override { return options_.provider_min; }
  bool supports_thought_disable() const override { return options_.can_disable_thinking; }

 protected:
  ChatResponse do_complete_chat(const ChatRequest& request) override;

 private:
  Options options_;
};

}  // namespace parity::provider
