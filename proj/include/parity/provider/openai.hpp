#pragma once

#include <string>

#include "parity/provider/backend.hpp"

namespace parity::provider {

// OpenAI-compatible chat backend. Thinking text is expected inside think tags
// in the response content; budget control raises the completion cap and the
// two-phase continuation path goes through the plain completions endpoint.
class OpenAiBackend final : public Backend {
 public:
  struct Options {
    std::string base_url;  // e.g. http://host:port
    std::string model;
    std::string api_key;
    std::string chat_path = "/v1/chat/completions";
    std::string completions_path = "/v1/completions";
    Tokens provider_min = 0;
    bool can_disable_thinking = true;
    RetryPolicy retry;
  };

  explicit OpenAiBackend(Options options);

  std::string id() const override;
  bool supports_continuation() const override { return true; }
  Tokens provider_min() const override { return options_.provider_min; }
  bool supports_thought_disable() const override { return options_.can_disable_thinking; }

 protected:
  ChatResponse do_complete_chat(const ChatRequest& request) override;
  ContinuationResult do_complete_continuation(const ContinuationRequest& request) override;

 private:
  Options options_;
};

}  // namespace parity::provider
