#pragma once

#include <array>
#include <chrono>
#include <string>
#include <vector>

#include "parity/core/concurrency.hpp"
#include "parity/core/errors.hpp"
#include "parity/core/types.hpp"

namespace parity::provider {

enum class MessageRole { system, user, assistant };

struct Message {
  MessageRole role = MessageRole::user;
  std::string content;
};

std::string to_string(MessageRole role);

struct ChatRequest {
  std::vector<Message> messages;
  ThinkingBudget budget;
  double temperature = 0.0;
  Tokens max_answer_tokens = 256;
};

void validate(const ChatRequest& request);

struct ChatResponse {
  std::string think_text;
  std::string answer_text;
  TokenAccount account;
  std::string backend_id;
};

// Raw-prefix continuation: the prelude ends inside an open think segment.
struct ContinuationRequest {
  std::string prelude;
  Tokens cap = 0;
  bool stop_at_close_tag = false;
};

struct ContinuationResult {
  std::string text;
  TokenAccount account;
};

// Transport retry schedule. The sleep scale exists so tests can run the retry
// path without waiting.
struct RetryPolicy {
  int max_retries = 3;
  std::array<std::chrono::milliseconds, 3> backoff{std::chrono::milliseconds(1000),
                                                   std::chrono::milliseconds(2000),
                                                   std::chrono::milliseconds(4000)};
  double sleep_scale = 1.0;
};

// Uniform interface over text-generation backends with thinking-budget
// control. Implementations must tolerate concurrent in-flight requests; the
// shared concurrency limit bounds simultaneous calls.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string id() const = 0;

  ChatResponse complete_chat(const ChatRequest& request) {
    validate(request);
    ConcurrencyLimit::Guard guard(limit_);
    return do_complete_chat(request);
  }

  ContinuationResult complete_continuation(const ContinuationRequest& request) {
    if (request.cap < 0) throw std::invalid_argument("continuation cap must be >= 0");
    if (!supports_continuation())
      throw UnsupportedCapability(id() + " does not support raw-prefix continuation");
    ConcurrencyLimit::Guard guard(limit_);
    return do_complete_continuation(request);
  }

  virtual bool supports_continuation() const { return false; }
  // Smallest positive thinking budget the backend honors.
  virtual Tokens provider_min() const { return 0; }
  // Whether a zero request disables thinking entirely.
  virtual bool supports_thought_disable() const { return true; }

  void set_concurrency_limit(int limit) { limit_.set_limit(limit); }

 protected:
  virtual ChatResponse do_complete_chat(const ChatRequest& request) = 0;
  virtual ContinuationResult do_complete_continuation(const ContinuationRequest&) {
    throw UnsupportedCapability(id() + " does not support raw-prefix continuation");
  }

 private:
  ConcurrencyLimit limit_;
};

}  // namespace parity::provider
