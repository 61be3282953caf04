#include "parity/provider/backend.hpp"

#include <stdexcept>

namespace parity::provider {

std::string to_string(MessageRole role) {
  switch (role) {
    case MessageRole::system: return "system";
    case MessageRole::user: return "user";
    case MessageRole::assistant: return "assistant";
  }
  throw std::logic_error("unknown message role");
}

void validate(const ChatRequest& request) {
  bool has_user = false;
  for (const Message& message : request.messages)
    if (message.role == MessageRole::user) has_user = true;
  if (!has_user) throw std::invalid_argument("chat request needs at least one user message");
  if (request.temperature < 0.0 || request.temperature > 1.0)
    throw std::invalid_argument("temperature must be in [0,1]");
  if (request.max_answer_tokens <= 0)
    throw std::invalid_argument("max_answer_tokens must be positive");
  if (request.budget.requested < 0)
    throw std::invalid_argument("requested budget must be >= 0");
}

}  // namespace parity::provider
