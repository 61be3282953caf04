#include "parity/provider/openai.hpp"

#include "parity/core/text.hpp"
#include "src/provider/http_post.hpp"

namespace parity::provider {

OpenAiBackend::OpenAiBackend(Options options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw std::invalid_argument("openai backend needs a base_url");
  if (options_.model.empty()) throw std::invalid_argument("openai backend needs a model");
}

std::string OpenAiBackend::id() const { return "openai:" + options_.model; }

ChatResponse OpenAiBackend::do_complete_chat(const ChatRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const Message& message : request.messages)
    messages.push_back({{"role", to_string(message.role)}, {"content", message.content}});

  const Tokens effective = request.budget.effective_request();
  nlohmann::json body = {
      {"model", options_.model},
      {"messages", std::move(messages)},
      {"temperature", request.temperature},
      {"max_tokens", effective + request.max_answer_tokens},
  };

  httplib::Headers headers;
  if (!options_.api_key.empty())
    headers.emplace("Authorization", "Bearer " + options_.api_key);

  const nlohmann::json reply = post_json_with_retries(options_.base_url, options_.chat_path,
                                                      headers, body, options_.retry);

  ChatResponse response;
  response.backend_id = id();
  try {
    const std::string content =
        reply.at("choices").at(0).at("message").at("content").get<std::string>();
    response.think_text = extract_think_segment(content);
    response.answer_text = extract_after_think(content);
    Tokens api_reported = 0;
    if (reply.contains("usage")) {
      const nlohmann::json& usage = reply["usage"];
      if (usage.contains("completion_tokens_details") &&
          usage["completion_tokens_details"].contains("reasoning_tokens"))
        api_reported = usage["completion_tokens_details"]["reasoning_tokens"].get<Tokens>();
      else if (usage.contains("completion_tokens"))
        api_reported = usage["completion_tokens"].get<Tokens>();
    }
    response.account = token_account_for(response.think_text, api_reported);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("openai chat payload: ") + e.what());
  }
  return response;
}

ContinuationResult OpenAiBackend::do_complete_continuation(const ContinuationRequest& request) {
  if (request.cap == 0) {
    ContinuationResult empty;
    empty.account = token_account_for("", 0);
    return empty;
  }

  nlohmann::json body = {
      {"model", options_.model},
      {"prompt", request.prelude},
      {"max_tokens", request.cap},
      {"temperature", 0.0},
  };
  if (request.stop_at_close_tag) body["stop"] = {std::string(kThinkCloseTag)};

  httplib::Headers headers;
  if (!options_.api_key.empty())
    headers.emplace("Authorization", "Bearer " + options_.api_key);

  const nlohmann::json reply = post_json_with_retries(
      options_.base_url, options_.completions_path, headers, body, options_.retry);

  ContinuationResult result;
  try {
    result.text = reply.at("choices").at(0).at("text").get<std::string>();
    Tokens api_reported = 0;
    if (reply.contains("usage") && reply["usage"].contains("completion_tokens"))
      api_reported = reply["usage"]["completion_tokens"].get<Tokens>();
    result.account = token_account_for(result.text, api_reported);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("openai completions payload: ") + e.what());
  }
  return result;
}

}  // namespace parity::provider
