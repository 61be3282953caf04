#include "parity/provider/gemini.hpp"

#include "parity/core/text.hpp"
#include "src/provider/http_post.hpp"

namespace parity::provider {

GeminiBackend::GeminiBackend(Options options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw std::invalid_argument("gemini backend needs a base_url");
  if (options_.model.empty()) throw std::invalid_argument("gemini backend needs a model");
}

std::string GeminiBackend::id() const { return "gemini:" + options_.model; }

ChatResponse GeminiBackend::do_complete_chat(const ChatRequest& request) {
  nlohmann::json contents = nlohmann::json::array();
  nlohmann::json system_instruction;
  for (const Message& message : request.messages) {
    if (message.role == MessageRole::system) {
      system_instruction = {{"parts", {{{"text", message.content}}}}};
      continue;
    }
    const char* role = message.role == MessageRole::assistant ? "model" : "user";
    contents.push_back({{"role", role}, {"parts", {{{"text", message.content}}}}});
  }

  const Tokens effective = request.budget.effective_request();
  nlohmann::json body = {
      {"contents", std::move(contents)},
      {"generationConfig",
       {{"temperature", request.temperature},
        {"maxOutputTokens", effective + request.max_answer_tokens},
        {"thinkingConfig", {{"thinkingBudget", effective}, {"includeThoughts", true}}}}},
  };
  if (!system_instruction.is_null()) body["systemInstruction"] = std::move(system_instruction);

  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("x-goog-api-key", options_.api_key);

  const std::string path = "/v1beta/models/" + options_.model + ":generateContent";
  const nlohmann::json reply =
      post_json_with_retries(options_.base_url, path, headers, body, options_.retry);

  ChatResponse response;
  response.backend_id = id();
  try {
    std::string think, answer;
    for (const nlohmann::json& part : reply.at("candidates").at(0).at("content").at("parts")) {
      const std::string text = part.value("text", "");
      if (part.value("thought", false)) {
        if (!think.empty()) think += '\n';
        think += text;
      } else {
        answer += text;
      }
    }
    response.think_text = think;
    response.answer_text = trim(answer);
    Tokens api_reported = 0;
    if (reply.contains("usageMetadata") && reply["usageMetadata"].contains("thoughtsTokenCount"))
      api_reported = reply["usageMetadata"]["thoughtsTokenCount"].get<Tokens>();
    response.account = token_account_for(response.think_text, api_reported);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("gemini payload: ") + e.what());
  }
  return response;
}

}  // namespace parity::provider
