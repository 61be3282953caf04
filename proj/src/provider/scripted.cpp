#include "parity/provider/scripted.hpp"

#include <fstream>

#include <json.hpp>

#include "parity/core/hash.hpp"
#include "parity/core/text.hpp"

namespace parity::provider {

namespace {

// Word-prefix truncation; returns the input untouched when nothing is cut so
// registered byte sequences survive round trips.
std::string cap_words(const std::string& text, Tokens cap) {
  if (cap <= 0) return "";
  const std::vector<std::string> words = split_words(text);
  if (static_cast<Tokens>(words.size()) <= cap) return text;
  std::vector<std::string> prefix(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(cap));
  return join_words(prefix);
}

}  // namespace

std::string ScriptedBackend::concatenate_contents(const std::vector<Message>& messages) {
  std::string out;
  for (size_t i = 0; i < messages.size(); ++i) {
    if (i > 0) out += '\n';
    out += messages[i].content;
  }
  return out;
}

void ScriptedBackend::register_reply(std::vector<std::string> all_of, std::string think,
                                     std::string answer) {
  std::lock_guard lock(mutex_);
  trigger_replies_.push_back(Reply{std::move(all_of), 0, std::move(think), std::move(answer)});
}

void ScriptedBackend::register_reply(const std::string& trigger, std::string think,
                                     std::string answer) {
  register_reply(std::vector<std::string>{trigger}, std::move(think), std::move(answer));
}

void ScriptedBackend::register_exact(const std::vector<Message>& messages, std::string think,
                                     std::string answer) {
  std::lock_guard lock(mutex_);
  exact_replies_.push_back(
      Reply{{}, fnv1a64(concatenate_contents(messages)), std::move(think), std::move(answer)});
}

void ScriptedBackend::register_continuation(std::vector<std::string> all_of, std::string text) {
  std::lock_guard lock(mutex_);
  trigger_continuations_.push_back(Continuation{std::move(all_of), 0, std::move(text)});
}

void ScriptedBackend::register_continuation(const std::string& trigger, std::string text) {
  register_continuation(std::vector<std::string>{trigger}, std::move(text));
}

void ScriptedBackend::register_continuation_exact(const std::string& prelude, std::string text) {
  std::lock_guard lock(mutex_);
  trigger_continuations_.push_back(Continuation{{}, fnv1a64(prelude), std::move(text)});
}

void ScriptedBackend::load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open script " + path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json entry;
    try {
      entry = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    std::vector<std::string> all_of;
    if (entry.contains("trigger")) {
      if (entry["trigger"].is_array())
        all_of = entry["trigger"].get<std::vector<std::string>>();
      else
        all_of.push_back(entry["trigger"].get<std::string>());
    }
    const std::string type = entry.value("type", "chat");
    if (type == "continuation") {
      register_continuation(std::move(all_of), entry.value("text", ""));
    } else if (type == "chat") {
      register_reply(std::move(all_of), entry.value("think", ""), entry.value("answer", ""));
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown type " + type);
    }
  }
}

const ScriptedBackend::Reply* ScriptedBackend::find_reply(const std::string& haystack) const {
  const std::uint64_t hash = fnv1a64(haystack);
  for (const Reply& reply : exact_replies_)
    if (reply.exact_hash == hash) return &reply;
  for (const Reply& reply : trigger_replies_) {
    bool all = true;
    for (const std::string& needle : reply.all_of)
      if (haystack.find(needle) == std::string::npos) {
        all = false;
        break;
      }
    if (all && !reply.all_of.empty()) return &reply;
  }
  return nullptr;
}

const ScriptedBackend::Continuation* ScriptedBackend::find_continuation(
    const std::string& prelude) const {
  const std::uint64_t hash = fnv1a64(prelude);
  for (const Continuation& continuation : trigger_continuations_) {
    if (continuation.all_of.empty()) {
      if (continuation.exact_hash == hash) return &continuation;
      continue;
    }
    bool all = true;
    for (const std::string& needle : continuation.all_of)
      if (prelude.find(needle) == std::string::npos) {
        all = false;
        break;
      }
    if (all) return &continuation;
  }
  return nullptr;
}

ChatResponse ScriptedBackend::do_complete_chat(const ChatRequest& request) {
  chat_calls_.fetch_add(1);
  std::lock_guard lock(mutex_);
  const std::string haystack = concatenate_contents(request.messages);
  const Reply* reply = find_reply(haystack);

  ChatResponse response;
  response.backend_id = options_.id;
  const Tokens effective = request.budget.effective_request();
  const std::string think = reply ? reply->think : "";
  response.think_text = cap_words(think, effective);
  response.answer_text = reply ? reply->answer : options_.default_answer;
  response.account =
      token_account_for(response.think_text, visible_word_count(response.think_text));
  return response;
}

ContinuationResult ScriptedBackend::do_complete_continuation(const ContinuationRequest& request) {
  continuation_calls_.fetch_add(1);
  std::lock_guard lock(mutex_);
  const Continuation* continuation = find_continuation(request.prelude);
  std::string text = continuation ? continuation->text : options_.default_answer;
  if (request.stop_at_close_tag) {
    const size_t close = text.find(kThinkCloseTag);
    if (close != std::string::npos) text = text.substr(0, close);
  }
  text = cap_words(text, request.cap);

  ContinuationResult result;
  result.text = text;
  result.account = token_account_for(text, visible_word_count(text));
  return result;
}

}  // namespace parity::provider
