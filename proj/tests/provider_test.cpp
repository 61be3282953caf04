#include <doctest.h>

#include <atomic>

#include <json.hpp>

#include "parity/core/text.hpp"
#include "parity/provider/gemini.hpp"
#include "parity/provider/openai.hpp"
#include "parity/provider/scripted.hpp"
#include "support/http_env.hpp"

using namespace parity;
using namespace parity::provider;

namespace {

ChatRequest simple_request(const std::string& user, Tokens budget, double temperature = 0.0) {
  ChatRequest request;
  request.messages = {{MessageRole::system, "sys"}, {MessageRole::user, user}};
  request.budget.requested = budget;
  request.temperature = temperature;
  return request;
}

}  // namespace

TEST_CASE("scripted echo with registered reply") {
  ScriptedBackend backend;
  backend.register_reply("Q17", "t1 t2", "Paris");
  const ChatResponse response = backend.complete_chat(simple_request("Q17 who?", 100));
  CHECK(response.think_text == "t1 t2");
  CHECK(response.answer_text == "Paris");
  CHECK(response.account.visible_words == 2);
  CHECK(response.backend_id == "scripted");
}

TEST_CASE("scripted default reply for unregistered prompts") {
  ScriptedBackend backend;
  const ChatResponse response = backend.complete_chat(simple_request("anything", 50));
  CHECK(response.answer_text == "UNKNOWN");
  CHECK(response.think_text == "");
}

TEST_CASE("zero budget disables thinking") {
  ScriptedBackend backend;
  backend.register_reply("Q1", "some long think text", "ans");
  const ChatResponse response = backend.complete_chat(simple_request("Q1", 0));
  CHECK(response.think_text == "");
  CHECK(response.account.visible_words == 0);
}

TEST_CASE("scripted think text is capped at the effective budget") {
  ScriptedBackend backend;
  backend.register_reply("Q1", "a b c d e f", "ans");
  CHECK(backend.complete_chat(simple_request("Q1", 3)).think_text == "a b c");
  CHECK(backend.complete_chat(simple_request("Q1", 100)).think_text == "a b c d e f");
}

TEST_CASE("scripted exact-hash registration wins over triggers") {
  ScriptedBackend backend;
  backend.register_reply("shared", "t", "trigger answer");
  const std::vector<Message> messages = {{MessageRole::system, "sys"},
                                         {MessageRole::user, "shared exact"}};
  backend.register_exact(messages, "t", "exact answer");
  ChatRequest request;
  request.messages = messages;
  request.budget.requested = 10;
  CHECK(backend.complete_chat(request).answer_text == "exact answer");
}

TEST_CASE("scripted responses are deterministic") {
  ScriptedBackend backend;
  backend.register_reply("Q", "w1 w2 w3", "fixed");
  const ChatRequest request = simple_request("Q again", 2);
  const ChatResponse first = backend.complete_chat(request);
  const ChatResponse second = backend.complete_chat(request);
  CHECK(first.think_text == second.think_text);
  CHECK(first.answer_text == second.answer_text);
}

TEST_CASE("response account invariant holds") {
  ScriptedBackend backend;
  backend.register_reply("Q", "alpha beta gamma delta", "x");
  for (Tokens budget : {0, 1, 2, 3, 10}) {
    const ChatResponse response = backend.complete_chat(simple_request("Q", budget));
    CHECK(response.account.visible_words == visible_word_count(response.think_text));
    CHECK(response.account.assumed == assumed_tokens(response.account.visible_words));
  }
}

TEST_CASE("scripted continuation semantics") {
  ScriptedBackend backend;
  backend.register_continuation("prefix-a", "alpha beta");

  SUBCASE("registered text within cap") {
    const ContinuationResult result =
        backend.complete_continuation({"prefix-a ...", 10, false});
    CHECK(result.text == "alpha beta");
  }
  SUBCASE("zero cap") {
    CHECK(backend.complete_continuation({"prefix-a", 0, false}).text == "");
  }
  SUBCASE("cap 1 truncates to the word-list prefix") {
    CHECK(backend.complete_continuation({"prefix-a", 1, false}).text == "alpha");
  }
  SUBCASE("stop at close tag") {
    backend.register_continuation("prefix-b", "one two</think>three");
    CHECK(backend.complete_continuation({"prefix-b", 10, true}).text == "one two");
    CHECK(backend.complete_continuation({"prefix-b", 10, false}).text ==
          "one two</think>three");
  }
  SUBCASE("exact prelude registration") {
    backend.register_continuation_exact("THE PRELUDE", "exact text");
    CHECK(backend.complete_continuation({"THE PRELUDE", 5, false}).text == "exact text");
  }
}

TEST_CASE("chat request validation") {
  ScriptedBackend backend;
  ChatRequest request;  // no user message
  CHECK_THROWS_AS(backend.complete_chat(request), std::invalid_argument);
  request.messages = {{MessageRole::user, "x"}};
  request.temperature = 1.5;
  CHECK_THROWS_AS(backend.complete_chat(request), std::invalid_argument);
  request.temperature = 0.0;
  request.max_answer_tokens = 0;
  CHECK_THROWS_AS(backend.complete_chat(request), std::invalid_argument);
}

TEST_CASE("openai chat wire contract") {
  test_support::TestServer server;
  nlohmann::json seen;
  std::string seen_auth;
  server.server.Post("/v1/chat/completions",
                     [&](const httplib::Request& req, httplib::Response& res) {
                       seen = nlohmann::json::parse(req.body);
                       if (req.has_header("Authorization"))
                         seen_auth = req.get_header_value("Authorization");
                       const nlohmann::json reply = {
                           {"choices",
                            {{{"message",
                               {{"role", "assistant"},
                                {"content", "<think>r1 r2 r3</think>\nThe answer"}}}}}},
                           {"usage",
                            {{"completion_tokens", 40},
                             {"completion_tokens_details", {{"reasoning_tokens", 33}}}}}};
                       res.set_content(reply.dump(), "application/json");
                     });
  server.start();

  OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "test-model";
  options.api_key = "sk-test";
  options.retry.sleep_scale = 0.0;
  OpenAiBackend backend(options);

  const ChatResponse response = backend.complete_chat(simple_request("the question", 500));
  CHECK(response.think_text == "r1 r2 r3");
  CHECK(response.answer_text == "The answer");
  CHECK(response.account.api_reported == 33);
  CHECK(response.account.visible_words == 3);

  CHECK(seen["model"] == "test-model");
  CHECK(seen["temperature"] == 0.0);
  CHECK(seen["max_tokens"] == 500 + 256);
  REQUIRE(seen["messages"].size() == 2);
  CHECK(seen["messages"][0]["role"] == "system");
  CHECK(seen["messages"][1]["role"] == "user");
  CHECK(seen["messages"][1]["content"] == "the question");
  CHECK(seen_auth == "Bearer sk-test");
}

TEST_CASE("openai transport retries then succeeds") {
  test_support::TestServer server;
  std::atomic<int> hits{0};
  server.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                       if (hits.fetch_add(1) < 2) {
                         res.status = 500;
                         return;
                       }
                       const nlohmann::json reply = {
                           {"choices",
                            {{{"message", {{"role", "assistant"}, {"content", "ok"}}}}}}};
                       res.set_content(reply.dump(), "application/json");
                     });
  server.start();

  OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "m";
  options.retry.sleep_scale = 0.0;
  OpenAiBackend backend(options);

  const ChatResponse response = backend.complete_chat(simple_request("q", 10));
  CHECK(response.answer_text == "ok");
  CHECK(hits.load() == 3);
}

TEST_CASE("openai exhausts retries into a transport error") {
  test_support::TestServer server;
  std::atomic<int> hits{0};
  server.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                       hits.fetch_add(1);
                       res.status = 503;
                     });
  server.start();

  OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "m";
  options.retry.sleep_scale = 0.0;
  OpenAiBackend backend(options);

  CHECK_THROWS_AS(backend.complete_chat(simple_request("q", 10)), TransportError);
  CHECK(hits.load() == 4);  // initial attempt + 3 retries
}

TEST_CASE("openai protocol errors are not retried") {
  test_support::TestServer server;
  std::atomic<int> hits{0};
  server.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                       hits.fetch_add(1);
                       res.status = 400;
                       res.set_content("bad request", "text/plain");
                     });
  server.start();

  OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "m";
  options.retry.sleep_scale = 0.0;
  OpenAiBackend backend(options);

  CHECK_THROWS_AS(backend.complete_chat(simple_request("q", 10)), ProtocolError);
  CHECK(hits.load() == 1);
}

TEST_CASE("openai continuation wire contract") {
  test_support::TestServer server;
  nlohmann::json seen;
  server.server.Post("/v1/completions", [&](const httplib::Request& req,
                                            httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    const nlohmann::json reply = {{"choices", {{{"text", "generated words"}}}},
                                  {"usage", {{"completion_tokens", 2}}}};
    res.set_content(reply.dump(), "application/json");
  });
  server.start();

  OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "m";
  options.retry.sleep_scale = 0.0;
  OpenAiBackend backend(options);
  REQUIRE(backend.supports_continuation());

  const ContinuationResult result =
      backend.complete_continuation({"sys\n\nq\n\n<think>\n", 64, true});
  CHECK(result.text == "generated words");
  CHECK(result.account.api_reported == 2);
  CHECK(seen["prompt"] == "sys\n\nq\n\n<think>\n");
  CHECK(seen["max_tokens"] == 64);
  CHECK(seen["stop"][0] == "</think>");

  // zero cap never issues a request
  CHECK(backend.complete_continuation({"x", 0, false}).text == "");
}

TEST_CASE("gemini wire contract carries the thinking budget") {
  test_support::TestServer server;
  nlohmann::json seen;
  std::string seen_key;
  std::string visible_thought;  // 251 words, the content-based side of the accounting
  for (int i = 0; i < 251; ++i) visible_thought += (i ? " " : "") + std::string("t");
  server.server.Post("/v1beta/models/gemini-test:generateContent",
                     [&](const httplib::Request& req, httplib::Response& res) {
                       seen = nlohmann::json::parse(req.body);
                       if (req.has_header("x-goog-api-key"))
                         seen_key = req.get_header_value("x-goog-api-key");
                       nlohmann::json thought_part = {{"text", visible_thought},
                                                      {"thought", true}};
                       nlohmann::json answer_part = {{"text", "final answer"}};
                       const nlohmann::json reply = {
                           {"candidates",
                            {{{"content",
                               {{"parts", {thought_part, answer_part}}}}}}},
                           {"usageMetadata", {{"thoughtsTokenCount", 1687}}}};
                       res.set_content(reply.dump(), "application/json");
                     });
  server.start();

  GeminiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "gemini-test";
  options.api_key = "g-key";
  options.retry.sleep_scale = 0.0;
  GeminiBackend backend(options);

  const ChatResponse response = backend.complete_chat(simple_request("the question", 10000));
  CHECK(response.think_text == visible_thought);
  CHECK(response.answer_text == "final answer");
  // API-reported thought tokens can dwarf the content-based proxy: a 10k
  // request reporting 1687 tokens against 251 visible words (359 assumed)
  CHECK(response.account.api_reported == 1687);
  CHECK(response.account.visible_words == 251);
  CHECK(response.account.assumed == 359);
  CHECK(response.account.api_reported > response.account.assumed);

  CHECK(seen["generationConfig"]["thinkingConfig"]["thinkingBudget"] == 10000);
  CHECK(seen["generationConfig"]["thinkingConfig"]["includeThoughts"] == true);
  CHECK(seen["systemInstruction"]["parts"][0]["text"] == "sys");
  CHECK(seen["contents"][0]["role"] == "user");
  CHECK(seen_key == "g-key");
}

TEST_CASE("gemini does not support raw continuation") {
  GeminiBackend::Options options;
  options.base_url = "http://127.0.0.1:1";
  options.model = "gemini-test";
  GeminiBackend backend(options);
  CHECK_FALSE(backend.supports_continuation());
  CHECK_THROWS_AS(backend.complete_continuation({"p", 10, false}), UnsupportedCapability);
}

TEST_CASE("provider minimum is visible through the budget type") {
  ScriptedBackend::Options options;
  options.provider_min = 128;
  options.can_disable_thinking = false;
  ScriptedBackend backend(options);
  CHECK(backend.provider_min() == 128);
  CHECK_FALSE(backend.supports_thought_disable());

  backend.register_reply("Q", "a b c d e f g h i j", "x");
  ChatRequest request = simple_request("Q", 5);
  request.budget.provider_min = backend.provider_min();
  // effective request is raised to the provider minimum
  CHECK(request.budget.effective_request() == 128);
  CHECK(backend.complete_chat(request).think_text == "a b c d e f g h i j");
}
