#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "parity/arch/engine.hpp"
#include "parity/arch/plan.hpp"
#include "parity/arch/prompts.hpp"
#include "parity/arch/runner.hpp"
#include "parity/provider/openai.hpp"
#include "parity/provider/scripted.hpp"
#include "support/corpus.hpp"
#include "support/http_env.hpp"

using namespace parity;
using namespace parity::arch;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing ", path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string golden(const std::string& name) {
  return read_file(std::string(PARITY_TEST_GOLDEN_DIR) + "/" + name);
}

std::vector<std::string> roles_of(const Trace& trace) {
  std::vector<std::string> roles;
  for (const AgentCall& call : trace.calls) roles.push_back(call.role);
  return roles;
}

}  // namespace

TEST_CASE("shipped prompts match their golden bytes") {
  const PromptSet& prompts = default_prompts();
  CHECK(prompts.sas_system == golden("prompts_raw/sas_system.txt"));
  CHECK(prompts.sas_long_prefix == golden("prompts_raw/sas_long_prefix.txt"));
  CHECK(prompts.seq_planner_system == golden("prompts_raw/seq_planner_system.txt"));
  CHECK(prompts.seq_step_system == golden("prompts_raw/seq_step_system.txt"));
  CHECK(prompts.seq_step_user == golden("prompts_raw/seq_step_user.txt"));
  CHECK(prompts.seq_aggregator_system == golden("prompts_raw/seq_aggregator_system.txt"));
  CHECK(prompts.seq_aggregator_user == golden("prompts_raw/seq_aggregator_user.txt"));
  CHECK(prompts.sub_planner_system == golden("prompts_raw/sub_planner_system.txt"));
  CHECK(prompts.sub_worker_system == golden("prompts_raw/sub_worker_system.txt"));
  CHECK(prompts.sub_worker_user == golden("prompts_raw/sub_worker_user.txt"));
  CHECK(prompts.sub_aggregator_system == golden("prompts_raw/sub_aggregator_system.txt"));
  CHECK(prompts.sub_aggregator_user == golden("prompts_raw/sub_aggregator_user.txt"));
  CHECK(prompts.roles_worker_system == golden("prompts_raw/roles_worker_system.txt"));
  CHECK(prompts.roles_worker_user == golden("prompts_raw/roles_worker_user.txt"));
  CHECK(prompts.roles_aggregator_system ==
        golden("prompts_raw/roles_aggregator_system.txt"));
  CHECK(prompts.roles_aggregator_user == golden("prompts_raw/roles_aggregator_user.txt"));
  CHECK(prompts.debate_debater_system == golden("prompts_raw/debate_debater_system.txt"));
  CHECK(prompts.debate_critic_system == golden("prompts_raw/debate_critic_system.txt"));
  CHECK(prompts.debate_critique_user == golden("prompts_raw/debate_critique_user.txt"));
  CHECK(prompts.debate_aggregator_system ==
        golden("prompts_raw/debate_aggregator_system.txt"));
  CHECK(prompts.debate_aggregator_user == golden("prompts_raw/debate_aggregator_user.txt"));
  CHECK(prompts.ensemble_candidate_system ==
        golden("prompts_raw/ensemble_candidate_system.txt"));
  CHECK(prompts.ensemble_aggregator_system ==
        golden("prompts_raw/ensemble_aggregator_system.txt"));
  CHECK(prompts.ensemble_aggregator_user ==
        golden("prompts_raw/ensemble_aggregator_user.txt"));
  CHECK(prompts.judge_system == golden("prompts_raw/judge_system.txt"));
  CHECK(prompts.judge_user == golden("prompts_raw/judge_user.txt"));
}

TEST_CASE("prompt overrides replace only the provided files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "parity_prompt_override";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "sas_system.txt", std::ios::binary);
    out << "custom system prompt";
  }
  const PromptSet prompts = load_prompts(dir.string());
  CHECK(prompts.sas_system == "custom system prompt");
  CHECK(prompts.judge_user == default_prompts().judge_user);
  CHECK_THROWS_AS(load_prompts((dir / "missing").string()), std::invalid_argument);
}

TEST_CASE("substitution is single pass") {
  const std::string tmpl = "A={a} B={b}";
  CHECK(substitute(tmpl, {{"{a}", "{b}"}, {"{b}", "x"}}) == "A={b} B=x");
  CHECK(substitute("{q}{q}", {{"{q}", "v"}}) == "vv");
  CHECK(substitute("plain", {{"{q}", "v"}}) == "plain");
}

TEST_CASE("parse_plan accepts lenient step arrays") {
  const PlanParse parsed = parse_plan(
      "noise before {\"steps\":[{\"id\":1,\"name\":\"A\",\"instruction\":\"do a\"},"
      "{\"id\":2,\"name\":\"B\",\"instruction\":\"do b\"}]} noise after");
  CHECK_FALSE(parsed.fallback);
  REQUIRE(parsed.plan.steps.size() == 2);
  CHECK(parsed.plan.steps[0].id == 1);
  CHECK(parsed.plan.steps[1].instruction == "do b");
}

TEST_CASE("parse_plan renumbers in textual order") {
  const PlanParse parsed = parse_plan(
      R"({"steps":[{"id":"2","name":"First listed","instruction":"x"},)"
      R"({"id":1,"name":"Second listed","instruction":"y"}]})");
  REQUIRE(parsed.plan.steps.size() == 2);
  CHECK(parsed.plan.steps[0].id == 1);
  CHECK(parsed.plan.steps[0].name == "First listed");
  CHECK(parsed.plan.steps[1].id == 2);
  CHECK(parsed.plan.steps[1].name == "Second listed");
}

TEST_CASE("parse_plan falls back on refusals and truncates at the cap") {
  const PlanParse refused = parse_plan("I cannot comply");
  CHECK(refused.fallback);
  REQUIRE(refused.plan.steps.size() == 1);
  CHECK(refused.plan.steps[0].instruction == "Answer the question directly");

  std::string big = R"({"steps":[)";
  for (int i = 0; i < 9; ++i)
    big += std::string(i ? "," : "") + R"({"id":)" + std::to_string(i + 1) +
           R"(,"instruction":"step )" + std::to_string(i + 1) + R"("})";
  big += "]}";
  CHECK(parse_plan(big, 4).plan.steps.size() == 4);
  CHECK(parse_plan(big, 4).fallback == false);

  CHECK(parse_plan("{\"steps\":[]}").fallback);
  CHECK(parse_plan("{\"steps\":[{\"id\":1}]}").fallback);  // no usable instruction
  CHECK(parse_plan("{broken json").fallback);
}

TEST_CASE("parse_tasks mirrors the plan rules") {
  const TaskParse parsed = parse_tasks(test_support::kTwoTaskJson);
  CHECK_FALSE(parsed.fallback);
  REQUIRE(parsed.list.tasks.size() == 2);
  CHECK(parsed.list.tasks[1].deliverable == "Fact B");
  CHECK(parse_tasks("nothing json").fallback);
}

TEST_CASE("sas runs one full-budget call") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  const Trace trace = run_sas(question, 1000, backend);
  REQUIRE(trace.calls.size() == 1);
  CHECK(trace.architecture == Architecture::sas);
  CHECK(trace.final_answer == "Jane Austen");
  CHECK(trace.calls[0].budget.requested == 1000);
  CHECK(trace.calls[0].temperature == 0.0);
  CHECK_FALSE(trace.calls[0].budget_neutral);
  CHECK(trace.calls[0].system_prompt == golden("prompts_raw/sas_system.txt"));
  CHECK(trace.calls[0].user_prompt == question.text);
  CHECK(matched_budget(trace) == 1000);
}

TEST_CASE("sas with zero budget disables thinking") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Trace trace = run_sas(test_support::golden_question(), 0, backend);
  CHECK(trace.calls[0].think_text == "");
  CHECK(trace.total_assumed == 0);
}

TEST_CASE("sas totals use the 10/7 proxy on an 800-word think") {
  provider::ScriptedBackend backend;
  std::string think;
  for (int i = 0; i < 800; ++i) think += (i ? " " : "") + std::string("w");
  backend.register_reply("[big]", think, "ans");
  const Question question{"big", "Question [big]?", "g", 1, DatasetTag::custom, ""};
  const Trace trace = run_sas(question, 1000, backend);
  CHECK(trace.total_requested == 1000);
  CHECK(trace.calls[0].account.visible_words == 800);
  CHECK(trace.total_assumed == 1143);
}

TEST_CASE("sas-l prefixes the user message and keeps the budget") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  const Trace sas = run_sas(question, 750, backend);
  const Trace sasl = run_sas_long(question, 750, backend);
  REQUIRE(sasl.calls.size() == 1);
  CHECK(sasl.calls[0].user_prompt == golden("prompts/sas_long_user.txt"));
  CHECK(sasl.calls[0].system_prompt == sas.calls[0].system_prompt);
  CHECK(sasl.final_answer == "SAS-L answer");       // distinct prompt, distinct reply
  CHECK(sas.final_answer == "Jane Austen");
  CHECK(sasl.total_requested == sas.total_requested);
}

TEST_CASE("sequential pipeline: prompts, budgets and order") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  const Trace trace = run_sequential(question, 1000, backend);
  REQUIRE(trace.calls.size() == 4);  // planner, 2 steps, aggregator
  CHECK(roles_of(trace) == std::vector<std::string>{"planner", "step-1", "step-2",
                                                    "aggregator"});
  CHECK_FALSE(trace.plan_fallback_used);

  CHECK(trace.calls[0].budget_neutral);
  CHECK(trace.calls[0].budget.requested == 0);
  CHECK(trace.calls[0].user_prompt == question.text);

  CHECK(trace.calls[1].budget.requested == 500);
  CHECK(trace.calls[2].budget.requested == 500);
  CHECK(trace.calls[1].user_prompt == golden("prompts/seq_step_user_step1.txt"));
  CHECK(trace.calls[2].user_prompt == golden("prompts/seq_step_user_step2.txt"));
  // the second step sees the first step's output verbatim
  CHECK(trace.calls[2].user_prompt.find("Previous step outputs:\nStep 1:\nAuthor candidate: "
                                        "Jane Austen") != std::string::npos);

  CHECK(trace.calls[3].budget_neutral);
  CHECK(trace.calls[3].user_prompt == golden("prompts/seq_aggregator_user.txt"));
  CHECK(trace.final_answer == "Jane Austen");
  CHECK(matched_budget(trace) == 1000);
}

TEST_CASE("sequential budgets follow the split rule for k=4") {
  provider::ScriptedBackend backend;
  std::string plan = R"({"steps":[)";
  for (int i = 1; i <= 4; ++i)
    plan += std::string(i > 1 ? "," : "") + R"({"id":)" + std::to_string(i) +
            R"(,"instruction":"part )" + std::to_string(i) + R"("})";
  plan += "]}";
  backend.register_reply("You are a careful planner", "", plan);
  backend.register_reply("Read step outputs", "", "done");
  backend.register_reply("You are responsible for Step", "", "part answer");
  const Question question{"k4", "Question [k4]?", "g", 1, DatasetTag::custom, ""};

  const Trace trace = run_sequential(question, 1000, backend);
  REQUIRE(trace.calls.size() == 6);
  for (int i = 1; i <= 4; ++i) CHECK(trace.calls[static_cast<size_t>(i)].budget.requested == 250);
}

TEST_CASE("sequential plan fallback is recorded on the trace") {
  provider::ScriptedBackend backend;
  backend.register_reply("You are a careful planner", "", "I cannot comply");
  backend.register_reply("Read step outputs", "", "the answer");
  backend.register_reply("You are responsible for Step 1:", "", "direct answer");
  const Question question{"fb", "Question [fb]?", "g", 1, DatasetTag::custom, ""};

  const Trace trace = run_sequential(question, 600, backend);
  CHECK(trace.plan_fallback_used);
  REQUIRE(trace.calls.size() == 3);
  CHECK(trace.calls[1].budget.requested == 600);  // single fallback step gets all of B
  CHECK(trace.calls[1].user_prompt.find("Answer the question directly") != std::string::npos);
}

TEST_CASE("subtask-parallel: no cross-visibility, task order preserved") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  const Trace trace = run_subtask_parallel(question, 1001, backend);
  REQUIRE(trace.calls.size() == 4);
  CHECK(roles_of(trace) == std::vector<std::string>{"planner", "task-1", "task-2",
                                                    "aggregator"});
  CHECK(trace.calls[1].budget.requested == 501);  // remainder to the earliest worker
  CHECK(trace.calls[2].budget.requested == 500);
  CHECK(trace.calls[2].user_prompt == golden("prompts/sub_worker_user_task2.txt"));
  // worker 2 must not see task 1's instruction
  CHECK(trace.calls[2].user_prompt.find("Find fact A.") == std::string::npos);
  CHECK(trace.calls[3].user_prompt == golden("prompts/sub_aggregator_user.txt"));
  CHECK(matched_budget(trace) == 1001);
}

TEST_CASE("parallel roles: five calls in the fixed role order") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  const Trace trace = run_parallel_roles(question, 1000, backend);
  REQUIRE(trace.calls.size() == 5);
  CHECK(roles_of(trace) == std::vector<std::string>{"solver", "fact_extractor", "skeptic",
                                                    "second_solver", "aggregator"});
  const std::vector<Tokens> budgets = split_budget(1000, 4);
  for (size_t i = 0; i < 4; ++i) CHECK(trace.calls[i].budget.requested == budgets[i]);
  CHECK(trace.calls[2].user_prompt == golden("prompts/roles_worker_user_skeptic.txt"));
  CHECK(trace.calls[4].user_prompt == golden("prompts/roles_aggregator_user.txt"));
  CHECK(matched_budget(trace) == 1000);
}

TEST_CASE("debate: four split calls plus judge; critique embeds the opponent answer") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  const Trace trace = run_debate(question, 2000, backend);
  REQUIRE(trace.calls.size() == 5);
  CHECK(roles_of(trace) == std::vector<std::string>{"debater-A", "debater-B", "critic-A",
                                                    "critic-B", "judge"});
  for (size_t i = 0; i < 4; ++i) CHECK(trace.calls[i].budget.requested == 500);
  CHECK(trace.calls[2].user_prompt == golden("prompts/debate_critique_user.txt"));
  CHECK(trace.calls[2].user_prompt.find("Opponent answer:\nAnswer Alpha") !=
        std::string::npos);
  CHECK(trace.calls[4].user_prompt == golden("prompts/debate_aggregator_user.txt"));
  // the judge's verbatim output is the final answer = B's improved answer
  CHECK(trace.final_answer == trace.calls[3].answer_text);
  CHECK(trace.final_answer == "Improved Both");
  CHECK(matched_budget(trace) == 2000);
}

TEST_CASE("ensemble: n candidates at temperature 0.7 plus a cold judge") {
  provider::ScriptedBackend backend;
  test_support::register_golden_scenario(backend);
  const Question& question = test_support::golden_question();

  RunOptions options;
  options.ensemble_n = 4;
  const Trace trace = run_ensemble(question, 1000, 4, backend, options);
  REQUIRE(trace.calls.size() == 5);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(trace.calls[i].role == "candidate-" + std::to_string(i + 1));
    CHECK(trace.calls[i].temperature == 0.7);
  }
  CHECK(trace.calls[4].temperature == 0.0);
  CHECK(trace.calls[4].user_prompt == golden("prompts/ensemble_aggregator_user.txt"));
  CHECK(matched_budget(trace) == 1000);

  CHECK_THROWS_AS(run_ensemble(question, 1000, 1, backend, options), std::invalid_argument);
}

TEST_CASE("budget conservation across architectures and budgets") {
  for (Tokens budget : {100, 500, 1000, 2000}) {
    provider::ScriptedBackend backend;
    test_support::register_golden_scenario(backend);
    for (Architecture architecture :
         {Architecture::sas, Architecture::sas_long, Architecture::sequential,
          Architecture::subtask_parallel, Architecture::parallel_roles, Architecture::debate,
          Architecture::ensemble}) {
      const Trace trace =
          run_architecture(architecture, test_support::golden_question(), budget, backend);
      CHECK(matched_budget(trace) == budget);
      for (const AgentCall& call : trace.calls) {
        if (call.budget_neutral) CHECK(call.budget.requested == 0);
        // recorded usage never exceeds the effective request on scripted runs
        CHECK(call.account.api_reported <= call.budget.effective_request());
      }
    }
  }
}

TEST_CASE("call order is deterministic across reruns") {
  for (int rerun = 0; rerun < 2; ++rerun) {
    provider::ScriptedBackend backend;
    test_support::register_golden_scenario(backend);
    const Trace first =
        run_parallel_roles(test_support::golden_question(), 999, backend);
    const Trace second =
        run_parallel_roles(test_support::golden_question(), 999, backend);
    CHECK(roles_of(first) == roles_of(second));
    for (size_t i = 0; i < first.calls.size(); ++i)
      CHECK(first.calls[i].answer_text == second.calls[i].answer_text);
  }
}

TEST_CASE("degraded sequential run keeps one corruption index per call") {
  provider::ScriptedBackend backend;
  std::string plan = R"({"steps":[{"id":1,"instruction":"one"},)"
                     R"({"id":2,"instruction":"two"},{"id":3,"instruction":"three"}]})";
  backend.register_reply("You are a careful planner", "", plan);
  backend.register_reply("Read step outputs", "", "final");
  for (int i = 1; i <= 3; ++i) {
    const std::string marker = "You are responsible for Step " + std::to_string(i) + ":";
    backend.register_continuation({marker, "</think>"}, "step answer " + std::to_string(i));
    backend.register_continuation({marker}, "step thinking " + std::to_string(i));
  }
  const Question question{"dg", "Question [dg]?", "g", 1, DatasetTag::custom, ""};

  RunOptions options;
  degrade::CorruptionSpec spec;
  spec.method = CorruptionMethod::del;
  spec.alpha = 0.0;
  spec.base_seed = 11;
  options.degradation = spec;

  const Trace trace = run_sequential(question, 900, backend, options);
  REQUIRE(trace.calls.size() == 5);
  CHECK_FALSE(trace.calls[0].corruption.has_value());  // planner is budget-neutral
  CHECK_FALSE(trace.calls[4].corruption.has_value());  // aggregator too
  for (int i = 1; i <= 3; ++i) {
    REQUIRE(trace.calls[static_cast<size_t>(i)].corruption.has_value());
    CHECK(trace.calls[static_cast<size_t>(i)].corruption->call_index == i - 1);
    CHECK(trace.calls[static_cast<size_t>(i)].think_text ==
          "step thinking " + std::to_string(i));
  }
}

TEST_CASE("transport retries leave exactly one agent call in the trace") {
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
                            {{{"message",
                               {{"role", "assistant"},
                                {"content", "<think>a b</think>recovered"}}}}}}};
                       res.set_content(reply.dump(), "application/json");
                     });
  server.start();

  provider::OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "m";
  options.retry.sleep_scale = 0.0;
  provider::OpenAiBackend backend(options);

  const Question question{"rt", "Q?", "g", 1, DatasetTag::custom, ""};
  const Trace trace = run_sas(question, 100, backend);
  REQUIRE(trace.calls.size() == 1);
  CHECK(trace.final_answer == "recovered");
  CHECK(hits.load() == 3);
}

TEST_CASE("backend failures carry the question id") {
  test_support::TestServer server;
  server.server.Post("/v1/chat/completions",
                     [&](const httplib::Request&, httplib::Response& res) {
                       res.status = 503;
                     });
  server.start();

  provider::OpenAiBackend::Options options;
  options.base_url = server.base_url();
  options.model = "m";
  options.retry.sleep_scale = 0.0;
  options.retry.max_retries = 0;
  provider::OpenAiBackend backend(options);

  const Question question{"q-fail-77", "Q?", "g", 1, DatasetTag::custom, ""};
  CHECK_THROWS_WITH_AS(run_sas(question, 50, backend), doctest::Contains("q-fail-77"),
                       TransportError);
}

TEST_CASE("budget below the provider minimum is raised with a warning") {
  provider::ScriptedBackend::Options options;
  options.provider_min = 128;
  options.can_disable_thinking = false;
  provider::ScriptedBackend backend(options);
  test_support::register_golden_scenario(backend);

  const Trace trace = run_sas(test_support::golden_question(), 50, backend);
  REQUIRE(trace.calls.size() == 1);
  CHECK(trace.calls[0].budget.requested == 50);
  CHECK(trace.calls[0].budget.provider_min == 128);
  CHECK(trace.calls[0].budget.effective_request() == 128);
  REQUIRE(trace.calls[0].warnings.size() == 1);
  CHECK(trace.calls[0].warnings[0].find("128") != std::string::npos);

  // budget-neutral calls on a no-disable backend request the provider minimum
  const Trace seq = run_sequential(test_support::golden_question(), 500, backend);
  CHECK(seq.calls[0].budget_neutral);
  CHECK(seq.calls[0].budget.requested == 128);
  CHECK(seq.calls[0].warnings.empty());
}
