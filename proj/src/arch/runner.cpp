#include "parity/arch/runner.hpp"

#include <cctype>
#include <stdexcept>

#include "parity/arch/engine.hpp"
#include "parity/arch/plan.hpp"
#include "parity/core/errors.hpp"
#include "parity/core/text.hpp"

namespace parity::arch {

namespace {

const PromptSet& prompts_of(const RunOptions& options) {
  return options.prompts ? *options.prompts : default_prompts();
}

CallEngine make_engine(provider::Backend& backend, const RunOptions& options) {
  EngineOptions engine_options;
  engine_options.max_answer_tokens = options.max_answer_tokens;
  engine_options.degradation = options.degradation;
  return CallEngine(backend, std::move(engine_options));
}

template <typename Fn>
Trace with_question_context(const Question& question, Fn&& fn) {
  validate(question);
  const auto prefix = [&](const std::exception& e) {
    return "question " + question.id + ": " + e.what();
  };
  try {
    return fn();
  } catch (const TransportError& e) {
    throw TransportError(prefix(e));
  } catch (const ProtocolError& e) {
    throw ProtocolError(prefix(e));
  } catch (const UnsupportedCapability& e) {
    throw UnsupportedCapability(prefix(e));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(prefix(e));
  } catch (const RunError&) {
    throw;
  } catch (const std::exception& e) {
    throw RunError(question.id, e.what());
  }
}

std::string labeled_outputs(const std::string& label_prefix,
                            const std::vector<AgentCall>& calls) {
  std::string out;
  for (size_t i = 0; i < calls.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += label_prefix + std::to_string(i + 1) + ":\n" + calls[i].answer_text;
  }
  return out;
}

}  // namespace

Trace run_sas(const Question& question, Tokens budget, provider::Backend& backend,
              const RunOptions& options) {
  return with_question_context(question, [&] {
    const PromptSet& prompts = prompts_of(options);
    CallEngine engine = make_engine(backend, options);
    AgentCall call = engine.run({"sas", prompts.sas_system, question.text, budget, false, 0.0});
    return finalize_trace(Architecture::sas, question.id, {std::move(call)});
  });
}

Trace run_sas_long(const Question& question, Tokens budget, provider::Backend& backend,
                   const RunOptions& options) {
  return with_question_context(question, [&] {
    const PromptSet& prompts = prompts_of(options);
    CallEngine engine = make_engine(backend, options);
    const std::string user = prompts.sas_long_prefix + "\n" + question.text;
    AgentCall call = engine.run({"sas-l", prompts.sas_system, user, budget, false, 0.0});
    return finalize_trace(Architecture::sas_long, question.id, {std::move(call)});
  });
}

Trace run_sequential(const Question& question, Tokens budget, provider::Backend& backend,
                     const RunOptions& options) {
  return with_question_context(question, [&] {
    const PromptSet& prompts = prompts_of(options);
    CallEngine engine = make_engine(backend, options);
    std::vector<AgentCall> calls;

    calls.push_back(
        engine.run({"planner", prompts.seq_planner_system, question.text, 0, true, 0.0}));
    const PlanParse parsed = parse_plan(calls.back().answer_text, options.max_steps);
    const Plan& plan = parsed.plan;
    const std::string plan_text = render_plan_text(plan);

    const std::vector<Tokens> budgets =
        split_budget(budget, static_cast<int>(plan.steps.size()));
    std::string prior_outputs = "(none)";
    std::vector<AgentCall> step_calls;
    for (size_t i = 0; i < plan.steps.size(); ++i) {
      const PlanStep& step = plan.steps[i];
      const std::string user = substitute(
          prompts.seq_step_user, {
                                     {"{q}", question.text},
                                     {"{plan_as_text}", plan_text},
                                     {"{i}", std::to_string(step.id)},
                                     {"{step_name}", step.name},
                                     {"{step_instruction}", step.instruction},
                                     {"{prior_step_outputs}", prior_outputs},
                                 });
      step_calls.push_back(engine.run({"step-" + std::to_string(step.id),
                                       prompts.seq_step_system, user, budgets[i], false, 0.0}));
      if (i == 0) prior_outputs.clear();
      if (!prior_outputs.empty()) prior_outputs += "\n\n";
      prior_outputs +=
          "Step " + std::to_string(step.id) + ":\n" + step_calls.back().answer_text;
    }

    const std::string step_outputs = labeled_outputs("Step ", step_calls);
    for (AgentCall& call : step_calls) calls.push_back(std::move(call));
    const std::string aggregator_user = substitute(
        prompts.seq_aggregator_user,
        {{"{q}", question.text}, {"{step_outputs}", step_outputs}});
    calls.push_back(engine.run(
        {"aggregator", prompts.seq_aggregator_system, aggregator_user, 0, true, 0.0}));

    return finalize_trace(Architecture::sequential, question.id, std::move(calls),
                          parsed.fallback);
  });
}

Trace run_subtask_parallel(const Question& question, Tokens budget, provider::Backend& backend,
                           const RunOptions& options) {
  return with_question_context(question, [&] {
    const PromptSet& prompts = prompts_of(options);
    CallEngine engine = make_engine(backend, options);
    std::vector<AgentCall> calls;

    calls.push_back(
        engine.run({"planner", prompts.sub_planner_system, question.text, 0, true, 0.0}));
    const TaskParse parsed = parse_tasks(calls.back().answer_text, options.max_tasks);
    const TaskList& list = parsed.list;

    const std::vector<Tokens> budgets =
        split_budget(budget, static_cast<int>(list.tasks.size()));
    std::vector<CallEngine::CallSpec> specs;
    for (size_t i = 0; i < list.tasks.size(); ++i) {
      const Task& task = list.tasks[i];
      const std::string user = substitute(
          prompts.sub_worker_user, {
                                       {"{q}", question.text},
                                       {"{task_id}", std::to_string(task.id)},
                                       {"{task_instruction}", task.instruction},
                                       {"{task_deliverable}", task.deliverable},
                                   });
      specs.push_back({"task-" + std::to_string(task.id), prompts.sub_worker_system, user,
                       budgets[i], false, 0.0});
    }
    std::vector<AgentCall> workers = engine.run_parallel(specs);

    const std::string task_outputs = labeled_outputs("Task ", workers);
    for (AgentCall& call : workers) calls.push_back(std::move(call));
    const std::string aggregator_user = substitute(
        prompts.sub_aggregator_user,
        {{"{q}", question.text}, {"{task_outputs}", task_outputs}});
    calls.push_back(engine.run(
        {"aggregator", prompts.sub_aggregator_system, aggregator_user, 0, true, 0.0}));

    return finalize_trace(Architecture::subtask_parallel, question.id, std::move(calls),
                          parsed.fallback);
  });
}

Trace run_parallel_roles(const Question& question, Tokens budget, provider::Backend& backend,
                         const RunOptions& options) {
  return with_question_context(question, [&] {
    const PromptSet& prompts = prompts_of(options);
    const auto& roles = default_roles();
    CallEngine engine = make_engine(backend, options);

    const std::vector<Tokens> budgets = split_budget(budget, static_cast<int>(roles.size()));
    std::vector<CallEngine::CallSpec> specs;
    for (size_t i = 0; i < roles.size(); ++i) {
      const RoleSpec& role = roles[i];
      const std::string user = substitute(prompts.roles_worker_user,
                                          {
                                              {"{q}", question.text},
                                              {"{role_name}", role.display},
                                              {"{instructions}", role.instructions},
                                          });
      std::string role_id = role.display;
      for (char& c : role_id)
        c = c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      specs.push_back({role_id, prompts.roles_worker_system, user, budgets[i], false, 0.0});
    }
    std::vector<AgentCall> workers = engine.run_parallel(specs);

    std::string role_outputs;
    for (size_t i = 0; i < workers.size(); ++i) {
      if (i > 0) role_outputs += "\n\n";
      role_outputs += roles[i].display + ":\n" + workers[i].answer_text;
    }

    std::vector<AgentCall> calls = std::move(workers);
    const std::string aggregator_user = substitute(
        prompts.roles_aggregator_user,
        {{"{q}", question.text}, {"{role_outputs}", role_outputs}});
    calls.push_back(engine.run(
        {"aggregator", prompts.roles_aggregator_system, aggregator_user, 0, true, 0.0}));

    return finalize_trace(Architecture::parallel_roles, question.id, std::move(calls));
  });
}

Trace run_debate(const Question& question, Tokens budget, provider::Backend& backend,
                 const RunOptions& options) {
  return with_question_context(question, [&] {
    const PromptSet& prompts = prompts_of(options);
    CallEngine engine = make_engine(backend, options);
    const std::vector<Tokens> budgets = split_budget(budget, 4);

    std::vector<AgentCall> debaters = engine.run_parallel({
        {"debater-A", prompts.debate_debater_system, question.text, budgets[0], false, 0.0},
        {"debater-B", prompts.debate_debater_system, question.text, budgets[1], false, 0.0},
    });

    const std::string critique_a = substitute(
        prompts.debate_critique_user, {{"{opponent_answer}", debaters[1].answer_text}});
    const std::string critique_b = substitute(
        prompts.debate_critique_user, {{"{opponent_answer}", debaters[0].answer_text}});
    std::vector<AgentCall> critics = engine.run_parallel({
        {"critic-A", prompts.debate_critic_system, critique_a, budgets[2], false, 0.0},
        {"critic-B", prompts.debate_critic_system, critique_b, budgets[3], false, 0.0},
    });

    const std::string judge_user = substitute(prompts.debate_aggregator_user,
                                              {
                                                  {"{q}", question.text},
                                                  {"{answer_a}", critics[0].answer_text},
                                                  {"{answer_b}", critics[1].answer_text},
                                              });

    std::vector<AgentCall> calls;
    for (AgentCall& call : debaters) calls.push_back(std::move(call));
    for (AgentCall& call : critics) calls.push_back(std::move(call));
    calls.push_back(
        engine.run({"judge", prompts.debate_aggregator_system, judge_user, 0, true, 0.0}));

    return finalize_trace(Architecture::debate, question.id, std::move(calls));
  });
}

Trace run_ensemble(const Question& question, Tokens budget, int n, provider::Backend& backend,
                   const RunOptions& options) {
  return with_question_context(question, [&] {
    if (n < 2) throw std::invalid_argument("ensemble needs at least 2 workers");
    const PromptSet& prompts = prompts_of(options);
    CallEngine engine = make_engine(backend, options);
    const std::vector<Tokens> budgets = split_budget(budget, n);

    std::vector<CallEngine::CallSpec> specs;
    for (int i = 0; i < n; ++i)
      specs.push_back({"candidate-" + std::to_string(i + 1), prompts.ensemble_candidate_system,
                       question.text, budgets[static_cast<size_t>(i)], false, 0.7});
    std::vector<AgentCall> candidates = engine.run_parallel(specs);

    const std::string candidate_answers = labeled_outputs("Candidate ", candidates);
    const std::string judge_user = substitute(
        prompts.ensemble_aggregator_user,
        {{"{q}", question.text}, {"{candidate_answers}", candidate_answers}});

    std::vector<AgentCall> calls = std::move(candidates);
    calls.push_back(
        engine.run({"judge", prompts.ensemble_aggregator_system, judge_user, 0, true, 0.0}));

    return finalize_trace(Architecture::ensemble, question.id, std::move(calls));
  });
}

Trace run_architecture(Architecture architecture, const Question& question, Tokens budget,
                       provider::Backend& backend, const RunOptions& options) {
  switch (architecture) {
    case Architecture::sas: return run_sas(question, budget, backend, options);
    case Architecture::sas_long: return run_sas_long(question, budget, backend, options);
    case Architecture::sequential: return run_sequential(question, budget, backend, options);
    case Architecture::subtask_parallel:
      return run_subtask_parallel(question, budget, backend, options);
    case Architecture::parallel_roles:
      return run_parallel_roles(question, budget, backend, options);
    case Architecture::debate: return run_debate(question, budget, backend, options);
    case Architecture::ensemble:
      return run_ensemble(question, budget, options.ensemble_n, backend, options);
  }
  throw std::logic_error("unknown architecture");
}

}  // namespace parity::arch
