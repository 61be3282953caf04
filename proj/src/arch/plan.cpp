#include "parity/arch/plan.hpp"

#include <optional>

#include <json.hpp>

#include "parity/core/text.hpp"

namespace parity::arch {

namespace {

// First substring that scans as a balanced, string-aware brace span and
// parses as a JSON object.
std::optional<nlohmann::json> first_json_object(std::string_view text) {
  for (size_t start = text.find('{'); start != std::string_view::npos;
       start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false, escape = false;
    for (size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escape)
          escape = false;
        else if (c == '\\')
          escape = true;
        else if (c == '"')
          in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          try {
            nlohmann::json parsed =
                nlohmann::json::parse(text.substr(start, i - start + 1));
            if (parsed.is_object()) return parsed;
          } catch (const nlohmann::json::exception&) {
          }
          break;
        }
      }
    }
  }
  return std::nullopt;
}

std::string string_field(const nlohmann::json& object, const char* key) {
  if (!object.contains(key)) return "";
  const nlohmann::json& value = object[key];
  if (value.is_string()) return value.get<std::string>();
  return "";
}

}  // namespace

PlanParse parse_plan(std::string_view text, int max_steps) {
  PlanParse result;
  const std::optional<nlohmann::json> object = first_json_object(text);
  if (object && object->contains("steps") && (*object)["steps"].is_array()) {
    for (const nlohmann::json& item : (*object)["steps"]) {
      if (!item.is_object()) continue;
      const std::string instruction = trim(string_field(item, "instruction"));
      if (instruction.empty()) continue;
      PlanStep step;
      step.instruction = instruction;
      step.name = string_field(item, "name");
      result.plan.steps.push_back(std::move(step));
      if (static_cast<int>(result.plan.steps.size()) == max_steps) break;
    }
  }
  if (result.plan.steps.empty()) {
    result.fallback = true;
    result.plan.steps.push_back({1, "Step 1", "Answer the question directly"});
    return result;
  }
  for (size_t i = 0; i < result.plan.steps.size(); ++i) {
    result.plan.steps[i].id = static_cast<int>(i) + 1;
    if (result.plan.steps[i].name.empty())
      result.plan.steps[i].name = "Step " + std::to_string(i + 1);
  }
  return result;
}

TaskParse parse_tasks(std::string_view text, int max_tasks) {
  TaskParse result;
  const std::optional<nlohmann::json> object = first_json_object(text);
  if (object && object->contains("tasks") && (*object)["tasks"].is_array()) {
    for (const nlohmann::json& item : (*object)["tasks"]) {
      if (!item.is_object()) continue;
      const std::string instruction = trim(string_field(item, "instruction"));
      if (instruction.empty()) continue;
      Task task;
      task.instruction = instruction;
      task.name = string_field(item, "name");
      task.deliverable = trim(string_field(item, "deliverable"));
      result.list.tasks.push_back(std::move(task));
      if (static_cast<int>(result.list.tasks.size()) == max_tasks) break;
    }
  }
  if (result.list.tasks.empty()) {
    result.fallback = true;
    result.list.tasks.push_back({1, "Task 1", "Answer the question directly", "The final answer"});
    return result;
  }
  for (size_t i = 0; i < result.list.tasks.size(); ++i) {
    result.list.tasks[i].id = static_cast<int>(i) + 1;
    if (result.list.tasks[i].name.empty())
      result.list.tasks[i].name = "Task " + std::to_string(i + 1);
    if (result.list.tasks[i].deliverable.empty())
      result.list.tasks[i].deliverable = "The result of the task";
  }
  return result;
}

std::string render_plan_text(const Plan& plan) {
  std::string out;
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(plan.steps[i].id) + ". " + plan.steps[i].name + ": " +
           plan.steps[i].instruction;
  }
  return out;
}

}  // namespace parity::arch
