#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace parity::arch {

struct PlanStep {
  int id = 0;
  std::string name;
  std::string instruction;
};

struct Plan {
  std::vector<PlanStep> steps;
};

struct Task {
  int id = 0;
  std::string name;
  std::string instruction;
  std::string deliverable;
};

struct TaskList {
  std::vector<Task> tasks;
};

struct PlanParse {
  Plan plan;
  bool fallback = false;
};

struct TaskParse {
  TaskList list;
  bool fallback = false;
};

// Lenient planner-output parsing: the first well-formed brace-delimited JSON
// object in the text is read; items are renumbered 1..n in array order and
// truncated to the cap. Any failure yields the single-step fallback plan
// instead of an error.
PlanParse parse_plan(std::string_view text, int max_steps = 4);
TaskParse parse_tasks(std::string_view text, int max_tasks = 4);

std::string render_plan_text(const Plan& plan);

}  // namespace parity::arch
