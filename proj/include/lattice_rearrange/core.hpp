#pragma once

// Lattice geometry, instances, plans and the pick-n-swap simulator.
//
// Cells are 1-based and column-major: on an m1 x m2 lattice the cell at
// (row, col) has index (col - 1) * m1 + row. A 1D lattice is the m2 == 1
// case. Configurations are vectors indexed by cell - 1 holding an item id
// (a label for labeled instances, a type for typed ones); 0 marks the single
// empty cell that exists while the end-effector holds an item.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lattice_rearrange {

// Base class of every domain error. code() is a stable identifier used in
// machine-readable error output.
class rearrange_error : public std::runtime_error {
public:
  rearrange_error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

class illegal_step : public rearrange_error {
public:
  illegal_step(std::size_t step, const std::string& reason)
      : rearrange_error("IllegalStep", "step " + std::to_string(step) + ": " + reason),
        step_(step), reason_(reason) {}
  std::size_t step() const noexcept { return step_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t step_;
  std::string reason_;
};

inline rearrange_error invalid_instance(const std::string& what) {
  return {"InvalidInstance", what};
}

struct LatticeDims {
  int m1 = 1;
  int m2 = 1;

  int size() const noexcept { return m1 * m2; }
  bool contains(int cell) const noexcept { return cell >= 1 && cell <= size(); }
  int row(int cell) const noexcept { return (cell - 1) % m1 + 1; }
  int col(int cell) const noexcept { return (cell - 1) / m1 + 1; }
  int index(int row, int col) const noexcept { return (col - 1) * m1 + row; }
  bool is_1d() const noexcept { return m2 == 1; }

  friend bool operator==(const LatticeDims&, const LatticeDims&) = default;
};

struct Cell {
  int index = 1;
  int row = 1;
  int col = 1;
};

inline Cell make_cell(const LatticeDims& dims, int index) {
  return {index, dims.row(index), dims.col(index)};
}

enum class Metric { euclidean, manhattan };

struct CostModel {
  double pick_cost = 1.0;    // c_p, time per pick-n-swap
  double travel_cost = 1.0;  // c_t, time per unit of end-effector travel
  Metric metric = Metric::euclidean;
};

inline void validate(const CostModel& model) {
  if (!(model.pick_cost >= 0.0) || !(model.travel_cost >= 0.0))
    throw rearrange_error("InvalidCostModel", "pick and travel costs must be nonnegative");
}

inline double distance(const LatticeDims& dims, int a, int b, Metric metric = Metric::euclidean) {
  const double dr = dims.row(a) - dims.row(b);
  const double dc = dims.col(a) - dims.col(b);
  if (metric == Metric::manhattan) return std::abs(dr) + std::abs(dc);
  return std::sqrt(dr * dr + dc * dc);
}

inline double distance(const LatticeDims& dims, int a, int b, const CostModel& model) {
  return distance(dims, a, b, model.metric);
}

using Configuration = std::vector<int>;

enum class InstanceKind { labeled, typed };

// A start/goal pair on a lattice. Labeled instances have goal == identity and
// start == pi (pi[i] is the label initially at cell i + 1). Typed instances
// carry arbitrary start/goal type sequences over 1..types.
struct Instance {
  LatticeDims dims;
  InstanceKind kind = InstanceKind::labeled;
  Configuration start;
  Configuration goal;
  int types = 0;
  int rest = 1;

  int size() const noexcept { return dims.size(); }
  bool labeled() const noexcept { return kind == InstanceKind::labeled; }
  std::span<const int> pi() const noexcept { return start; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline void check_dims(const LatticeDims& dims) {
  if (dims.m1 < 1 || dims.m2 < 1) throw invalid_instance("lattice dimensions must be positive");
}

inline bool is_permutation_of_cells(std::span<const int> pi) {
  const int n = static_cast<int>(pi.size());
  std::vector<char> seen(pi.size() + 1, 0);
  for (int v : pi) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Instance make_labeled(LatticeDims dims, std::vector<int> pi, int rest = 1) {
  check_dims(dims);
  if (static_cast<int>(pi.size()) != dims.size())
    throw invalid_instance("pi must have m1*m2 entries");
  if (!is_permutation_of_cells(pi))
    throw rearrange_error("MalformedPermutation", "pi is not a permutation of 1..n");
  if (!dims.contains(rest)) throw invalid_instance("rest cell outside the lattice");
  Instance inst;
  inst.dims = dims;
  inst.kind = InstanceKind::labeled;
  inst.goal.resize(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inst.goal[i] = static_cast<int>(i) + 1;
  inst.start = std::move(pi);
  inst.types = dims.size();
  inst.rest = rest;
  return inst;
}

inline Instance make_labeled(std::vector<int> pi) {
  const int n = static_cast<int>(pi.size());
  return make_labeled(LatticeDims{n, 1}, std::move(pi));
}

// types == 0 infers the type count from the largest type id in either array.
inline Instance make_typed(LatticeDims dims, std::vector<int> start, std::vector<int> goal,
                           int types = 0, int rest = 1) {
  check_dims(dims);
  const auto n = static_cast<std::size_t>(dims.size());
  if (start.size() != n || goal.size() != n)
    throw invalid_instance("start_types and goal_types must have m1*m2 entries");
  if (types == 0) {
    for (int t : start) types = std::max(types, t);
    for (int t : goal) types = std::max(types, t);
  }
  for (int t : start)
    if (t < 1 || t > types) throw invalid_instance("type id out of range 1..k");
  for (int t : goal)
    if (t < 1 || t > types) throw invalid_instance("type id out of range 1..k");
  std::vector<int> count(static_cast<std::size_t>(types) + 1, 0);
  for (int t : start) ++count[t];
  for (int t : goal) --count[t];
  for (int c : count)
    if (c != 0) throw rearrange_error("TypeMismatch", "start and goal type multisets differ");
  if (!dims.contains(rest)) throw invalid_instance("rest cell outside the lattice");
  Instance inst;
  inst.dims = dims;
  inst.kind = InstanceKind::typed;
  inst.start = std::move(start);
  inst.goal = std::move(goal);
  inst.types = types;
  inst.rest = rest;
  return inst;
}

inline Instance make_typed(std::vector<int> start, std::vector<int> goal, int types = 0) {
  const int n = static_cast<int>(start.size());
  return make_typed(LatticeDims{n, 1}, std::move(start), std::move(goal), types);
}

// The instance whose start and goal are exchanged. A labeled instance is
// relabeled so that its goal stays the identity, which turns pi into pi^-1.
inline Instance reversed_instance(const Instance& inst) {
  if (inst.labeled()) {
    std::vector<int> inverse(inst.start.size());
    for (std::size_t i = 0; i < inst.start.size(); ++i)
      inverse[inst.start[i] - 1] = static_cast<int>(i) + 1;
    return make_labeled(inst.dims, std::move(inverse), inst.rest);
  }
  return make_typed(inst.dims, inst.goal, inst.start, inst.types, inst.rest);
}

inline int misplaced_count(const Instance& inst) {
  int count = 0;
  for (std::size_t i = 0; i < inst.start.size(); ++i) count += inst.start[i] != inst.goal[i];
  return count;
}

enum class Action { pick, swap, place };

inline const char* to_string(Action a) {
  switch (a) {
    case Action::pick: return "pick";
    case Action::swap: return "swap";
    case Action::place: return "place";
  }
  return "?";
}

struct PlanStep {
  int cell = 1;
  Action action = Action::pick;
  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct Plan {
  std::vector<PlanStep> steps;

  std::size_t size() const noexcept { return steps.size(); }
  bool empty() const noexcept { return steps.empty(); }
  void pick(int cell) { steps.push_back({cell, Action::pick}); }
  void swap(int cell) { steps.push_back({cell, Action::swap}); }
  void place(int cell) { steps.push_back({cell, Action::place}); }
  friend bool operator==(const Plan&, const Plan&) = default;
};

struct PlanCost {
  int picks = 0;
  double travel = 0.0;
  double total = 0.0;
};

struct SimulationResult {
  Configuration final_config;
  PlanCost cost;
  // Distance each item id was carried, indexed by item id. Only meaningful
  // per item for labeled instances; typed instances aggregate per type.
  std::vector<double> carried;
};

inline bool is_solved(std::span<const int> config, const Instance& inst) {
  return std::equal(config.begin(), config.end(), inst.goal.begin(), inst.goal.end());
}

// Executes the plan from an empty hand at the rest cell and returns to rest.
// Throws illegal_step on the first violated precondition.
inline SimulationResult simulate(const Instance& inst, const Plan& plan, const CostModel& model = {}) {
  const auto& dims = inst.dims;
  SimulationResult out;
  out.final_config = inst.start;
  auto& config = out.final_config;
  int max_item = 0;
  for (int v : config) max_item = std::max(max_item, v);
  out.carried.assign(static_cast<std::size_t>(max_item) + 1, 0.0);

  int held = 0;
  int pos = inst.rest;
  double travel = 0.0;
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const auto& step = plan.steps[s];
    if (!dims.contains(step.cell)) throw illegal_step(s, "cell outside the lattice");
    const double d = distance(dims, pos, step.cell, model);
    travel += d;
    if (held != 0) out.carried[held] += d;
    pos = step.cell;
    int& slot = config[step.cell - 1];
    switch (step.action) {
      case Action::pick:
        if (held != 0) throw illegal_step(s, "pick while holding an item");
        if (slot == 0) throw illegal_step(s, "pick at an empty cell");
        held = std::exchange(slot, 0);
        break;
      case Action::swap:
        if (held == 0) throw illegal_step(s, "swap with an empty hand");
        if (slot == 0) throw illegal_step(s, "swap at an empty cell");
        std::swap(held, slot);
        break;
      case Action::place:
        if (held == 0) throw illegal_step(s, "place with an empty hand");
        if (slot != 0) throw illegal_step(s, "place at an occupied cell");
        slot = std::exchange(held, 0);
        break;
    }
  }
  if (held != 0) throw rearrange_error("HandNotEmptyAtEnd", "plan ends while holding an item");
  travel += distance(dims, pos, inst.rest, model);
  out.cost.picks = static_cast<int>(plan.steps.size());
  out.cost.travel = travel;
  out.cost.total = out.cost.picks * model.pick_cost + travel * model.travel_cost;
  return out;
}

inline PlanCost plan_cost(const Plan& plan, const Instance& inst, const CostModel& model = {}) {
  return simulate(inst, plan, model).cost;
}

// simulate() plus the requirement that the plan reaches the goal.
inline PlanCost validate_plan(const Instance& inst, const Plan& plan, const CostModel& model = {}) {
  auto result = simulate(inst, plan, model);
  if (!is_solved(result.final_config, inst))
    throw rearrange_error("NotSolved", "plan does not reach the goal configuration");
  return result.cost;
}

// Reversed step order with pick and place exchanged. The result solves
// reversed_instance() at the same cost.
inline Plan reverse_plan(const Plan& plan) {
  Plan out;
  out.steps.reserve(plan.steps.size());
  for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it) {
    Action a = it->action;
    if (a == Action::pick) a = Action::place;
    else if (a == Action::place) a = Action::pick;
    out.steps.push_back({it->cell, a});
  }
  return out;
}

// Travel compares use an absolute tolerance; pick counts compare exactly.
inline constexpr double travel_tolerance = 1e-9;

}  // namespace lattice_rearrange
