#include "hfgt/core.hpp"

#include "hfgt/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace hfgt {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, const std::string& id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

template <typename T>
void check_ids(const std::vector<T>& items, const std::string& kind, std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& id = items[i].id;
    if (id.empty()) {
      out.push_back({kind + "[#" + std::to_string(i) + "].id", "", "empty id"});
    } else if (!seen.insert(id).second) {
      out.push_back({kind + "[" + id + "].id", id, "duplicate " + kind + " id '" + id + "'"});
    }
  }
}

void check_flows(const Process& p, const std::vector<Flow>& flows, const char* side,
                 const SystemModel& model, std::vector<Violation>& out) {
  for (const auto& f : flows) {
    const std::string path = "process[" + p.id + "]." + side + "[" + f.operand + "]";
    if (!model.find_operand(f.operand)) {
      out.push_back({path, p.id, "unknown operand '" + f.operand + "'"});
    }
    if (!std::isfinite(f.coefficient) || f.coefficient < 0.0) {
      std::ostringstream msg;
      msg << "coefficient must be finite and >= 0, got " << f.coefficient;
      out.push_back({path + ".coeff", p.id, msg.str()});
    }
  }
}

void check_assignments(const Capability& c, const std::vector<BufferAssignment>& assigned,
                       const std::vector<Flow>& flows, const char* side, const SystemModel& model,
                       std::vector<Violation>& out) {
  const std::string base = "capability[" + c.id + "]." + side;
  for (const auto& a : assigned) {
    const std::string path = base + "[" + a.operand + "]";
    const Resource* r = model.find_resource(a.buffer);
    if (!r) {
      out.push_back({path, c.id, "unknown buffer '" + a.buffer + "'"});
    } else if (!r->is_buffer()) {
      out.push_back({path, c.id, "resource '" + a.buffer + "' is not a buffer"});
    }
    bool listed = std::any_of(flows.begin(), flows.end(),
                              [&](const Flow& f) { return f.operand == a.operand; });
    if (!listed) {
      out.push_back({path, c.id, "operand '" + a.operand + "' is not a " +
                                     std::string(side == std::string("pull") ? "input" : "output") +
                                     " of process '" + c.process + "'"});
    }
  }
  for (const auto& f : flows) {
    auto n = std::count_if(assigned.begin(), assigned.end(),
                           [&](const BufferAssignment& a) { return a.operand == f.operand; });
    if (n == 0) {
      out.push_back({base + "[" + f.operand + "]", c.id, "no buffer assigned for operand '" + f.operand + "'"});
    } else if (n > 1) {
      out.push_back({base + "[" + f.operand + "]", c.id,
                     "operand '" + f.operand + "' assigned more than once"});
    }
  }
}

}  // namespace

const Operand* SystemModel::find_operand(const std::string& id) const { return find_by_id(operands, id); }
const Resource* SystemModel::find_resource(const std::string& id) const { return find_by_id(resources, id); }
const Process* SystemModel::find_process(const std::string& id) const { return find_by_id(processes, id); }
const Capability* SystemModel::find_capability(const std::string& id) const {
  return find_by_id(capabilities, id);
}

std::optional<std::size_t> SystemModel::operand_index(const std::string& id) const {
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (operands[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<Violation> validate(const SystemModel& model) {
  std::vector<Violation> out;
  check_ids(model.operands, "operand", out);
  check_ids(model.resources, "resource", out);
  check_ids(model.processes, "process", out);
  check_ids(model.capabilities, "capability", out);

  for (const auto& o : model.operands) {
    if (o.unit.empty()) out.push_back({"operand[" + o.id + "].unit", o.id, "unit must be non-empty"});
  }
  for (const auto& p : model.processes) {
    if (p.outputs.empty()) out.push_back({"process[" + p.id + "].outputs", p.id, "process has no outputs"});
    check_flows(p, p.inputs, "input", model, out);
    check_flows(p, p.outputs, "output", model, out);
  }
  if (model.capabilities.empty()) {
    out.push_back({"capabilities", "", "model must declare at least one capability"});
  }
  if (buffer_set(model).empty()) {
    out.push_back({"resources", "", "model has no buffers (transformation or independent-buffer resources)"});
  }
  for (const auto& c : model.capabilities) {
    const std::string base = "capability[" + c.id + "]";
    if (!model.find_resource(c.resource)) {
      out.push_back({base + ".resource", c.id, "unknown resource '" + c.resource + "'"});
    }
    const Process* p = model.find_process(c.process);
    if (!p) {
      out.push_back({base + ".process", c.id, "unknown process '" + c.process + "'"});
    } else {
      check_assignments(c, c.pull, p->inputs, "pull", model, out);
      check_assignments(c, c.push, p->outputs, "push", model, out);
    }
    if (c.duration < 0) out.push_back({base + ".duration", c.id, "duration must be >= 0"});
  }

  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.element, a.path, a.message) < std::tie(b.element, b.path, b.message);
  });
  return out;
}

void require_valid(const SystemModel& model) {
  auto violations = validate(model);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid system model '" << model.name << "':";
  for (const auto& v : violations) msg << "\n  " << v.path << ": " << v.message;
  throw InputError(msg.str());
}

std::vector<std::string> buffer_set(const SystemModel& model) {
  std::vector<std::string> out;
  for (const auto& r : model.resources) {
    if (r.kind == ResourceKind::Transformation) out.push_back(r.id);
  }
  for (const auto& r : model.resources) {
    if (r.kind == ResourceKind::IndependentBuffer) out.push_back(r.id);
  }
  return out;
}

std::string to_string(ProcessKind kind) {
  return kind == ProcessKind::Transformation ? "transformation" : "refined-transportation";
}

std::string to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Transformation: return "transformation";
    case ResourceKind::IndependentBuffer: return "independent-buffer";
    case ResourceKind::Transportation: return "transportation";
  }
  return "transformation";
}

std::optional<ProcessKind> parse_process_kind(const std::string& text) {
  if (text == "transformation") return ProcessKind::Transformation;
  if (text == "refined-transportation") return ProcessKind::RefinedTransportation;
  return std::nullopt;
}

std::optional<ResourceKind> parse_resource_kind(const std::string& text) {
  if (text == "transformation") return ResourceKind::Transformation;
  if (text == "independent-buffer") return ResourceKind::IndependentBuffer;
  if (text == "transportation") return ResourceKind::Transportation;
  return std::nullopt;
}

}  // namespace hfgt
