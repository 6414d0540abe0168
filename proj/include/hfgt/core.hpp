#pragma once

// The hetero-functional ontology: operands (objects), processes (verbs),
// resources (subjects) and capabilities (resource-process pairs).

#include <optional>
#include <string>
#include <vector>

namespace hfgt {

struct Operand {
  std::string id;
  std::string name;
  std::string unit;

  bool operator==(const Operand&) const = default;
};

enum class ProcessKind { Transformation, RefinedTransportation };

/// One operand consumed or produced by a process, per unit of activity.
struct Flow {
  std::string operand;
  double coefficient = 1.0;

  bool operator==(const Flow&) const = default;
};

struct Process {
  std::string id;
  std::string name;
  ProcessKind kind = ProcessKind::Transformation;
  std::vector<Flow> inputs;
  std::vector<Flow> outputs;

  bool operator==(const Process&) const = default;
};

// Transformation resources (M) and independent buffers (B) are buffers;
// transportation resources (H) are not.
enum class ResourceKind { Transformation, IndependentBuffer, Transportation };

struct Resource {
  std::string id;
  std::string name;
  ResourceKind kind = ResourceKind::Transformation;

  bool is_buffer() const { return kind != ResourceKind::Transportation; }

  bool operator==(const Resource&) const = default;
};

/// Which buffer a capability pulls an input operand from (or pushes an
/// output operand into).
struct BufferAssignment {
  std::string operand;
  std::string buffer;

  bool operator==(const BufferAssignment&) const = default;
};

struct Capability {
  std::string id;
  std::string name;
  std::string resource;
  std::string process;
  std::vector<BufferAssignment> pull;  // one per process input
  std::vector<BufferAssignment> push;  // one per process output
  int duration = 0;                    // time steps; 0 completes within the step

  bool operator==(const Capability&) const = default;
};

/// Declaration order of every list is the canonical ordering used for all
/// matrix rows and columns downstream.
struct SystemModel {
  std::string name;
  std::vector<Operand> operands;
  std::vector<Resource> resources;
  std::vector<Process> processes;
  std::vector<Capability> capabilities;

  const Operand* find_operand(const std::string& id) const;
  const Resource* find_resource(const std::string& id) const;
  const Process* find_process(const std::string& id) const;
  const Capability* find_capability(const std::string& id) const;

  std::optional<std::size_t> operand_index(const std::string& id) const;

  bool operator==(const SystemModel&) const = default;
};

struct Violation {
  std::string path;     // e.g. "capability[c3].process"
  std::string element;  // id of the offending element, used for ordering
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// All invariant violations, sorted by (element id, path, message).
std::vector<Violation> validate(const SystemModel& model);

/// Throws InputError listing every violation when the model is invalid.
void require_valid(const SystemModel& model);

/// B_S: transformation resources, then independent buffers, each in
/// declaration order.
std::vector<std::string> buffer_set(const SystemModel& model);

std::string to_string(ProcessKind kind);
std::string to_string(ResourceKind kind);
std::optional<ProcessKind> parse_process_kind(const std::string& text);
std::optional<ResourceKind> parse_resource_kind(const std::string& text);

}  // namespace hfgt
