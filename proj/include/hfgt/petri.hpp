#pragma once

// Discrete-time state transition functions of the engineering system net
// (places = (operand, buffer) pairs, transitions = capabilities) and of
// per-operand nets. Firings are nonnegative reals (fluid semantics).
//
//   Q_B[k+1] = Q_B[k] + M+ U+[k] dT - M- U-[k] dT
//   Q_E[k+1] = Q_E[k] - U+[k] dT + U-[k] dT

#include "hfgt/core.hpp"
#include "hfgt/incidence.hpp"
#include "hfgt/types.hpp"

#include <string>
#include <vector>

namespace hfgt {

/// Q = [Q_B; Q_E]. For an operand net q_b holds the operand's state places.
struct Marking {
  Vector q_b;
  Vector q_e;

  bool operator==(const Marking& other) const;
};

struct EngineeringSystemNet {
  IncidenceMatrices incidence;
  std::vector<int> durations;  // k_d per capability
  double dt = 1.0;

  static EngineeringSystemNet from_model(const SystemModel& model, double dt = 1.0);

  Index places() const { return incidence.m_plus.rows(); }
  Index transitions() const { return incidence.m_plus.cols(); }
  Marking zero_marking() const;
  void check() const;
};

struct OperandNet {
  std::string operand;
  Labels places;
  Labels transitions;
  Matrix m_plus;  // |S_l| x |E_l|
  Matrix m_minus;
  Marking marking;
  std::vector<int> durations;
  double dt = 1.0;

  Index num_places() const { return m_plus.rows(); }
  Index num_transitions() const { return m_plus.cols(); }
  void check() const;
};

Marking step_esn(const EngineeringSystemNet& net, const Marking& marking, const Vector& u_minus, const Vector& u_plus);

Marking step_operand_net(const OperandNet& net, const Marking& marking, const Vector& u_minus, const Vector& u_plus);

/// An input firing whose completion step lies past the horizon.
struct DroppedFiring {
  Index step = 0;        // 0-based step of the input firing
  Index transition = 0;
  double amount = 0.0;
};

struct Trajectory {
  std::vector<Marking> markings;  // K + 1 markings; markings[0] is the initial one
  Matrix u_minus;                 // K x |E|
  Matrix u_plus;                  // K x |E|, derived from durations
  std::vector<DroppedFiring> dropped;
};

/// Output firings follow input firings after the transition's duration:
/// U+[k + k_d] = U-[k]. Row k of the schedule is U-[k] (0-based).
Trajectory simulate(const EngineeringSystemNet& net, const Marking& initial, const Matrix& schedule);

Trajectory simulate(const OperandNet& net, const Matrix& schedule);

/// Graphviz description: places as circles colored by operand, capabilities
/// as boxes, arcs weighted by the incidence coefficients.
std::string to_dot(const EngineeringSystemNet& net);

}  // namespace hfgt
