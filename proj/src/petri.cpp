#include "hfgt/petri.hpp"

#include "hfgt/error.hpp"
#include "hfgt/io/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hfgt {

namespace {

void require_firing(const Vector& u, Index n, const char* which) {
  if (u.size() != n) {
    throw InputError(std::string(which) + " firing vector has length " + std::to_string(u.size()) + ", expected " +
                     std::to_string(n));
  }
  if (!u.allFinite() || (u.array() < 0.0).any()) {
    throw InputError(std::string(which) + " firing vector must be finite and >= 0");
  }
}

Marking step(const Matrix& m_plus, const Matrix& m_minus, double dt, const Marking& q, const Vector& u_minus,
             const Vector& u_plus) {
  if (q.q_b.size() != m_plus.rows() || q.q_e.size() != m_plus.cols()) {
    throw InputError("marking shape does not match the net");
  }
  require_firing(u_minus, m_plus.cols(), "input");
  require_firing(u_plus, m_plus.cols(), "output");
  Marking next;
  next.q_b = q.q_b + m_plus * u_plus * dt - m_minus * u_minus * dt;
  next.q_e = q.q_e - u_plus * dt + u_minus * dt;
  return next;
}

void check_durations(const std::vector<int>& durations, Index transitions) {
  if (static_cast<Index>(durations.size()) != transitions) throw InputError("one duration per transition is required");
  if (std::any_of(durations.begin(), durations.end(), [](int d) { return d < 0; })) {
    throw InputError("durations must be >= 0");
  }
}

Trajectory run(const Matrix& m_plus, const Matrix& m_minus, double dt, const std::vector<int>& durations,
               const Marking& initial, const Matrix& schedule) {
  const Index n = m_plus.cols();
  if (schedule.cols() != n) throw InputError("schedule must have one column per transition");
  if (!schedule.allFinite() || (schedule.array() < 0.0).any()) throw InputError("schedule entries must be finite and >= 0");
  const Index horizon = schedule.rows();

  Trajectory out;
  out.u_minus = schedule;
  out.u_plus = Matrix::Zero(horizon, n);
  for (Index k = 0; k < horizon; ++k) {
    for (Index e = 0; e < n; ++e) {
      const double u = schedule(k, e);
      if (u == 0.0) continue;
      const Index done = k + durations[static_cast<std::size_t>(e)];
      if (done < horizon) {
        out.u_plus(done, e) += u;
      } else {
        out.dropped.push_back({k, e, u});
      }
    }
  }
  out.markings.reserve(static_cast<std::size_t>(horizon + 1));
  out.markings.push_back(initial);
  for (Index k = 0; k < horizon; ++k) {
    out.markings.push_back(step(m_plus, m_minus, dt, out.markings.back(), out.u_minus.row(k).transpose(),
                                out.u_plus.row(k).transpose()));
  }
  return out;
}

}  // namespace

bool Marking::operator==(const Marking& other) const {
  return q_b.size() == other.q_b.size() && q_e.size() == other.q_e.size() && (q_b.array() == other.q_b.array()).all() &&
         (q_e.array() == other.q_e.array()).all();
}

EngineeringSystemNet EngineeringSystemNet::from_model(const SystemModel& model, double dt) {
  EngineeringSystemNet net;
  net.incidence = build_incidence(model);
  for (const auto& c : model.capabilities) net.durations.push_back(c.duration);
  net.dt = dt;
  return net;
}

Marking EngineeringSystemNet::zero_marking() const {
  return {Vector::Zero(places()), Vector::Zero(transitions())};
}

void EngineeringSystemNet::check() const {
  check_consistent(incidence);
  check_durations(durations, transitions());
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time step must be positive");
}

void OperandNet::check() const {
  if (m_plus.rows() != m_minus.rows() || m_plus.cols() != m_minus.cols()) {
    throw InputError("operand net '" + operand + "': M+ and M- shapes differ");
  }
  if (static_cast<Index>(places.size()) != m_plus.rows() || static_cast<Index>(transitions.size()) != m_plus.cols()) {
    throw InputError("operand net '" + operand + "': label counts do not match incidence shape");
  }
  if (marking.q_b.size() != m_plus.rows() || marking.q_e.size() != m_plus.cols() || !marking.q_b.allFinite() ||
      !marking.q_e.allFinite()) {
    throw InputError("operand net '" + operand + "': marking shape mismatch or non-finite");
  }
  check_durations(durations, m_plus.cols());
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time step must be positive");
}

Marking step_esn(const EngineeringSystemNet& net, const Marking& marking, const Vector& u_minus, const Vector& u_plus) {
  return step(net.incidence.m_plus, net.incidence.m_minus, net.dt, marking, u_minus, u_plus);
}

Marking step_operand_net(const OperandNet& net, const Marking& marking, const Vector& u_minus, const Vector& u_plus) {
  return step(net.m_plus, net.m_minus, net.dt, marking, u_minus, u_plus);
}

Trajectory simulate(const EngineeringSystemNet& net, const Marking& initial, const Matrix& schedule) {
  net.check();
  return run(net.incidence.m_plus, net.incidence.m_minus, net.dt, net.durations, initial, schedule);
}

Trajectory simulate(const OperandNet& net, const Matrix& schedule) {
  net.check();
  return run(net.m_plus, net.m_minus, net.dt, net.durations, net.marking, schedule);
}

std::string to_dot(const EngineeringSystemNet& net) {
  static constexpr std::array<const char*, 8> palette = {"#8c564b", "#ff7f0e", "#2ca02c", "#7f7f7f",
                                                         "#1f77b4", "#9467bd", "#d62728", "#17becf"};
  const auto& inc = net.incidence;
  std::ostringstream out;
  out << "digraph esn {\n  rankdir=LR;\n";
  for (Index r = 0; r < inc.rows(); ++r) {
    const auto operand = static_cast<std::size_t>(r) / inc.buffers.size();
    out << "  \"p" << r << "\" [shape=circle, style=filled, fillcolor=\"" << palette[operand % palette.size()]
        << "\", label=\"" << inc.place_label(r) << "\", operand=\"" << inc.operands[operand] << "\"];\n";
  }
  for (Index c = 0; c < inc.cols(); ++c) {
    out << "  \"t" << c << "\" [shape=box, label=\"" << inc.capabilities[static_cast<std::size_t>(c)] << "\"];\n";
  }
  for (Index c = 0; c < inc.cols(); ++c) {
    for (Index r = 0; r < inc.rows(); ++r) {
      if (inc.m_minus(r, c) != 0.0) {
        out << "  \"p" << r << "\" -> \"t" << c << "\" [label=\"" << format_number(inc.m_minus(r, c)) << "\"];\n";
      }
      if (inc.m_plus(r, c) != 0.0) {
        out << "  \"t" << c << "\" -> \"p" << r << "\" [label=\"" << format_number(inc.m_plus(r, c)) << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace hfgt
