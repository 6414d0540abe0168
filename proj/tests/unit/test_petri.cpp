#include "hfgt/error.hpp"
#include "hfgt/io/xml.hpp"
#include "hfgt/petri.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace hfgt;
using testing::from_vec;
using testing::to_rows;
using testing::to_vec;

namespace {

EngineeringSystemNet economy_net() {
  return EngineeringSystemNet::from_model(load_system_xml(testing::data_path("economy.xml")));
}

// Two tanks and a pump: p moves water from a to b, taking `duration` steps.
SystemModel pump(int duration) {
  SystemModel m;
  m.operands = {{"w", "", "m3"}};
  m.resources = {{"a", "", ResourceKind::IndependentBuffer},
                 {"b", "", ResourceKind::IndependentBuffer},
                 {"pump", "", ResourceKind::Transformation}};
  m.processes = {{"move", "", ProcessKind::Transformation, {{"w", 1.0}}, {{"w", 1.0}}}};
  m.capabilities = {{"p", "", "pump", "move", {{"w", "a"}}, {{"w", "b"}}, duration}};
  return m;
}

OperandNet chain(int states) {
  OperandNet net;
  net.operand = "w";
  const int transitions = states - 1;
  net.m_plus = Matrix::Zero(states, transitions);
  net.m_minus = Matrix::Zero(states, transitions);
  for (int t = 0; t < transitions; ++t) {
    net.m_minus(t, t) = 1.0;
    net.m_plus(t + 1, t) = 1.0;
    net.transitions.push_back("t" + std::to_string(t));
  }
  for (int s = 0; s < states; ++s) net.places.push_back("s" + std::to_string(s));
  net.marking = {Vector::Zero(states), Vector::Zero(transitions)};
  net.marking.q_b(0) = 1.0;
  net.durations.assign(static_cast<std::size_t>(transitions), 0);
  return net;
}

}  // namespace

TEST_CASE("no firing leaves the marking unchanged") {
  const EngineeringSystemNet net = economy_net();
  Marking q{Vector::LinSpaced(5, -3.0, 7.0), Vector::LinSpaced(6, 0.0, 2.5)};
  const Marking next = step_esn(net, q, Vector::Zero(6), Vector::Zero(6));
  CHECK(next == q);
}

TEST_CASE("one economy step matches a hand computation") {
  const EngineeringSystemNet net = economy_net();
  Marking q = net.zero_marking();
  q.q_b << -20, -25, -22, 540, 342;
  const Vector x = from_vec(testing::kReferenceX);
  const Marking next = step_esn(net, q, x, x);

  oracle::Vec qb = to_vec(q.q_b), qe = to_vec(q.q_e);
  oracle::hand_step(to_rows(net.incidence.m_plus), to_rows(net.incidence.m_minus), 1.0, qb, qe, to_vec(x), to_vec(x));
  for (Index i = 0; i < 5; ++i) CHECK(std::abs(next.q_b(i) - qb[static_cast<std::size_t>(i)]) <= 1e-12);
  CHECK(next.q_e == q.q_e);
  for (Index i = 0; i < 3; ++i) CHECK(next.q_b(i) >= -1e-2);
  CHECK(next.q_b(3) == doctest::Approx(540.0 - 497.9241).epsilon(1e-4));
  CHECK(std::abs(next.q_b(4)) <= 1e-2);
}

TEST_CASE("a started but unfinished firing sits in Q_E") {
  const EngineeringSystemNet net = economy_net();
  Vector u_minus = Vector::Zero(6);
  u_minus(2) = 4.0;
  const Marking next = step_esn(net, net.zero_marking(), u_minus, Vector::Zero(6));
  CHECK(next.q_e(2) == 4.0);
  CHECK(next.q_e.sum() == 4.0);
  CHECK(next.q_b(3) == -1.9 * 4.0);
}

TEST_CASE("zero schedule gives a constant trajectory") {
  const EngineeringSystemNet net = economy_net();
  Marking q = net.zero_marking();
  q.q_b(0) = 3.0;
  const Trajectory t = simulate(net, q, Matrix::Zero(4, 6));
  REQUIRE(t.markings.size() == 5);
  for (const auto& m : t.markings) CHECK(m == q);
  CHECK(t.dropped.empty());
}

TEST_CASE("two-step durations delay the output") {
  EngineeringSystemNet net = EngineeringSystemNet::from_model(pump(2));
  Marking q = net.zero_marking();
  const Index a = *net.incidence.row_of("w", "a");
  const Index b = *net.incidence.row_of("w", "b");
  q.q_b(a) = 5.0;
  Matrix schedule = Matrix::Zero(4, 1);
  schedule(0, 0) = 2.0;
  schedule(1, 0) = 1.0;
  const Trajectory t = simulate(net, q, schedule);

  CHECK(t.u_plus(2, 0) == 2.0);
  CHECK(t.u_plus(3, 0) == 1.0);
  CHECK(t.u_plus.col(0).head(2).isZero(0.0));
  // Hand trace of the pump.
  const double qa[] = {5, 3, 2, 2, 2};
  const double qb[] = {0, 0, 0, 2, 3};
  const double qe[] = {0, 2, 3, 1, 0};
  for (std::size_t k = 0; k < 5; ++k) {
    CAPTURE(k);
    CHECK(t.markings[k].q_b(a) == qa[k]);
    CHECK(t.markings[k].q_b(b) == qb[k]);
    CHECK(t.markings[k].q_e(0) == qe[k]);
  }
  CHECK(t.dropped.empty());
}

TEST_CASE("firings finishing past the horizon are reported") {
  EngineeringSystemNet net = EngineeringSystemNet::from_model(pump(2));
  Matrix schedule = Matrix::Zero(3, 1);
  schedule(1, 0) = 1.5;
  schedule(2, 0) = 0.5;
  const Trajectory t = simulate(net, net.zero_marking(), schedule);
  REQUIRE(t.dropped.size() == 2);
  CHECK(t.dropped[0].step == 1);
  CHECK(t.dropped[0].amount == 1.5);
  CHECK(t.dropped[1].step == 2);
  CHECK(t.markings.back().q_e(0) == 2.0);
}

TEST_CASE("bad firings and shapes are input errors") {
  const EngineeringSystemNet net = economy_net();
  Vector neg = Vector::Zero(6);
  neg(1) = -1.0;
  CHECK_THROWS_AS(step_esn(net, net.zero_marking(), neg, Vector::Zero(6)), InputError);
  CHECK_THROWS_AS(step_esn(net, net.zero_marking(), Vector::Zero(5), Vector::Zero(6)), InputError);
  CHECK_THROWS_AS(step_esn(net, {Vector::Zero(4), Vector::Zero(6)}, Vector::Zero(6), Vector::Zero(6)), InputError);
  CHECK_THROWS_AS(simulate(net, net.zero_marking(), Matrix::Zero(2, 5)), InputError);
  EngineeringSystemNet bad = net;
  bad.dt = 0.0;
  CHECK_THROWS_AS(simulate(bad, net.zero_marking(), Matrix::Zero(1, 6)), InputError);
  bad = net;
  bad.durations[0] = -1;
  CHECK_THROWS_AS(bad.check(), InputError);
}

TEST_CASE("operand nets walk a state chain") {
  OperandNet two = chain(2);
  Marking m = step_operand_net(two, two.marking, Vector::Ones(1), Vector::Ones(1));
  CHECK(m.q_b(0) == 0.0);
  CHECK(m.q_b(1) == 1.0);

  OperandNet three = chain(3);
  three.durations = {1, 0};
  Matrix schedule = Matrix::Zero(3, 2);
  schedule(0, 0) = 1.0;
  schedule(1, 1) = 1.0;
  const Trajectory t = simulate(three, schedule);
  CHECK(t.markings[1].q_b == Vector::Map(std::vector<double>{0, 0, 0}.data(), 3));
  CHECK(t.markings[1].q_e(0) == 1.0);
  CHECK(t.markings[2].q_b == Vector::Map(std::vector<double>{0, 0, 1}.data(), 3));
  CHECK(t.markings[3].q_e.isZero(0.0));

  OperandNet broken = chain(3);
  broken.places.pop_back();
  CHECK_THROWS_AS(broken.check(), InputError);
}

TEST_CASE("pending firings are conserved on random nets") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_int_distribution<int> dur(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    EngineeringSystemNet net = economy_net();
    for (int& d : net.durations) d = dur(rng);
    const Index horizon = 5 + trial;
    Matrix schedule(horizon, 6);
    for (Index k = 0; k < horizon; ++k) {
      for (Index e = 0; e < 6; ++e) schedule(k, e) = u(rng);
    }
    const Trajectory t = simulate(net, net.zero_marking(), schedule);
    for (Index k = 0; k <= horizon; ++k) {
      const Vector expected = (t.u_minus.topRows(k).colwise().sum() - t.u_plus.topRows(k).colwise().sum()).transpose();
      CHECK((t.markings[static_cast<std::size_t>(k)].q_e - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("state transitions are linear in the firings") {
  const EngineeringSystemNet net = economy_net();
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  Vector a(6), b(6);
  for (Index e = 0; e < 6; ++e) {
    a(e) = u(rng);
    b(e) = u(rng);
  }
  const Marking zero = net.zero_marking();
  const Marking ma = step_esn(net, zero, a, a);
  const Marking mb = step_esn(net, zero, b, Vector::Zero(6));
  const Marking mab = step_esn(net, zero, a + b, a);
  CHECK((mab.q_b - ma.q_b - mb.q_b).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((mab.q_e - ma.q_e - mb.q_e).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(step_esn(net, zero, a, b) == step_esn(net, zero, a, b));
}

TEST_CASE("time step scales the flow") {
  EngineeringSystemNet net = economy_net();
  net.dt = 0.5;
  const Vector x = Vector::Ones(6);
  const Marking half = step_esn(net, net.zero_marking(), x, Vector::Zero(6));
  CHECK(half.q_e == Vector::Constant(6, 0.5));
  CHECK(half.q_b(3) == doctest::Approx(-0.5 * (2.1 + 3.2 + 1.9 + 1.2 + 0.8 + 1.4)).epsilon(1e-14));
}

TEST_CASE("graphviz output names places and capabilities") {
  const std::string dot = to_dot(economy_net());
  CHECK(dot.rfind("digraph esn {", 0) == 0);
  CHECK(dot.find("Capital@TheEconomy") != std::string::npos);
  CHECK(dot.find("Economy-ProduceManProd") != std::string::npos);
  CHECK(dot.find("label=\"0.35\"") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
}
