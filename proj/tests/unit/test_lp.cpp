#include "hfgt/error.hpp"
#include "hfgt/lp.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hfgt;

namespace {

LinearProgram single(double cost, Sense s, double rhs) {
  LinearProgram lp = LinearProgram::with_variables(1);
  lp.cost(0) = cost;
  lp.add_row(Vector::Ones(1), s, rhs, "only");
  return lp;
}

oracle::BasicLp economy_lp() {
  oracle::BasicLp b;
  b.cost.assign(6, 0.0);
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t r = 0; r < 2; ++r) b.cost[j] += testing::kPrices[r] * testing::kFStar[r][j];
  }
  for (std::size_t i = 0; i < 3; ++i) {
    oracle::Vec row(6);
    for (std::size_t j = 0; j < 6; ++j) row[j] = testing::kIStar[i][j] - testing::kAStar[i][j];
    b.rows.push_back(row);
    b.rels.push_back(oracle::Rel::Ge);
    b.rhs.push_back(testing::kDemand[i]);
  }
  for (std::size_t r = 0; r < 2; ++r) {
    b.rows.push_back(testing::kFStar[r]);
    b.rels.push_back(oracle::Rel::Le);
    b.rhs.push_back(testing::kAvailability[r]);
  }
  return b;
}

}  // namespace

TEST_CASE("one variable above a floor") {
  const LpResult r = solve_lp(single(1.0, Sense::GreaterEqual, 1.0));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.duals(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.slacks(0)) <= 1e-12);
}

TEST_CASE("the three-sector economy LP matches vertex enumeration") {
  const oracle::BasicLp b = economy_lp();
  const oracle::VertexResult truth = oracle::enumerate_vertices(b);
  REQUIRE(truth.feasible);
  const LinearProgram lp = testing::to_program(b);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(truth.objective).epsilon(1e-10));
  for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(r.x(static_cast<Index>(j)) - truth.x[j]) <= 1e-7);
  CHECK(certify(lp, r).passed());
}

TEST_CASE("random small LPs agree with vertex enumeration") {
  std::mt19937 rng(2024);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const oracle::BasicLp b = oracle::random_lp(rng, 3, 4);
    const oracle::VertexResult truth = oracle::enumerate_vertices(b);
    const LinearProgram lp = testing::to_program(b);
    const LpResult r = solve_lp(lp);
    CAPTURE(trial);
    REQUIRE(r.status != LpStatus::Unbounded);
    CHECK((r.status == LpStatus::Optimal) == truth.feasible);
    if (r.status == LpStatus::Optimal && truth.feasible) {
      ++optimal;
      CHECK(std::abs(r.objective - truth.objective) <= 1e-7);
      CHECK(certify(lp, r).passed());
    } else {
      ++infeasible;
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
}

TEST_CASE("certificate rejects perturbed solutions") {
  const LinearProgram lp = testing::to_program(economy_lp());
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  const Certificate good = certify(lp, r);
  CHECK(good.passed());
  CHECK(good.checks.size() >= 4);

  LpResult bad_x = r;
  bad_x.x(0) += 1e-3;
  CHECK(!certify(lp, bad_x).passed());

  LpResult bad_dual = r;
  bad_dual.duals(3) = 0.5;  // wrong sign on a <= row
  CHECK(!certify(lp, bad_dual).passed());
  CHECK(!certify(lp, bad_dual).summary().empty());
}

TEST_CASE("zero LP certifies trivially") {
  LinearProgram lp = LinearProgram::with_variables(3);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == 0.0);
  CHECK(r.x.isZero(0.0));
  CHECK(certify(lp, r).passed());
}

TEST_CASE("repeated solves are bit-identical") {
  const LinearProgram lp = testing::to_program(economy_lp());
  const LpResult a = solve_lp(lp);
  const LpResult b = solve_lp(lp);
  CHECK(a.x == b.x);
  CHECK(a.duals == b.duals);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("maximizing through a negated cost") {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.cost << -1.0, -1.0;
  Vector row(2);
  row << 1.0, 2.0;
  lp.add_row(row, Sense::LessEqual, 4.0);
  row << 3.0, 1.0;
  lp.add_row(row, Sense::LessEqual, 6.0);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-2.8).epsilon(1e-12));
  CHECK(r.x(0) == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(r.x(1) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(r.duals(0) <= 0.0);
  CHECK(r.duals(1) <= 0.0);
}

TEST_CASE("infeasible and unbounded statuses") {
  LinearProgram lp = LinearProgram::with_variables(1);
  lp.add_row(Vector::Ones(1), Sense::LessEqual, -1.0);
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);

  LinearProgram ray = LinearProgram::with_variables(2);
  ray.cost << -1.0, 0.0;
  Vector row(2);
  row << 1.0, -1.0;
  ray.add_row(row, Sense::LessEqual, 1.0);
  CHECK(solve_lp(ray).status == LpStatus::Unbounded);

  LinearProgram contradiction = LinearProgram::with_variables(2);
  row << 1.0, 1.0;
  contradiction.add_row(row, Sense::GreaterEqual, 3.0);
  contradiction.add_row(row, Sense::LessEqual, 2.0);
  CHECK(solve_lp(contradiction).status == LpStatus::Infeasible);
}

TEST_CASE("free and boxed variables") {
  LinearProgram lp = single(1.0, Sense::GreaterEqual, -3.0);
  lp.lower(0) = -kInfinity;
  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(-3.0).epsilon(1e-12));

  LinearProgram box = LinearProgram::with_variables(2);
  box.cost << -1.0, 1.0;
  box.upper(0) = 2.0;
  box.lower(1) = -1.5;
  box.upper(1) = 4.0;
  r = solve_lp(box);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.x(1) == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(r.objective == doctest::Approx(-3.5).epsilon(1e-12));

  LinearProgram fixed = LinearProgram::with_variables(1);
  fixed.cost(0) = 5.0;
  fixed.lower(0) = fixed.upper(0) = 0.75;
  r = solve_lp(fixed);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == 0.75);
}

TEST_CASE("free variable in an equality system") {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.lower(0) = -kInfinity;
  lp.cost << 0.0, 1.0;
  Vector row(2);
  row << 1.0, 1.0;
  lp.add_row(row, Sense::Equal, -2.0);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(r.x(1)) <= 1e-12);
  CHECK(certify(lp, r).passed());
}

TEST_CASE("rows with no coefficients") {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.cost << 1.0, 1.0;
  lp.add_row(Vector::Zero(2), Sense::GreaterEqual, -1.0);
  lp.add_row(Vector::Zero(2), Sense::Equal, 0.0);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.slacks(0) == doctest::Approx(1.0));

  LinearProgram bad = LinearProgram::with_variables(2);
  bad.add_row(Vector::Zero(2), Sense::GreaterEqual, 1.0);
  CHECK(solve_lp(bad).status == LpStatus::Infeasible);
}

TEST_CASE("Bland's rule terminates on a cycling example") {
  LinearProgram lp = LinearProgram::with_variables(4);
  lp.cost << -0.75, 20.0, -0.5, 6.0;
  Matrix a(3, 4);
  a << 0.25, -8.0, -1.0, 9.0,  //
      0.5, -12.0, -0.5, 3.0,   //
      0.0, 0.0, 1.0, 0.0;
  const Vector b = Vector::Map(std::vector<double>{0.0, 0.0, 1.0}.data(), 3);
  for (Index i = 0; i < 3; ++i) lp.add_row(a.row(i).transpose(), Sense::LessEqual, b(i));
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.x(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("duals explain the cost at the optimum") {
  const LinearProgram lp = testing::to_program(economy_lp());
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  const Vector rebuilt = lp.rows.transpose() * r.duals + r.reduced_costs;
  CHECK((rebuilt - lp.cost).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(std::abs(lp.rhs.dot(r.duals) - r.objective) <= 1e-8);
}

TEST_CASE("dump lists variables and rows") {
  LinearProgram lp = single(2.0, Sense::GreaterEqual, 1.0);
  lp.var_labels = {"alpha"};
  const std::string text = dump_lp(lp);
  CHECK(text.find("VARIABLES 1") != std::string::npos);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("ROWS 1") != std::string::npos);
  CHECK(text.find("only") != std::string::npos);
  CHECK(text.find(">= 1") != std::string::npos);
}

TEST_CASE("malformed programs are input errors") {
  LinearProgram lp = LinearProgram::with_variables(2);
  lp.lower(0) = 3.0;
  lp.upper(0) = 1.0;
  CHECK_THROWS_AS(solve_lp(lp), InputError);

  lp = LinearProgram::with_variables(2);
  lp.cost(1) = std::nan("");
  CHECK_THROWS_AS(solve_lp(lp), InputError);

  lp = LinearProgram::with_variables(2);
  CHECK_THROWS_AS(lp.add_row(Vector::Ones(3), Sense::Equal, 0.0), InputError);
  lp.rhs = Vector::Ones(1);
  CHECK_THROWS_AS(lp.check(), InputError);

  CHECK(to_string(Sense::GreaterEqual) == ">=");
  CHECK(to_string(LpStatus::Unbounded) == "unbounded");
}
