#include "doctest.h"

#include "confound/discrete_model.hpp"
#include "confound/error.hpp"
#include "confound/io.hpp"
#include "confound/random_models.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace confound;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidConfig;
}

const DiscreteModel& cancellation() { return testing::model("cancellation"); }

}  // namespace

TEST_CASE("joint probability") {
  const Dag one = build_dag({"A", "Y"}, {}, "A", "Y");
  const DiscreteModel m = parse_model(R"({"states": {"A": ["0","1"], "Y": ["0","1"]},
    "cpts": {"A": {"parents": [], "table": {"": ["1/2","1/2"]}},
             "Y": {"parents": [], "table": {"": ["1","0"]}}}})",
                                      one);
  CHECK(joint_probability(m, m.assignment({{"A", "1"}, {"Y", "0"}})) == testing::q(1, 2));
  CHECK(kind_of([&] { joint_probability(m, m.assignment({{"A", "1"}})); }) == ErrorKind::IncompleteAssignment);
  CHECK(cond_expectation(m, m.dag().outcome(), m.assignment({{"A", "1"}})) == 0);

  const DiscreteModel& c = cancellation();
  CHECK(joint_probability(c, c.assignment({{"C", "1"}, {"A", "1"}, {"Y", "1"}})) == testing::q(3, 16));
  CHECK(c.joint().total() == 1);
}

TEST_CASE("cancellation model quantities") {
  const DiscreteModel& c = cancellation();
  const NodeIndex y = c.dag().outcome();
  CHECK(cond_expectation(c, y, c.assignment({{"A", "1"}})) == testing::q(4, 10));
  CHECK(cond_expectation(c, y, c.assignment({{"A", "0"}})) == testing::q(3, 10));
  CHECK(interventional_mean(c, 1) == testing::q(3, 10));
  CHECK(interventional_mean(c, 0) == testing::q(2, 10));
  CHECK(ace(c) == testing::q(1, 10));
  CHECK(bias(c, {}) == 0);
  CHECK(!cf_unconfounded(c, {}));
  CHECK(cf_unconfounded(c, c.dag().set_of({"C"})));
  CHECK(!ci_test(c, c.dag().set_of({"C"}), c.dag().set_of({"A"}), {}));
  const DiscreteModel done = intervene(c, c.dag().exposure(), 1);
  CHECK(cond_expectation(done, y) == testing::q(3, 10));
}

TEST_CASE("counterfactual joint") {
  const DiscreteModel& c = cancellation();
  const CounterfactualJoint j1 = cf_joint(c, 1);
  CHECK(j1.table.total() == 1);
  CHECK(cf_joint(c, 0).table.total() == 1);
}

TEST_CASE("confounder chain numbers") {
  const DiscreteModel& m = testing::model("confounder_chain");
  const Dag& d = m.dag();
  CHECK(ace(m) == testing::q(1, 4));
  CHECK(standardized_rd(m, d.set_of({"C1"})) == testing::q(1, 4));
  CHECK(standardized_rd(m, d.set_of({"C1", "C2"})) == testing::q(1, 4));
  CHECK(to_decimal(standardized_rd(m, {})) == "0.266");
  CHECK(to_decimal(standardized_rd(m, d.set_of({"C2"}))) == "0.269");
  CHECK(to_decimal(abs(bias(m, {}))) == "0.016");
  CHECK(to_decimal(abs(bias(m, d.set_of({"C2"})))) == "0.019");
  CHECK(bias(m, d.set_of({"C1"})) == 0);
}

TEST_CASE("zero probability and positivity errors") {
  const Dag d = build_dag({"C", "A", "Y"}, {{"C", "A"}, {"A", "Y"}, {"C", "Y"}}, "A", "Y");
  const DiscreteModel m = parse_model(R"({"states": {"C": ["0","1"], "A": ["0","1"], "Y": ["0","1"]},
    "cpts": {"C": {"parents": [], "table": {"": ["1/2","1/2"]}},
             "A": {"parents": ["C"], "table": {"0": ["1","0"], "1": ["1/2","1/2"]}},
             "Y": {"parents": ["A","C"], "table": {"0,0": ["1/2","1/2"], "0,1": ["1/2","1/2"],
                                                 "1,0": ["1/2","1/2"], "1,1": ["1/4","3/4"]}}}})",
                                      d);
  CHECK(kind_of([&] { cond_expectation(m, d.outcome(), m.assignment({{"A", "1"}, {"C", "0"}})); }) ==
        ErrorKind::ZeroProbabilityCondition);
  CHECK(kind_of([&] { standardized_rd(m, d.set_of({"C"})); }) == ErrorKind::PositivityViolation);
  CHECK(kind_of([&] { intervene(m, d.exposure(), 5); }) == ErrorKind::UnknownState);
}

TEST_CASE("exposure must be binary for effects") {
  const Dag d = build_dag({"A", "Y"}, {{"A", "Y"}}, "A", "Y");
  const DiscreteModel m = parse_model(R"({"states": {"A": ["0","1","2"], "Y": ["0","1"]},
    "cpts": {"A": {"parents": [], "table": {"": ["1/3","1/3","1/3"]}},
             "Y": {"parents": ["A"], "table": {"0": ["1/2","1/2"], "1": ["1/2","1/2"], "2": ["1","0"]}}}})",
                                      d);
  CHECK(kind_of([&] { ace(m); }) == ErrorKind::NonBinaryExposure);
  CHECK(kind_of([&] { cf_joint(m, 1); }) == ErrorKind::NonBinaryExposure);
}

TEST_CASE("no path gives zero effect; pure exposure-outcome model is unconfounded") {
  const Dag d = build_dag({"A", "Y"}, {}, "A", "Y");
  Rng rng(2);
  const DiscreteModel m = random_model(rng, d);
  CHECK(ace(m) == 0);
  const Dag e = build_dag({"A", "Y"}, {{"A", "Y"}}, "A", "Y");
  CHECK(cf_unconfounded(random_model(rng, e), {}));
}

TEST_CASE("model computations agree with brute-force sums") {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const Dag d = random_dag(rng, {2, 6, 0.45});
    const DiscreteModel m = random_model(rng, d, {t % 3 == 0 ? 3u : 2u, 64});
    CHECK(m.joint().total() == 1);
    if (m.cardinality(d.exposure()) != 2) continue;
    CHECK(ace(m) == oracle::ace(m));
    for (NodeSet s : oracle::subsets(d.covariate_pool())) {
      CHECK(standardized_rd(m, s) == oracle::standardized_rd(m, s));
      CHECK(cf_unconfounded(m, s) == oracle::cf_unconfounded(m, s));
      CHECK(ci_test(m, NodeSet{d.outcome()}, NodeSet{d.exposure()}, s) ==
            oracle::independent(m, NodeSet{d.outcome()}, NodeSet{d.exposure()}, s));
    }
  }
}
