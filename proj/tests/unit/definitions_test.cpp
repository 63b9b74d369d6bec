#include "doctest.h"

#include "confound/definitions.hpp"
#include "confound/error.hpp"
#include "confound/random_models.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace confound;

namespace {

NodeIndex at(const Dag& d, const char* name) { return d.index(name); }

bool d1_graph_oracle(const Dag& d, NodeIndex c) {
  const NodeSet a{d.exposure()}, y{d.outcome()}, cs{c};
  for (NodeSet x : oracle::subsets(d.covariate_pool().without(c)))
    if (!oracle::d_separated(d, cs, a, x) && !oracle::d_separated(d, cs, y, x | a)) return true;
  return false;
}

bool d1_model_oracle(const DiscreteModel& m, NodeIndex c) {
  const Dag& d = m.dag();
  const NodeSet a{d.exposure()}, y{d.outcome()}, cs{c};
  for (NodeSet x : oracle::subsets(d.covariate_pool().without(c)))
    if (!oracle::independent(m, cs, a, x) && !oracle::independent(m, cs, y, x | a)) return true;
  return false;
}

bool d2_oracle(const Dag& d, NodeIndex c) {
  for (const oracle::RawPath& p : oracle::all_paths(d, d.exposure(), d.outcome())) {
    if (p.front().arrow_into_next) continue;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
      if (p[i].node == c && !(p[i - 1].arrow_into_next && !p[i].arrow_into_next)) return true;
  }
  return false;
}

bool d5_oracle(const DiscreteModel& m, NodeIndex c) {
  const Rational ace = oracle::ace(m);
  for (NodeSet x : oracle::subsets(m.dag().covariate_pool().without(c)))
    if (abs(oracle::standardized_rd(m, x.with(c)) - ace) < abs(oracle::standardized_rd(m, x) - ace)) return true;
  return false;
}

bool d6_oracle(const DiscreteModel& m, NodeIndex c) {
  for (NodeSet x : oracle::subsets(m.dag().covariate_pool().without(c)))
    if (oracle::standardized_rd(m, x.with(c)) != oracle::standardized_rd(m, x)) return true;
  return false;
}

}  // namespace

TEST_CASE("definition ids") {
  CHECK(parse_definition("D4") == DefinitionId::D4);
  CHECK(parse_definition("6") == DefinitionId::D6);
  CHECK_THROWS_AS(parse_definition("D7"), Error);
  CHECK(to_string(DefinitionId::D2) == "D2");
  CHECK(to_string(Implication{DefinitionId::D4, DefinitionId::D2}) == "D4=>D2");
}

TEST_CASE("D1 graphical") {
  const Dag& m = testing::dag("m_bias");
  const SetVerdict c3 = classify_d1_graphical(m, at(m, "C3"));
  CHECK(c3.holds);
  CHECK(m.format_set(*c3.witness) == "{}");
  const SetVerdict c1 = classify_d1_graphical(m, at(m, "C1"));
  CHECK(c1.holds);
  CHECK(m.format_set(*c1.witness) == "{C3}");
  const Dag iso = build_dag({"Z", "A", "Y"}, {{"A", "Y"}}, "A", "Y");
  CHECK(!classify_d1_graphical(iso, at(iso, "Z")).holds);
  CHECK_THROWS_AS(classify_d1_graphical(m, m.exposure()), Error);
}

TEST_CASE("D1 numeric") {
  const DiscreteModel& c = testing::model("cancellation");
  const SetVerdict v = classify_d1_numeric(c, at(c.dag(), "C"));
  CHECK(v.holds);
  CHECK(v.witness->empty());
  const DiscreteModel& m = testing::model("m_bias");
  CHECK(classify_d1_numeric(m, at(m.dag(), "C3")).holds);
  const Dag iso = build_dag({"Z", "A", "Y"}, {{"A", "Y"}}, "A", "Y");
  Rng rng(1);
  CHECK(!classify_d1_numeric(random_model(rng, iso), at(iso, "Z")).holds);
}

TEST_CASE("D2") {
  const Dag& chain = testing::dag("confounder_chain");
  const PathVerdict v = classify_d2(chain, at(chain, "C2"));
  CHECK(v.holds);
  CHECK(format_path(chain, *v.witness) == "A<-C2<-C1->Y");
  const Dag& m = testing::dag("m_bias");
  CHECK(!classify_d2(m, at(m, "C3")).holds);
  CHECK(classify_d2(m, at(m, "C1")).holds);
  const Dag& proxy = testing::dag("proxy_confounder");
  CHECK(!classify_d2(proxy, at(proxy, "C2")).holds);
}

TEST_CASE("D3 and D4") {
  const Dag& alt = testing::dag("alternative_sets");
  CHECK(!classify_d3(alt, at(alt, "C1")));
  CHECK(!classify_d3(alt, at(alt, "C2")));
  const SetVerdict d4 = classify_d4(alt, at(alt, "C2"));
  CHECK(d4.holds);
  CHECK(alt.format_set(*d4.witness) == "{C2}");
  const Dag collapsed = build_dag({"C1", "A", "Y"}, {{"C1", "A"}, {"C1", "Y"}, {"A", "Y"}}, "A", "Y");
  CHECK(classify_d3(collapsed, at(collapsed, "C1")));
  const Dag& m = testing::dag("m_bias");
  for (const char* v : {"C1", "C2", "C3"}) CHECK(!classify_d3(m, at(m, v)));
  CHECK(!classify_d4(m, at(m, "C3")).holds);
  const Dag& chain = testing::dag("confounder_chain");
  CHECK(!classify_d4(chain, at(chain, "C2")).holds);
  CHECK(!classify_d3(MinimalSetCatalog{}, 0));
}

TEST_CASE("D5 and D6") {
  const DiscreteModel& c = testing::model("cancellation");
  CHECK(!classify_d5(c, at(c.dag(), "C")).holds);
  CHECK(!classify_d6(c, at(c.dag(), "C")).holds);
  const DiscreteModel& proxy = testing::model("proxy_confounder");
  const BiasVerdict v = classify_d5(proxy, at(proxy.dag(), "C2"));
  CHECK(v.holds);
  CHECK(v.witness->empty());
  REQUIRE(v.abs_bias);
  CHECK(v.abs_bias->first < v.abs_bias->second);
  const DiscreteModel& chain = testing::model("confounder_chain");
  CHECK(!classify_d5(chain, at(chain.dag(), "C2")).holds);
  const DiscreteModel& m = testing::model("m_bias");
  const SetVerdict d6 = classify_d6(m, at(m.dag(), "C3"));
  CHECK(d6.holds);
  CHECK(d6.witness->empty());
}

TEST_CASE("surrogate confounder") {
  const DiscreteModel& proxy = testing::model("proxy_confounder");
  CHECK(surrogate_confounder(proxy, at(proxy.dag(), "C2")));
  const DiscreteModel& alt = testing::model("alternative_sets");
  CHECK(!surrogate_confounder(alt, at(alt.dag(), "C1")));
  const Dag iso = build_dag({"Z", "A", "Y"}, {{"A", "Y"}}, "A", "Y");
  Rng rng(4);
  CHECK(!surrogate_confounder(random_model(rng, iso), at(iso, "Z")));
}

TEST_CASE("conditional confounder") {
  const Dag& alt = testing::dag("alternative_sets");
  CHECK(!conditional_confounder(alt, at(alt, "C2"), alt.set_of({"C1"})).holds);
  const Dag& m = testing::dag("m_bias");
  CHECK(conditional_confounder(m, at(m, "C1"), m.set_of({"C3"})).holds);
  CHECK(conditional_confounder(m, at(m, "C2"), m.set_of({"C3"})).holds);
  CHECK_THROWS_AS(conditional_confounder(m, at(m, "C1"), m.set_of({"C1"})), Error);
  CHECK_THROWS_AS(conditional_confounder(m, at(m, "C1"), NodeSet{m.outcome()}), Error);
}

TEST_CASE("implication checks") {
  ConfounderReport r;
  for (DefinitionId d : kAllDefinitions) r.verdicts[d] = false;
  r.verdicts[DefinitionId::D4] = true;
  r.verdicts[DefinitionId::D1] = true;
  const ImplicationCheck c = check_implications(r, true);
  CHECK(!c.ok);
  REQUIRE(c.violated.size() == 1);
  CHECK(c.violated[0] == Implication{DefinitionId::D4, DefinitionId::D2});
  ConfounderReport partial;
  partial.verdicts[DefinitionId::D1] = true;
  CHECK_THROWS_AS(check_implications(partial, false), Error);

  for (const char* name : {"alternative_sets", "m_bias"}) {
    const RegistryEntry& e = testing::entry(name);
    for (const ConfounderReport& rep : classify_all(e.dag, e.model ? &*e.model : nullptr)) CHECK(rep.lattice_ok);
  }
}

TEST_CASE("classifiers agree with brute-force oracles") {
  Rng rng(29);
  for (int t = 0; t < 40; ++t) {
    const Dag d = random_dag(rng, {3, 6, 0.45});
    const DiscreteModel m = random_model(rng, d);
    for (NodeIndex c : d.covariate_pool()) {
      CAPTURE(t);
      CHECK(classify_d1_graphical(d, c).holds == d1_graph_oracle(d, c));
      CHECK(classify_d1_numeric(m, c).holds == d1_model_oracle(m, c));
      CHECK(classify_d2(d, c).holds == d2_oracle(d, c));
      CHECK(classify_d5(m, c).holds == d5_oracle(m, c));
      CHECK(classify_d6(m, c).holds == d6_oracle(m, c));
      const auto minimal = oracle::minimal_sets(d);
      bool every = !minimal.empty(), some = false;
      for (NodeSet s : minimal) {
        every = every && s.contains(c);
        some = some || s.contains(c);
      }
      CHECK(classify_d3(d, c) == every);
      CHECK(classify_d4(d, c).holds == some);
      CHECK(conditional_confounder(d, c, {}).holds == some);
    }
  }
}
