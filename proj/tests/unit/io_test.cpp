#include "doctest.h"

#include "confound/error.hpp"
#include "confound/io.hpp"
#include "confound/random_models.hpp"
#include "support/fixtures.hpp"

using namespace confound;

namespace {

std::pair<ErrorKind, std::string> error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  }
  FAIL("no error thrown");
  return {ErrorKind::InvalidConfig, ""};
}

}  // namespace

TEST_CASE("graph file parsing") {
  const Dag d = parse_graph("# comment\nnode C pre\nnode A exposure\nnode Y outcome\n\nedge C A\nedge A Y  # inline\n");
  CHECK(d.size() == 3);
  CHECK(d.name(d.exposure()) == "A");
  CHECK(d.declared_pre().has_value());
  CHECK(d.format_set(d.covariate_pool()) == "{C}");
  const Dag plain = parse_graph("node A exposure\nnode Y outcome\nedge A Y\n");
  CHECK(!plain.declared_pre().has_value());
}

TEST_CASE("graph file errors carry line numbers") {
  auto [k1, m1] = error_of([] { parse_graph("node A exposure\nnode Y outcome\nedge A\n", "g.graph"); });
  CHECK(k1 == ErrorKind::Parse);
  CHECK(m1.find("g.graph:3") != std::string::npos);
  auto [k2, m2] = error_of([] { parse_graph("node A exposure\nnode Y outcome\nedge A Q\n"); });
  CHECK(k2 == ErrorKind::UnknownNode);
  CHECK(error_of([] { parse_graph("node A exposure\nnode B exposure\nnode Y outcome\n"); }).first == ErrorKind::Parse);
  CHECK(error_of([] { parse_graph("node A exposure\nnode A\nnode Y outcome\n"); }).first == ErrorKind::Parse);
  CHECK(error_of([] { parse_graph("node A exposure\n"); }).first == ErrorKind::MissingExposureOrOutcome);
  CHECK(error_of([] { parse_graph("node A exposure\nnode Y outcome\nedge A Y\nedge A Y\n"); }).first ==
        ErrorKind::DuplicateEdge);
  CHECK(error_of([] { parse_graph("node A exposure\nnode Y outcome\nedge A Y\nedge Y A\n"); }).first ==
        ErrorKind::CycleDetected);
  CHECK(error_of([] { parse_graph("node A exposure\nnode Y outcome\nnode X weird\n"); }).first == ErrorKind::Parse);
  CHECK(error_of([] { parse_graph("vertex A\n"); }).first == ErrorKind::Parse);
}

TEST_CASE("graph round trip") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Dag d = random_dag(rng, {2, 8, 0.4});
    const Dag back = parse_graph(write_graph(d));
    CHECK(back.names() == d.names());
    CHECK(back.edges() == d.edges());
    CHECK(back.exposure() == d.exposure());
    CHECK(back.outcome() == d.outcome());
  }
}

TEST_CASE("model file parsing") {
  const Dag d = parse_graph("node A exposure\nnode Y outcome\nedge A Y\n");
  const DiscreteModel m = parse_model(R"({"states": {"A": ["0","1"], "Y": ["0","1"]},
    "cpts": {"A": {"parents": [], "table": {"": ["0.3","0.7"]}},
             "Y": {"parents": ["A"], "table": {"0": ["1/2","1/2"], "1": ["0.25","3/4"]}}}})",
                                      d);
  CHECK(m.cpt(d.exposure()).rows[0][1] == testing::q(7, 10));
  const std::string base = R"({"states": {"A": ["0","1"], "Y": ["0","1"]}, "cpts": {"A": {"parents": [], "table": {"": )";
  const std::string tail = R"(}}, "Y": {"parents": ["A"], "table": {"0": ["1/2","1/2"], "1": ["1/2","1/2"]}}}})";
  CHECK(error_of([&] { parse_model(base + R"(["1/2","1/3"])" + tail, d); }).first == ErrorKind::InvalidModel);
  CHECK(error_of([&] { parse_model(base + R"(["1/2","x"])" + tail, d); }).first == ErrorKind::Parse);
  CHECK(error_of([&] { parse_model(base + R"([0.5, 0.5])" + tail, d); }).first == ErrorKind::Parse);
  CHECK(error_of([&] { parse_model("{", d); }).first == ErrorKind::Parse);
  CHECK(error_of([&] {
          parse_model(R"({"states": {"A": ["0","1"], "Y": ["0","1"]},
            "cpts": {"A": {"parents": [], "table": {"": ["1/2","1/2"]}},
                     "Y": {"parents": [], "table": {"": ["1/2","1/2"]}}}})",
                      d);
        }).first == ErrorKind::InvalidModel);
  CHECK(error_of([&] {
          parse_model(R"({"states": {"A": ["0","1"], "Y": ["0","1"]},
            "cpts": {"A": {"parents": [], "table": {"": ["1/2","1/2"]}},
                     "Y": {"parents": ["A"], "table": {"0": ["1/2","1/2"], "7": ["1/2","1/2"]}}}})",
                      d);
        }).first == ErrorKind::UnknownState);
}

TEST_CASE("model round trip") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const Dag d = random_dag(rng, {2, 6, 0.4});
    const DiscreteModel m = random_model(rng, d, {3, 64});
    const DiscreteModel back = parse_model(write_model(m), d);
    for (NodeIndex v = 0; v < d.size(); ++v) {
      CHECK(back.states(v) == m.states(v));
      CHECK(back.cpt(v).rows == m.cpt(v).rows);
    }
  }
}
