#include "doctest.h"

#include "confound/error.hpp"
#include "confound/graph.hpp"
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

std::string paths_text(const Digraph& g, const std::vector<Path>& ps) {
  std::string out;
  for (const Path& p : ps) out += (out.empty() ? "" : ", ") + format_path(g, p);
  return out;
}

}  // namespace

TEST_CASE("build_dag validates structure") {
  const Dag d = build_dag({"A", "Y"}, {{"A", "Y"}}, "A", "Y");
  CHECK(d.covariate_pool().empty());
  CHECK(kind_of([] { build_dag({"A", "Y"}, {{"A", "Y"}, {"Y", "A"}}, "A", "Y"); }) == ErrorKind::CycleDetected);
  CHECK(kind_of([] { build_dag({"A", "Y"}, {{"A", "Q"}}, "A", "Y"); }) == ErrorKind::UnknownNode);
  CHECK(kind_of([] { build_dag({"A", "Y"}, {{"A", "Y"}, {"A", "Y"}}, "A", "Y"); }) == ErrorKind::DuplicateEdge);
  CHECK(kind_of([] { build_dag({"A", "Y"}, {{"A", "A"}}, "A", "Y"); }) == ErrorKind::SelfLoop);
  CHECK(kind_of([] { build_dag({"A", "Y"}, {}, "A", "Z"); }) == ErrorKind::MissingExposureOrOutcome);
  CHECK(kind_of([] { build_dag({"A", "Y"}, {}, "A", "A"); }) == ErrorKind::MissingExposureOrOutcome);
}

TEST_CASE("cycle error names a cycle") {
  try {
    build_dag({"A", "B", "C", "Y"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}, {"A", "Y"}}, "A", "Y");
    FAIL("expected a cycle");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("A") != std::string::npos);
    CHECK(msg.find("B") != std::string::npos);
    CHECK(msg.find("C") != std::string::npos);
  }
}

TEST_CASE("covariate pool") {
  const Dag& d = testing::dag("alternative_sets");
  CHECK(d.format_set(d.covariate_pool()) == "{C1,C2}");
  const Dag m = build_dag({"C", "A", "M", "Y"}, {{"C", "A"}, {"A", "M"}, {"M", "Y"}, {"C", "Y"}}, "A", "Y");
  CHECK(m.format_set(m.covariate_pool()) == "{C}");
  const Dag pre = build_dag({"C", "D", "A", "Y"}, {{"C", "A"}, {"D", "A"}, {"A", "Y"}}, "A", "Y",
                            std::vector<std::string>{"D"});
  CHECK(pre.format_set(pre.covariate_pool()) == "{D}");
}

TEST_CASE("relatives") {
  const Dag chain = build_dag({"A", "B", "Y"}, {{"A", "B"}, {"B", "Y"}}, "A", "Y");
  CHECK(chain.format_set(relatives(chain, chain.index("Y"), Relation::Ancestors)) == "{A,B}");
  CHECK(chain.format_set(relatives(chain, chain.index("A"), Relation::Descendants)) == "{B,Y}");
  const Dag& alt = testing::dag("alternative_sets");
  CHECK(alt.format_set(relatives(alt, alt.index("A"), Relation::Parents)) == "{C2}");
  const Dag iso = build_dag({"A", "Y", "Z"}, {{"A", "Y"}}, "A", "Y");
  CHECK(iso.format_set(relatives(iso, iso.index("Z"), Relation::Nondescendants)) == "{A,Y}");
  CHECK(kind_of([&] { relatives(iso, 7, Relation::Parents); }) == ErrorKind::UnknownNode);
}

TEST_CASE("relatives consistency on random graphs") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Dag d = random_dag(rng, {2, 9, 0.4});
    for (NodeIndex a = 0; a < d.size(); ++a)
      for (NodeIndex b = 0; b < d.size(); ++b)
        CHECK(d.descendants(a).contains(b) == d.ancestors(b).contains(a));
  }
}

TEST_CASE("subgraph and edge removal") {
  const Dag& chain = testing::dag("confounder_chain");
  const Digraph cut = remove_into(chain, chain.index("A"));
  std::string edges;
  for (const auto& [p, c] : cut.edges()) edges += cut.name(p) + "->" + cut.name(c) + " ";
  CHECK(edges == "C1->C2 C1->Y A->Y ");
  const Dag simple = build_dag({"A", "Y"}, {{"A", "Y"}}, "A", "Y");
  CHECK(remove_into(simple, simple.index("A")).edges().size() == 1);
  const Digraph none = subgraph_restrict(chain, NodeSet{});
  CHECK(none.edges().empty());
  const Digraph all = subgraph_restrict(chain, chain.all());
  CHECK(all.edges().size() == chain.edges().size());
  const Digraph out = remove_out_of(chain, chain.index("A"));
  CHECK(!out.has_edge(out.index("A"), out.index("Y")));
}

TEST_CASE("path enumeration") {
  const Dag& m = testing::dag("m_bias");
  const auto ps = enumerate_paths(m, m.exposure(), m.outcome());
  CHECK(paths_text(m, ps) == "A<-C1->C3<-C2->Y, A->Y");
  const Dag iso = build_dag({"A", "Y", "Z"}, {{"A", "Y"}}, "A", "Y");
  CHECK(enumerate_paths(iso, iso.index("A"), iso.index("Z")).empty());
}

TEST_CASE("blocking rule") {
  const Dag& m = testing::dag("m_bias");
  const auto ps = enumerate_paths(m, m.exposure(), m.outcome());
  const Path& mpath = ps.front();
  CHECK(is_blocked(m, mpath, {}));
  CHECK(!is_blocked(m, mpath, m.set_of({"C3"})));
  CHECK(is_blocked(m, mpath, m.set_of({"C3", "C1"})));
  const Dag fork = build_dag({"C1", "A", "Y"}, {{"C1", "A"}, {"C1", "Y"}}, "A", "Y");
  CHECK(is_blocked(fork, enumerate_paths(fork, 1, 2).front(), fork.set_of({"C1"})));
}

TEST_CASE("collider descendant opens a path") {
  const Dag d = build_dag({"A", "C", "D", "Y"}, {{"A", "C"}, {"Y", "C"}, {"C", "D"}}, "A", "Y");
  CHECK(d_separated(d, d.set_of({"A"}), d.set_of({"Y"}), {}));
  CHECK(!d_separated(d, d.set_of({"A"}), d.set_of({"Y"}), d.set_of({"D"})));
}

TEST_CASE("d-separation worked examples") {
  const Dag chain = build_dag({"A", "B", "Y"}, {{"A", "B"}, {"B", "Y"}}, "A", "Y");
  CHECK(d_separated(chain, chain.set_of({"A"}), chain.set_of({"Y"}), chain.set_of({"B"})));
  const Dag& m = testing::dag("m_bias");
  CHECK(d_separated(m, m.set_of({"C1"}), m.set_of({"C2"}), {}));
  CHECK(!d_separated(m, m.set_of({"C1"}), m.set_of({"C2"}), m.set_of({"C3"})));
  const Dag& c = testing::dag("confounder_chain");
  CHECK(!d_separated(c, c.set_of({"A"}), c.set_of({"Y"}), {}));
}

TEST_CASE("d-separation agrees with path enumeration and is symmetric") {
  Rng rng(3);
  int queries = 0;
  for (int t = 0; t < 40; ++t) {
    const Dag d = random_dag(rng, {2, 9, 0.35});
    for (int q = 0; q < 10; ++q) {
      NodeSet a, b, z;
      for (NodeIndex v = 0; v < d.size(); ++v) {
        const auto r = rng.below(4);
        if (r == 0) a.insert(v);
        if (r == 1) b.insert(v);
        if (r == 2) z.insert(v);
      }
      if (a.empty() || b.empty()) continue;
      ++queries;
      const bool lib = d_separated(d, a, b, z);
      CHECK(lib == oracle::d_separated(d, a, b, z));
      CHECK(lib == d_separated(d, b, a, z));
    }
  }
  CHECK(queries > 100);
}

TEST_CASE("paths after removing edges into the exposure") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Dag d = random_dag(rng, {3, 8, 0.4});
    const Digraph cut = remove_into(d, d.exposure());
    for (const Path& p : enumerate_paths(cut, d.exposure(), d.outcome())) CHECK(!p.starts_into_source());
    CHECK(enumerate_paths(d, d.exposure(), d.outcome()).size() ==
          oracle::all_paths(d, d.exposure(), d.outcome()).size());
  }
}
