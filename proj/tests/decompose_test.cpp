#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

namespace sb::test {
namespace {

TEST(Decompose, FiniteMembersPartitionTheCarriers) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance base = random_finite_instance(1 + seed % 15, seed);
    const ValidInstance inst(base);
    const StepGraph graph(base);
    const auto comp = graph.components();
    const auto report = decompose(inst);
    std::set<std::string> seen;
    std::size_t total = 0;
    std::set<std::size_t> labels;
    for (const auto& cls : report.classes) {
      EXPECT_TRUE(cls.complete);
      ASSERT_TRUE(std::holds_alternative<Cyclic>(cls.classification));
      EXPECT_EQ(std::get<Cyclic>(cls.classification).period, cls.members.size());
      const std::size_t label = comp[graph.index(cls.members.front())];
      EXPECT_TRUE(labels.insert(label).second);
      for (const auto& m : cls.members) {
        EXPECT_TRUE(seen.insert(to_string(m)).second);
        EXPECT_EQ(comp[graph.index(m)], label);
        ++total;
      }
    }
    EXPECT_EQ(total, graph.size());
    EXPECT_EQ(report.counts.at(ChainCategory::cyclic), report.classes.size());
  }
}

TEST(Decompose, EmptyInstance) {
  const auto report = decompose(ValidInstance(finite_instance({}, {}, {}, {})));
  EXPECT_TRUE(report.classes.empty());
  EXPECT_EQ(render_decomposition(report), "chains: 0\nchecked: full carriers\n");
}

TEST(Decompose, TwoCycleRendering) {
  EXPECT_EQ(render_decomposition(decompose(ValidInstance(two_cycle()))),
            "chains: 2 (cyclic 2)\n"
            "checked: full carriers\n"
            "[1] cyclic (period 2): P:a Q:x\n"
            "[2] cyclic (period 2): P:b Q:y\n");
}

TEST(Decompose, SuccessorWindow) {
  const auto report = decompose(ValidInstance(successor()), 4);
  EXPECT_EQ(render_decomposition(report),
            "chains: 2 (p-stopper 1, q-stopper 1)\n"
            "checked: values < 4\n"
            "[1] p-stopper (initial P:0): P:0 Q:1 P:2 Q:3 ...\n"
            "[2] q-stopper (initial Q:0): Q:0 P:1 Q:2 P:3 ...\n");
}

TEST(Decompose, DoublingWindow) {
  const auto report = decompose(ValidInstance(doubling()), 8);
  // {P:0, Q:0} cycle, then one P-stopper per odd n: n, 2n, 4n, ...
  EXPECT_EQ(report.counts.at(ChainCategory::cyclic), 1u);
  EXPECT_EQ(report.counts.at(ChainCategory::p_stopper), 4u);
  EXPECT_EQ(report.classes[0].members, (std::vector<TaggedElement>{P(0), Q(0)}));
  EXPECT_EQ(report.classes[1].members, (std::vector<TaggedElement>{P(1), P(2), Q(2), P(4), Q(4)}));
}

TEST(Decompose, NonStopperWindow) {
  const auto report = decompose(ValidInstance(integer_line()), 10);
  ASSERT_EQ(report.classes.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<NonStopper>(report.classes[0].classification));
  EXPECT_EQ(report.classes[0].members.size(), 20u);
}

TEST(Dot, TwoCycle) {
  EXPECT_EQ(render_dot(ValidInstance(two_cycle())),
            "digraph chains {\n"
            "  node [shape=box, style=filled];\n"
            "  \"P:a\" [fillcolor=lightgray];\n"
            "  \"Q:x\" [fillcolor=lightgray];\n"
            "  \"P:b\" [fillcolor=lightgray];\n"
            "  \"Q:y\" [fillcolor=lightgray];\n"
            "  \"P:a\" -> \"Q:x\";\n"
            "  \"Q:x\" -> \"P:a\";\n"
            "  \"P:b\" -> \"Q:y\";\n"
            "  \"Q:y\" -> \"P:b\";\n"
            "}\n");
}

TEST(Dot, CountableWindowMarksOverflow) {
  const std::string dot = render_dot(ValidInstance(successor()), 3);
  EXPECT_NE(dot.find("\"P:0\" [fillcolor=lightblue];"), std::string::npos);
  EXPECT_NE(dot.find("\"Q:0\" [fillcolor=lightpink];"), std::string::npos);
  EXPECT_NE(dot.find("\"Q:3\" [style=dashed, fillcolor=white];"), std::string::npos);
  EXPECT_NE(dot.find("\"P:2\" -> \"Q:3\";"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1)) ++edges;
  EXPECT_EQ(edges, 6u);
}

TEST(Dot, QuotesAtoms) {
  const auto inst = finite_instance({"a\"1"}, {"x\\"}, {{"a\"1", "x\\"}}, {{"x\\", "a\"1"}});
  EXPECT_NE(render_dot(ValidInstance(inst)).find(R"("P:a\"1" -> "Q:x\\";)"), std::string::npos);
}

}  // namespace
}  // namespace sb::test
