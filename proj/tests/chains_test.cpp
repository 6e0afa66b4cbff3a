#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace sb::test {
namespace {

constexpr Truth yes = Truth::yes;
constexpr Truth no = Truth::no;

TEST(ChainStep, Examples) {
  const ValidInstance single(single_two_cycle());
  EXPECT_EQ(chain_step(single, P("a")), Q("x"));
  const ValidInstance succ(successor());
  EXPECT_EQ(chain_step(succ, Q(3)), P(4));
  const ValidInstance dbl(doubling());
  EXPECT_EQ(chain_step(dbl, P(0)), Q(0));
}

TEST(ChainStep, MalformedElement) {
  const ValidInstance dbl(doubling());
  EXPECT_THROW(chain_step(dbl, Q(3)), MalformedElement);
  EXPECT_THROW(chain_step(dbl, P("a")), MalformedElement);
  EXPECT_THROW(classify_chain(dbl, Q(5)), MalformedElement);
}

TEST(ChainSteps, Examples) {
  const ValidInstance succ(successor());
  EXPECT_EQ(chain_steps(succ, P(7), {0}), P(7));
  EXPECT_EQ(chain_steps(succ, P(0), {3}), Q(3));
  const ValidInstance single(single_two_cycle());
  EXPECT_EQ(chain_steps(single, P("a"), {2}), P("a"));
  EXPECT_EQ(chain_steps(single, P("a"), {1'000'000'001}), Q("x"));
}

TEST(ChainLe, Examples) {
  const ValidInstance succ(successor());
  EXPECT_EQ(chain_le(succ, P(5), P(5)), yes);
  EXPECT_EQ(chain_le(succ, P(0), Q(3)), yes);
  EXPECT_EQ(chain_le(succ, Q(1), P(0)), no);
}

TEST(ChainLe, BudgetGivesUnknown) {
  Instance base = successor();
  base.step_budget = 5;
  const ValidInstance succ(base);
  EXPECT_EQ(chain_le(succ, P(0), P(100)), Truth::unknown);
  EXPECT_EQ(chain_le(succ, P(0), Q(5)), yes);
  EXPECT_EQ(chain_le(succ, P(100), P(0)), no);  // monotone certificate, no walk needed
}

TEST(ChainLe, CycleWithoutHit) {
  const ValidInstance dbl(doubling());
  EXPECT_EQ(chain_le(dbl, P(0), Q(0)), yes);
  EXPECT_EQ(chain_le(dbl, P(0), P(1)), no);
}

TEST(ChainEq, Examples) {
  const ValidInstance succ(successor());
  EXPECT_EQ(chain_eq(succ, P(4), P(4)), yes);
  EXPECT_EQ(chain_eq(succ, P(0), Q(3)), yes);
  EXPECT_EQ(chain_eq(succ, Q(3), P(0)), yes);
  EXPECT_EQ(chain_eq(succ, P(0), Q(0)), no);
}

TEST(ChainEq, MalformedFallsBackToEquality) {
  const ValidInstance dbl(doubling());
  EXPECT_EQ(chain_eq(dbl, Q(3), Q(3)), yes);
  EXPECT_EQ(chain_eq(dbl, Q(3), Q(5)), no);
  EXPECT_EQ(chain_eq(dbl, Q(3), P(3)), no);
}

TEST(IsInitial, Examples) {
  const ValidInstance succ(successor());
  EXPECT_TRUE(is_initial(succ, P(0)));
  EXPECT_FALSE(is_initial(succ, P(1)));
  EXPECT_TRUE(is_initial(succ, Q(0)));
  const ValidInstance single(single_two_cycle());
  EXPECT_FALSE(is_initial(single, P("a")));
}

TEST(FindInitial, Examples) {
  const ValidInstance succ(successor());
  auto r = find_initial(succ, P(1));
  ASSERT_TRUE(std::holds_alternative<Initial>(r));
  EXPECT_EQ(std::get<Initial>(r).element, Q(0));
  EXPECT_EQ(std::get<Initial>(r).distance, 1u);

  r = find_initial(succ, P(0));
  ASSERT_TRUE(std::holds_alternative<Initial>(r));
  EXPECT_EQ(std::get<Initial>(r).element, P(0));

  const ValidInstance single(single_two_cycle());
  r = find_initial(single, P("a"));
  ASSERT_TRUE(std::holds_alternative<NoInitial>(r));
  EXPECT_EQ(std::get<NoInitial>(r).cycle_period, 2u);
}

TEST(Classify, Examples) {
  const ValidInstance succ(successor());
  EXPECT_EQ(classify_chain(succ, P(1)), ChainClassification(QStopper{Q(0)}));
  EXPECT_EQ(classify_chain(succ, P(0)), ChainClassification(PStopper{P(0)}));
  const ValidInstance dbl(doubling());
  EXPECT_EQ(classify_chain(dbl, P(0)), ChainClassification(Cyclic{2}));
  EXPECT_EQ(classify_chain(dbl, P(12)), ChainClassification(PStopper{P(3)}));
  EXPECT_EQ(classify_chain(dbl, Q(12)), ChainClassification(PStopper{P(3)}));
}

TEST(Classify, NonStopperCertificate) {
  const ValidInstance line(integer_line());
  for (std::uint64_t n = 0; n < 40; ++n) {
    for (const auto& e : {P(n), Q(n)}) {
      const auto c = classify_chain(line, e);
      ASSERT_TRUE(std::holds_alternative<NonStopper>(c)) << to_string(e) << ": " << to_string(c);
      const auto& cert = std::get<NonStopper>(c).certificate;
      EXPECT_GT(cert.period, 0u);
      EXPECT_GT(cert.shift, 0);
      EXPECT_EQ(cert.period % 2, 0u);
    }
  }
}

TEST(Classify, NonStopperRegressionReplays) {
  // Replay the certified segment: walking forward `period` steps from the
  // later anchor copy lands back on an element of the same residue class.
  const ValidInstance line(integer_line());
  const auto c = classify_chain(line, P(6));
  const auto& cert = std::get<NonStopper>(c).certificate;
  TaggedElement later = cert.anchor;
  later.val = std::get<Integer>(later.val) + cert.shift;
  EXPECT_EQ(chain_steps(line, later, {cert.period}), cert.anchor);
}

TEST(Classify, UnknownWithinSmallBudget) {
  Instance base = successor();
  base.step_budget = 5;
  const ValidInstance succ(base);
  const auto c = classify_chain(succ, P(100));
  ASSERT_TRUE(std::holds_alternative<Unknown>(c));
  EXPECT_EQ(std::get<Unknown>(c).steps_spent, 5u);
  EXPECT_EQ(in_q_stopper(succ, P(100)), Truth::unknown);
  EXPECT_EQ(classify_chain(succ, P(4)), ChainClassification(PStopper{P(0)}));
}

TEST(InQStopper, Examples) {
  const ValidInstance succ(successor());
  EXPECT_EQ(in_q_stopper(succ, P(1)), yes);
  EXPECT_EQ(in_q_stopper(succ, P(0)), no);
}

TEST(ToString, Classification) {
  EXPECT_EQ(to_string(ChainClassification(Cyclic{4})), "cyclic (period 4)");
  EXPECT_EQ(to_string(ChainClassification(QStopper{Q(0)})), "q-stopper (initial Q:0)");
  EXPECT_EQ(to_string(ChainClassification(Unknown{9})), "unknown (budget of 9 steps exhausted)");
}

// Exhaustive checks on small random finite instances.
class FiniteLaws : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  void SetUp() override {
    base_ = random_finite_instance(1 + GetParam() % 12, 1000 + GetParam());
    inst_.emplace(base_);
    graph_.emplace(base_);
  }
  Instance base_;
  std::optional<ValidInstance> inst_;
  std::optional<StepGraph> graph_;
};

TEST_P(FiniteLaws, ChainLeMatchesReachability) {
  const auto reach = graph_->reach();
  const auto& es = graph_->elems;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < es.size(); ++j)
      EXPECT_EQ(chain_le(*inst_, es[i], es[j]) == yes, reach[i][j]);
}

TEST_P(FiniteLaws, Preorder) {
  const auto& es = graph_->elems;
  for (const auto& x : es) EXPECT_EQ(chain_le(*inst_, x, x), yes);
  for (const auto& x : es)
    for (const auto& y : es) {
      if (chain_le(*inst_, x, y) != yes) continue;
      for (const auto& z : es)
        if (chain_le(*inst_, y, z) == yes) EXPECT_EQ(chain_le(*inst_, x, z), yes);
    }
}

TEST_P(FiniteLaws, EquivalenceMatchesComponents) {
  const auto comp = graph_->components();
  const auto& es = graph_->elems;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < es.size(); ++j) {
      const Truth eq = chain_eq(*inst_, es[i], es[j]);
      EXPECT_EQ(eq, chain_eq(*inst_, es[j], es[i]));
      EXPECT_EQ(eq == yes, comp[i] == comp[j]) << to_string(es[i]) << " " << to_string(es[j]);
    }
}

TEST_P(FiniteLaws, EveryChainIsCyclic) {
  const auto& es = graph_->elems;
  for (std::size_t i = 0; i < es.size(); ++i) {
    EXPECT_FALSE(is_initial(*inst_, es[i]));
    EXPECT_EQ(in_q_stopper(*inst_, es[i]), no);
    const auto c = classify_chain(*inst_, es[i]);
    ASSERT_TRUE(std::holds_alternative<Cyclic>(c));
    EXPECT_EQ(std::get<Cyclic>(c).period, graph_->cycle_length(i).value());
    EXPECT_EQ(std::get<Cyclic>(c).period % 2, 0u);
    EXPECT_EQ(c, classify_chain(*inst_, chain_step(*inst_, es[i])));
  }
}

TEST_P(FiniteLaws, InitialAgreesWithMinimality) {
  // i is initial iff nothing other than i lies below it.
  const auto& es = graph_->elems;
  const auto sources = graph_->sources();
  for (std::size_t i = 0; i < es.size(); ++i) {
    bool minimal = true;
    for (const auto& x : es)
      if (!(x == es[i]) && chain_le(*inst_, x, es[i]) == yes) minimal = false;
    EXPECT_EQ(is_initial(*inst_, es[i]), minimal);
    EXPECT_EQ(is_initial(*inst_, es[i]), sources[i]);
  }
}

TEST_P(FiniteLaws, CyclicOrderIsSymmetric) {
  const auto& es = graph_->elems;
  for (const auto& x : es)
    for (const auto& y : es) EXPECT_EQ(chain_le(*inst_, x, y), chain_le(*inst_, y, x));
}

TEST_P(FiniteLaws, StepParity) {
  for (const auto& e : graph_->elems)
    for (std::uint64_t n = 0; n < 30; ++n)
      EXPECT_EQ(chain_steps(*inst_, e, {n}).polarity == e.polarity, n % 2 == 0);
}

TEST_P(FiniteLaws, ChainStepsMatchesIteration) {
  for (std::size_t i = 0; i < graph_->size(); ++i) {
    std::size_t cur = i;
    for (std::uint64_t n = 0; n < 3 * graph_->size(); ++n) {
      EXPECT_EQ(chain_steps(*inst_, graph_->elems[i], {n}), graph_->elems[cur]);
      cur = graph_->next[cur];
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FiniteLaws, ::testing::Range<std::uint64_t>(0, 40));

// Countable windows.

std::vector<TaggedElement> window_elements(const ValidInstance& inst, std::uint64_t n) {
  std::vector<TaggedElement> out;
  for (auto& v : checked_values(inst, Polarity::p_side, n)) out.push_back(p_elem(v));
  for (auto& v : checked_values(inst, Polarity::q_side, n)) out.push_back(q_elem(v));
  return out;
}

TEST(CountableLaws, MinimalityAndUniqueness) {
  for (auto base : {successor(), doubling()}) {
    const ValidInstance inst(base);
    const auto es = window_elements(inst, 60);
    std::vector<TaggedElement> initials;
    for (const auto& e : es)
      if (is_initial(inst, e)) initials.push_back(e);
    ASSERT_FALSE(initials.empty());
    for (const auto& i : initials)
      for (const auto& x : es) EXPECT_EQ(chain_le(inst, x, i) == yes, x == i);
    for (const auto& i : initials)
      for (const auto& j : initials)
        if (chain_eq(inst, i, j) == yes) EXPECT_EQ(i, j);
  }
}

TEST(CountableLaws, NonInitialHasDistinctPredecessor) {
  for (auto base : {successor(), doubling(), integer_line()}) {
    const ValidInstance inst(base);
    for (const auto& e : window_elements(inst, 60)) {
      if (is_initial(inst, e)) continue;
      const Direction d = e.polarity == Polarity::p_side ? Direction::g : Direction::f;
      const TaggedElement pred{flip(e.polarity), inverse(inst, d, e.val)};
      EXPECT_FALSE(pred == e);
      EXPECT_EQ(chain_step(inst, pred), e);
      EXPECT_EQ(chain_le(inst, pred, e), yes);
    }
  }
}

TEST(CountableLaws, ClassStabilityAndSoundness) {
  for (auto base : {successor(), doubling(), integer_line()}) {
    const ValidInstance inst(base);
    for (const auto& e : window_elements(inst, 200)) {
      const auto c = classify_chain(inst, e);
      const auto next = classify_chain(inst, chain_step(inst, e));
      ASSERT_FALSE(std::holds_alternative<Unknown>(c));
      if (!std::holds_alternative<NonStopper>(c)) EXPECT_EQ(c, next) << to_string(e);
      EXPECT_EQ(category(c), category(next));
      const auto found = find_initial(inst, e);
      if (const auto* i = std::get_if<Initial>(&found)) {
        EXPECT_TRUE(is_initial(inst, i->element));
        EXPECT_EQ(chain_steps(inst, i->element, {i->distance}), e);
        EXPECT_EQ(chain_le(inst, i->element, e), yes);
      }
    }
  }
}

TEST(CountableLaws, StopperChainsAreAntisymmetric) {
  const ValidInstance inst(successor());
  const auto es = window_elements(inst, 30);
  for (const auto& x : es)
    for (const auto& y : es)
      if (chain_le(inst, x, y) == yes && chain_le(inst, y, x) == yes) EXPECT_EQ(x, y);
}

TEST(CountableLaws, PreorderOnWindow) {
  const ValidInstance inst(doubling());
  const auto es = window_elements(inst, 24);
  for (const auto& x : es)
    for (const auto& y : es) {
      if (chain_le(inst, x, y) != yes) continue;
      EXPECT_EQ(chain_eq(inst, x, y), yes);
      EXPECT_EQ(chain_eq(inst, y, x), yes);
      for (const auto& z : es)
        if (chain_le(inst, y, z) == yes) EXPECT_EQ(chain_le(inst, x, z), yes);
    }
}

}  // namespace
}  // namespace sb::test
