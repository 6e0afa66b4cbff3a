#pragma once

// The bijection h: P → Q built from the chain decomposition, its inverse, and
// executable checks of bijectivity and of the supporting lemmas.

#include "sb/chains.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sb {

enum class Branch { via_g_inverse, via_f };

inline const char* to_string(Branch b) { return b == Branch::via_g_inverse ? "g-inverse" : "f"; }

struct WitnessResult {
  Value input;
  Value output;
  Branch branch;

  friend bool operator==(const WitnessResult&, const WitnessResult&) = default;
};

/// h(p): g⁻¹(p) when p's chain is a Q-stopper, f(p) otherwise.
inline WitnessResult sb_witness(const ValidInstance& inst, const Value& p) {
  if (!member(inst.instance().p, p)) throw NotInDomain(p);
  const TaggedElement e = p_elem(p);
  const auto c = classify_chain(inst, e);
  if (const auto* u = std::get_if<Unknown>(&c)) throw BudgetExhausted(e, u->steps_spent);
  if (std::holds_alternative<QStopper>(c))
    return {p, inverse(inst, Direction::g, p), Branch::via_g_inverse};
  return {p, apply_map(inst.instance(), Direction::f, p), Branch::via_f};
}

/// h⁻¹(q): g(q) when q's chain is a Q-stopper, f⁻¹(q) otherwise.
inline Value sb_witness_inverse(const ValidInstance& inst, const Value& q) {
  if (!member(inst.instance().q, q)) throw NotInDomain(q);
  const TaggedElement e = q_elem(q);
  const auto c = classify_chain(inst, e);
  if (const auto* u = std::get_if<Unknown>(&c)) throw BudgetExhausted(e, u->steps_spent);
  if (std::holds_alternative<QStopper>(c)) return apply_map(inst.instance(), Direction::g, q);
  return inverse(inst, Direction::f, q);
}

/// Carrier values examined by the checks: the whole carrier in finite mode,
/// the members below `window` in countable mode.
inline std::vector<Value> checked_values(const ValidInstance& inst, Polarity side,
                                         std::optional<std::uint64_t> window) {
  std::vector<Value> out;
  if (inst.finite()) {
    for (const auto& a : inst.atoms(side)) out.emplace_back(a);
    return out;
  }
  if (!window) throw std::invalid_argument("a value window is required in countable mode");
  const auto& c = std::get<ResidueCarrier>(inst.carrier(side));
  for (std::uint64_t v = 0; v < *window; ++v)
    if (c.has_residue(v % c.modulus())) out.emplace_back(Integer(v));
  return out;
}

inline std::string describe_window(const ValidInstance& inst, std::optional<std::uint64_t> window) {
  if (inst.finite()) return "full carriers";
  return "values < " + std::to_string(window.value_or(0));
}

enum class CheckFailure { codomain, collision, not_hit, undecided };

inline const char* to_string(CheckFailure k) {
  switch (k) {
    case CheckFailure::codomain: return "codomain";
    case CheckFailure::collision: return "collision";
    case CheckFailure::not_hit: return "not-hit";
    case CheckFailure::undecided: return "undecided";
  }
  return "unknown";
}

struct Counterexample {
  CheckFailure kind;
  TaggedElement element;
  std::string detail;
};

struct BijectionCheckReport {
  bool codomain_ok = true;
  bool injective_ok = true;
  bool surjective_ok = true;
  std::vector<Counterexample> counterexamples;  // canonical order
  std::string checked_window;

  [[nodiscard]] bool bijective() const { return codomain_ok && injective_ok && surjective_ok; }
  [[nodiscard]] std::size_t undecided() const {
    return static_cast<std::size_t>(std::count_if(
        counterexamples.begin(), counterexamples.end(),
        [](const Counterexample& c) { return c.kind == CheckFailure::undecided; }));
  }
};

/// Verifies h on the checked values: outputs lie in Q, no two inputs share an
/// output, and every q is hit (via h⁻¹ and a forward confirmation).
inline BijectionCheckReport check_bijection(const ValidInstance& inst,
                                            std::optional<std::uint64_t> window = std::nullopt) {
  BijectionCheckReport report;
  report.checked_window = describe_window(inst, window);
  auto& cx = report.counterexamples;

  std::map<Value, Value> first_input;  // output -> input
  for (const Value& p : checked_values(inst, Polarity::p_side, window)) {
    try {
      const auto h = sb_witness(inst, p);
      if (!member(inst.instance().q, h.output)) {
        report.codomain_ok = false;
        cx.push_back({CheckFailure::codomain, p_elem(p), "h = " + to_string(h.output) + " not in Q"});
        continue;
      }
      auto [it, fresh] = first_input.emplace(h.output, p);
      if (!fresh) {
        report.injective_ok = false;
        cx.push_back({CheckFailure::collision, p_elem(p),
                      "h(" + to_string(p) + ") = h(" + to_string(it->second) + ") = " +
                          to_string(h.output)});
      }
    } catch (const BudgetExhausted& e) {
      report.codomain_ok = false;
      cx.push_back({CheckFailure::undecided, p_elem(p), e.what()});
    }
  }

  for (const Value& q : checked_values(inst, Polarity::q_side, window)) {
    try {
      const Value back = sb_witness_inverse(inst, q);
      if (!member(inst.instance().p, back) || sb_witness(inst, back).output != q) {
        report.surjective_ok = false;
        cx.push_back({CheckFailure::not_hit, q_elem(q),
                      "h(h^-1(" + to_string(q) + ")) != " + to_string(q)});
      }
    } catch (const BudgetExhausted& e) {
      report.surjective_ok = false;
      cx.push_back({CheckFailure::undecided, q_elem(q), e.what()});
    } catch (const NotInImage& e) {
      report.surjective_ok = false;
      cx.push_back({CheckFailure::not_hit, q_elem(q), e.what()});
    }
  }

  std::stable_sort(cx.begin(), cx.end(), [](const Counterexample& a, const Counterexample& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return canonical_order(a.element, b.element) < 0;
  });
  return report;
}

struct LemmaOutcome {
  std::string name;
  std::size_t checked = 0;
  std::size_t undecided = 0;
  std::vector<std::string> failures;

  [[nodiscard]] bool passed() const { return failures.empty(); }
};

struct LemmaReport {
  std::vector<LemmaOutcome> lemmas;

  [[nodiscard]] bool passed() const {
    return std::all_of(lemmas.begin(), lemmas.end(), [](const auto& l) { return l.passed(); });
  }
  [[nodiscard]] const LemmaOutcome* find(std::string_view name) const {
    for (const auto& l : lemmas)
      if (l.name == name) return &l;
    return nullptr;
  }
};

/// Runs the chain and witness lemmas as universally quantified checks over
/// the checked values:
///   initial-unique          two initial elements on one chain coincide
///   initial-minimal         x ⊑ i for initial i only when x = i
///   g-image-when-q-stopper  P-side elements of Q-stoppers have a g-preimage
///   f-image-otherwise       Q-side elements outside Q-stoppers have an f-preimage
///   chain-preserved         p and h(p) share a chain
inline LemmaReport lemma_suite(const ValidInstance& inst,
                               std::optional<std::uint64_t> window = std::nullopt) {
  std::vector<TaggedElement> elems;
  for (auto& v : checked_values(inst, Polarity::p_side, window)) elems.push_back(p_elem(v));
  for (auto& v : checked_values(inst, Polarity::q_side, window)) elems.push_back(q_elem(v));

  std::vector<TaggedElement> initials;
  for (const auto& e : elems)
    if (is_initial(inst, e)) initials.push_back(e);

  LemmaOutcome unique{"initial-unique"};
  for (std::size_t i = 0; i < initials.size(); ++i)
    for (std::size_t j = i + 1; j < initials.size(); ++j) {
      ++unique.checked;
      const Truth same = chain_eq(inst, initials[i], initials[j]);
      if (same == Truth::unknown) ++unique.undecided;
      if (same == Truth::yes)
        unique.failures.push_back(to_string(initials[i]) + " and " + to_string(initials[j]) +
                                  " are both initial on one chain");
    }

  LemmaOutcome minimal{"initial-minimal"};
  for (const auto& i : initials)
    for (const auto& x : elems) {
      ++minimal.checked;
      const Truth below = chain_le(inst, x, i);
      if (below == Truth::unknown) {
        ++minimal.undecided;
        continue;
      }
      if ((below == Truth::yes) != (x == i))
        minimal.failures.push_back(to_string(x) + " ⊑ " + to_string(i) + " is " + to_string(below));
    }

  LemmaOutcome g_image{"g-image-when-q-stopper"};
  LemmaOutcome f_image{"f-image-otherwise"};
  for (const auto& e : elems) {
    const Truth in_q = in_q_stopper(inst, e);
    if (in_q == Truth::unknown) {
      ++(e.polarity == Polarity::p_side ? g_image : f_image).undecided;
      continue;
    }
    if (e.polarity == Polarity::p_side && in_q == Truth::yes) {
      ++g_image.checked;
      if (!in_image(inst, Direction::g, e.val))
        g_image.failures.push_back(to_string(e) + " lies in a Q-stopper but has no g-preimage");
    }
    if (e.polarity == Polarity::q_side && in_q == Truth::no) {
      ++f_image.checked;
      if (!in_image(inst, Direction::f, e.val))
        f_image.failures.push_back(to_string(e) + " lies outside Q-stoppers but has no f-preimage");
    }
  }

  LemmaOutcome preserved{"chain-preserved"};
  for (const auto& e : elems) {
    if (e.polarity != Polarity::p_side) continue;
    try {
      const auto h = sb_witness(inst, e.val);
      ++preserved.checked;
      const Truth same = chain_eq(inst, e, q_elem(h.output));
      if (same == Truth::unknown) ++preserved.undecided;
      if (same == Truth::no)
        preserved.failures.push_back(to_string(e) + " and Q:" + to_string(h.output) +
                                     " lie on different chains");
    } catch (const BudgetExhausted&) {
      ++preserved.undecided;
    }
  }

  return {{std::move(unique), std::move(minimal), std::move(g_image), std::move(f_image),
           std::move(preserved)}};
}

}  // namespace sb
