#pragma once

// Encoding of a finite instance as a countable one: P's i-th atom becomes i
// on the P side, Q's j-th atom becomes j on the Q side, and both maps act as
// the identity beyond the finite part (where every chain is a 2-cycle).

#include "sb/instance.hpp"

namespace sb {

/// Requires a valid finite instance (so |P| = |Q|).
inline Instance embed_countable(const Instance& finite) {
  const auto& p = std::get<FiniteCarrier>(finite.p);
  const auto& q = std::get<FiniteCarrier>(finite.q);
  if (p.size() != q.size()) throw std::invalid_argument("embedding needs |P| = |Q|");
  const std::size_t n = p.size();
  auto encode = [n](const FiniteTable& t, const FiniteCarrier& dom, const FiniteCarrier& cod) {
    PiecewiseAffine out;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = *cod.index_of(*t.find(dom.atoms()[i]));
      out.pieces.emplace_back(Guard::range(i, Integer(i)), 1, Integer(j) - Integer(i));
    }
    out.pieces.emplace_back(Guard::range(n), 1, 0);
    return out;
  };
  Instance out;
  out.mode = Mode::countable;
  out.p = ResidueCarrier::naturals();
  out.q = ResidueCarrier::naturals();
  out.f = encode(std::get<FiniteTable>(finite.f), p, q);
  out.g = encode(std::get<FiniteTable>(finite.g), q, p);
  out.step_budget = std::max<std::uint64_t>(kDefaultStepBudget, 2 * n + 2);
  return out;
}

/// The natural number standing for a finite element under embed_countable.
inline TaggedElement embed_element(const Instance& finite, const TaggedElement& e) {
  const auto& c = std::get<FiniteCarrier>(e.polarity == Polarity::p_side ? finite.p : finite.q);
  return {e.polarity, Integer(*c.index_of(std::get<Atom>(e.val)))};
}

}  // namespace sb
