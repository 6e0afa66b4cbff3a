#pragma once

#include "sb/sb.hpp"

namespace sb::test {

inline FiniteTable table(std::vector<std::pair<Atom, Atom>> entries) {
  return FiniteTable(std::move(entries));
}

inline Instance finite_instance(std::vector<Atom> p, std::vector<Atom> q,
                                std::vector<std::pair<Atom, Atom>> f,
                                std::vector<std::pair<Atom, Atom>> g) {
  return {Mode::finite, FiniteCarrier(std::move(p)), FiniteCarrier(std::move(q)),
          FiniteTable(std::move(f)), FiniteTable(std::move(g))};
}

/// P = {a, b}, Q = {x, y}, f and g mutually inverse tables.
inline Instance two_cycle() {
  return finite_instance({"a", "b"}, {"x", "y"}, {{"a", "x"}, {"b", "y"}}, {{"x", "a"}, {"y", "b"}});
}

inline Instance single_two_cycle() { return finite_instance({"a"}, {"x"}, {{"a", "x"}}, {{"x", "a"}}); }

inline PiecewiseAffine affine(Integer a, Integer b, Guard guard = Guard()) {
  return {{AffinePiece(std::move(guard), std::move(a), std::move(b))}};
}

/// f = g = n ↦ n + 1 on ℕ: two stopper chains rooted at P:0 and Q:0.
inline Instance successor() {
  return {Mode::countable, ResidueCarrier::naturals(), ResidueCarrier::naturals(), affine(1, 1),
          affine(1, 1)};
}

/// f = n ↦ 2n from ℕ onto the evens, g = inclusion of the evens into ℕ.
inline Instance doubling() {
  return {Mode::countable, ResidueCarrier::naturals(), ResidueCarrier(2, {0}), affine(2, 0),
          affine(1, 0, Guard(2, {0}))};
}

/// A copy of ℤ folded onto ℕ (z >= 0 ↦ 2z, z < 0 ↦ -2z - 1) with f the shift
/// z ↦ z + 1 and g the identity: a single non-stopper chain.
inline Instance integer_line(std::uint64_t budget = 2000) {
  PiecewiseAffine f{{AffinePiece(Guard(2, {0}), 1, 2), AffinePiece(Guard(2, {1}, 1, Integer(1)), 1, -1),
                     AffinePiece(Guard(2, {1}, 3), 1, -2)}};
  Instance inst{Mode::countable, ResidueCarrier::naturals(), ResidueCarrier::naturals(), std::move(f),
                affine(1, 0)};
  inst.step_budget = budget;
  return inst;
}

inline Value nat(std::uint64_t n) { return Integer(n); }
inline TaggedElement P(std::uint64_t n) { return p_elem(nat(n)); }
inline TaggedElement Q(std::uint64_t n) { return q_elem(nat(n)); }
inline TaggedElement P(std::string_view a) { return p_elem(Atom(a)); }
inline TaggedElement Q(std::string_view a) { return q_elem(Atom(a)); }

/// Every tagged element of a finite instance, P side first.
inline std::vector<TaggedElement> all_elements(const Instance& inst) {
  std::vector<TaggedElement> out;
  for (const auto& a : std::get<FiniteCarrier>(inst.p).atoms()) out.push_back(p_elem(a));
  for (const auto& a : std::get<FiniteCarrier>(inst.q).atoms()) out.push_back(q_elem(a));
  return out;
}

}  // namespace sb::test
