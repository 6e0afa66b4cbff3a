#pragma once

// Image membership and exact inverses of f and g.

#include "sb/valid_instance.hpp"

namespace sb {

namespace detail {

inline bool kind_matches(const Carrier& c, const Value& v) { return is_finite(c) == is_atom(v); }

inline std::optional<Value> preimage(const ValidInstance& inst, Direction d, const Value& x) {
  const Carrier& cod = codomain_of(inst.instance(), d);
  if (!kind_matches(cod, x) || !member(cod, x)) return std::nullopt;
  const InverseView& view = inst.inverse_view(d);
  if (inst.finite()) {
    const Polarity cod_side = d == Direction::f ? Polarity::q_side : Polarity::p_side;
    auto i = view.preimage(inst.index_of(cod_side, std::get<Atom>(x)));
    if (!i) return std::nullopt;
    return inst.atoms(flip(cod_side))[*i];
  }
  auto sol = view.solve(std::get<Integer>(x));
  if (!sol) return std::nullopt;
  return std::move(sol->value);
}

}  // namespace detail

/// True iff `inv` lies in the domain of `d`, `x` in its codomain, and d(inv) = x.
inline bool is_inverse(const ValidInstance& inst, Direction d, const Value& inv, const Value& x) {
  const Instance& raw = inst.instance();
  const Carrier& dom = domain_of(raw, d);
  const Carrier& cod = codomain_of(raw, d);
  if (!detail::kind_matches(dom, inv) || !detail::kind_matches(cod, x)) return false;
  if (!member(dom, inv) || !member(cod, x)) return false;
  return apply_map(raw, d, inv) == x;
}

inline bool in_image(const ValidInstance& inst, Direction d, const Value& x) {
  return detail::preimage(inst, d, x).has_value();
}

/// The unique preimage of `x` under `d`; throws NotInImage when none exists.
inline Value inverse(const ValidInstance& inst, Direction d, const Value& x) {
  auto v = detail::preimage(inst, d, x);
  if (!v) throw NotInImage(x);
  return std::move(*v);
}

}  // namespace sb
