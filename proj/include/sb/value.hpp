#pragma once

#include "sb/integer.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>

namespace sb {

using Atom = std::string;

/// A carrier value: an opaque atom (finite mode) or a natural number (countable mode).
using Value = std::variant<Atom, Integer>;

enum class Polarity : bool { q_side = false, p_side = true };

constexpr Polarity flip(Polarity p) noexcept {
  return p == Polarity::p_side ? Polarity::q_side : Polarity::p_side;
}

/// A chain element: a value tagged with the carrier it is drawn from. The tag
/// keeps P and Q disjoint even when they share values.
struct TaggedElement {
  Polarity polarity;
  Value val;

  friend bool operator==(const TaggedElement&, const TaggedElement&) = default;
};

inline TaggedElement p_elem(Value v) { return {Polarity::p_side, std::move(v)}; }
inline TaggedElement q_elem(Value v) { return {Polarity::q_side, std::move(v)}; }

inline bool is_atom(const Value& v) { return std::holds_alternative<Atom>(v); }
inline bool is_natural(const Value& v) { return std::holds_alternative<Integer>(v); }

inline std::string to_string(const Value& v) {
  if (const auto* a = std::get_if<Atom>(&v)) return *a;
  return std::get<Integer>(v).str();
}

inline std::string to_string(Polarity p) { return p == Polarity::p_side ? "P" : "Q"; }

inline std::string to_string(const TaggedElement& e) {
  return to_string(e.polarity) + ":" + to_string(e.val);
}

inline std::ostream& operator<<(std::ostream& os, const TaggedElement& e) {
  return os << to_string(e);
}

/// Canonical order: naturals numerically, atoms lexicographically; then P before Q.
inline std::strong_ordering canonical_order(const TaggedElement& a, const TaggedElement& b) {
  if (a.val.index() != b.val.index()) return a.val.index() <=> b.val.index();
  if (const auto* x = std::get_if<Integer>(&a.val)) {
    const auto& y = std::get<Integer>(b.val);
    if (*x != y) return *x < y ? std::strong_ordering::less : std::strong_ordering::greater;
  } else {
    const auto c = std::get<Atom>(a.val) <=> std::get<Atom>(b.val);
    if (c != 0) return c;
  }
  if (a.polarity == b.polarity) return std::strong_ordering::equal;
  return a.polarity == Polarity::p_side ? std::strong_ordering::less
                                        : std::strong_ordering::greater;
}

struct CanonicalLess {
  bool operator()(const TaggedElement& a, const TaggedElement& b) const {
    return canonical_order(a, b) < 0;
  }
};

// Errors.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WrongValueKind : Error {
  WrongValueKind() : Error("wrong value kind") {}
};

struct NotInDomain : Error {
  explicit NotInDomain(const Value& v) : Error("not in domain: " + to_string(v)) {}
};

struct NotInImage : Error {
  explicit NotInImage(const Value& v) : Error("not in image: " + to_string(v)) {}
};

struct MalformedElement : Error {
  explicit MalformedElement(const TaggedElement& e)
      : Error("malformed chain element: " + to_string(e)) {}
};

struct BudgetExhausted : Error {
  BudgetExhausted(const TaggedElement& e, std::uint64_t steps)
      : Error("step budget exhausted after " + std::to_string(steps) +
              " steps classifying " + to_string(e)) {}
};

}  // namespace sb
