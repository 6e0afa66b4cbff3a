#pragma once

// Chains: stepping, the reachability preorder, initial elements and the
// cyclic / stopper / non-stopper classification.
//
// Every walk is deterministic because both maps are injective, and for the
// same reason a forward or backward walk can only revisit its own start.

#include "sb/inverses.hpp"

#include <unordered_map>
#include <variant>

namespace sb {

/// Three-valued answer for questions a bounded walk may fail to settle.
enum class Truth { no, yes, unknown };

inline Truth operator||(Truth a, Truth b) {
  if (a == Truth::yes || b == Truth::yes) return Truth::yes;
  if (a == Truth::unknown || b == Truth::unknown) return Truth::unknown;
  return Truth::no;
}

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::no: return "no";
    case Truth::yes: return "yes";
    case Truth::unknown: return "unknown";
  }
  return "unknown";
}

struct StepCount {
  std::uint64_t n = 0;
};

/// Evidence that a backward walk never terminates: between positions `offset`
/// and `offset + period` every step inverted an unbounded translation, the
/// value grew by `shift`, and the residue modulo `modulus` (a multiple of
/// every modulus in the instance) repeated. The segment therefore replays
/// forever with ever larger values.
struct DivergenceCertificate {
  TaggedElement anchor;
  std::uint64_t offset = 0;
  std::uint64_t period = 0;
  Integer shift;
  std::uint64_t modulus = 1;

  friend bool operator==(const DivergenceCertificate&, const DivergenceCertificate&) = default;
};

struct Cyclic {
  std::uint64_t period;
  friend bool operator==(const Cyclic&, const Cyclic&) = default;
};
struct PStopper {
  TaggedElement initial;
  friend bool operator==(const PStopper&, const PStopper&) = default;
};
struct QStopper {
  TaggedElement initial;
  friend bool operator==(const QStopper&, const QStopper&) = default;
};
struct NonStopper {
  DivergenceCertificate certificate;
  friend bool operator==(const NonStopper&, const NonStopper&) = default;
};
struct Unknown {
  std::uint64_t steps_spent;
  friend bool operator==(const Unknown&, const Unknown&) = default;
};

using ChainClassification = std::variant<Cyclic, PStopper, QStopper, NonStopper, Unknown>;

enum class ChainCategory { cyclic, p_stopper, q_stopper, non_stopper, unknown };

inline ChainCategory category(const ChainClassification& c) {
  return static_cast<ChainCategory>(c.index());
}

inline const char* to_string(ChainCategory c) {
  switch (c) {
    case ChainCategory::cyclic: return "cyclic";
    case ChainCategory::p_stopper: return "p-stopper";
    case ChainCategory::q_stopper: return "q-stopper";
    case ChainCategory::non_stopper: return "non-stopper";
    case ChainCategory::unknown: return "unknown";
  }
  return "unknown";
}

inline std::string to_string(const ChainClassification& c) {
  struct {
    std::string operator()(const Cyclic& x) const {
      return "cyclic (period " + std::to_string(x.period) + ")";
    }
    std::string operator()(const PStopper& x) const {
      return "p-stopper (initial " + to_string(x.initial) + ")";
    }
    std::string operator()(const QStopper& x) const {
      return "q-stopper (initial " + to_string(x.initial) + ")";
    }
    std::string operator()(const NonStopper& x) const {
      return "non-stopper (values grow by " + x.certificate.shift.str() + " every " +
             std::to_string(x.certificate.period) + " backward steps from " +
             to_string(x.certificate.anchor) + ")";
    }
    std::string operator()(const Unknown& x) const {
      return "unknown (budget of " + std::to_string(x.steps_spent) + " steps exhausted)";
    }
  } visitor;
  return std::visit(visitor, c);
}

/// Outcome of find_initial.
struct Initial {
  TaggedElement element;
  std::uint64_t distance;  // backward steps from the queried element
};
struct NoInitial {
  std::optional<std::uint64_t> cycle_period;
  std::optional<DivergenceCertificate> divergence;
};
struct Undetermined {
  std::uint64_t steps_spent;
};
using InitialSearch = std::variant<Initial, NoInitial, Undetermined>;

namespace detail {

struct Back {
  std::size_t piece = 0;
  bool translation = false;
};

class FiniteSpace {
 public:
  struct Node {
    Polarity side;
    std::uint32_t index;
    friend bool operator==(const Node&, const Node&) = default;
  };

  explicit FiniteSpace(const ValidInstance& inst) : inst_(inst) {}

  [[nodiscard]] Node to_node(const TaggedElement& e) const {
    return {e.polarity, inst_.index_of(e.polarity, std::get<Atom>(e.val))};
  }
  [[nodiscard]] TaggedElement to_element(const Node& n) const {
    return {n.side, inst_.atoms(n.side)[n.index]};
  }

  [[nodiscard]] Node step(const Node& n) const {
    return {flip(n.side), inst_.forward_index(n.side, n.index)};
  }

  /// Stores the predecessor of `n` in `out`; false when `n` is initial.
  bool back(const Node& n, Node& out, Back&) const {
    const Direction d = n.side == Polarity::p_side ? Direction::g : Direction::f;
    auto pre = inst_.inverse_view(d).preimage(n.index);
    if (!pre) return false;
    out = {flip(n.side), *pre};
    return true;
  }

  /// Every orbit of a bijection on P ⊎ Q closes within |P| + |Q| steps.
  [[nodiscard]] std::uint64_t walk_limit() const {
    return inst_.side_size(Polarity::p_side) + inst_.side_size(Polarity::q_side);
  }
  [[nodiscard]] static Truth exhausted() { return Truth::no; }
  [[nodiscard]] static bool passed(const Node&, const Node&) { return false; }

 private:
  const ValidInstance& inst_;
};

class AffineSpace {
 public:
  struct Node {
    Polarity side;
    Integer value;
    friend bool operator==(const Node&, const Node&) = default;
  };

  explicit AffineSpace(const ValidInstance& inst) : inst_(inst) {}

  [[nodiscard]] static Node to_node(const TaggedElement& e) {
    return {e.polarity, std::get<Integer>(e.val)};
  }
  [[nodiscard]] static TaggedElement to_element(const Node& n) { return {n.side, n.value}; }

  [[nodiscard]] Node step(const Node& n) const {
    const auto& pw = inst_.pieces(n.side == Polarity::p_side ? Direction::f : Direction::g);
    return {flip(n.side), pw.pieces[*pw.piece_for(n.value)].apply(n.value)};
  }

  bool back(const Node& n, Node& out, Back& how) const {
    const Direction d = n.side == Polarity::p_side ? Direction::g : Direction::f;
    auto sol = inst_.inverse_view(d).solve(n.value);
    if (!sol) return false;
    how.piece = sol->piece;
    how.translation = inst_.pieces(d).pieces[sol->piece].is_unbounded_translation();
    out.side = flip(n.side);
    out.value = std::move(sol->value);
    return true;
  }

  [[nodiscard]] std::uint64_t walk_limit() const { return inst_.step_budget(); }
  [[nodiscard]] static Truth exhausted() { return Truth::unknown; }

  /// Values never decrease along a chain, so once past the target's value
  /// the target is out of reach.
  [[nodiscard]] bool passed(const Node& cur, const Node& target) const {
    return inst_.forward_nondecreasing() && cur.value > target.value;
  }

  /// Modulus for divergence tracking; absent when no backward translation
  /// can increase a value, so no certificate could ever be issued.
  [[nodiscard]] std::optional<std::uint64_t> chain_modulus() const {
    if (!inst_.has_shrinking_translation()) return std::nullopt;
    return inst_.chain_modulus();
  }

 private:
  const ValidInstance& inst_;
};

template <class Space>
Truth reaches(const Space& space, const typename Space::Node& from, const typename Space::Node& to) {
  auto cur = from;
  const std::uint64_t limit = space.walk_limit();
  for (std::uint64_t steps = 0;; ++steps) {
    if (cur == to) return Truth::yes;
    if (steps == limit) return Space::exhausted();
    if (space.passed(cur, to)) return Truth::no;
    cur = space.step(cur);
    if (cur == from) return Truth::no;
  }
}

// Tracks (side, value mod M) along a backward walk to certify divergence.
class DivergenceTracker {
 public:
  explicit DivergenceTracker(std::optional<std::uint64_t> modulus) : modulus_(modulus) {}

  template <class Node>
  std::optional<DivergenceCertificate> observe(const Node& n, std::uint64_t position,
                                               bool translation_step) {
    if (!modulus_) return std::nullopt;
    if (!translation_step) {
      last_irregular_ = position;
      seen_.clear();
    }
    const std::uint64_t residue = *modulus_ == 1 ? 0 : floor_mod(n.value, *modulus_);
    const std::uint64_t key = residue * 2 + (n.side == Polarity::p_side ? 1 : 0);
    auto [it, fresh] = seen_.try_emplace(key, Seen{position, n.value});
    if (fresh) return std::nullopt;
    Seen& prev = it->second;
    if (prev.position >= last_irregular_ && n.value > prev.value) {
      return DivergenceCertificate{{n.side, prev.value}, prev.position, position - prev.position,
                                   n.value - prev.value, *modulus_};
    }
    prev = Seen{position, n.value};
    return std::nullopt;
  }

 private:
  struct Seen {
    std::uint64_t position;
    Integer value;
  };
  std::optional<std::uint64_t> modulus_;
  std::uint64_t last_irregular_ = 0;
  std::unordered_map<std::uint64_t, Seen> seen_;
};

template <class Space>
InitialSearch walk_back(const Space& space, const typename Space::Node& start) {
  constexpr bool affine = std::is_same_v<Space, AffineSpace>;
  auto cur = start;
  auto next = start;
  Back how;
  std::optional<DivergenceTracker> tracker;
  if constexpr (affine) {
    tracker.emplace(space.chain_modulus());
    tracker->observe(cur, 0, true);
  }
  const std::uint64_t limit = space.walk_limit();
  for (std::uint64_t steps = 0;;) {
    if (!space.back(cur, next, how)) return Initial{space.to_element(cur), steps};
    if (steps == limit) return Undetermined{steps};
    std::swap(cur, next);
    ++steps;
    if (cur == start) return NoInitial{steps, std::nullopt};
    if constexpr (affine) {
      if (auto cert = tracker->observe(cur, steps, how.translation))
        return NoInitial{std::nullopt, std::move(cert)};
    }
  }
}

template <class F>
decltype(auto) with_space(const ValidInstance& inst, F&& fn) {
  if (inst.finite()) return fn(FiniteSpace(inst));
  return fn(AffineSpace(inst));
}

}  // namespace detail

/// One step right: f from the P side, g from the Q side.
inline TaggedElement chain_step(const ValidInstance& inst, const TaggedElement& e) {
  inst.require_well_formed(e);
  return detail::with_space(inst, [&](const auto& space) {
    return space.to_element(space.step(space.to_node(e)));
  });
}

inline TaggedElement chain_steps(const ValidInstance& inst, const TaggedElement& e, StepCount n) {
  inst.require_well_formed(e);
  return detail::with_space(inst, [&](const auto& space) {
    auto cur = space.to_node(e);
    std::uint64_t remaining = n.n;
    if constexpr (std::is_same_v<std::decay_t<decltype(space)>, detail::FiniteSpace>) {
      // Finite chains are cycles; only the remainder modulo the period matters.
      std::uint64_t period = 0;
      auto probe = cur;
      do {
        probe = space.step(probe);
        ++period;
      } while (!(probe == cur) && period < remaining);
      if (probe == cur) remaining %= period;
    }
    for (; remaining > 0; --remaining) cur = space.step(cur);
    return space.to_element(cur);
  });
}

/// x ⊑ y: some number of steps right from x reaches y.
inline Truth chain_le(const ValidInstance& inst, const TaggedElement& x, const TaggedElement& y) {
  if (!inst.well_formed(x) || !inst.well_formed(y)) return x == y ? Truth::yes : Truth::no;
  return detail::with_space(inst, [&](const auto& space) {
    return detail::reaches(space, space.to_node(x), space.to_node(y));
  });
}

/// Same chain: x ⊑ y or y ⊑ x. Falls back to equality off the carriers.
inline Truth chain_eq(const ValidInstance& inst, const TaggedElement& x, const TaggedElement& y) {
  if (!inst.well_formed(x) || !inst.well_formed(y)) return x == y ? Truth::yes : Truth::no;
  const Truth forward = chain_le(inst, x, y);
  if (forward == Truth::yes) return forward;
  return forward || chain_le(inst, y, x);
}

/// Not in the image of the map leading into it (g for P-side, f for Q-side).
inline bool is_initial(const ValidInstance& inst, const TaggedElement& e) {
  inst.require_well_formed(e);
  return !in_image(inst, e.polarity == Polarity::p_side ? Direction::g : Direction::f, e.val);
}

/// Walks left from `e` to the chain's initial element. Unique when it exists,
/// so the search is canonical.
inline InitialSearch find_initial(const ValidInstance& inst, const TaggedElement& e) {
  inst.require_well_formed(e);
  return detail::with_space(inst, [&](const auto& space) {
    return detail::walk_back(space, space.to_node(e));
  });
}

inline ChainClassification classify_chain(const ValidInstance& inst, const TaggedElement& e) {
  const InitialSearch found = find_initial(inst, e);
  if (const auto* i = std::get_if<Initial>(&found)) {
    if (i->element.polarity == Polarity::p_side) return PStopper{i->element};
    return QStopper{i->element};
  }
  if (const auto* none = std::get_if<NoInitial>(&found)) {
    if (none->cycle_period) return Cyclic{*none->cycle_period};
    return NonStopper{*none->divergence};
  }
  return Unknown{std::get<Undetermined>(found).steps_spent};
}

inline Truth in_q_stopper(const ValidInstance& inst, const TaggedElement& e) {
  const auto c = classify_chain(inst, e);
  if (std::holds_alternative<Unknown>(c)) return Truth::unknown;
  return std::holds_alternative<QStopper>(c) ? Truth::yes : Truth::no;
}

}  // namespace sb
