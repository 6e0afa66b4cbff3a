#pragma once

#include "sb/instance.hpp"
#include "sb/inverse_view.hpp"

namespace sb {

struct InvalidInstance : Error {
  explicit InvalidInstance(ValidationReport r)
      : Error("invalid instance: " + summary(r)), report(std::move(r)) {}

  ValidationReport report;

 private:
  static std::string summary(const ValidationReport& r) {
    return r.violations.empty() ? std::string("no violations")
                                : to_string(r.violations.front()) +
                                      (r.violations.size() > 1
                                           ? " (+" + std::to_string(r.violations.size() - 1) + " more)"
                                           : "");
  }
};

/// An instance that has passed validate_instance, together with the lookup
/// structures every chain operation relies on. Immutable after construction.
class ValidInstance {
 public:
  explicit ValidInstance(Instance inst) : inst_(std::move(inst)) {
    auto report = validate_instance(inst_);
    if (!report.ok()) throw InvalidInstance(std::move(report));
    if (inst_.mode == Mode::finite)
      index_finite();
    else
      index_countable();
  }

  [[nodiscard]] const Instance& instance() const { return inst_; }
  [[nodiscard]] Mode mode() const { return inst_.mode; }
  [[nodiscard]] bool finite() const { return inst_.mode == Mode::finite; }
  [[nodiscard]] std::uint64_t step_budget() const { return inst_.step_budget; }

  [[nodiscard]] const Carrier& carrier(Polarity side) const {
    return side == Polarity::p_side ? inst_.p : inst_.q;
  }

  [[nodiscard]] const InverseView& inverse_view(Direction d) const {
    return d == Direction::f ? f_inverse_ : g_inverse_;
  }

  [[nodiscard]] bool well_formed(const TaggedElement& e) const {
    const Carrier& c = carrier(e.polarity);
    if (is_finite(c) != is_atom(e.val)) return false;
    return member(c, e.val);
  }

  void require_well_formed(const TaggedElement& e) const {
    if (!well_formed(e)) throw MalformedElement(e);
  }

  // Finite mode: carriers indexed by position.

  [[nodiscard]] std::size_t side_size(Polarity side) const {
    return atoms(side).size();
  }
  [[nodiscard]] const std::vector<Atom>& atoms(Polarity side) const {
    return std::get<FiniteCarrier>(carrier(side)).atoms();
  }
  [[nodiscard]] std::uint32_t index_of(Polarity side, const Atom& a) const {
    return static_cast<std::uint32_t>(*std::get<FiniteCarrier>(carrier(side)).index_of(a));
  }
  /// f on P-side indices, g on Q-side indices.
  [[nodiscard]] std::uint32_t forward_index(Polarity side, std::uint32_t i) const {
    return side == Polarity::p_side ? f_forward_[i] : g_forward_[i];
  }

  // Countable mode.

  [[nodiscard]] const PiecewiseAffine& pieces(Direction d) const {
    return std::get<PiecewiseAffine>(map_of(inst_, d));
  }
  /// lcm of every modulus in the instance, when small enough to track.
  [[nodiscard]] std::optional<std::uint64_t> chain_modulus() const { return chain_modulus_; }
  /// True when every piece satisfies a·n + b >= n on its guard, so values
  /// never decrease along a chain.
  [[nodiscard]] bool forward_nondecreasing() const { return nondecreasing_; }
  /// True when some piece is n ↦ n + b with b < 0 on an unbounded guard.
  [[nodiscard]] bool has_shrinking_translation() const { return shrinking_translation_; }

 private:
  void index_finite() {
    const auto& p = std::get<FiniteCarrier>(inst_.p);
    const auto& q = std::get<FiniteCarrier>(inst_.q);
    auto build = [](const FiniteTable& t, const FiniteCarrier& dom, const FiniteCarrier& cod) {
      std::vector<std::uint32_t> out(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i)
        out[i] = static_cast<std::uint32_t>(*cod.index_of(*t.find(dom.atoms()[i])));
      return out;
    };
    f_forward_ = build(std::get<FiniteTable>(inst_.f), p, q);
    g_forward_ = build(std::get<FiniteTable>(inst_.g), q, p);
    f_inverse_ = InverseView::finite(Direction::f, f_forward_, q.size());
    g_inverse_ = InverseView::finite(Direction::g, g_forward_, p.size());
  }

  void index_countable() {
    const auto& p = std::get<ResidueCarrier>(inst_.p);
    const auto& q = std::get<ResidueCarrier>(inst_.q);
    f_inverse_ = InverseView::affine(Direction::f, pieces(Direction::f), p);
    g_inverse_ = InverseView::affine(Direction::g, pieces(Direction::g), q);

    constexpr std::uint64_t cap = std::uint64_t{1} << 40;
    chain_modulus_ = checked_lcm(p.modulus(), q.modulus(), cap);
    nondecreasing_ = true;
    for (Direction d : {Direction::f, Direction::g}) {
      for (const auto& piece : pieces(d).pieces) {
        if (chain_modulus_) chain_modulus_ = checked_lcm(*chain_modulus_, piece.guard.modulus, cap);
        if ((piece.a - 1) * piece.guard.lo + piece.b < 0) nondecreasing_ = false;
        if (piece.is_unbounded_translation() && piece.b < 0) shrinking_translation_ = true;
      }
    }
  }

  Instance inst_;
  std::vector<std::uint32_t> f_forward_, g_forward_;
  InverseView f_inverse_ = InverseView::finite(Direction::f, {}, 0);
  InverseView g_inverse_ = InverseView::finite(Direction::g, {}, 0);
  std::optional<std::uint64_t> chain_modulus_;
  bool nondecreasing_ = false;
  bool shrinking_translation_ = false;
};

}  // namespace sb
