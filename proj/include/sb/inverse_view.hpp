#pragma once

#include "sb/injection.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace sb {

/// Preimage lookup for one direction of a validated instance. Finite maps get
/// a reverse table over carrier indices; piecewise-affine maps are solved on
/// demand.
class InverseView {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Solution {
    Integer value;
    std::size_t piece;
  };

  static InverseView finite(Direction d, const std::vector<std::uint32_t>& forward,
                            std::size_t codomain_size) {
    InverseView view(d);
    view.reverse_.assign(codomain_size, kNone);
    for (std::size_t i = 0; i < forward.size(); ++i)
      view.reverse_[forward[i]] = static_cast<std::uint32_t>(i);
    return view;
  }

  static InverseView affine(Direction d, PiecewiseAffine map, ResidueCarrier domain) {
    InverseView view(d);
    view.map_ = std::move(map);
    view.domain_ = std::move(domain);
    return view;
  }

  [[nodiscard]] Direction direction() const { return dir_; }

  /// Domain index mapped onto `codomain_index`, if any.
  [[nodiscard]] std::optional<std::uint32_t> preimage(std::uint32_t codomain_index) const {
    const std::uint32_t r = reverse_[codomain_index];
    if (r == kNone) return std::nullopt;
    return r;
  }

  [[nodiscard]] const std::vector<std::uint32_t>& reverse_table() const { return reverse_; }

  /// The unique domain value n and piece with piece(n) = y. Injectivity was
  /// established at validation, so the first hit is the only one.
  [[nodiscard]] std::optional<Solution> solve(const Integer& y) const {
    for (std::size_t i = 0; i < map_.pieces.size(); ++i) {
      auto n = map_.pieces[i].solve(y);
      if (n && domain_->contains(*n)) return Solution{std::move(*n), i};
    }
    return std::nullopt;
  }

 private:
  explicit InverseView(Direction d) : dir_(d) {}

  Direction dir_;
  std::vector<std::uint32_t> reverse_;
  PiecewiseAffine map_;
  std::optional<ResidueCarrier> domain_;
};

}  // namespace sb
