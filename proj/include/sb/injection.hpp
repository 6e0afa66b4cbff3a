#pragma once

#include "sb/carrier.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sb {

/// Lookup table from domain atoms to codomain atoms. Entries keep their
/// document order; repeated keys are retained so validation can report them.
class FiniteTable {
 public:
  FiniteTable() = default;
  explicit FiniteTable(std::vector<std::pair<Atom, Atom>> entries) : entries_(std::move(entries)) {
    lookup_.reserve(entries_.size());
    for (const auto& [k, v] : entries_) lookup_.emplace(k, v);
  }

  [[nodiscard]] const std::vector<std::pair<Atom, Atom>>& entries() const { return entries_; }

  [[nodiscard]] const Atom* find(const Atom& key) const {
    auto it = lookup_.find(key);
    return it == lookup_.end() ? nullptr : &it->second;
  }

  friend bool operator==(const FiniteTable& a, const FiniteTable& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<std::pair<Atom, Atom>> entries_;
  std::unordered_map<Atom, Atom> lookup_;
};

/// Inputs n with n mod modulus ∈ residues and lo <= n <= hi.
struct Guard {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> residues{0};
  Integer lo = 0;
  std::optional<Integer> hi;

  Guard() = default;
  Guard(std::uint64_t m, std::vector<std::uint64_t> rs, Integer low = 0,
        std::optional<Integer> high = std::nullopt)
      : modulus(m), residues(std::move(rs)), lo(std::move(low)), hi(std::move(high)) {
    if (modulus == 0) throw std::invalid_argument("guard modulus must be >= 1");
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    if (residues.empty()) throw std::invalid_argument("guard residue set must be non-empty");
    if (residues.back() >= modulus) throw std::invalid_argument("guard residue out of range");
    if (lo < 0) throw std::invalid_argument("guard range must be non-negative");
    if (hi && *hi < lo) throw std::invalid_argument("guard range is empty");
  }

  /// Everything in [lo, hi].
  static Guard range(Integer low, std::optional<Integer> high = std::nullopt) {
    return {1, {0}, std::move(low), std::move(high)};
  }

  [[nodiscard]] bool admits(const Integer& n) const {
    if (n < lo || (hi && n > *hi)) return false;
    if (modulus == 1) return true;
    return std::binary_search(residues.begin(), residues.end(), floor_mod(n, modulus));
  }

  friend bool operator==(const Guard&, const Guard&) = default;
};

/// n ↦ a·n + b on inputs admitted by the guard.
struct AffinePiece {
  Guard guard;
  Integer a = 1;
  Integer b = 0;

  AffinePiece() = default;
  AffinePiece(Guard g, Integer coeff, Integer offset)
      : guard(std::move(g)), a(std::move(coeff)), b(std::move(offset)) {
    if (a < 1) throw std::invalid_argument("coefficient must be >= 1");
  }

  [[nodiscard]] Integer apply(const Integer& n) const { return a * n + b; }

  /// The unique n with a·n + b = y admitted by the guard, if any.
  [[nodiscard]] std::optional<Integer> solve(const Integer& y) const {
    Integer diff = y - b;
    if (diff < 0) return std::nullopt;
    Integer n;
    if (a == 1) {
      n = std::move(diff);
    } else {
      Integer rem;
      boost::multiprecision::divide_qr(diff, a, n, rem);
      if (rem != 0) return std::nullopt;
    }
    if (!guard.admits(n)) return std::nullopt;
    return n;
  }

  /// True when the piece is a pure shift valid on an unbounded tail.
  [[nodiscard]] bool is_unbounded_translation() const { return a == 1 && !guard.hi; }

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

struct PiecewiseAffine {
  std::vector<AffinePiece> pieces;

  /// Index of the first piece whose guard admits n.
  [[nodiscard]] std::optional<std::size_t> piece_for(const Integer& n) const {
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].guard.admits(n)) return i;
    return std::nullopt;
  }

  friend bool operator==(const PiecewiseAffine&, const PiecewiseAffine&) = default;
};

using InjectionMap = std::variant<FiniteTable, PiecewiseAffine>;

/// Which of the two injections: f maps P into Q, g maps Q into P.
enum class Direction { f, g };

inline const char* to_string(Direction d) { return d == Direction::f ? "f" : "g"; }

/// Applies `m` to a value of its domain carrier.
inline Value apply_map(const InjectionMap& m, const Carrier& domain, const Value& v) {
  if (!member(domain, v)) throw NotInDomain(v);
  if (const auto* table = std::get_if<FiniteTable>(&m)) {
    const auto* a = std::get_if<Atom>(&v);
    if (!a) throw WrongValueKind();
    const Atom* out = table->find(*a);
    if (!out) throw NotInDomain(v);
    return *out;
  }
  const auto* n = std::get_if<Integer>(&v);
  if (!n) throw WrongValueKind();
  const auto& pw = std::get<PiecewiseAffine>(m);
  const auto i = pw.piece_for(*n);
  if (!i) throw NotInDomain(v);
  return pw.pieces[*i].apply(*n);
}

}  // namespace sb
