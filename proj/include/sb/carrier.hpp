#pragma once

#include "sb/value.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

namespace sb {

/// An explicit set of atoms. Construction keeps the given order (and any
/// duplicates, which validation reports).
class FiniteCarrier {
 public:
  FiniteCarrier() = default;
  explicit FiniteCarrier(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    index_.reserve(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);
  }

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] std::size_t size() const { return atoms_.size(); }
  [[nodiscard]] bool contains(const Atom& a) const { return index_.contains(a); }

  /// Position of the first occurrence of `a`.
  [[nodiscard]] std::optional<std::size_t> index_of(const Atom& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const FiniteCarrier& a, const FiniteCarrier& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, std::size_t> index_;
};

/// { n ∈ ℕ : n mod modulus ∈ residues }.
class ResidueCarrier {
 public:
  ResidueCarrier(std::uint64_t modulus, std::vector<std::uint64_t> residues)
      : modulus_(modulus), residues_(std::move(residues)) {
    if (modulus_ == 0) throw std::invalid_argument("modulus must be >= 1");
    std::sort(residues_.begin(), residues_.end());
    residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
    if (residues_.empty()) throw std::invalid_argument("residue set must be non-empty");
    if (residues_.back() >= modulus_) throw std::invalid_argument("residue out of range");
  }

  /// All naturals.
  static ResidueCarrier naturals() { return {1, {0}}; }

  [[nodiscard]] std::uint64_t modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<std::uint64_t>& residues() const { return residues_; }

  [[nodiscard]] bool has_residue(std::uint64_t r) const {
    return std::binary_search(residues_.begin(), residues_.end(), r);
  }

  [[nodiscard]] bool contains(const Integer& n) const {
    if (n < 0) return false;
    return modulus_ == 1 || has_residue(floor_mod(n, modulus_));
  }

  friend bool operator==(const ResidueCarrier&, const ResidueCarrier&) = default;

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> residues_;
};

using Carrier = std::variant<FiniteCarrier, ResidueCarrier>;

inline bool is_finite(const Carrier& c) { return std::holds_alternative<FiniteCarrier>(c); }

inline bool member(const Carrier& c, const Value& v) {
  if (const auto* fc = std::get_if<FiniteCarrier>(&c)) {
    const auto* a = std::get_if<Atom>(&v);
    if (!a) throw WrongValueKind();
    return fc->contains(*a);
  }
  const auto* n = std::get_if<Integer>(&v);
  if (!n) throw WrongValueKind();
  return std::get<ResidueCarrier>(c).contains(*n);
}

}  // namespace sb
