#pragma once

// Instances (P, Q, f, g) and their validation.

#include "sb/injection.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sb {

enum class Mode { finite, countable };

inline constexpr std::uint64_t kDefaultStepBudget = 10'000;

struct Instance {
  Mode mode = Mode::finite;
  Carrier p;
  Carrier q;
  InjectionMap f;
  InjectionMap g;
  std::uint64_t step_budget = kDefaultStepBudget;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class ViolationKind {
  kind_mismatch,
  duplicate_atom,
  duplicate_key,
  key_outside_domain,
  not_total,
  overlapping_guards,
  negative_output,
  codomain_violation,
  not_injective,
  zero_budget,
  resource_limit,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kind_mismatch: return "kind-mismatch";
    case ViolationKind::duplicate_atom: return "duplicate-atom";
    case ViolationKind::duplicate_key: return "duplicate-key";
    case ViolationKind::key_outside_domain: return "key-outside-domain";
    case ViolationKind::not_total: return "not-total";
    case ViolationKind::overlapping_guards: return "overlapping-guards";
    case ViolationKind::negative_output: return "negative-output";
    case ViolationKind::codomain_violation: return "codomain-violation";
    case ViolationKind::not_injective: return "not-injective";
    case ViolationKind::zero_budget: return "zero-budget";
    case ViolationKind::resource_limit: return "resource-limit";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string subject;  // "p", "q", "f", "g" or "budget"
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string to_string(const Violation& v) {
  return std::string(to_string(v.kind)) + " (" + v.subject + "): " + v.detail;
}

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool has(ViolationKind k) const {
    for (const auto& v : violations)
      if (v.kind == k) return true;
    return false;
  }
};

/// Ceiling on lcm(all moduli) and on the number of (piece, residue class)
/// cells examined when validating countable maps.
inline constexpr std::uint64_t kValidationModulusCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kValidationCellCap = std::uint64_t{1} << 22;

namespace detail {

inline void check_finite_carrier(const FiniteCarrier& c, const char* name, ValidationReport& out) {
  std::unordered_set<Atom> seen;
  for (const auto& a : c.atoms())
    if (!seen.insert(a).second)
      out.violations.push_back({ViolationKind::duplicate_atom, name, "atom '" + a + "' repeated"});
}

inline void check_finite_map(const FiniteTable& table, const FiniteCarrier& dom,
                             const FiniteCarrier& cod, const char* name, ValidationReport& out) {
  std::unordered_set<Atom> keys;
  std::unordered_map<Atom, Atom> hit;  // image value -> first key
  for (const auto& [k, v] : table.entries()) {
    if (!keys.insert(k).second) {
      out.violations.push_back({ViolationKind::duplicate_key, name, "key '" + k + "' repeated"});
      continue;
    }
    if (!dom.contains(k))
      out.violations.push_back(
          {ViolationKind::key_outside_domain, name, "key '" + k + "' is not in the domain"});
    if (!cod.contains(v))
      out.violations.push_back({ViolationKind::codomain_violation, name,
                                "'" + k + "' maps to '" + v + "' outside the codomain"});
    auto [it, fresh] = hit.emplace(v, k);
    if (!fresh)
      out.violations.push_back({ViolationKind::not_injective, name,
                                "'" + it->second + "' and '" + k + "' both map to '" + v + "'"});
  }
  std::unordered_set<Atom> reported;
  for (const auto& a : dom.atoms())
    if (!keys.contains(a) && reported.insert(a).second)
      out.violations.push_back({ViolationKind::not_total, name, "no entry for '" + a + "'"});
}

// One residue class modulo the common modulus inside one piece's guard.
struct Cell {
  std::size_t piece;
  Progression inputs;  // non-empty
  Progression image;   // {a·n + b : n ∈ inputs}
};

inline void check_affine_map(const PiecewiseAffine& map, const ResidueCarrier& dom,
                             const ResidueCarrier& cod, const char* name, ValidationReport& out) {
  std::optional<std::uint64_t> common = checked_lcm(dom.modulus(), cod.modulus(), kValidationModulusCap);
  for (const auto& piece : map.pieces) {
    if (!common) break;
    common = checked_lcm(*common, piece.guard.modulus, kValidationModulusCap);
  }
  if (!common || *common * std::max<std::size_t>(map.pieces.size(), 1) > kValidationCellCap) {
    out.violations.push_back({ViolationKind::resource_limit, name,
                              "moduli too large to validate exactly"});
    return;
  }
  const std::uint64_t L = *common;
  const Integer big_l = L;

  std::vector<Cell> cells;
  std::size_t coverage_failures = 0;
  std::size_t overlap_failures = 0;
  for (std::uint64_t t = 0; t < L; ++t) {
    if (!dom.has_residue(t % dom.modulus())) continue;
    std::vector<std::size_t> local;
    for (std::size_t i = 0; i < map.pieces.size(); ++i) {
      const auto& piece = map.pieces[i];
      const Guard& gd = piece.guard;
      if (!std::binary_search(gd.residues.begin(), gd.residues.end(), t % gd.modulus)) continue;
      Progression inputs{{t, big_l}, gd.lo, gd.hi};
      auto first = inputs.first();
      if (!first) continue;
      inputs.lo = *first;
      if (auto last = inputs.last()) inputs.hi = *last;
      const Integer img_lo = piece.apply(inputs.lo);
      Progression image{{floor_mod(img_lo, Integer(piece.a * big_l)), piece.a * big_l}, img_lo,
                        std::nullopt};
      if (inputs.hi) image.hi = piece.apply(*inputs.hi);
      local.push_back(cells.size());
      cells.push_back({i, std::move(inputs), std::move(image)});
    }

    // Sweep the class t + kL in increasing order: every member must be
    // covered by exactly one guard.
    std::sort(local.begin(), local.end(), [&](std::size_t x, std::size_t y) {
      return cells[x].inputs.lo < cells[y].inputs.lo;
    });
    Integer need = t;  // smallest class member not yet covered
    Integer reach;     // largest member covered so far
    bool any = false, unbounded = false;
    for (std::size_t idx : local) {
      const Cell& c = cells[idx];
      if (any && (unbounded || reach >= c.inputs.lo) && ++overlap_failures <= 8)
        out.violations.push_back({ViolationKind::overlapping_guards, name,
                                  "piece " + std::to_string(c.piece) +
                                      " overlaps an earlier piece at " + c.inputs.lo.str()});
      if (!unbounded && c.inputs.lo > need && ++coverage_failures <= 8)
        out.violations.push_back({ViolationKind::not_total, name, "no piece admits " + need.str()});
      if (!c.inputs.hi)
        unbounded = true;
      else if (!any || *c.inputs.hi > reach)
        reach = *c.inputs.hi;
      any = true;
      if (!unbounded) need = reach + big_l;
    }
    if (!unbounded && ++coverage_failures <= 8)
      out.violations.push_back({ViolationKind::not_total, name, "no piece admits " + need.str()});
  }

  // Outputs: non-negative and inside the codomain. Since cod.modulus() | L,
  // the output residue mod cod.modulus() is constant on each cell.
  std::size_t negative = 0, outside = 0;
  for (const auto& c : cells) {
    if (c.image.lo < 0 && ++negative <= 8)
      out.violations.push_back({ViolationKind::negative_output, name,
                                "piece " + std::to_string(c.piece) + " maps " + c.inputs.lo.str() +
                                    " to " + c.image.lo.str()});
    if (c.image.lo >= 0 && !cod.has_residue(floor_mod(c.image.lo, cod.modulus())) &&
        ++outside <= 8)
      out.violations.push_back({ViolationKind::codomain_violation, name,
                                "piece " + std::to_string(c.piece) + " maps " + c.inputs.lo.str() +
                                    " to " + c.image.lo.str() + " outside the codomain"});
  }

  // Injectivity: a >= 1 makes each cell injective, so it remains to show the
  // image progressions are pairwise disjoint. Cells sharing a step are
  // compared by sorting; differing steps pairwise via the CRT.
  std::map<Integer, std::vector<std::size_t>> by_step;
  for (std::size_t i = 0; i < cells.size(); ++i) by_step[cells[i].image.cls.modulus].push_back(i);
  std::size_t collisions = 0;
  auto report = [&](const Cell& x, const Cell& y, const Integer& v) {
    if (++collisions <= 8)
      out.violations.push_back({ViolationKind::not_injective, name,
                                "pieces " + std::to_string(x.piece) + " and " +
                                    std::to_string(y.piece) + " both reach " + v.str()});
  };
  for (auto& [step, members] : by_step) {
    std::sort(members.begin(), members.end(), [&](std::size_t x, std::size_t y) {
      const auto& a = cells[x].image;
      const auto& b = cells[y].image;
      if (a.cls.residue != b.cls.residue) return a.cls.residue < b.cls.residue;
      return a.lo < b.lo;
    });
    for (std::size_t k = 1; k < members.size(); ++k) {
      const Cell& x = cells[members[k - 1]];
      const Cell& y = cells[members[k]];
      if (x.image.cls.residue == y.image.cls.residue && (!x.image.hi || *x.image.hi >= y.image.lo))
        report(x, y, y.image.lo);
    }
  }
  for (auto it = by_step.begin(); it != by_step.end(); ++it)
    for (auto jt = std::next(it); jt != by_step.end(); ++jt)
      for (std::size_t x : it->second)
        for (std::size_t y : jt->second)
          if (auto both = intersect(cells[x].image, cells[y].image))
            report(cells[x], cells[y], *both->first());
}

}  // namespace detail

/// Collects every violation of the instance's constraints. An empty report
/// means f maps P injectively and totally into Q and g maps Q likewise into P.
inline ValidationReport validate_instance(const Instance& inst) {
  ValidationReport out;
  const bool finite = inst.mode == Mode::finite;
  auto kinds_ok = [&](const Carrier& c) { return is_finite(c) == finite; };
  auto map_ok = [&](const InjectionMap& m) {
    return std::holds_alternative<FiniteTable>(m) == finite;
  };
  if (!kinds_ok(inst.p))
    out.violations.push_back({ViolationKind::kind_mismatch, "p", "carrier kind does not match mode"});
  if (!kinds_ok(inst.q))
    out.violations.push_back({ViolationKind::kind_mismatch, "q", "carrier kind does not match mode"});
  if (!map_ok(inst.f))
    out.violations.push_back({ViolationKind::kind_mismatch, "f", "map kind does not match mode"});
  if (!map_ok(inst.g))
    out.violations.push_back({ViolationKind::kind_mismatch, "g", "map kind does not match mode"});
  if (!out.ok()) return out;

  if (finite) {
    const auto& p = std::get<FiniteCarrier>(inst.p);
    const auto& q = std::get<FiniteCarrier>(inst.q);
    detail::check_finite_carrier(p, "p", out);
    detail::check_finite_carrier(q, "q", out);
    detail::check_finite_map(std::get<FiniteTable>(inst.f), p, q, "f", out);
    detail::check_finite_map(std::get<FiniteTable>(inst.g), q, p, "g", out);
  } else {
    const auto& p = std::get<ResidueCarrier>(inst.p);
    const auto& q = std::get<ResidueCarrier>(inst.q);
    detail::check_affine_map(std::get<PiecewiseAffine>(inst.f), p, q, "f", out);
    detail::check_affine_map(std::get<PiecewiseAffine>(inst.g), q, p, "g", out);
    if (inst.step_budget == 0)
      out.violations.push_back({ViolationKind::zero_budget, "budget", "step budget must be >= 1"});
  }
  return out;
}

inline const Carrier& domain_of(const Instance& inst, Direction d) {
  return d == Direction::f ? inst.p : inst.q;
}
inline const Carrier& codomain_of(const Instance& inst, Direction d) {
  return d == Direction::f ? inst.q : inst.p;
}
inline const InjectionMap& map_of(const Instance& inst, Direction d) {
  return d == Direction::f ? inst.f : inst.g;
}

inline Value apply_map(const Instance& inst, Direction d, const Value& v) {
  return apply_map(map_of(inst, d), domain_of(inst, d), v);
}

}  // namespace sb
