#pragma once

// Reference computations used to cross-check the library. They work from the
// raw Instance data with plain containers and never call chain or inverse code.

#include "sb/sb.hpp"

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

namespace sb::test {

/// The step graph of a finite instance with elements numbered 0..|P|+|Q|-1,
/// P-side atoms first.
struct StepGraph {
  std::vector<TaggedElement> elems;
  std::map<std::pair<bool, Atom>, std::size_t> id;
  std::vector<std::size_t> next;

  explicit StepGraph(const Instance& inst) {
    auto add_side = [&](const Carrier& c, Polarity pol) {
      for (const auto& a : std::get<FiniteCarrier>(c).atoms()) {
        id.emplace(std::pair{pol == Polarity::p_side, a}, elems.size());
        elems.push_back({pol, a});
      }
    };
    add_side(inst.p, Polarity::p_side);
    add_side(inst.q, Polarity::q_side);
    std::map<Atom, Atom> f, g;
    for (const auto& [k, v] : std::get<FiniteTable>(inst.f).entries()) f[k] = v;
    for (const auto& [k, v] : std::get<FiniteTable>(inst.g).entries()) g[k] = v;
    next.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const auto& a = std::get<Atom>(elems[i].val);
      const bool p = elems[i].polarity == Polarity::p_side;
      next[i] = id.at({!p, p ? f.at(a) : g.at(a)});
    }
  }

  [[nodiscard]] std::size_t size() const { return elems.size(); }
  [[nodiscard]] std::size_t index(const TaggedElement& e) const {
    return id.at({e.polarity == Polarity::p_side, std::get<Atom>(e.val)});
  }

  /// reach[x][y]: y is reachable from x in zero or more forward steps.
  [[nodiscard]] std::vector<std::vector<bool>> reach() const {
    std::vector<std::vector<bool>> r(size(), std::vector<bool>(size(), false));
    for (std::size_t x = 0; x < size(); ++x) {
      std::size_t cur = x;
      for (std::size_t k = 0; k <= size(); ++k) {
        r[x][cur] = true;
        cur = next[cur];
      }
    }
    return r;
  }

  /// Connected components of the undirected step graph, by BFS.
  [[nodiscard]] std::vector<std::size_t> components() const {
    std::vector<std::vector<std::size_t>> adj(size());
    for (std::size_t i = 0; i < size(); ++i) {
      adj[i].push_back(next[i]);
      adj[next[i]].push_back(i);
    }
    std::vector<std::size_t> comp(size(), SIZE_MAX);
    std::size_t label = 0;
    for (std::size_t s = 0; s < size(); ++s) {
      if (comp[s] != SIZE_MAX) continue;
      std::queue<std::size_t> todo;
      todo.push(s);
      comp[s] = label;
      while (!todo.empty()) {
        const std::size_t u = todo.front();
        todo.pop();
        for (std::size_t v : adj[u])
          if (comp[v] == SIZE_MAX) {
            comp[v] = label;
            todo.push(v);
          }
      }
      ++label;
    }
    return comp;
  }

  /// Elements with no incoming step edge.
  [[nodiscard]] std::vector<bool> sources() const {
    std::vector<bool> hit(size(), false);
    for (std::size_t n : next) hit[n] = true;
    std::vector<bool> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = !hit[i];
    return out;
  }

  /// Length of the forward cycle through x, if x lies on one.
  [[nodiscard]] std::optional<std::size_t> cycle_length(std::size_t x) const {
    std::size_t cur = next[x];
    for (std::size_t k = 1; k <= size(); ++k, cur = next[cur])
      if (cur == x) return k;
    return std::nullopt;
  }
};

/// Direct evaluation of a piecewise-affine map: every admitting piece's
/// output, checked by hand against the guard fields.
inline std::vector<Integer> evaluate_all(const PiecewiseAffine& m, const Integer& n) {
  std::vector<Integer> out;
  for (const auto& piece : m.pieces) {
    const auto& gd = piece.guard;
    const std::uint64_t r = static_cast<std::uint64_t>(n % gd.modulus);
    const bool in_class = std::find(gd.residues.begin(), gd.residues.end(), r) != gd.residues.end();
    if (in_class && n >= gd.lo && (!gd.hi || n <= *gd.hi)) out.push_back(piece.a * n + piece.b);
  }
  return out;
}

inline bool residue_member(const ResidueCarrier& c, const Integer& n) {
  if (n < 0) return false;
  const std::uint64_t r = static_cast<std::uint64_t>(n % c.modulus());
  return std::find(c.residues().begin(), c.residues().end(), r) != c.residues().end();
}

/// Scans the domain values below `bound` and reports whether the map is
/// total, single-valued, non-negative, codomain-respecting and injective
/// there. Collisions count only between inputs below the bound.
inline bool prefix_scan_ok(const PiecewiseAffine& m, const ResidueCarrier& dom, const ResidueCarrier& cod,
                           std::uint64_t bound) {
  std::set<Integer> seen;
  for (std::uint64_t n = 0; n < bound; ++n) {
    if (!residue_member(dom, n)) continue;
    const auto outs = evaluate_all(m, n);
    if (outs.size() != 1) return false;
    if (!residue_member(cod, outs[0])) return false;
    if (!seen.insert(outs[0]).second) return false;
  }
  return true;
}

/// h for f = g = n ↦ n + 1: the chain from P:0 runs P:0 Q:1 P:2 ..., the one
/// from Q:0 runs Q:0 P:1 Q:2 ..., so h swaps 2k and 2k + 1.
inline Integer successor_h(const Integer& n) { return n % 2 == 0 ? Integer(n + 1) : Integer(n - 1); }

}  // namespace sb::test
