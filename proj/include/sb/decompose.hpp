#pragma once

// Chain decomposition reports and Graphviz export of the step graph.

#include "sb/witness.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace sb {

struct ChainClass {
  ChainClassification classification;
  std::optional<TaggedElement> initial;
  std::vector<TaggedElement> members;
  bool complete = false;  // members is the whole chain, not a window sample
};

struct DecompositionReport {
  std::vector<ChainClass> classes;
  std::map<ChainCategory, std::size_t> counts;
  std::string checked_window;
};

namespace detail {

inline std::optional<TaggedElement> initial_of(const ChainClassification& c) {
  if (const auto* p = std::get_if<PStopper>(&c)) return p->initial;
  if (const auto* q = std::get_if<QStopper>(&c)) return q->initial;
  return std::nullopt;
}

inline std::vector<TaggedElement> cycle_members(const ValidInstance& inst, const TaggedElement& seed,
                                                std::uint64_t period) {
  std::vector<TaggedElement> out{seed};
  out.reserve(period);
  TaggedElement cur = seed;
  for (std::uint64_t i = 1; i < period; ++i) {
    cur = chain_step(inst, cur);
    out.push_back(cur);
  }
  return out;
}

inline std::string element_key(const TaggedElement& e) { return to_string(e); }

}  // namespace detail

/// Splits the checked elements into chains. Finite mode lists every chain in
/// full, walking each from its first element in carrier order. Countable mode
/// groups the elements below the window: stoppers by their initial element,
/// cycles by walking the period, and the rest by in-window step edges.
inline DecompositionReport decompose(const ValidInstance& inst,
                                     std::optional<std::uint64_t> window = std::nullopt) {
  DecompositionReport report;
  report.checked_window = describe_window(inst, window);

  std::vector<TaggedElement> seeds;
  for (auto& v : checked_values(inst, Polarity::p_side, window)) seeds.push_back(p_elem(std::move(v)));
  for (auto& v : checked_values(inst, Polarity::q_side, window)) seeds.push_back(q_elem(std::move(v)));

  std::map<std::string, std::size_t> owner;  // element -> class index
  std::vector<std::size_t> open;              // seeds without a canonical key

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const TaggedElement& seed = seeds[s];
    if (owner.contains(detail::element_key(seed))) continue;
    ChainClassification c = classify_chain(inst, seed);
    if (const auto* cyc = std::get_if<Cyclic>(&c)) {
      ChainClass cls{c, std::nullopt, detail::cycle_members(inst, seed, cyc->period), true};
      for (const auto& m : cls.members) owner.emplace(detail::element_key(m), report.classes.size());
      report.classes.push_back(std::move(cls));
      continue;
    }
    if (auto init = detail::initial_of(c)) {
      const std::string key = "initial " + detail::element_key(*init);
      auto [it, fresh] = owner.try_emplace(key, report.classes.size());
      if (fresh) report.classes.push_back({c, init, {}, false});
      report.classes[it->second].members.push_back(seed);
      owner.emplace(detail::element_key(seed), it->second);
      continue;
    }
    open.push_back(s);
  }

  // Non-stoppers and undecided chains: components of the step graph
  // restricted to the window.
  std::map<std::string, std::size_t> open_index;
  for (std::size_t i = 0; i < open.size(); ++i) open_index.emplace(detail::element_key(seeds[open[i]]), i);
  std::vector<std::size_t> parent(open.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < open.size(); ++i) {
    auto it = open_index.find(detail::element_key(chain_step(inst, seeds[open[i]])));
    if (it != open_index.end()) parent[find(i)] = find(it->second);
  }
  std::map<std::size_t, std::size_t> component;  // root -> class index
  for (std::size_t i = 0; i < open.size(); ++i) {
    const TaggedElement& seed = seeds[open[i]];
    auto [it, fresh] = component.try_emplace(find(i), report.classes.size());
    ChainClassification c = classify_chain(inst, seed);
    if (fresh) report.classes.push_back({c, std::nullopt, {}, false});
    ChainClass& cls = report.classes[it->second];
    if (std::holds_alternative<Unknown>(cls.classification) && std::holds_alternative<NonStopper>(c))
      cls.classification = c;
    cls.members.push_back(seed);
  }

  if (!inst.finite()) {
    for (auto& cls : report.classes)
      if (!cls.complete) std::sort(cls.members.begin(), cls.members.end(), CanonicalLess{});
    std::stable_sort(report.classes.begin(), report.classes.end(),
                     [](const ChainClass& a, const ChainClass& b) {
                       const auto& x = *std::min_element(a.members.begin(), a.members.end(), CanonicalLess{});
                       const auto& y = *std::min_element(b.members.begin(), b.members.end(), CanonicalLess{});
                       return canonical_order(x, y) < 0;
                     });
  }
  for (const auto& cls : report.classes) ++report.counts[category(cls.classification)];
  return report;
}

inline std::string render_decomposition(const DecompositionReport& report) {
  std::ostringstream os;
  os << "chains: " << report.classes.size();
  if (!report.counts.empty()) {
    os << " (";
    bool first = true;
    for (const auto& [cat, n] : report.counts) {
      os << (first ? "" : ", ") << to_string(cat) << " " << n;
      first = false;
    }
    os << ")";
  }
  os << "\nchecked: " << report.checked_window << "\n";
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    const auto& cls = report.classes[i];
    os << "[" << i + 1 << "] " << to_string(cls.classification) << ": ";
    for (std::size_t m = 0; m < cls.members.size(); ++m) os << (m ? " " : "") << to_string(cls.members[m]);
    if (!cls.complete) os << " ...";
    os << "\n";
  }
  return os.str();
}

inline const char* dot_color(ChainCategory c) {
  switch (c) {
    case ChainCategory::cyclic: return "lightgray";
    case ChainCategory::p_stopper: return "lightblue";
    case ChainCategory::q_stopper: return "lightpink";
    case ChainCategory::non_stopper: return "palegreen";
    case ChainCategory::unknown: return "white";
  }
  return "white";
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Step graph in Graphviz syntax: one node per tagged element (labelled P:v
/// or Q:v), one edge per chain step, nodes filled by chain category.
/// Countable instances are cut at the window; step targets beyond it are
/// drawn dashed.
inline std::string render_dot(const ValidInstance& inst, std::optional<std::uint64_t> window = std::nullopt) {
  const DecompositionReport report = decompose(inst, window);
  std::ostringstream os;
  os << "digraph chains {\n  node [shape=box, style=filled];\n";
  std::map<std::string, bool> drawn;
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& cls : report.classes) {
    for (const auto& m : cls.members) {
      const std::string name = detail::dot_quote(to_string(m));
      os << "  " << name << " [fillcolor=" << dot_color(category(cls.classification)) << "];\n";
      drawn[to_string(m)] = true;
      edges.emplace_back(to_string(m), to_string(chain_step(inst, m)));
    }
  }
  for (const auto& [from, to] : edges)
    if (drawn.try_emplace(to, false).second)
      os << "  " << detail::dot_quote(to) << " [style=dashed, fillcolor=white];\n";
  for (const auto& [from, to] : edges)
    os << "  " << detail::dot_quote(from) << " -> " << detail::dot_quote(to) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace sb
