#pragma once

// Subcommands of the `sb` tool. Exit codes: 0 success, 1 check or validation
// failure, 2 usage or parse error, 3 step budget exhausted.

#include "sb/sb.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sb::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, budget = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Instance load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  Instance inst;
  try {
    inst = parse_instance(text.str());
  } catch (const ParseError& e) {
    throw Usage(path + ":" + e.what());
  }
  if (const char* env = std::getenv("SB_BUDGET"); env && *env) {
    Integer b;
    try {
      b = parse_integer(env);
    } catch (const std::invalid_argument&) {
      throw Usage("SB_BUDGET must be a positive integer");
    }
    if (b < 1 || b > std::numeric_limits<std::uint64_t>::max())
      throw Usage("SB_BUDGET must be a positive integer");
    inst.step_budget = static_cast<std::uint64_t>(b);
  }
  return inst;
}

inline Value read_value(const ValidInstance& inst, const std::string& text) {
  if (inst.finite()) return Atom(text);
  try {
    Integer n = parse_integer(text);
    if (n < 0) throw Usage("value must be a natural number");
    return n;
  } catch (const std::invalid_argument&) {
    throw Usage("value must be a natural number: " + text);
  }
}

inline void print_violations(const ValidationReport& report, std::ostream& out) {
  for (const auto& v : report.violations) out << "violation: " << to_string(v) << "\n";
}

inline int cmd_validate(const std::string& path, std::ostream& out) {
  const auto report = validate_instance(load(path));
  if (report.ok()) {
    out << "valid\n";
    return ok;
  }
  print_violations(report, out);
  out << "invalid: " << report.violations.size() << " violation(s)\n";
  return failed;
}

inline int cmd_witness(const ValidInstance& inst, const std::string& value, bool inverse,
                       std::ostream& out) {
  const Value v = read_value(inst, value);
  if (inverse) {
    out << "h^-1(" << to_string(v) << ") = " << to_string(sb_witness_inverse(inst, v)) << "\n";
  } else {
    const auto h = sb_witness(inst, v);
    out << "h(" << to_string(v) << ") = " << to_string(h.output) << " (branch: " << to_string(h.branch)
        << ")\n";
  }
  return ok;
}

inline int cmd_classify(const ValidInstance& inst, const std::string& polarity,
                        const std::string& value, std::ostream& out) {
  const TaggedElement e{polarity == "p" ? Polarity::p_side : Polarity::q_side, read_value(inst, value)};
  if (!inst.well_formed(e)) throw Usage("not a carrier element: " + to_string(e));
  const auto c = classify_chain(inst, e);
  out << to_string(e) << ": " << to_string(c) << "\n";
  return std::holds_alternative<Unknown>(c) ? budget : ok;
}

inline int cmd_decompose(const ValidInstance& inst, std::optional<std::uint64_t> window,
                         std::ostream& out) {
  out << render_decomposition(decompose(inst, window));
  return ok;
}

inline int cmd_check(const ValidInstance& inst, std::optional<std::uint64_t> window,
                     std::ostream& out) {
  const auto report = check_bijection(inst, window);
  auto flag = [](bool b) { return b ? "ok" : "failed"; };
  out << "checked: " << report.checked_window << "\n"
      << "codomain: " << flag(report.codomain_ok) << "\n"
      << "injective: " << flag(report.injective_ok) << "\n"
      << "surjective: " << flag(report.surjective_ok) << "\n";
  for (const auto& c : report.counterexamples)
    out << "counterexample: " << to_string(c.kind) << " " << to_string(c.element) << ": " << c.detail
        << "\n";
  if (report.bijective()) {
    out << "bijective: yes\n";
    return ok;
  }
  if (report.undecided() == report.counterexamples.size()) {
    out << "bijective: unknown\n";
    return budget;
  }
  out << "bijective: no\n";
  return failed;
}

inline int cmd_dot(const ValidInstance& inst, std::optional<std::uint64_t> window,
                   const std::string& output, std::ostream& out) {
  const std::string graph = render_dot(inst, window);
  if (output == "-") {
    out << graph;
    return ok;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw Usage("cannot write " + output);
  file << graph;
  return ok;
}

inline int cmd_gen(std::size_t size, std::uint64_t seed, std::ostream& out) {
  out << render_instance(random_finite_instance(size, seed));
  return ok;
}

inline constexpr std::uint64_t kDefaultWindow = 64;

/// Parses `args` (without the program name) and runs the chosen subcommand.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schröder-Bernstein bijections from pairs of injections", "sb"};
  app.require_subcommand(1);

  std::string file, value, polarity = "p", output;
  bool inverse = false;
  std::uint64_t window = kDefaultWindow;
  std::size_t size = 0;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Report every constraint violation");
  validate->add_option("FILE", file, "Instance document")->required();

  auto* witness = app.add_subcommand("witness", "Evaluate h (or its inverse) at one value");
  witness->add_option("FILE", file, "Instance document")->required();
  witness->add_option("--value", value, "Value in P (or in Q with --inverse)")->required();
  witness->add_flag("--inverse", inverse, "Evaluate h^-1 instead");

  auto* classify = app.add_subcommand("classify", "Classify the chain through one element");
  classify->add_option("FILE", file, "Instance document")->required();
  classify->add_option("--polarity", polarity, "Carrier side")->check(CLI::IsMember({"p", "q"}));
  classify->add_option("--value", value, "Element value")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "List chains and their categories");
  decompose_cmd->add_option("FILE", file, "Instance document")->required();
  decompose_cmd->add_option("--window", window, "Countable mode: examine values below N");

  auto* check = app.add_subcommand("check", "Verify that h is a bijection");
  check->add_option("FILE", file, "Instance document")->required();
  check->add_option("--window", window, "Countable mode: examine values below N");

  auto* dot = app.add_subcommand("dot", "Write the step graph in Graphviz syntax");
  dot->add_option("FILE", file, "Instance document")->required();
  dot->add_option("-o,--output", output, "Output path ('-' for stdout)")->required();
  dot->add_option("--window", window, "Countable mode: draw values below N");

  auto* gen = app.add_subcommand("gen", "Emit a random finite instance");
  gen->add_option("--size", size, "Carrier size")->required();
  gen->add_option("--seed", seed, "Random seed")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, out);
    if (gen->parsed()) return cmd_gen(size, seed, out);

    std::optional<ValidInstance> inst;
    try {
      inst.emplace(load(file));
    } catch (const InvalidInstance& e) {
      print_violations(e.report, err);
      err << "error: " << file << " is not a valid instance\n";
      return failed;
    }
    if (witness->parsed()) return cmd_witness(*inst, value, inverse, out);
    if (classify->parsed()) return cmd_classify(*inst, polarity, value, out);
    if (decompose_cmd->parsed()) return cmd_decompose(*inst, window, out);
    if (check->parsed()) return cmd_check(*inst, window, out);
    if (dot->parsed()) return cmd_dot(*inst, window, output, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "\n";
    return budget;
  } catch (const NotInDomain& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const WrongValueKind& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const NotInImage& e) {
    err << "error: " << e.what() << "\n";
    return failed;
  }
  return usage;
}

}  // namespace sb::cli
