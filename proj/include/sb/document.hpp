#pragma once

// Instance documents: a JSON object with fields mode, p, q, f, g and an
// optional budget.
//
//   finite:    "p": ["a", "b"],            "f": {"a": "x", "b": "y"}
//   countable: "p": {"modulus": 2, "residues": [0]},
//              "f": [{"guard": {"modulus": 1, "residues": [0], "range": [0, null]},
//                     "affine": {"a": 2, "b": 0}}]

#include "sb/instance.hpp"

#include <rapidjson/error/en.h>
#include <rapidjson/prettywriter.h>
#include <rapidjson/reader.h>
#include <rapidjson/stringbuffer.h>

#include <cctype>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sb {

struct ParseError : Error {
  ParseError(std::size_t line_, std::size_t column_, std::string reason_)
      : Error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + reason_),
        line(line_),
        column(column_),
        reason(std::move(reason_)) {}

  std::size_t line;
  std::size_t column;
  std::string reason;
};

namespace detail::json {

struct Node {
  enum class Kind { null, boolean, number, string, object, array };

  Kind kind = Kind::null;
  std::size_t offset = 0;
  std::string text;  // string contents or the literal digits of a number
  std::vector<std::pair<std::string, Node>> members;
  std::vector<std::size_t> key_offsets;
  std::vector<Node> items;
};

// Input stream over a NUL-terminated buffer. rapidjson copies its own string
// streams into locals while reading a token, so a handler asking those for
// Tell() sees a stale position; this type has no such optimization.
class OffsetStream {
 public:
  using Ch = char;
  explicit OffsetStream(const char* text) : begin_(text), cur_(text) {}
  [[nodiscard]] Ch Peek() const { return *cur_; }
  Ch Take() { return *cur_++; }
  [[nodiscard]] std::size_t Tell() const { return static_cast<std::size_t>(cur_ - begin_); }
  Ch* PutBegin() { return nullptr; }
  void Put(Ch) {}
  void Flush() {}
  std::size_t PutEnd(Ch*) { return 0; }

 private:
  const char* begin_;
  const char* cur_;
};

// Builds a Node tree from SAX events, remembering where each value starts.
// Callbacks fire just after their token, so starts are found by looking back.
class TreeBuilder : public rapidjson::BaseReaderHandler<rapidjson::UTF8<>, TreeBuilder> {
 public:
  TreeBuilder(const OffsetStream& stream, std::string_view text) : stream_(stream), text_(text) {}

  bool Null() { return add(Node{Node::Kind::null, start(4)}); }
  bool Bool(bool b) { return add(Node{Node::Kind::boolean, start(b ? 4 : 5), b ? "true" : "false"}); }
  bool RawNumber(const char* s, rapidjson::SizeType len, bool) {
    return add(Node{Node::Kind::number, start(len), std::string(s, len)});
  }
  bool String(const char* s, rapidjson::SizeType len, bool) {
    return add(Node{Node::Kind::string, string_start(), std::string(s, len)});
  }
  bool StartObject() {
    stack_.push_back(Node{Node::Kind::object, start(1)});
    keys_.emplace_back();
    return true;
  }
  bool Key(const char* s, rapidjson::SizeType len, bool) {
    std::string key(s, len);
    const std::size_t at = string_start();
    if (!keys_.back().insert(key).second) {
      error_offset = at;
      error = "duplicate key '" + key + "'";
      return false;
    }
    stack_.back().members.emplace_back(std::move(key), Node{});
    stack_.back().key_offsets.push_back(at);
    return true;
  }
  bool EndObject(rapidjson::SizeType) {
    keys_.pop_back();
    return finish();
  }
  bool StartArray() {
    stack_.push_back(Node{Node::Kind::array, start(1)});
    return true;
  }
  bool EndArray(rapidjson::SizeType) { return finish(); }

  Node root;
  std::string error;
  std::size_t error_offset = 0;

 private:
  std::size_t start(std::size_t token_length) const {
    const std::size_t end = stream_.Tell();
    return end >= token_length ? end - token_length : 0;
  }

  // Opening quote of the string that just ended: the nearest quote before
  // the closing one that is not escaped.
  std::size_t string_start() const {
    std::size_t i = stream_.Tell() - 1;
    while (i > 0) {
      --i;
      if (text_[i] != '"') continue;
      std::size_t slashes = 0;
      while (slashes < i && text_[i - 1 - slashes] == '\\') ++slashes;
      if (slashes % 2 == 0) return i;
    }
    return 0;
  }

  bool finish() {
    Node done = std::move(stack_.back());
    stack_.pop_back();
    return add(std::move(done));
  }

  bool add(Node n) {
    if (stack_.empty()) {
      root = std::move(n);
      return true;
    }
    Node& parent = stack_.back();
    if (parent.kind == Node::Kind::object) {
      parent.members.back().second = std::move(n);  // placeholder from Key()
    } else {
      parent.items.push_back(std::move(n));
    }
    return true;
  }

  const OffsetStream& stream_;
  std::string_view text_;
  std::vector<Node> stack_;
  std::vector<std::set<std::string>> keys_;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Node parse() const {
    std::string buffer(text_);
    OffsetStream stream(buffer.c_str());
    TreeBuilder builder(stream, buffer);
    rapidjson::Reader reader;
    constexpr unsigned flags = rapidjson::kParseNumbersAsStringsFlag |
                               rapidjson::kParseValidateEncodingFlag |
                               rapidjson::kParseStopWhenDoneFlag;
    const auto ok = reader.Parse<flags>(stream, builder);
    if (!builder.error.empty()) fail(builder.error_offset, builder.error);
    if (!ok) fail(ok.Offset(), rapidjson::GetParseError_En(ok.Code()));
    for (std::size_t i = stream.Tell(); i < buffer.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(buffer[i])))
        fail(i, "unexpected content after the document");
    return std::move(builder.root);
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& reason) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, reason);
  }

  [[noreturn]] void fail(const Node& at, const std::string& reason) const { fail(at.offset, reason); }

  const Node& expect(const Node& n, Node::Kind kind, const char* what) const {
    if (n.kind != kind) fail(n, std::string("expected ") + what);
    return n;
  }

  Integer integer(const Node& n) const {
    expect(n, Node::Kind::number, "an integer");
    if (n.text.find_first_of(".eE") != std::string::npos) fail(n, "expected an integer");
    return parse_integer(n.text);
  }

  Integer natural(const Node& n) const {
    Integer v = integer(n);
    if (v < 0) fail(n, "negative number not allowed");
    return v;
  }

  std::uint64_t small(const Node& n) const {
    Integer v = natural(n);
    if (v > std::numeric_limits<std::uint64_t>::max()) fail(n, "number too large");
    return static_cast<std::uint64_t>(v);
  }

  /// Object fields by name; rejects unknown names and missing required ones.
  std::vector<const Node*> fields(const Node& obj, std::initializer_list<const char*> names,
                                  std::size_t required, const char* what) const {
    expect(obj, Node::Kind::object, what);
    std::vector<const Node*> out(names.size(), nullptr);
    for (std::size_t m = 0; m < obj.members.size(); ++m) {
      const auto& [key, value] = obj.members[m];
      std::size_t i = 0;
      for (const char* name : names) {
        if (key == name) break;
        ++i;
      }
      if (i == names.size()) fail(obj.key_offsets[m], "unknown field '" + key + "'");
      out[i] = &value;
    }
    std::size_t i = 0;
    for (const char* name : names) {
      if (i < required && !out[i]) fail(obj, std::string("missing field '") + name + "'");
      ++i;
    }
    return out;
  }

  std::vector<std::uint64_t> residues(const Node& n, std::uint64_t modulus) const {
    expect(n, Node::Kind::array, "an array of residues");
    std::vector<std::uint64_t> out;
    for (const auto& item : n.items) {
      const std::uint64_t r = small(item);
      if (r >= modulus) fail(item, "residue must be below the modulus");
      out.push_back(r);
    }
    if (out.empty()) fail(n, "residue set must be non-empty");
    return out;
  }

  std::uint64_t modulus(const Node& n) const {
    const std::uint64_t m = small(n);
    if (m == 0) fail(n, "modulus must be >= 1");
    return m;
  }

  Carrier finite_carrier(const Node& n) const {
    expect(n, Node::Kind::array, "an array of atoms");
    std::vector<Atom> atoms;
    for (const auto& item : n.items) atoms.push_back(expect(item, Node::Kind::string, "a string").text);
    return FiniteCarrier(std::move(atoms));
  }

  Carrier residue_carrier(const Node& n) const {
    auto f = fields(n, {"modulus", "residues"}, 2, "an object with modulus and residues");
    const std::uint64_t m = modulus(*f[0]);
    return ResidueCarrier(m, residues(*f[1], m));
  }

  InjectionMap table(const Node& n) const {
    expect(n, Node::Kind::object, "an object mapping atoms to atoms");
    std::vector<std::pair<Atom, Atom>> entries;
    for (const auto& [k, v] : n.members)
      entries.emplace_back(k, expect(v, Node::Kind::string, "a string").text);
    return FiniteTable(std::move(entries));
  }

  AffinePiece piece(const Node& n) const {
    auto f = fields(n, {"guard", "affine"}, 2, "a piece object");
    auto g = fields(*f[0], {"modulus", "residues", "range"}, 2, "a guard object");
    const std::uint64_t m = modulus(*g[0]);
    auto rs = residues(*g[1], m);
    Integer lo = 0;
    std::optional<Integer> hi;
    if (g[2]) {
      const Node& range = expect(*g[2], Node::Kind::array, "a range [lo, hi]");
      if (range.items.size() != 2) fail(range, "expected a range [lo, hi]");
      lo = natural(range.items[0]);
      if (range.items[1].kind != Node::Kind::null) {
        hi = natural(range.items[1]);
        if (*hi < lo) fail(range, "range is empty");
      }
    }
    auto a = fields(*f[1], {"a", "b"}, 2, "an affine object");
    Integer coeff = natural(*a[0]);
    if (coeff < 1) fail(*a[0], "coefficient must be ≥ 1");
    return AffinePiece(Guard(m, std::move(rs), std::move(lo), std::move(hi)), std::move(coeff),
                       integer(*a[1]));
  }

  InjectionMap pieces(const Node& n) const {
    expect(n, Node::Kind::array, "an array of pieces");
    PiecewiseAffine out;
    for (const auto& item : n.items) out.pieces.push_back(piece(item));
    return out;
  }

 private:
  std::string_view text_;
};

}  // namespace detail::json

/// Parses an instance document. The result is structurally well formed but
/// not yet validated; throws ParseError with a 1-based line and column.
inline Instance parse_instance(std::string_view text) {
  using detail::json::Node;
  const detail::json::Reader r(text);
  const Node root = r.parse();
  auto f = r.fields(root, {"mode", "p", "q", "f", "g", "budget"}, 5, "an instance object");

  Instance inst;
  const std::string& mode = r.expect(*f[0], Node::Kind::string, "\"finite\" or \"countable\"").text;
  if (mode == "finite") {
    inst.mode = Mode::finite;
    inst.p = r.finite_carrier(*f[1]);
    inst.q = r.finite_carrier(*f[2]);
    inst.f = r.table(*f[3]);
    inst.g = r.table(*f[4]);
    if (f[5]) r.fail(*f[5], "budget applies only to countable mode");
  } else if (mode == "countable") {
    inst.mode = Mode::countable;
    inst.p = r.residue_carrier(*f[1]);
    inst.q = r.residue_carrier(*f[2]);
    inst.f = r.pieces(*f[3]);
    inst.g = r.pieces(*f[4]);
    if (f[5]) {
      inst.step_budget = r.small(*f[5]);
      if (inst.step_budget == 0) r.fail(*f[5], "budget must be >= 1");
    }
  } else {
    r.fail(*f[0], "mode must be \"finite\" or \"countable\"");
  }
  return inst;
}

/// Renders an instance as a document that parse_instance reads back to an
/// equal instance. Output is byte-deterministic.
inline std::string render_instance(const Instance& inst) {
  rapidjson::StringBuffer buf;
  rapidjson::PrettyWriter<rapidjson::StringBuffer> w(buf);
  w.SetIndent(' ', 2);
  w.SetFormatOptions(rapidjson::kFormatSingleLineArray);
  auto number = [&](const Integer& n) {
    const std::string s = n.str();
    w.RawValue(s.c_str(), s.size(), rapidjson::kNumberType);
  };
  auto key = [&](const char* k) { w.Key(k); };
  auto string = [&](const std::string& s) { w.String(s.c_str(), static_cast<rapidjson::SizeType>(s.size())); };
  auto residues = [&](const std::vector<std::uint64_t>& rs) {
    w.StartArray();
    for (auto r : rs) number(r);
    w.EndArray();
  };
  auto carrier = [&](const Carrier& c) {
    if (const auto* fc = std::get_if<FiniteCarrier>(&c)) {
      w.StartArray();
      for (const auto& a : fc->atoms()) string(a);
      w.EndArray();
      return;
    }
    const auto& rc = std::get<ResidueCarrier>(c);
    w.StartObject();
    key("modulus");
    number(rc.modulus());
    key("residues");
    residues(rc.residues());
    w.EndObject();
  };
  auto map = [&](const InjectionMap& m) {
    if (const auto* t = std::get_if<FiniteTable>(&m)) {
      w.StartObject();
      for (const auto& [k, v] : t->entries()) {
        w.Key(k.c_str(), static_cast<rapidjson::SizeType>(k.size()));
        string(v);
      }
      w.EndObject();
      return;
    }
    w.StartArray();
    for (const auto& piece : std::get<PiecewiseAffine>(m).pieces) {
      w.StartObject();
      key("guard");
      w.StartObject();
      key("modulus");
      number(piece.guard.modulus);
      key("residues");
      residues(piece.guard.residues);
      if (piece.guard.lo != 0 || piece.guard.hi) {
        key("range");
        w.StartArray();
        number(piece.guard.lo);
        if (piece.guard.hi)
          number(*piece.guard.hi);
        else
          w.Null();
        w.EndArray();
      }
      w.EndObject();
      key("affine");
      w.StartObject();
      key("a");
      number(piece.a);
      key("b");
      number(piece.b);
      w.EndObject();
      w.EndObject();
    }
    w.EndArray();
  };

  w.StartObject();
  key("mode");
  string(inst.mode == Mode::finite ? "finite" : "countable");
  key("p");
  carrier(inst.p);
  key("q");
  carrier(inst.q);
  key("f");
  map(inst.f);
  key("g");
  map(inst.g);
  if (inst.mode == Mode::countable) {
    key("budget");
    number(inst.step_budget);
  }
  w.EndObject();
  return std::string(buf.GetString(), buf.GetSize()) + "\n";
}

}  // namespace sb
