#pragma once

// Exact integers and congruence arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sb {

using Integer = boost::multiprecision::cpp_int;

/// Non-negative remainder of x modulo m (m > 0).
inline Integer floor_mod(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

inline std::uint64_t floor_mod(const Integer& x, std::uint64_t m) {
  return static_cast<std::uint64_t>(floor_mod(x, Integer(m)));
}

/// Floor division for m > 0.
inline Integer floor_div(const Integer& x, const Integer& m) {
  return (x - floor_mod(x, m)) / m;
}

/// Ceiling division for m > 0.
inline Integer ceil_div(const Integer& x, const Integer& m) {
  return -floor_div(-x, m);
}

/// Parses an optionally signed decimal integer; throws std::invalid_argument.
inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Least common multiple of two positive moduli, or nullopt when it exceeds `cap`.
inline std::optional<std::uint64_t> checked_lcm(std::uint64_t a, std::uint64_t b,
                                                std::uint64_t cap) {
  const std::uint64_t g = std::gcd(a, b);
  const Integer l = Integer(a / g) * b;
  if (l > cap) return std::nullopt;
  return static_cast<std::uint64_t>(l);
}

/// The class { n : n ≡ residue (mod modulus) }, with 0 <= residue < modulus.
struct Congruence {
  Integer residue;
  Integer modulus;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

namespace detail {

// Returns g = gcd(a, b) and x with a*x ≡ g (mod b).
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& x) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  x = old_s;
  return old_r;
}

}  // namespace detail

/// Intersection of two congruence classes (moduli need not be coprime).
inline std::optional<Congruence> intersect(const Congruence& lhs, const Congruence& rhs) {
  Integer inv;
  const Integer g = detail::extended_gcd(lhs.modulus, rhs.modulus, inv);
  const Integer diff = rhs.residue - lhs.residue;
  if (floor_mod(diff, g) != 0) return std::nullopt;
  const Integer step = rhs.modulus / g;
  const Integer l = lhs.modulus * step;
  // lhs.residue + lhs.modulus * k ≡ rhs.residue (mod rhs.modulus)
  const Integer k = floor_mod((diff / g) * inv, step);
  return Congruence{floor_mod(lhs.residue + lhs.modulus * k, l), l};
}

/// Integers n ≡ residue (mod modulus) with lo <= n <= hi (hi absent = unbounded).
struct Progression {
  Congruence cls;
  Integer lo;
  std::optional<Integer> hi;

  /// Smallest member >= bound, ignoring the upper limit.
  [[nodiscard]] Integer first_at_least(const Integer& bound) const {
    return bound + floor_mod(cls.residue - bound, cls.modulus);
  }

  [[nodiscard]] std::optional<Integer> first() const {
    Integer n = first_at_least(lo);
    if (hi && n > *hi) return std::nullopt;
    return n;
  }

  /// Largest member, when bounded and non-empty.
  [[nodiscard]] std::optional<Integer> last() const {
    if (!hi) return std::nullopt;
    Integer n = *hi - floor_mod(*hi - cls.residue, cls.modulus);
    if (n < lo) return std::nullopt;
    return n;
  }

  [[nodiscard]] bool empty() const { return !first().has_value(); }
};

inline std::optional<Progression> intersect(const Progression& lhs, const Progression& rhs) {
  auto cls = intersect(lhs.cls, rhs.cls);
  if (!cls) return std::nullopt;
  Progression out{*cls, lhs.lo > rhs.lo ? lhs.lo : rhs.lo, lhs.hi};
  if (rhs.hi && (!out.hi || *rhs.hi < *out.hi)) out.hi = rhs.hi;
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace sb
