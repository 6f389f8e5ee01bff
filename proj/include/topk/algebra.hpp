#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "topk/circuit.hpp"

namespace topk {

using Nat = std::uint64_t;
using Rational = boost::multiprecision::cpp_rational;

/// Carrier element of a built-in semigroup: a natural number (nat-plus) or
/// an exact rational in [0,1] (unit-product). Equality requires matching
/// carriers; ordering goes through Semigroup::less.
class Value {
 public:
  Value() : rep_(Nat{0}) {}
  explicit Value(Nat n) : rep_(n) {}
  explicit Value(Rational r) : rep_(std::move(r)) {}

  bool is_nat() const { return std::holds_alternative<Nat>(rep_); }
  Nat nat() const { return std::get<Nat>(rep_); }
  const Rational& rational() const { return std::get<Rational>(rep_); }

  friend bool operator==(const Value& a, const Value& b) {
    return a.rep_ == b.rep_;
  }

 private:
  std::variant<Nat, Rational> rep_;
};

enum class Monotony { Monotone, StrictlyMonotone, AlmostStrictlyMonotone };

/// A monotone, totally ordered semigroup (K, combine, less). Third-party
/// semigroups plug in by implementing this contract; nat-plus and
/// unit-product are the supported built-ins.
class Semigroup {
 public:
  virtual ~Semigroup() = default;
  virtual const std::string& name() const = 0;
  virtual Monotony monotony() const = 0;
  virtual std::optional<Value> least_absorptive() const = 0;
  virtual Value default_literal_value() const = 0;
  virtual Value combine(const Value& a, const Value& b) const = 0;
  virtual bool less(const Value& a, const Value& b) const = 0;
  virtual Value parse_value(std::string_view text) const = 0;
  virtual std::string format_value(const Value& v) const = 0;

  bool leq(const Value& a, const Value& b) const { return !less(b, a); }
};

/// Built-in lookup: "nat-plus" or "unit-product". Throws on unknown names.
const Semigroup& builtin_semigroup(std::string_view name);

/// Total map from signed literals over 1..n to carrier values.
class ValueFunction {
 public:
  ValueFunction(int var_count, Value default_value);

  int var_count() const { return var_count_; }
  const Value& of(int literal) const;
  void set(int literal, Value v);

 private:
  int var_count_;
  std::vector<Value> pos_, neg_;
};

struct WeightsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Weights file: one `<signed-literal> <value>` entry per line; comment
/// lines (leading 'c') and blank lines ignored; unlisted literals get the
/// semigroup's default.
ValueFunction load_weights(const Semigroup& sg, std::string_view text,
                           int var_count);

/// Fold of combine over the one literal per variable that the assignment
/// satisfies. Rejects var_count = 0 (no neutral element is guaranteed).
Value assignment_value(const Semigroup& sg, const ValueFunction& nu,
                       const Assignment& assignment);

/// Lexicographic comparison of two equal-length non-increasing value
/// profiles: -1 if p is smaller, 0 if equal, +1 if p is greater.
int lex_compare(const Semigroup& sg, std::span<const Value> p,
                std::span<const Value> q);

}  // namespace topk
