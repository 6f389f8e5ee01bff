#include "topk/algebra.hpp"

#include <cctype>
#include <sstream>

namespace topk {

namespace {

class NatPlus final : public Semigroup {
 public:
  const std::string& name() const override {
    static const std::string n = "nat-plus";
    return n;
  }
  Monotony monotony() const override { return Monotony::StrictlyMonotone; }
  std::optional<Value> least_absorptive() const override { return std::nullopt; }
  Value default_literal_value() const override { return Value(Nat{0}); }

  Value combine(const Value& a, const Value& b) const override {
    Nat x = a.nat(), y = b.nat();
    Nat s = x + y;
    if (s < x) throw std::overflow_error("nat-plus addition overflow");
    return Value(s);
  }
  bool less(const Value& a, const Value& b) const override {
    return a.nat() < b.nat();
  }
  Value parse_value(std::string_view text) const override {
    if (text.empty()) throw WeightsError("empty nat-plus value");
    Nat acc = 0;
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw WeightsError("nat-plus value must be a nonnegative integer: '" +
                           std::string(text) + "'");
      Nat d = static_cast<Nat>(ch - '0');
      if (acc > (UINT64_MAX - d) / 10)
        throw std::overflow_error("nat-plus value too large");
      acc = acc * 10 + d;
    }
    return Value(acc);
  }
  std::string format_value(const Value& v) const override {
    return std::to_string(v.nat());
  }
};

class UnitProduct final : public Semigroup {
 public:
  const std::string& name() const override {
    static const std::string n = "unit-product";
    return n;
  }
  Monotony monotony() const override {
    return Monotony::AlmostStrictlyMonotone;
  }
  std::optional<Value> least_absorptive() const override {
    return Value(Rational(0));
  }
  Value default_literal_value() const override { return Value(Rational(1)); }

  Value combine(const Value& a, const Value& b) const override {
    return Value(Rational(a.rational() * b.rational()));
  }
  bool less(const Value& a, const Value& b) const override {
    return a.rational() < b.rational();
  }
  Value parse_value(std::string_view text) const override {
    // Decimal in [0,1], e.g. "0.25"; also accepts "p/q".
    std::string s(text);
    Rational r;
    auto bad = [&]() {
      throw WeightsError("unit-product value must be a decimal in [0,1]: '" +
                         s + "'");
    };
    // cpp_int's string constructor treats a leading 0 as an octal prefix,
    // so digit runs go through this decimal-only helper.
    auto dec = [&](std::string digits) {
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        bad();
      digits.erase(0, std::min(digits.find_first_not_of('0'),
                               digits.size() - 1));
      return boost::multiprecision::cpp_int(digits);
    };
    std::size_t slash = s.find('/');
    std::size_t dot = s.find('.');
    if (slash != std::string::npos) {
      boost::multiprecision::cpp_int num = dec(s.substr(0, slash));
      boost::multiprecision::cpp_int den = dec(s.substr(slash + 1));
      if (den == 0) bad();
      r = Rational(num, den);
    } else if (dot != std::string::npos) {
      boost::multiprecision::cpp_int num = dec(s.substr(0, dot) + s.substr(dot + 1));
      boost::multiprecision::cpp_int den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      r = Rational(num, den);
    } else {
      r = Rational(dec(s));
    }
    if (r < 0 || r > 1) bad();
    return Value(std::move(r));
  }
  std::string format_value(const Value& v) const override {
    const Rational& r = v.rational();
    std::ostringstream out;
    if (boost::multiprecision::denominator(r) == 1) {
      out << boost::multiprecision::numerator(r);
    } else {
      out << boost::multiprecision::numerator(r) << '/'
          << boost::multiprecision::denominator(r);
    }
    return out.str();
  }
};

}  // namespace

const Semigroup& builtin_semigroup(std::string_view name) {
  static const NatPlus nat_plus;
  static const UnitProduct unit_product;
  if (name == "nat-plus") return nat_plus;
  if (name == "unit-product") return unit_product;
  throw std::invalid_argument("unknown semigroup '" + std::string(name) + "'");
}

ValueFunction::ValueFunction(int var_count, Value default_value)
    : var_count_(var_count),
      pos_(static_cast<std::size_t>(var_count) + 1, default_value),
      neg_(static_cast<std::size_t>(var_count) + 1, default_value) {
  if (var_count < 1)
    throw std::invalid_argument("value function needs at least one variable");
}

const Value& ValueFunction::of(int literal) const {
  int v = std::abs(literal);
  if (literal == 0 || v > var_count_)
    throw std::invalid_argument("literal out of range");
  return literal > 0 ? pos_[v] : neg_[v];
}

void ValueFunction::set(int literal, Value v) {
  int var = std::abs(literal);
  if (literal == 0 || var > var_count_)
    throw std::invalid_argument("literal out of range");
  (literal > 0 ? pos_[var] : neg_[var]) = std::move(v);
}

ValueFunction load_weights(const Semigroup& sg, std::string_view text,
                           int var_count) {
  ValueFunction nu(var_count, sg.default_literal_value());
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c') continue;
    std::istringstream iss(line);
    long long lit;
    std::string value_text;
    if (!(iss >> lit >> value_text))
      throw WeightsError("weights line " + std::to_string(line_no) +
                         ": expected '<literal> <value>'");
    std::string extra;
    if (iss >> extra)
      throw WeightsError("weights line " + std::to_string(line_no) +
                         ": trailing garbage");
    if (lit == 0 || std::abs(lit) > var_count)
      throw WeightsError("weights line " + std::to_string(line_no) +
                         ": literal " + std::to_string(lit) + " out of range");
    nu.set(static_cast<int>(lit), sg.parse_value(value_text));
  }
  return nu;
}

Value assignment_value(const Semigroup& sg, const ValueFunction& nu,
                       const Assignment& assignment) {
  int n = nu.var_count();
  if (assignment.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("assignment does not cover every variable");
  Value acc = nu.of(assignment[1] ? 1 : -1);
  for (int v = 2; v <= n; ++v)
    acc = sg.combine(acc, nu.of(assignment[v] ? v : -v));
  return acc;
}

int lex_compare(const Semigroup& sg, std::span<const Value> p,
                std::span<const Value> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("value profiles differ in length");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sg.less(p[i], q[i])) return -1;
    if (sg.less(q[i], p[i])) return 1;
  }
  return 0;
}

}  // namespace topk
