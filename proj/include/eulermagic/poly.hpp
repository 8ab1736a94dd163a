#pragma once

// Sparse multivariate polynomials over Rational.
//
// A polynomial lives in a variable context (an ordered list of at most 16
// names). Exponent vectors are packed four bits per variable into a 64-bit
// key, variable 0 in the most significant nibble, so comparing keys of equal
// total degree is lexicographic comparison of exponent vectors. Terms are kept
// sorted in descending graded-lex order with no zero coefficients; equality is
// therefore structural and an identity check is "difference is empty".
//
// A polynomial without a context is a constant. Constants combine with any
// context; two polynomials in different contexts never combine.

#include "eulermagic/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eulermagic {

using VarContext = std::shared_ptr<const std::vector<std::string>>;

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PolyParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxPolyVars = 16;
inline constexpr unsigned kMaxPolyExponent = 15;

inline VarContext make_context(std::vector<std::string> names) {
  if (names.size() > kMaxPolyVars)
    throw std::invalid_argument("at most 16 variables per context");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
      throw std::invalid_argument("bad variable name '" + n + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == n) throw std::invalid_argument("duplicate variable '" + n + "'");
  }
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

class MultiPoly {
 public:
  struct Term {
    std::uint64_t key;
    unsigned degree;
    Rational coeff;

    friend bool operator==(const Term& a, const Term& b) {
      return a.key == b.key && a.coeff == b.coeff;
    }
  };

  MultiPoly() = default;
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c) {                 // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({0, 0, c});
  }
  explicit MultiPoly(VarContext ctx) : ctx_(std::move(ctx)) {}

  static MultiPoly constant(VarContext ctx, const Rational& c) {
    MultiPoly p(std::move(ctx));
    if (c != 0) p.terms_.push_back({0, 0, c});
    return p;
  }

  static MultiPoly variable(VarContext ctx, std::string_view name) {
    MultiPoly p(std::move(ctx));
    const std::size_t i = p.var_index(name);
    p.terms_.push_back({std::uint64_t{1} << shift(i), 1, Rational(1)});
    return p;
  }

  /// One variable per context name, in context order.
  static std::vector<MultiPoly> variables(const VarContext& ctx) {
    std::vector<MultiPoly> out;
    for (const auto& n : *ctx) out.push_back(variable(ctx, n));
    return out;
  }

  static MultiPoly monomial(VarContext ctx, std::span<const unsigned> exponents,
                            const Rational& coeff) {
    MultiPoly p(std::move(ctx));
    if (exponents.size() != p.arity())
      throw std::invalid_argument("exponent vector arity mismatch");
    std::uint64_t key = 0;
    unsigned deg = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] > kMaxPolyExponent) throw std::overflow_error("exponent exceeds 15");
      key |= std::uint64_t{exponents[i]} << shift(i);
      deg += exponents[i];
    }
    if (coeff != 0) p.terms_.push_back({key, deg, coeff});
    return p;
  }

  const VarContext& context() const noexcept { return ctx_; }
  std::size_t arity() const noexcept { return ctx_ ? ctx_->size() : 0; }

  std::size_t var_index(std::string_view name) const {
    if (ctx_)
      for (std::size_t i = 0; i < ctx_->size(); ++i)
        if ((*ctx_)[i] == name) return i;
    throw UnknownVariable("unknown variable '" + std::string(name) + "'");
  }

  bool has_variable(std::string_view name) const {
    if (!ctx_) return false;
    return std::find(ctx_->begin(), ctx_->end(), name) != ctx_->end();
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0);
  }
  Rational constant_term() const {
    return (!terms_.empty() && terms_.back().key == 0) ? terms_.back().coeff : Rational(0);
  }

  std::size_t term_count() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }

  /// -1 for the zero polynomial.
  int total_degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<int>(terms_.front().degree);
  }

  bool is_homogeneous(unsigned deg) const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [deg](const Term& t) { return t.degree == deg; });
  }

  static unsigned exponent(std::uint64_t key, std::size_t var) noexcept {
    return static_cast<unsigned>((key >> shift(var)) & 0xF);
  }

  std::vector<unsigned> exponents(const Term& t) const {
    std::vector<unsigned> e(arity());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponent(t.key, i);
    return e;
  }

  // ---- ring operations -------------------------------------------------

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    return merge(a, b, false);
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    return merge(a, b, true);
  }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly out = a;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    return multiply(a, b);
  }
  friend MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p.scaled(c); }
  friend MultiPoly operator*(const MultiPoly& p, const Rational& c) { return p.scaled(c); }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const Rational& c) const {
    MultiPoly out(ctx_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(ctx_, 1);
    MultiPoly base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    unify(a, b);
    return a.terms_ == b.terms_;
  }

  // ---- structure ---------------------------------------------------------

  /// Largest exponent of `name` over all terms; -1 for the zero polynomial.
  int degree_in(std::string_view name) const {
    if (!ctx_) {
      return is_zero() ? -1 : 0;
    }
    const std::size_t v = var_index(name);
    if (terms_.empty()) return -1;
    unsigned best = 0;
    for (const auto& t : terms_) best = std::max(best, exponent(t.key, v));
    return static_cast<int>(best);
  }

  /// The polynomial (free of `name`) multiplying name^k.
  MultiPoly coefficient_of(std::string_view name, unsigned k) const {
    MultiPoly out(ctx_);
    if (!ctx_) {
      if (k == 0) out.terms_ = terms_;
      return out;
    }
    const std::size_t v = var_index(name);
    const std::uint64_t strip = std::uint64_t{k} << shift(v);
    // Removing the same power from every selected term preserves their order.
    for (const auto& t : terms_)
      if (exponent(t.key, v) == k) out.terms_.push_back({t.key - strip, t.degree - k, t.coeff});
    return out;
  }

  MultiPoly substitute(std::string_view name, const MultiPoly& value) const {
    if (!ctx_) return *this;
    unify(*this, value);
    const int d = degree_in(name);
    if (d <= 0) return *this;
    MultiPoly result = coefficient_of(name, static_cast<unsigned>(d));
    for (int k = d - 1; k >= 0; --k)
      result = result * value + coefficient_of(name, static_cast<unsigned>(k));
    result.adopt_context(ctx_);
    return result;
  }

  MultiPoly substitute(std::string_view name, const Rational& value) const {
    if (!ctx_) return *this;
    return specialize({{std::string(name), value}});
  }

  /// den^d · p(num/den) where d = degree_in(name): substitution of a rational
  /// function with the denominator cleared.
  MultiPoly substitute_fraction(std::string_view name, const MultiPoly& num,
                                const MultiPoly& den) const {
    if (!ctx_) return *this;
    unify(*this, num);
    unify(*this, den);
    const int d = degree_in(name);
    if (d <= 0) return *this;
    MultiPoly result(ctx_);
    MultiPoly num_pow = constant(ctx_, 1);
    std::vector<MultiPoly> den_pows{constant(ctx_, 1)};
    for (int k = 1; k <= d; ++k) den_pows.push_back(den_pows.back() * den);
    for (int k = 0; k <= d; ++k) {
      result += coefficient_of(name, static_cast<unsigned>(k)) * num_pow *
                den_pows[static_cast<std::size_t>(d - k)];
      if (k < d) num_pow = num_pow * num;
    }
    result.adopt_context(ctx_);
    return result;
  }

  /// Substitutes rational values for any subset of the variables. The context
  /// is kept; specialized variables simply no longer occur.
  MultiPoly specialize(const std::map<std::string, Rational>& values) const {
    if (!ctx_) return *this;
    struct Slot {
      std::size_t var;
      std::vector<Rational> powers;
    };
    std::vector<Slot> slots;
    unsigned max_exp = kMaxPolyExponent;
    for (const auto& [name, val] : values) {
      Slot s{var_index(name), {Rational(1)}};
      for (unsigned e = 1; e <= max_exp; ++e) s.powers.push_back(s.powers.back() * val);
      slots.push_back(std::move(s));
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term n = t;
      for (const auto& s : slots) {
        const unsigned e = exponent(n.key, s.var);
        if (e == 0) continue;
        n.coeff *= s.powers[e];
        n.key -= std::uint64_t{e} << shift(s.var);
        n.degree -= e;
      }
      if (n.coeff != 0) out.push_back(std::move(n));
    }
    MultiPoly res(ctx_);
    res.terms_ = normalize(std::move(out));
    return res;
  }

  /// Exact value; every context variable must be assigned.
  Rational eval(const std::map<std::string, Rational>& point) const {
    if (ctx_)
      for (const auto& n : *ctx_)
        if (!point.contains(n)) throw MissingAssignment("no value for '" + n + "'");
    std::map<std::string, Rational> relevant;
    if (ctx_)
      for (const auto& n : *ctx_) relevant.emplace(n, point.at(n));
    return specialize(relevant).constant_term();
  }

  /// Values in context order.
  Rational eval(std::span<const Rational> values) const {
    if (values.size() != arity())
      throw MissingAssignment("expected " + std::to_string(arity()) + " values");
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational term = t.coeff;
      for (std::size_t i = 0; i < values.size() && term != 0; ++i) {
        const unsigned e = exponent(t.key, i);
        for (unsigned k = 0; k < e; ++k) term *= values[i];
      }
      sum += term;
    }
    return sum;
  }

  /// Moves the polynomial into another context by variable name. Every
  /// variable that occurs must exist in the target.
  MultiPoly with_context(const VarContext& target) const {
    MultiPoly out(target);
    std::vector<Term> moved;
    for (const auto& t : terms_) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < arity(); ++i) {
        const unsigned e = exponent(t.key, i);
        if (e == 0) continue;
        key |= std::uint64_t{e} << shift(out.var_index((*ctx_)[i]));
      }
      moved.push_back({key, t.degree, t.coeff});
    }
    out.terms_ = normalize(std::move(moved));
    return out;
  }

  // ---- rendering ---------------------------------------------------------

  /// Canonical order, e.g. "3*q^2*t - 7/2*u"; "0" for zero.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      const bool neg = t.coeff < 0;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      const Rational mag = abs(t.coeff);
      std::string mono;
      for (std::size_t i = 0; i < arity(); ++i) {
        const unsigned e = exponent(t.key, i);
        if (e == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += (*ctx_)[i];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty())
        out += mag.get_str();
      else if (mag == 1)
        out += mono;
      else
        out += mag.get_str() + "*" + mono;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.to_string();
  }

 private:
  static constexpr unsigned shift(std::size_t var) noexcept {
    return static_cast<unsigned>(4 * (kMaxPolyVars - 1 - var));
  }

  static bool before(const Term& a, const Term& b) noexcept {
    return a.degree != b.degree ? a.degree > b.degree : a.key > b.key;
  }

  static VarContext unify(const MultiPoly& a, const MultiPoly& b) {
    if (!a.ctx_) return b.ctx_;
    if (!b.ctx_ || a.ctx_ == b.ctx_ || *a.ctx_ == *b.ctx_) return a.ctx_;
    throw ContextMismatch("polynomials live in different variable contexts");
  }

  void adopt_context(const VarContext& ctx) {
    if (!ctx_) ctx_ = ctx;
  }

  static std::vector<Term> normalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), before);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().key == t.key)
        out.back().coeff += t.coeff;
      else
        out.push_back(std::move(t));
      // Cancellation is cleared once the run of equal keys has ended.
      if (out.size() >= 2 && out[out.size() - 2].coeff == 0)
        out.erase(out.end() - 2);
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    return out;
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    MultiPoly out(unify(a, b));
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && before(a.terms_[i], b.terms_[j]))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || before(b.terms_[j], a.terms_[i])) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        out.terms_.push_back(std::move(t));
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (c != 0) out.terms_.push_back({a.terms_[i].key, a.terms_[i].degree, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  static std::uint64_t add_keys(std::uint64_t x, std::uint64_t y) {
    const std::uint64_t sum = x + y;
    // A carry out of any nibble shows up as a flipped low bit of the next one.
    const std::uint64_t carries = (x ^ y ^ sum) & 0x1111111111111110ULL;
    if (carries != 0 || sum < x) throw std::overflow_error("exponent exceeds 15");
    return sum;
  }

  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out(unify(a, b));
    if (a.terms_.empty() || b.terms_.empty()) return out;
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        prod.push_back({add_keys(s.key, t.key), s.degree + t.degree, s.coeff * t.coeff});
    out.terms_ = normalize(std::move(prod));
    return out;
  }

  VarContext ctx_;
  std::vector<Term> terms_;
};

inline std::string to_string(const MultiPoly& p) { return p.to_string(); }

// ---- parsing ----------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, VarContext ctx) : s_(text), ctx_(std::move(ctx)) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PolyParseError("polynomial parse error at " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc * Rational(1 / d.constant_term());
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPoly::constant(ctx_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (!ctx_ || std::find(ctx_->begin(), ctx_->end(), name) == ctx_->end())
        fail("unknown variable '" + name + "'");
      return MultiPoly::variable(ctx_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  VarContext ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses +, -, *, ^ (non-negative integer exponents), parentheses, integer
/// literals, division by constants, and the context's variable names.
inline MultiPoly parse_poly(std::string_view text, const VarContext& ctx) {
  return detail::PolyParser(text, ctx).parse();
}

}  // namespace eulermagic
