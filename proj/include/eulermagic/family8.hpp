#pragma once

// 8×8 Euler's magic matrices M = L(a..h)·R(p..w).
//
// With the left parameters fixed, the entries of M are linear forms in
// p..w and the two conditions become homogeneous quadratics
//   A = Σ m_ii² − Σ m_{i,9−i}²,     B = Σ m_ii² + Σ m_{i,9−i}² − 2γ,
// and M is Euler magic iff A = B = 0. When h = ±a ≠ 0 and
// b²+c²+d²+e²+f²+g² = 6a², both are linear in w, so w can be eliminated
// through F = yA − xB (x, y the w-coefficients). F then has p-degree ≤ 2 and
// its p² coefficient is a linear form in q..v; solving that form for q (or v),
// then F for p, then A for w yields rational solutions.

#include "eulermagic/matrix.hpp"
#include "eulermagic/octonion.hpp"
#include "eulermagic/poly.hpp"
#include "eulermagic/quadratic_oracle.hpp"
#include "eulermagic/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eulermagic {

using IntOct = std::array<Integer, 8>;

inline IntOct int_oct(const std::array<long, 8>& v) {
  IntOct out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = v[i];
  return out;
}

inline OctParams<Rational> to_rational(const IntOct& v) {
  OctParams<Rational> out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = Rational(v[i]);
  return out;
}

inline std::string to_string(const IntOct& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < 8; ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

inline VarContext right_context() {
  static const VarContext ctx = make_context(right_names());
  return ctx;
}

/// a..h followed by p..w.
inline VarContext full_context() {
  static const VarContext ctx = [] {
    auto names = left_names();
    names.insert(names.end(), right_names().begin(), right_names().end());
    return make_context(names);
  }();
  return ctx;
}

template <typename T>
T diagonal_square_sum(const Matrix<T>& m) {
  T s{};
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i) * m(i, i);
  return s;
}

template <typename T>
T antidiagonal_square_sum(const Matrix<T>& m) {
  T s{};
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) s += m(i, n - 1 - i) * m(i, n - 1 - i);
  return s;
}

/// M = L(left)·R(p..w) with symbolic right parameters.
inline Matrix<MultiPoly> symbolic_product(const IntOct& left) {
  const auto ctx = right_context();
  return octonion_product(oct_constants(ctx, left), oct_symbols(ctx, right_names()));
}

/// M = L(a..h)·R(p..w), all sixteen parameters symbolic.
inline Matrix<MultiPoly> symbolic_product_full() {
  const auto ctx = full_context();
  return octonion_product(oct_symbols(ctx, left_names()), oct_symbols(ctx, right_names()));
}

struct DiagForms {
  MultiPoly A;
  MultiPoly B;
  IntOct left;
};

struct SymbolicDiagForms {
  MultiPoly A;
  MultiPoly B;
};

namespace detail {

template <typename T>
std::pair<T, T> forms_of(const Matrix<T>& m, const T& gamma_value) {
  const T d = diagonal_square_sum(m);
  const T ad = antidiagonal_square_sum(m);
  return {d - ad, d + ad - T(2) * gamma_value};
}

}  // namespace detail

/// A and B in 16 variables.
inline SymbolicDiagForms diag_forms_symbolic() {
  const auto ctx = full_context();
  const auto left = oct_symbols(ctx, left_names());
  const auto right = oct_symbols(ctx, right_names());
  auto [a, b] = detail::forms_of(octonion_product(left, right), gamma(left, right));
  return {std::move(a), std::move(b)};
}

/// Numeric route: A and B at one right-parameter point, through the numeric
/// product L·R. This is the black box handed to the quadratic-form oracle.
inline std::pair<Rational, Rational> diag_forms_at(const IntOct& left,
                                                   std::span<const Rational> right_point) {
  OctParams<Rational> right;
  std::copy(right_point.begin(), right_point.end(), right.begin());
  const auto l = to_rational(left);
  return detail::forms_of(octonion_product(l, right), gamma(l, right));
}

class OracleMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Recovers A and B by black-box evaluation and compares with the symbolic
/// tables. Throws OracleMismatch on any difference.
inline void validate_forms(const DiagForms& forms) {
  const auto& names = right_names();
  const auto left = forms.left;
  const BlackBox fa = [left](std::span<const Rational> x) { return diag_forms_at(left, x).first; };
  const BlackBox fb = [left](std::span<const Rational> x) { return diag_forms_at(left, x).second; };
  if (quadratic_form_coeffs(fa, 8) != quadratic_table(forms.A, names))
    throw OracleMismatch("symbolic A disagrees with the black-box table for " + to_string(left));
  if (quadratic_form_coeffs(fb, 8) != quadratic_table(forms.B, names))
    throw OracleMismatch("symbolic B disagrees with the black-box table for " + to_string(left));
}

/// A and B over Q[p..w] for fixed integer left parameters. With `validate`,
/// both are cross-checked against the black-box oracle.
inline DiagForms diag_forms(const IntOct& left, bool validate = true) {
  // Specializing the 16-variable forms is several times cheaper than
  // forming the product over Q[p..w] for every tuple.
  static const SymbolicDiagForms sym = diag_forms_symbolic();
  std::map<std::string, Rational> values;
  for (std::size_t i = 0; i < 8; ++i) values[left_names()[i]] = Rational(left[i]);
  const auto ctx = right_context();
  MultiPoly a = sym.A.specialize(values).with_context(ctx);
  MultiPoly b = sym.B.specialize(values).with_context(ctx);
  if (!a.is_homogeneous(2) && !a.is_zero()) throw std::logic_error("A is not a quadratic form");
  if (!b.is_homogeneous(2) && !b.is_zero()) throw std::logic_error("B is not a quadratic form");
  DiagForms forms{std::move(a), std::move(b), left};
  if (validate) validate_forms(forms);
  return forms;
}

// ---- properness witnesses -------------------------------------------------

/// m_first − m_second (or m_first + m_second when is_sum). Two entries have
/// equal squares as polynomials iff one of these forms is identically zero.
struct Witness {
  Position first;
  Position second;
  bool is_sum;
  MultiPoly form;
};

inline std::vector<Witness> improper_witnesses(const Matrix<MultiPoly>& m) {
  std::vector<Witness> out;
  const std::size_t n = m.rows();
  const std::size_t total = n * m.cols();
  for (std::size_t x = 0; x < total; ++x)
    for (std::size_t y = x + 1; y < total; ++y) {
      const auto& mx = m.entries()[x];
      const auto& my = m.entries()[y];
      const Position px{x / n + 1, x % n + 1}, py{y / n + 1, y % n + 1};
      out.push_back({px, py, false, mx - my});
      out.push_back({px, py, true, mx + my});
    }
  return out;
}

inline std::vector<Witness> improper_witnesses(const IntOct& left) {
  return improper_witnesses(symbolic_product(left));
}

inline std::vector<Witness> vanishing_witnesses(const std::vector<Witness>& ws) {
  std::vector<Witness> out;
  for (const auto& w : ws)
    if (w.form.is_zero()) out.push_back(w);
  return out;
}

inline const Witness* find_witness(const std::vector<Witness>& ws, Position a, Position b,
                                   bool is_sum) {
  for (const auto& w : ws)
    if (w.first == a && w.second == b && w.is_sum == is_sum) return &w;
  return nullptr;
}

namespace detail {

inline bool poly_less(const MultiPoly& x, const MultiPoly& y) {
  const auto tx = x.terms(), ty = y.terms();
  const std::size_t n = std::min(tx.size(), ty.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (tx[i].degree != ty[i].degree) return tx[i].degree > ty[i].degree;
    if (tx[i].key != ty[i].key) return tx[i].key > ty[i].key;
    if (tx[i].coeff != ty[i].coeff) return tx[i].coeff < ty[i].coeff;
  }
  return tx.size() < ty.size();
}

inline MultiPoly sign_normalized(const MultiPoly& p) {
  return (!p.is_zero() && p.terms().front().coeff < 0) ? -p : p;
}

}  // namespace detail

/// Pairwise distinct entry squares as polynomials: no two entries agree up
/// to sign. Equivalent to vanishing_witnesses(improper_witnesses(m)) being
/// empty, in O(n² log n) instead of O(n⁴).
inline bool polynomially_proper(const Matrix<MultiPoly>& m) {
  std::vector<MultiPoly> normed;
  normed.reserve(m.entries().size());
  for (const auto& x : m.entries()) normed.push_back(detail::sign_normalized(x));
  std::sort(normed.begin(), normed.end(), detail::poly_less);
  for (std::size_t i = 1; i < normed.size(); ++i)
    if (normed[i] == normed[i - 1]) return false;
  return true;
}

namespace detail {

// Divisibility of p by a polynomial ℓ of total degree 1: solve ℓ = 0 for its
// first variable and test that p vanishes there.
inline bool divisible_by_linear(const MultiPoly& p, const MultiPoly& l) {
  for (std::size_t i = 0; i < l.arity(); ++i) {
    const auto& name = (*l.context())[i];
    const MultiPoly lead = l.coefficient_of(name, 1);
    if (lead.is_zero()) continue;
    const Rational c = lead.constant_term();
    const MultiPoly rest = l.coefficient_of(name, 0);
    return p.substitute(name, rest * Rational(-1 / c)).is_zero();
  }
  return false;
}

inline MultiPoly monic_linear(const MultiPoly& l) {
  return l.scaled(Rational(1 / l.terms().front().coeff));
}

}  // namespace detail

/// Whether A = 0 forces two entries of M to have equal squares: every linear
/// factor of the quadratic A is, up to a scalar, one of the witness forms.
/// This is the all-ones situation, where A = (p+q+t+u)(r+s+v+w) while
/// m₃₃ − m₃₆ = 2(p+q+t+u) and m₂₂ − m₂₇ = 2(r+s+v+w). Returns the dividing
/// witnesses when it does.
inline std::optional<std::vector<Witness>> forced_improper(const MultiPoly& a,
                                                           const std::vector<Witness>& ws) {
  if (a.is_zero() || a.total_degree() > 2 || a.total_degree() < 1) return std::nullopt;
  std::vector<Witness> dividing;
  std::vector<MultiPoly> seen;
  for (const auto& w : ws) {
    if (w.form.is_zero() || w.form.total_degree() != 1) continue;
    const MultiPoly monic = detail::monic_linear(w.form);
    if (std::find(seen.begin(), seen.end(), monic) != seen.end()) continue;
    if (!detail::divisible_by_linear(a, monic)) continue;
    seen.push_back(monic);
    dividing.push_back(w);
  }
  if (dividing.empty()) return std::nullopt;
  if (a.total_degree() == 1) return dividing;  // A is itself a witness multiple
  if (seen.size() >= 2) return dividing;       // A = c·ℓ₁·ℓ₂
  // One dividing factor: forced only if A = c·ℓ².
  const MultiPoly sq = seen.front() * seen.front();
  const Rational c = a.terms().front().coeff / sq.terms().front().coeff;
  if ((a - sq.scaled(c)).is_zero()) return dividing;
  return std::nullopt;
}

// ---- the w-degree-one restriction -------------------------------------------

/// h = ±a ≠ 0 and b²+c²+d²+e²+f²+g² = 6a².
inline bool w1_check(const IntOct& x) {
  const Integer& a = x[0];
  const Integer& h = x[7];
  if (a == 0 || (h != a && h != -a)) return false;
  Integer six = 0;
  for (std::size_t i = 1; i <= 6; ++i) six += x[i] * x[i];
  return six == 6 * a * a;
}

/// All primitive tuples with 1 ≤ a ≤ a_max, h = ±a and the six middle squares
/// summing to 6a², in lexicographic order of (a, b, ..., h).
inline std::vector<IntOct> enumerate_w1(long a_max) {
  std::vector<IntOct> out;
  for (long a = 1; a <= a_max; ++a) {
    const long target = 6 * a * a;
    long r = 0;
    while ((r + 1) * (r + 1) <= target) ++r;
    std::array<long, 6> mid{};
    auto rec = [&](auto&& self, std::size_t k, long remaining) -> void {
      if (k == 6) {
        if (remaining != 0) return;
        for (long h : {-a, a}) {
          IntOct t;
          t[0] = a;
          for (std::size_t i = 0; i < 6; ++i) t[i + 1] = mid[i];
          t[7] = h;
          Integer g = 0;
          for (const auto& v : t) g = gcd(g, v);
          if (g == 1) out.push_back(t);
        }
        return;
      }
      for (long v = -r; v <= r; ++v) {
        if (v * v > remaining) continue;
        mid[k] = v;
        self(self, k + 1, remaining - v * v);
      }
    };
    rec(rec, 0, target);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Elimination {
  MultiPoly F;  // yA − xB, free of w
  MultiPoly x;  // w-coefficient of A
  MultiPoly y;  // w-coefficient of B
};

class WDegreeTooHigh : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Elimination eliminate_w(const DiagForms& forms) {
  if (forms.A.degree_in("w") > 1 || forms.B.degree_in("w") > 1)
    throw WDegreeTooHigh("eliminate_w: A or B has w-degree > 1");
  Elimination e;
  e.x = forms.A.coefficient_of("w", 1);
  e.y = forms.B.coefficient_of("w", 1);
  e.F = e.y * forms.A - e.x * forms.B;
  if (e.F.degree_in("w") > 0) throw std::logic_error("eliminate_w: F still depends on w");
  if (w1_check(forms.left) && e.F.degree_in("p") > 2)
    throw std::logic_error("eliminate_w: p-degree of F exceeds 2 under the w1 restriction");
  return e;
}

/// (ag+bh)q + (−af+ch)r + (−ae+dh)s + (ad+eh)t + (ac+fh)u + (−ab+gh)v; the p²
/// coefficient of F is −128h² times this form.
inline MultiPoly p2_linear_form(const IntOct& x) {
  const auto ctx = right_context();
  const Integer &a = x[0], &b = x[1], &c = x[2], &d = x[3], &e = x[4], &f = x[5], &g = x[6],
                &h = x[7];
  const std::array<std::pair<const char*, Integer>, 6> coeffs{{
      {"q", a * g + b * h},
      {"r", -a * f + c * h},
      {"s", -a * e + d * h},
      {"t", a * d + e * h},
      {"u", a * c + f * h},
      {"v", -a * b + g * h},
  }};
  MultiPoly out(ctx);
  for (const auto& [name, k] : coeffs) out += MultiPoly::variable(ctx, name).scaled(Rational(k));
  return out;
}

// ---- solve chain ------------------------------------------------------------

struct ChainSolution {
  std::string linear_variable;  // "q" or "v", solved in step 1
  std::string normalized_variable;  // set to 1 when only four values were given
  int f_p_degree_after_step1 = -1;
  OctParams<Rational> right;
  RatMatrix matrix;
  IntMatrix primitive;
  VerifyReport report;
};

struct ChainFailure {
  std::string step;
  std::string reason;
};

using ChainOutcome = std::variant<ChainSolution, ChainFailure>;

/// Runs the elimination chain for a w1 left tuple. `free` assigns values to
/// variables among q, r, s, t, u, v other than the step-1 variable; every
/// such variable must be assigned except at most one, which is then set to 1
/// (A and B are homogeneous, so one coordinate fixes the scale).
inline ChainOutcome solve_chain(const DiagForms& forms, const Elimination& elim,
                                const std::map<std::string, Rational>& free) {
  if (!w1_check(forms.left)) throw std::invalid_argument("solve_chain: left tuple fails w1_check");
  static const std::vector<std::string> middle{"q", "r", "s", "t", "u", "v"};
  for (const auto& [name, val] : free)
    if (std::find(middle.begin(), middle.end(), name) == middle.end())
      throw std::invalid_argument("solve_chain: '" + name + "' is not one of q,r,s,t,u,v");

  ChainSolution sol;
  // Step 1: make F linear in p by solving its p² coefficient for q, else v.
  const MultiPoly p2 = elim.F.coefficient_of("p", 2);
  const MultiPoly q_coeff = p2.coefficient_of("q", 1);
  sol.linear_variable = !q_coeff.is_zero() ? "q" : "v";
  const MultiPoly lead = p2.coefficient_of(sol.linear_variable, 1);
  if (lead.is_zero()) return ChainFailure{"linear-solve", "p^2 coefficient has no q or v term"};
  if (free.contains(sol.linear_variable))
    throw std::invalid_argument("solve_chain: '" + sol.linear_variable +
                                "' is solved in step 1 and cannot be assigned");

  std::map<std::string, Rational> point = free;
  std::vector<std::string> unassigned;
  for (const auto& n : middle)
    if (n != sol.linear_variable && !point.contains(n)) unassigned.push_back(n);
  if (unassigned.size() > 1)
    throw std::invalid_argument("solve_chain: too few free values");
  if (unassigned.size() == 1) {
    sol.normalized_variable = unassigned.front();
    point[unassigned.front()] = 1;
  }

  const MultiPoly solved =
      p2.coefficient_of(sol.linear_variable, 0).scaled(Rational(-1 / lead.constant_term()));
  const MultiPoly f1 = elim.F.substitute(sol.linear_variable, solved);
  sol.f_p_degree_after_step1 = f1.degree_in("p");
  if (sol.f_p_degree_after_step1 > 1)
    throw std::logic_error("solve_chain: F still quadratic in p after step 1");
  point[sol.linear_variable] = solved.specialize(point).constant_term();

  // Step 2: F is now c1·p + c0.
  const MultiPoly fp = f1.specialize(point);
  const Rational c1 = fp.coefficient_of("p", 1).constant_term();
  const Rational c0 = fp.coefficient_of("p", 0).constant_term();
  if (c1 == 0) return ChainFailure{"p-solve", "p-coefficient zero"};
  point["p"] = -c0 / c1;

  // Step 3: A is linear in w.
  const MultiPoly aw = forms.A.specialize(point);
  const Rational x1 = aw.coefficient_of("w", 1).constant_term();
  const Rational x0 = aw.coefficient_of("w", 0).constant_term();
  if (x1 == 0) return ChainFailure{"w-solve", "w-coefficient zero"};
  point["w"] = -x0 / x1;

  // Step 4: both conditions, exactly.
  std::vector<Rational> values;
  for (const auto& n : right_names()) values.push_back(point.at(n));
  if (forms.A.eval(values) != 0 || forms.B.eval(values) != 0)
    return ChainFailure{"back-check", "A = B = 0 does not hold"};
  for (std::size_t i = 0; i < 8; ++i) sol.right[i] = values[i];
  sol.matrix = octonion_product(to_rational(forms.left), sol.right);
  if (is_zero(sol.matrix)) return ChainFailure{"back-check", "zero matrix"};
  sol.primitive = rescale_primitive(sol.matrix);
  sol.report = verify(sol.primitive);
  return sol;
}

inline ChainOutcome solve_chain(const IntOct& left, const std::map<std::string, Rational>& free) {
  if (!w1_check(left)) throw std::invalid_argument("solve_chain: left tuple fails w1_check");
  const DiagForms forms = diag_forms(left);
  return solve_chain(forms, eliminate_w(forms), free);
}

// ---- the four-parameter family ----------------------------------------------

class DegenerateParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline const IntOct& family_left() {
  static const IntOct left = int_oct({2, 1, 1, 4, 2, 1, 1, -2});
  return left;
}

/// X = 7q² + 7r² + 21qt − 7rt + 34t² − 7qu − 21tu + 4u² + 7q + 21r − 7u + 34.
inline Rational family_x(const Rational& q, const Rational& r, const Rational& t,
                         const Rational& u) {
  return 7 * q * q + 7 * r * r + 21 * q * t - 7 * r * t + 34 * t * t - 7 * q * u -
         21 * t * u + 4 * u * u + 7 * q + 21 * r - 7 * u + 34;
}

struct FamilyResult {
  Rational q, r, t, u;
  Rational X;
  OctParams<Rational> right;
  RatMatrix matrix;
  IntMatrix primitive;
  VerifyReport report;  // of the primitive matrix
};

/// right = (3(t²−1)u/(2X), q, r, 1, t, u−q−3t−1, t−r−3, (u²−X)/(2u)) and
/// M = L(2,1,1,4,2,1,1,−2)·R(right). Throws DegenerateParameter if X = 0 or
/// u = 0.
inline FamilyResult theorem_family(const Rational& q, const Rational& r, const Rational& t,
                                   const Rational& u) {
  FamilyResult out{q, r, t, u, family_x(q, r, t, u), {}, {}, {}, {}};
  if (u == 0) throw DegenerateParameter("degenerate parameter: u = 0");
  if (out.X == 0) throw DegenerateParameter("degenerate parameter: X = 0");
  out.right = {Rational(3 * (t * t - 1) * u / (2 * out.X)),
               q,
               r,
               Rational(1),
               t,
               Rational(u - q - 3 * t - 1),
               Rational(t - r - 3),
               Rational((u * u - out.X) / (2 * u))};
  out.matrix = octonion_product(to_rational(family_left()), out.right);
  out.primitive = rescale_primitive(out.matrix);
  out.report = verify(out.primitive);
  return out;
}

inline nlohmann::json family_to_json(const FamilyResult& f) {
  auto right = nlohmann::json::array();
  for (const auto& x : f.right) right.push_back(to_string(x));
  return {{"params",
           {{"q", to_string(f.q)}, {"r", to_string(f.r)}, {"t", to_string(f.t)}, {"u", to_string(f.u)}}},
          {"X", to_string(f.X)},
          {"right", std::move(right)},
          {"matrix", entries_json(f.primitive)},
          {"report", report_to_json(f.report)}};
}

}  // namespace eulermagic
