#pragma once

// Cayley transform S ↦ (I−S)(I+S)⁻¹ between rational skew-symmetric matrices
// and rational orthogonal matrices without eigenvalue −1, the ±1 sign
// diagonal that reaches the remaining orthogonal matrices, and the polynomial
// identity certificate showing that no rational 3×3 Euler's magic matrix exists.

#include "eulermagic/matrix.hpp"
#include "eulermagic/poly.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eulermagic {

class NotSkewSymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MinusOneEigenvalue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SkewMatrix {
 public:
  explicit SkewMatrix(RatMatrix m) : m_(std::move(m)) {
    if (!m_.is_square()) throw NotSkewSymmetric("skew matrix must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i; j < m_.cols(); ++j)
        if (m_(i, j) != -m_(j, i)) throw NotSkewSymmetric("matrix is not skew-symmetric");
  }

  static SkewMatrix zero(std::size_t n) { return SkewMatrix(RatMatrix(n, n)); }

  /// Strict upper triangle in row-major order: (1,2), (1,3), ..., (n-1,n).
  static SkewMatrix from_upper(std::size_t n, const std::vector<Rational>& upper) {
    if (upper.size() != n * (n - 1) / 2)
      throw DimensionMismatch("from_upper: expected n(n-1)/2 entries");
    RatMatrix m(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = upper[k];
        m(j, i) = -upper[k];
        ++k;
      }
    return SkewMatrix(std::move(m));
  }

  /// S = ((0,a,b),(−a,0,c),(−b,−c,0)).
  static SkewMatrix three(const Rational& a, const Rational& b, const Rational& c) {
    return from_upper(3, {a, b, c});
  }

  std::size_t n() const noexcept { return m_.rows(); }
  const RatMatrix& matrix() const noexcept { return m_; }

  friend bool operator==(const SkewMatrix& x, const SkewMatrix& y) { return x.m_ == y.m_; }

 private:
  RatMatrix m_;
};

inline bool is_orthogonal(const RatMatrix& m) {
  return m.is_square() && mat_mul(m, transpose(m)) == RatMatrix::identity(m.rows());
}

/// (I−S)(I+S)⁻¹. I+S is invertible for every real skew S.
inline RatMatrix cayley(const SkewMatrix& s) {
  const auto id = RatMatrix::identity(s.n());
  return mat_mul(id - s.matrix(), mat_inverse(id + s.matrix()));
}

/// S = (I−M)(I+M)⁻¹ for orthogonal M; throws MinusOneEigenvalue when I+M is
/// singular.
inline SkewMatrix inverse_cayley(const RatMatrix& m) {
  if (!is_orthogonal(m)) throw std::invalid_argument("inverse_cayley: matrix is not orthogonal");
  const auto id = RatMatrix::identity(m.rows());
  RatMatrix inv;
  try {
    inv = mat_inverse(id + m);
  } catch (const SingularMatrix&) {
    throw MinusOneEigenvalue("inverse_cayley: -1 is an eigenvalue (I+M singular)");
  }
  return SkewMatrix(mat_mul(id - m, inv));
}

/// Diagonal ±1 matrix D with M + D invertible, so that DM has no eigenvalue
/// −1. Candidates are scanned by number of −1 entries (0, 1, ..., n) and, within
/// a count, by the lexicographic order of the −1 positions.
inline RatMatrix sign_diagonal(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("sign_diagonal: matrix must be square");
  const std::size_t n = m.rows();
  if (n > 16) throw std::invalid_argument("sign_diagonal: n > 16");
  for (std::size_t grade = 0; grade <= n; ++grade) {
    std::vector<std::size_t> pos(grade);
    for (std::size_t i = 0; i < grade; ++i) pos[i] = i;
    for (;;) {
      RatMatrix d = RatMatrix::identity(n);
      for (auto p : pos) d(p, p) = -1;
      if (determinant(m + d) != 0) return d;
      // Next combination in lexicographic order.
      std::size_t i = grade;
      while (i > 0 && pos[i - 1] == n - grade + i - 1) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < grade; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  throw std::logic_error("sign_diagonal: no sign diagonal makes M + D invertible");
}

struct OrthoReduction {
  Rational lambda;
  RatMatrix orthogonal;
};

/// For odd n and M·Mᵗ = γI with γ ≠ 0: λ = det M / γ^k (n = 2k+1) satisfies
/// λ² = γ, and M/λ is orthogonal.
inline OrthoReduction ortho_reduce(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("ortho_reduce: matrix must be square");
  const std::size_t n = m.rows();
  if (n % 2 == 0) throw std::invalid_argument("ortho_reduce: n must be odd");
  const RatMatrix gram = mat_mul(m, transpose(m));
  const Rational g = gram(0, 0);
  if (g == 0) throw std::domain_error("ortho_reduce: gamma = 0");
  if (gram != scale(RatMatrix::identity(n), g))
    throw std::domain_error("ortho_reduce: M·Mᵗ is not a scalar matrix");
  const Rational lambda = determinant(m) / rpow(g, (n - 1) / 2);
  if (lambda * lambda != g) throw std::logic_error("ortho_reduce: lambda^2 != gamma");
  return {lambda, scale(m, Rational(1 / lambda))};
}

// ---- symbolic n = 3 --------------------------------------------------------

inline VarContext abc_context() {
  static const VarContext ctx = make_context({"a", "b", "c"});
  return ctx;
}

inline VarContext beta_s_p_context() {
  static const VarContext ctx = make_context({"beta", "s", "p"});
  return ctx;
}

struct Cayley3Symbolic {
  MultiPoly delta;          // det(I+S)
  Matrix<MultiPoly> delta_m;  // Δ·M = (I−S)·adj(I+S)
};

/// Δ·M for the generic S = ((0,a,b),(−a,0,c),(−b,−c,0)), computed through the
/// adjugate so that no division is needed.
inline Cayley3Symbolic cayley3_symbolic() {
  const auto ctx = abc_context();
  const MultiPoly a = MultiPoly::variable(ctx, "a");
  const MultiPoly b = MultiPoly::variable(ctx, "b");
  const MultiPoly c = MultiPoly::variable(ctx, "c");
  const MultiPoly zero(ctx);
  const auto s = Matrix<MultiPoly>::from_rows({{zero, a, b}, {-a, zero, c}, {-b, -c, zero}});
  const auto id = Matrix<MultiPoly>::identity(3, MultiPoly::constant(ctx, 1));
  const auto i_plus_s = id + s;
  return {determinant_expansion(i_plus_s), mat_mul(id - s, adjugate(i_plus_s))};
}

struct Cayley3Forms {
  MultiPoly D;  // diagonal condition: Σ (Δm_ii)² − Δ²
  MultiPoly E;  // anti-diagonal condition: Σ (Δm_{i,4−i})² − Δ²
};

inline Cayley3Forms cayley3_forms() {
  const auto sym = cayley3_symbolic();
  const auto& dm = sym.delta_m;
  MultiPoly diag = dm(0, 0) * dm(0, 0) + dm(1, 1) * dm(1, 1) + dm(2, 2) * dm(2, 2);
  MultiPoly anti = dm(0, 2) * dm(0, 2) + dm(1, 1) * dm(1, 1) + dm(2, 0) * dm(2, 0);
  const MultiPoly d2 = sym.delta * sym.delta;
  return {diag - d2, anti - d2};
}

// ---- certificate -------------------------------------------------------------

enum class CertStatus { Pass, Fail, Axiom };

inline std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Pass: return "PASS";
    case CertStatus::Fail: return "FAIL";
    case CertStatus::Axiom: return "AXIOM";
  }
  return "?";
}

struct CertificateLine {
  std::string name;
  std::string statement;
  CertStatus status;
  std::size_t lhs_minus_rhs_term_count;
};

struct Certificate {
  std::vector<CertificateLine> lines;

  bool all_pass() const {
    for (const auto& l : lines)
      if (l.status == CertStatus::Fail) return false;
    return true;
  }
};

inline CertificateLine check_identity(std::string name, std::string statement,
                                      const MultiPoly& lhs, const MultiPoly& rhs) {
  const MultiPoly diff = lhs - rhs;
  return {std::move(name), std::move(statement),
          diff.is_zero() ? CertStatus::Pass : CertStatus::Fail, diff.term_count()};
}

/// Added to the right-hand side of the main identity; nonzero only in
/// negative-control runs.
struct CertificateOptions {
  Rational main_identity_perturbation = 0;
};

inline Certificate nonexistence_certificate(const CertificateOptions& opts = {}) {
  const auto abc = abc_context();
  const auto bsp = beta_s_p_context();
  const auto P = [&](const char* text) { return parse_poly(text, abc); };
  const auto Q = [&](const char* text) { return parse_poly(text, bsp); };
  const auto forms = cayley3_forms();
  const Rational half(1, 2), quarter(1, 4);

  Certificate cert;

  cert.lines.push_back(check_identity(
      "main-identity", "(D+E)/2 = (a^2 - 2*b^2 + c^2 - 2)^2 - 3*(b^2 + 1)^2",
      (forms.D + forms.E) * half,
      P("(a^2 - 2*b^2 + c^2 - 2)^2 - 3*(b^2 + 1)^2") +
          MultiPoly::constant(abc, opts.main_identity_perturbation)));

  // D/2 and E/4 rewritten in beta = b^2, s = a^2 + c^2, p = a^2*c^2.
  {
    const MultiPoly d_red = Q("beta^2 - 2*(1 + s)*beta + (1 - s)^2 - 4*p");
    const MultiPoly e_red = Q("(2 - s)*beta - s + 2*p");
    auto pull_back = [&](const MultiPoly& f) {
      std::map<std::string, MultiPoly> subs{
          {"beta", P("b^2")}, {"s", P("a^2 + c^2")}, {"p", P("a^2*c^2")}};
      // f lives in (beta, s, p); rebuild it term by term in (a, b, c).
      MultiPoly out(abc);
      for (const auto& t : f.terms()) {
        MultiPoly mono = MultiPoly::constant(abc, t.coeff);
        for (std::size_t i = 0; i < f.arity(); ++i) {
          const unsigned e = MultiPoly::exponent(t.key, i);
          if (e) mono = mono * subs.at((*f.context())[i]).pow(e);
        }
        out += mono;
      }
      return out;
    };
    const MultiPoly d_diff = forms.D * half - pull_back(d_red);
    const MultiPoly e_diff = forms.E * quarter - pull_back(e_red);
    const bool ok = d_diff.is_zero() && e_diff.is_zero();
    cert.lines.push_back({"beta-s-p-reduction",
                          "D/2 = beta^2 - 2(1+s)beta + (1-s)^2 - 4p and E/4 = (2-s)beta - s + 2p "
                          "with beta = b^2, s = a^2 + c^2, p = a^2 c^2",
                          ok ? CertStatus::Pass : CertStatus::Fail,
                          d_diff.term_count() + e_diff.term_count()});
  }

  const MultiPoly eliminant =
      Q("4*p^2 + (-8*s^2 + 16*s - 8)*p + s^4 - 4*s^3 + 12*s^2 - 16*s + 4");
  cert.lines.push_back(check_identity(
      "elimination-identity",
      "4p^2 + (-8s^2 + 16s - 8)p + s^4 - 4s^3 + 12s^2 - 16s + 4 = 4(p - (s-1)^2)^2 - 3(s-2)^2 s^2",
      eliminant, Q("4*(p - (s - 1)^2)^2 - 3*(s - 2)^2*s^2")));

  // E/4 = 0 gives beta = (s - 2p)/(2 - s); clearing (2 - s)^2 from D/2 must
  // leave exactly the eliminant.
  {
    const MultiPoly d_red = Q("beta^2 - 2*(1 + s)*beta + (1 - s)^2 - 4*p");
    const MultiPoly cleared = d_red.substitute_fraction("beta", Q("s - 2*p"), Q("2 - s"));
    cert.lines.push_back(check_identity(
        "beta-elimination",
        "(2-s)^2 * (D/2)|_{beta=(s-2p)/(2-s)} = 4p^2 + (-8s^2 + 16s - 8)p + s^4 - 4s^3 + 12s^2 - 16s + 4",
        cleared, eliminant));
  }

  cert.lines.push_back({"three-not-a-square",
                        "3 is not the square of a rational number (classical; assumed)",
                        CertStatus::Axiom, 0});
  return cert;
}

inline nlohmann::json certificate_to_json(const Certificate& c) {
  auto arr = nlohmann::json::array();
  for (const auto& l : c.lines)
    arr.push_back({{"name", l.name},
                   {"status", to_string(l.status)},
                   {"lhs_minus_rhs_term_count", l.lhs_minus_rhs_term_count}});
  return arr;
}

inline std::string certificate_to_text(const Certificate& c) {
  std::string out;
  for (const auto& l : c.lines)
    out += l.name + ": " + to_string(l.status) + "  [" + l.statement + "]\n";
  return out;
}

}  // namespace eulermagic
