#include "eulermagic/cayley.hpp"
#include "eulermagic/random.hpp"

#include <gtest/gtest.h>

using namespace eulermagic;

namespace {

SkewMatrix random_skew(Xoshiro256ss& rng, std::size_t n, long num = 6, long den = 4) {
  std::vector<Rational> upper(n * (n - 1) / 2);
  for (auto& x : upper) x = rng.rational(num, den);
  return SkewMatrix::from_upper(n, upper);
}

MultiPoly A(const char* text) { return parse_poly(text, abc_context()); }

}  // namespace

TEST(Skew, RejectsNonSkewInput) {
  EXPECT_THROW(SkewMatrix(RatMatrix::from_rows({{0, 1}, {1, 0}})), NotSkewSymmetric);
  EXPECT_THROW(SkewMatrix(RatMatrix::from_rows({{1, 0}, {0, 0}})), NotSkewSymmetric);
  EXPECT_THROW(SkewMatrix::from_upper(3, {1, 2}), DimensionMismatch);
}

TEST(Cayley, Examples) {
  EXPECT_EQ(cayley(SkewMatrix::zero(4)), RatMatrix::identity(4));
  const RatMatrix m = cayley(SkewMatrix::three(1, 1, 1));
  EXPECT_EQ(m(0, 0), 0);
  // Δ·M from the symbolic display at (1,1,1), divided by Δ = 4.
  const auto sym = cayley3_symbolic();
  const std::map<std::string, Rational> pt{{"a", 1}, {"b", 1}, {"c", 1}};
  EXPECT_EQ(sym.delta.eval(pt), 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(sym.delta_m(i, j).eval(pt) / 4, m(i, j));
}

TEST(Cayley, SymbolicDisplayEntries) {
  const auto sym = cayley3_symbolic();
  EXPECT_EQ(sym.delta, A("a^2 + b^2 + c^2 + 1"));
  EXPECT_EQ(sym.delta_m(0, 0), A("-a^2 - b^2 + c^2 + 1"));
  EXPECT_EQ(sym.delta_m(0, 1), A("-2*b*c - 2*a"));
  EXPECT_EQ(sym.delta_m(0, 2), A("2*a*c - 2*b"));
}

TEST(Cayley, OrthogonalAndRoundTrip) {
  Xoshiro256ss rng(31);
  for (std::size_t n : {3u, 5u, 7u}) {
    for (int k = 0; k < 100; ++k) {
      const SkewMatrix s = random_skew(rng, n);
      const RatMatrix m = cayley(s);
      ASSERT_TRUE(is_orthogonal(m));
      EXPECT_EQ(inverse_cayley(m), s);
      const RatMatrix d = sign_diagonal(m);
      EXPECT_NE(determinant(m + d), 0);
      EXPECT_NE(determinant(mat_mul(d, m) + RatMatrix::identity(n)), 0);
    }
  }
}

TEST(InverseCayley, Examples) {
  EXPECT_EQ(inverse_cayley(RatMatrix::identity(3)), SkewMatrix::zero(3));
  EXPECT_THROW(inverse_cayley(-RatMatrix::identity(3)), MinusOneEigenvalue);
  EXPECT_THROW(inverse_cayley(RatMatrix::from_rows({{1, 1}, {0, 1}})), std::invalid_argument);
}

TEST(SignDiagonal, FixedScanOrder) {
  EXPECT_EQ(sign_diagonal(RatMatrix::identity(3)), RatMatrix::identity(3));
  EXPECT_EQ(sign_diagonal(-RatMatrix::identity(3)), -RatMatrix::identity(3));
  // diag(1, −1, 1): D = I fails, the first grade-one candidate diag(−1,1,1)
  // also fails (entry (2,2) stays 0), diag(1,−1,1) works.
  const auto m = RatMatrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  EXPECT_EQ(sign_diagonal(m), RatMatrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));
}

TEST(Cayley3Forms, MatchDisplays) {
  const auto f = cayley3_forms();
  EXPECT_EQ(f.D, A("2*(a^4 - 2*a^2*b^2 + b^4 - 2*a^2*c^2 - 2*b^2*c^2 + c^4 - 2*a^2 - 2*b^2 - 2*c^2 + 1)"));
  EXPECT_EQ(f.E, A("4*(-a^2*b^2 + 2*a^2*c^2 - b^2*c^2 - a^2 + 2*b^2 - c^2)"));
  EXPECT_EQ(f.D.eval({{"a", 0}, {"b", 0}, {"c", 0}}), 2);
}

TEST(Certificate, AllIdentitiesPass) {
  const auto c = nonexistence_certificate();
  ASSERT_EQ(c.lines.size(), 5u);
  const std::array<const char*, 5> names{"main-identity", "beta-s-p-reduction",
                                         "elimination-identity", "beta-elimination",
                                         "three-not-a-square"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(c.lines[i].name, names[i]);
    EXPECT_EQ(c.lines[i].lhs_minus_rhs_term_count, 0u);
  }
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(c.lines[i].status, CertStatus::Pass);
  EXPECT_EQ(c.lines[4].status, CertStatus::Axiom);
  EXPECT_TRUE(c.all_pass());
}

TEST(Certificate, MainIdentitySpotCheck) {
  const auto f = cayley3_forms();
  const std::map<std::string, Rational> pt{{"a", 2}, {"b", 1}, {"c", 1}};
  const Rational lhs = (f.D.eval(pt) + f.E.eval(pt)) / 2;
  const Rational rhs = (4 - 2 + 1 - 2) * (4 - 2 + 1 - 2) - 3 * (1 + 1) * (1 + 1);
  EXPECT_EQ(lhs, rhs);
}

TEST(Certificate, PerturbationIsCaught) {
  CertificateOptions opts;
  opts.main_identity_perturbation = 1;
  const auto c = nonexistence_certificate(opts);
  EXPECT_EQ(c.lines[0].status, CertStatus::Fail);
  EXPECT_EQ(c.lines[0].lhs_minus_rhs_term_count, 1u);
  EXPECT_FALSE(c.all_pass());
  const auto j = certificate_to_json(c);
  EXPECT_EQ(j[0].at("status"), "FAIL");
}

TEST(OrthoReduce, Examples) {
  const auto r = ortho_reduce(scale(RatMatrix::identity(3), Rational(5)));
  EXPECT_EQ(r.lambda, 5);
  EXPECT_EQ(r.orthogonal, RatMatrix::identity(3));
  EXPECT_THROW(ortho_reduce(RatMatrix::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}})),
               std::domain_error);
  EXPECT_THROW(ortho_reduce(RatMatrix::identity(2)), std::invalid_argument);
  EXPECT_THROW(ortho_reduce(RatMatrix(3, 3)), std::domain_error);
  Xoshiro256ss rng(32);
  for (int k = 0; k < 20; ++k) {
    const RatMatrix q = cayley(random_skew(rng, 3));
    const auto red = ortho_reduce(scale(q, Rational(7)));
    EXPECT_EQ(red.lambda * red.lambda, 49);
    EXPECT_TRUE(is_orthogonal(red.orthogonal));
    EXPECT_EQ(scale(red.orthogonal, red.lambda), scale(q, Rational(7)));
  }
}
