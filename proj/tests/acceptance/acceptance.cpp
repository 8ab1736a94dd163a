// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include "eulermagic/cayley.hpp"
#include "eulermagic/family8.hpp"
#include "eulermagic/matrix_io.hpp"
#include "eulermagic/permconstruct.hpp"
#include "eulermagic/random.hpp"
#include "eulermagic/search.hpp"
#include "eulermagic/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace eulermagic;

namespace {

IntMatrix load(const std::string& name) {
  return to_integer(read_matrix_file(std::string(EULERMAGIC_FIXTURES) + "/" + name));
}

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& id, double limit_ms, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (limit_ms > 0 && ms >= limit_ms) {
    o.ok = false;
    o.detail += " (over " + std::to_string(static_cast<long>(limit_ms)) + " ms)";
  }
  failures += !o.ok;
  std::printf("%s: %s  [%.1f ms] %s\n", id.c_str(), o.ok ? "PASS" : "FAIL", ms, o.detail.c_str());
  std::fflush(stdout);
}

std::string dump(const Search5Result& r) {
  std::string out;
  for (const auto& c : r.candidates) out += candidate_to_json(c).dump() + "\n";
  return out + search5_summary_json(r).dump();
}

std::string dump(const Search8Result& r) {
  std::string out;
  for (const auto& c : r.candidates) out += candidate_to_json(c).dump() + "\n";
  return out + search8_summary_json(r).dump();
}

const IntOct kNaiveLeft = int_oct({0, 1, 1, 1, 1, 1, -1, 5});
const std::array<Rational, 5> kNaivePartial{3, -2, -4, 5, 6};
const std::array<Rational, 3> kNaiveSolution{make_rational(13, 15), make_rational(-14, 15),
                                             make_rational(-23, 5)};

}  // namespace

int main() {
  // Fixtures are read before the clock starts.
  const IntMatrix euler4 = load("euler4.txt");
  const IntMatrix proper8 = load("proper8_family.txt");

  criterion("AC1 euler 4x4", 10, [&]() -> Outcome {
    const auto r = verify(euler4);
    const auto sq = magic_square_of_squares(euler4);
    const Rational expected = 68 * 68 + 29 * 29 + 41 * 41 + 37 * 37;
    const bool ok = r.is_proper && r.gamma == expected && r.gamma == 8515 &&
                    sq.all_sums_equal_gamma() && sq.sum_count() == 10;
    return {ok, "gamma=" + to_string(r.gamma)};
  });

  criterion("AC2 8x8 verify", 50, [&]() -> Outcome {
    const auto r = verify(proper8);
    Rational params = 0;
    for (long v : {-7, -55, -11, 1, -27, -13, -19, 4}) params += v * v;
    return {r.is_proper && r.gamma == 32 * params && r.gamma == 143072, "gamma=" + to_string(r.gamma)};
  });

  criterion("AC3 theorem_family anchor", 0, [&]() -> Outcome {
    const Rational q = -55, r = -11, t = -27, u = -148;
    const auto f = theorem_family(q, r, t, u);
    const bool same = f.primitive == proper8 || f.primitive == -proper8;
    const bool cross = (u * u - f.X) / (2 * u) == 4 && 3 * (t * t - 1) * u / (2 * f.X) == -7;
    return {same && f.X == 23088 && cross, "X=" + to_string(f.X)};
  });

  criterion("AC4 family property suite", 10000, [&]() -> Outcome {
    Xoshiro256ss rng(2024);
    int checked = 0;
    while (checked < 100) {
      const Rational q = rng.rational(30, 7), r = rng.rational(30, 7), t = rng.rational(30, 7),
                     u = rng.rational(30, 7);
      if (u == 0 || family_x(q, r, t, u) == 0) continue;
      const auto f = theorem_family(q, r, t, u);
      if (!verify(f.matrix).is_euler_magic) return {false, "failed at sample " + std::to_string(checked)};
      ++checked;
    }
    return {true, "100 points"};
  });

  criterion("AC5 nonexistence certificate", 1000, []() -> Outcome {
    const auto c = nonexistence_certificate();
    std::size_t pass = 0;
    for (const auto& l : c.lines) pass += l.status == CertStatus::Pass;
    return {c.all_pass() && pass == 4, std::to_string(pass) + " identities"};
  });

  criterion("AC6 diag_forms oracle", 0, []() -> Outcome {
    Xoshiro256ss rng(6);
    for (int k = 0; k < 50; ++k) {
      IntOct x;
      for (auto& v : x) v = rng.uniform(-6, 6);
      const DiagForms f = diag_forms(x, /*validate=*/true);  // throws OracleMismatch
      const Rational a(x[0]), h(x[7]);
      if (f.A.coefficient_of("w", 2) != MultiPoly(Rational(8 * (h - a) * (h + a))) ||
          f.A.coefficient_of("w", 1).coefficient_of("p", 1) != MultiPoly(Rational(16 * a * h)))
        return {false, "coefficient identity fails at " + to_string(x)};
    }
    return {true, "50 tuples"};
  });

  criterion("AC7 w1 elimination a<=3", 0, []() -> Outcome {
    const auto tuples = enumerate_w1(3);
    for (const auto& x : tuples) {
      const Elimination e = eliminate_w(diag_forms(x, false));
      const Rational h(x[7]);
      if (!e.F.coefficient_of("p", 3).is_zero() ||
          e.F.coefficient_of("p", 2) != p2_linear_form(x).scaled(Rational(-128 * h * h)))
        return {false, "fails at " + to_string(x)};
    }
    return {!tuples.empty(), std::to_string(tuples.size()) + " tuples"};
  });

  criterion("AC8 search8 supplied solution", 0, []() -> Outcome {
    const auto r = search8_seeded(kNaiveLeft, kNaivePartial, {kNaiveSolution}, Search8Config{});
    if (r.candidates.size() != 1) return {false, "no candidate"};
    const auto expected = octonion_product(to_rational(kNaiveLeft),
                                           oct_rationals({45, -30, -60, 75, 90, 13, -14, -69}));
    const auto& m = r.candidates[0].matrix;
    const bool ok = m == sign_canonical(to_integer(expected)) && verify(m).is_proper &&
                    verify(expected).is_proper;
    return {ok, "score=" + std::to_string(r.candidates[0].score)};
  });

  criterion("AC9 5x5 fixtures", 0, []() -> Outcome {
    const std::array<std::pair<const char*, DuplicatePair>, 5> five{{
        {"five5_1.txt", {{3, 2}, {5, 3}}},
        {"five5_2.txt", {{4, 2}, {5, 2}}},
        {"five5_3.txt", {{3, 2}, {4, 2}}},
        {"five5_4.txt", {{1, 4}, {5, 2}}},
        {"five5_5.txt", {{1, 1}, {2, 4}}},
    }};
    for (const auto& [file, pair] : five) {
      const auto r = verify(load(file));
      if (!r.is_euler_magic || r.distinct_square_count != 24 || r.duplicate_pairs.size() != 1 ||
          r.duplicate_pairs[0] != pair)
        return {false, file};
    }
    return {true, "5 matrices"};
  });

  criterion("AC10 improper constructions", 0, []() -> Outcome {
    for (std::size_t n = 4; n <= 12; ++n) {
      const auto r = verify(improper_construction(n));
      if (!r.is_euler_magic || r.gamma != 1 || r.distinct_square_count != 2)
        return {false, "n=" + std::to_string(n)};
    }
    try {
      improper_construction(3);
      return {false, "n=3 accepted"};
    } catch (const std::domain_error&) {
    }
    for (int v = 1; v <= 4; ++v) {
      const auto r = verify(two_by_two_family(make_rational(7, 3), v));
      if (!r.is_euler_magic || r.is_proper) return {false, "2x2 variant " + std::to_string(v)};
    }
    return {true, "n=4..12, 4 variants"};
  });

  criterion("AC11 cayley suite", 0, []() -> Outcome {
    Xoshiro256ss rng(11);
    for (std::size_t n : {3u, 5u, 7u}) {
      for (int k = 0; k < 100; ++k) {
        std::vector<Rational> upper(n * (n - 1) / 2);
        for (auto& x : upper) x = rng.rational(6, 4);
        const SkewMatrix s = SkewMatrix::from_upper(n, upper);
        const RatMatrix m = cayley(s);
        if (!is_orthogonal(m) || !(inverse_cayley(m) == s) ||
            determinant(m + sign_diagonal(m)) == 0)
          return {false, "n=" + std::to_string(n) + " sample " + std::to_string(k)};
      }
    }
    return {true, "300 samples"};
  });

  criterion("AC12 determinism", 0, []() -> Outcome {
    SearchConfig cfg;
    cfg.seed = 12;
    cfg.max_iterations = 400;
    cfg.permute_columns = true;
    const std::string a = dump(search5_cayley(cfg));
    const std::string b = dump(search5_cayley(cfg));
    cfg.workers = 4;
    const std::string c = dump(search5_cayley(cfg));
    Search8Config c8;
    c8.numerator_bound = 5;
    c8.denominator_bound = 5;
    const std::string d = dump(search8_seeded(kNaiveLeft, kNaivePartial, {kNaiveSolution}, c8));
    const std::string e = dump(search8_seeded(kNaiveLeft, kNaivePartial, {kNaiveSolution}, c8));
    c8.workers = 3;
    const std::string f = dump(search8_seeded(kNaiveLeft, kNaivePartial, {kNaiveSolution}, c8));
    return {a == b && b == c && d == e && e == f, "search5 + search8"};
  });

  return failures == 0 ? 0 : 1;
}
