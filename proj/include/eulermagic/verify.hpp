#pragma once

// Euler's magic matrix check: M·Mᵗ = γI with γ ≠ 0, and the squared entries
// along the diagonal and along the anti-diagonal each sum to γ. Properness
// means the n² squared entries are pairwise distinct.

#include "eulermagic/matrix.hpp"
#include "eulermagic/matrix_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace eulermagic {

/// 1-based (row, column).
using Position = std::pair<std::size_t, std::size_t>;
using DuplicatePair = std::pair<Position, Position>;

struct VerifyReport {
  std::size_t n = 0;
  Rational gamma;
  bool cond_orthogonal = false;
  bool cond_diagonal = false;
  bool cond_antidiagonal = false;
  bool is_euler_magic = false;
  bool is_proper = false;
  std::size_t distinct_square_count = 0;
  std::vector<DuplicatePair> duplicate_pairs;
  RatMatrix squares_matrix;
};

class NotEulerMagic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline VerifyReport verify(const RatMatrix& m) {
  if (!m.is_square() || m.rows() == 0)
    throw DimensionMismatch("verify: matrix must be square and non-empty");
  const std::size_t n = m.rows();
  VerifyReport r;
  r.n = n;

  const RatMatrix gram = mat_mul(m, transpose(m));
  r.gamma = gram(0, 0);
  r.cond_orthogonal = true;
  for (std::size_t i = 0; i < n && r.cond_orthogonal; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gram(i, j) != (i == j ? r.gamma : Rational(0))) {
        r.cond_orthogonal = false;
        break;
      }

  r.squares_matrix = map_entries<Rational>(m, [](const Rational& x) { return Rational(x * x); });
  Rational diag = 0, anti = 0;
  for (std::size_t i = 0; i < n; ++i) {
    diag += r.squares_matrix(i, i);
    anti += r.squares_matrix(i, n - 1 - i);
  }
  r.cond_diagonal = diag == r.gamma;
  r.cond_antidiagonal = anti == r.gamma;
  r.is_euler_magic =
      r.cond_orthogonal && r.cond_diagonal && r.cond_antidiagonal && r.gamma != 0;

  // Census: sort positions by square, then scan runs of equal values.
  const auto sq = r.squares_matrix.entries();
  std::vector<std::size_t> order(sq.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sq[a] < sq[b]; });
  for (std::size_t k = 0; k < order.size(); ++k)
    if (k == 0 || sq[order[k]] != sq[order[k - 1]]) ++r.distinct_square_count;

  std::vector<std::pair<std::size_t, std::size_t>> flat_pairs;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && sq[order[end]] == sq[order[start]]) ++end;
    for (std::size_t x = start; x < end; ++x)
      for (std::size_t y = x + 1; y < end; ++y)
        flat_pairs.emplace_back(std::min(order[x], order[y]), std::max(order[x], order[y]));
    start = end;
  }
  std::sort(flat_pairs.begin(), flat_pairs.end());
  for (const auto& [a, b] : flat_pairs)
    r.duplicate_pairs.push_back({{a / n + 1, a % n + 1}, {b / n + 1, b % n + 1}});

  r.is_proper = r.distinct_square_count == n * n;
  return r;
}

inline VerifyReport verify(const IntMatrix& m) { return verify(to_rational(m)); }

struct MagicSquareReport {
  IntMatrix squares;
  std::vector<Integer> row_sums;
  std::vector<Integer> col_sums;
  Integer diagonal_sum;
  Integer antidiagonal_sum;
  Integer gamma;

  /// Row, column and both diagonal sums all equal gamma.
  bool all_sums_equal_gamma() const {
    auto eq = [&](const Integer& s) { return s == gamma; };
    return std::all_of(row_sums.begin(), row_sums.end(), eq) &&
           std::all_of(col_sums.begin(), col_sums.end(), eq) && eq(diagonal_sum) &&
           eq(antidiagonal_sum);
  }

  std::size_t sum_count() const { return row_sums.size() + col_sums.size() + 2; }
};

/// Entrywise squares of an Euler's magic matrix and all of their line sums.
/// Throws NotEulerMagic if the precondition fails.
inline MagicSquareReport magic_square_of_squares(const IntMatrix& m) {
  const VerifyReport v = verify(m);
  if (!v.is_euler_magic)
    throw NotEulerMagic("magic_square_of_squares: input is not an Euler's magic matrix");
  const std::size_t n = m.rows();
  MagicSquareReport out;
  out.squares = map_entries<Integer>(m, [](const Integer& x) { return Integer(x * x); });
  out.row_sums.assign(n, Integer(0));
  out.col_sums.assign(n, Integer(0));
  out.diagonal_sum = 0;
  out.antidiagonal_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.row_sums[i] += out.squares(i, j);
      out.col_sums[j] += out.squares(i, j);
    }
    out.diagonal_sum += out.squares(i, i);
    out.antidiagonal_sum += out.squares(i, n - 1 - i);
  }
  out.gamma = v.gamma.get_num();
  return out;
}

inline nlohmann::json report_to_json(const VerifyReport& r) {
  auto dups = nlohmann::json::array();
  for (const auto& [a, b] : r.duplicate_pairs)
    dups.push_back({{a.first, a.second}, {b.first, b.second}});
  return {{"n", r.n},
          {"gamma", to_string(r.gamma)},
          {"orthogonal", r.cond_orthogonal},
          {"diagonal", r.cond_diagonal},
          {"antidiagonal", r.cond_antidiagonal},
          {"euler_magic", r.is_euler_magic},
          {"proper", r.is_proper},
          {"distinct_squares", r.distinct_square_count},
          {"duplicates", std::move(dups)}};
}

inline std::string report_to_text(const VerifyReport& r) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string out;
  out += "n: " + std::to_string(r.n) + "\n";
  out += "gamma: " + to_string(r.gamma) + "\n";
  out += std::string("orthogonal: ") + flag(r.cond_orthogonal) + "\n";
  out += std::string("diagonal: ") + flag(r.cond_diagonal) + "\n";
  out += std::string("antidiagonal: ") + flag(r.cond_antidiagonal) + "\n";
  out += std::string("euler_magic: ") + flag(r.is_euler_magic) + "\n";
  out += std::string("proper: ") + flag(r.is_proper) + "\n";
  out += "distinct_squares: " + std::to_string(r.distinct_square_count) + "\n";
  if (!r.duplicate_pairs.empty()) {
    out += "duplicates:";
    std::size_t shown = 0;
    for (const auto& [a, b] : r.duplicate_pairs) {
      if (shown++ == 16) {
        out += " ... (" + std::to_string(r.duplicate_pairs.size()) + " total)";
        break;
      }
      out += " (" + std::to_string(a.first) + "," + std::to_string(a.second) + ")~(" +
             std::to_string(b.first) + "," + std::to_string(b.second) + ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace eulermagic
