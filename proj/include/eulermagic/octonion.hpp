#pragma once

// Left and right octonion multiplication matrices L(a,...,h) and R(p,...,w).
// Both are stored as fixed 8x8 tables of (parameter index, sign), row by row,
// so they can be audited directly against the printed displays. Every
// function is generic over the scalar: Rational for numeric work, MultiPoly
// for symbolic forms.

#include "eulermagic/matrix.hpp"
#include "eulermagic/poly.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace eulermagic {

template <typename T>
using OctParams = std::array<T, 8>;

struct SignedSlot {
  std::uint8_t index;
  std::int8_t sign;
};

using SignTable = std::array<std::array<SignedSlot, 8>, 8>;

// clang-format off
// L(a,b,...,h); index 0 = a, ..., 7 = h.
inline constexpr SignTable kLeftTable{{
  {{{0,+1},{1,-1},{2,-1},{3,-1},{4,-1},{5,-1},{6,-1},{7,-1}}},
  {{{1,+1},{0,+1},{3,-1},{2,+1},{5,-1},{4,+1},{7,+1},{6,-1}}},
  {{{2,+1},{3,+1},{0,+1},{1,-1},{6,-1},{7,-1},{4,+1},{5,+1}}},
  {{{3,+1},{2,-1},{1,+1},{0,+1},{7,-1},{6,+1},{5,-1},{4,+1}}},
  {{{4,+1},{5,+1},{6,+1},{7,+1},{0,+1},{1,-1},{2,-1},{3,-1}}},
  {{{5,+1},{4,-1},{7,+1},{6,-1},{1,+1},{0,+1},{3,+1},{2,-1}}},
  {{{6,+1},{7,-1},{4,-1},{5,+1},{2,+1},{3,-1},{0,+1},{1,+1}}},
  {{{7,+1},{6,+1},{5,-1},{4,-1},{3,+1},{2,+1},{1,-1},{0,+1}}},
}};

// R(p,q,...,w); index 0 = p, ..., 7 = w.
inline constexpr SignTable kRightTable{{
  {{{0,+1},{1,-1},{2,-1},{3,-1},{4,-1},{5,-1},{6,-1},{7,-1}}},
  {{{1,+1},{0,+1},{3,+1},{2,-1},{5,+1},{4,-1},{7,-1},{6,+1}}},
  {{{2,+1},{3,-1},{0,+1},{1,+1},{6,+1},{7,+1},{4,-1},{5,-1}}},
  {{{3,+1},{2,+1},{1,-1},{0,+1},{7,+1},{6,-1},{5,+1},{4,-1}}},
  {{{4,+1},{5,-1},{6,-1},{7,-1},{0,+1},{1,+1},{2,+1},{3,+1}}},
  {{{5,+1},{4,+1},{7,-1},{6,+1},{1,-1},{0,+1},{3,-1},{2,+1}}},
  {{{6,+1},{7,+1},{4,+1},{5,-1},{2,-1},{3,+1},{0,+1},{1,-1}}},
  {{{7,+1},{6,-1},{5,+1},{4,+1},{3,-1},{2,-1},{1,+1},{0,+1}}},
}};
// clang-format on

inline const std::vector<std::string>& left_names() {
  static const std::vector<std::string> names{"a", "b", "c", "d", "e", "f", "g", "h"};
  return names;
}

inline const std::vector<std::string>& right_names() {
  static const std::vector<std::string> names{"p", "q", "r", "s", "t", "u", "v", "w"};
  return names;
}

template <typename T>
Matrix<T> table_matrix(const SignTable& table, const OctParams<T>& x) {
  Matrix<T> m(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const auto& slot = table[i][j];
      m(i, j) = slot.sign > 0 ? x[slot.index] : T{} - x[slot.index];
    }
  return m;
}

template <typename T>
Matrix<T> left_matrix(const OctParams<T>& x) {
  return table_matrix(kLeftTable, x);
}

template <typename T>
Matrix<T> right_matrix(const OctParams<T>& x) {
  return table_matrix(kRightTable, x);
}

template <typename T>
T sum_of_squares(const OctParams<T>& x) {
  T s{};
  for (const auto& v : x) s += v * v;
  return s;
}

/// (a² + ... + h²)(p² + ... + w²); M = L·R satisfies M·Mᵗ = gamma·I₈.
template <typename T>
T gamma(const OctParams<T>& left, const OctParams<T>& right) {
  return sum_of_squares(left) * sum_of_squares(right);
}

template <typename T>
Matrix<T> octonion_product(const OctParams<T>& left, const OctParams<T>& right) {
  return mat_mul(left_matrix(left), right_matrix(right));
}

inline OctParams<Rational> oct_rationals(const std::array<long, 8>& v) {
  OctParams<Rational> out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = Rational(v[i]);
  return out;
}

template <typename T>
OctParams<MultiPoly> oct_constants(const VarContext& ctx, const OctParams<T>& v) {
  OctParams<MultiPoly> out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = MultiPoly::constant(ctx, Rational(v[i]));
  return out;
}

/// The eight variables of `names` (8 entries, all in ctx) as polynomials.
inline OctParams<MultiPoly> oct_symbols(const VarContext& ctx,
                                        const std::vector<std::string>& names) {
  OctParams<MultiPoly> out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = MultiPoly::variable(ctx, names.at(i));
  return out;
}

}  // namespace eulermagic
