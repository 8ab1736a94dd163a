#pragma once

// Black-box recovery of a quadratic form from point evaluations, kept apart
// from the symbolic path so each can check the other.
//
// For a homogeneous quadratic f on Q^n:
//   c_ii = f(e_i),   c_ij = f(e_i + e_j) - f(e_i) - f(e_j)   (i < j).
// Tables are upper triangular: entry (i, j) with i <= j holds c_ij, the rest
// are zero.

#include "eulermagic/matrix.hpp"
#include "eulermagic/poly.hpp"
#include "eulermagic/random.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace eulermagic {

using QuadraticTable = RatMatrix;
using BlackBox = std::function<Rational(std::span<const Rational>)>;

class NotHomogeneousQuadratic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline QuadraticTable quadratic_form_coeffs(const BlackBox& f, std::size_t n,
                                            std::uint64_t check_seed = 0x5eed,
                                            int checks = 3) {
  // f(2x) = 4 f(x) at a few pseudo-random integer points.
  Xoshiro256ss rng(check_seed);
  for (int c = 0; c < checks; ++c) {
    std::vector<Rational> x(n), x2(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = Rational(rng.uniform(-9, 9));
      x2[i] = 2 * x[i];
    }
    if (f(x2) != 4 * f(x))
      throw NotHomogeneousQuadratic("f(2x) != 4 f(x): not a homogeneous quadratic");
  }

  std::vector<Rational> point(n);
  std::vector<Rational> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    point[i] = 1;
    diag[i] = f(point);
    point[i] = 0;
  }
  QuadraticTable table(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    table(i, i) = diag[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      point[i] = 1;
      point[j] = 1;
      table(i, j) = f(point) - diag[i] - diag[j];
      point[i] = 0;
      point[j] = 0;
    }
  }
  return table;
}

/// The same table read directly off a symbolic homogeneous quadratic, with
/// variables taken in the order of `vars` (names in p's context).
inline QuadraticTable quadratic_table(const MultiPoly& p, const std::vector<std::string>& vars) {
  if (!p.is_homogeneous(2))
    throw NotHomogeneousQuadratic("polynomial is not a homogeneous quadratic");
  const std::size_t n = vars.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = p.var_index(vars[i]);
  QuadraticTable table(n, n);
  for (const auto& t : p.terms()) {
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = MultiPoly::exponent(t.key, idx[i]);
      for (unsigned k = 0; k < e; ++k) hit.push_back(i);
    }
    if (hit.size() != 2)
      throw std::invalid_argument("quadratic_table: term uses a variable outside the list");
    table(hit[0], hit[1]) += t.coeff;
  }
  return table;
}

}  // namespace eulermagic
