#pragma once

// Improper Euler's magic matrices from permutation matrices, and the 2×2
// family.

#include "eulermagic/matrix.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace eulermagic {

class InvalidPermutation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// images[i-1] = σ(i), 1-based.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> hit(images_.size() + 1, false);
    for (auto x : images_) {
      if (x < 1 || x > images_.size() || hit[x])
        throw InvalidPermutation("not a permutation of {1,...,n}");
      hit[x] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = i + 1;
    return Permutation(std::move(im));
  }

  /// Product of disjoint cycles given as 1-based lists; fixed points may be
  /// omitted.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
    std::vector<std::size_t> im(n, 0);
    for (const auto& cyc : cycles)
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const std::size_t from = cyc[k], to = cyc[(k + 1) % cyc.size()];
        if (from < 1 || from > n || im[from - 1] != 0)
          throw InvalidPermutation("cycles are not disjoint or out of range");
        im[from - 1] = to;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (im[i] == 0) im[i] = i + 1;
    return Permutation(std::move(im));
  }

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_.at(i - 1); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

 private:
  std::vector<std::size_t> images_;
};

/// m_{i,j} = 1 if j = σ(i), else 0.
inline IntMatrix perm_matrix(const Permutation& sigma) {
  const std::size_t n = sigma.size();
  IntMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m(i - 1, sigma(i) - 1) = 1;
  return m;
}

/// σ = (1 2 … n−1)(n) for even n, (1 2 … k−1)(k)(k+1 … n) for odd n = 2k−1.
inline Permutation construction_permutation(std::size_t n) {
  if (n < 4) throw std::domain_error("improper_construction: n must be at least 4");
  std::vector<std::vector<std::size_t>> cycles;
  if (n % 2 == 0) {
    std::vector<std::size_t> c;
    for (std::size_t i = 1; i <= n - 1; ++i) c.push_back(i);
    cycles.push_back(std::move(c));
  } else {
    const std::size_t k = (n + 1) / 2;
    std::vector<std::size_t> lo, hi;
    for (std::size_t i = 1; i <= k - 1; ++i) lo.push_back(i);
    for (std::size_t i = k + 1; i <= n; ++i) hi.push_back(i);
    cycles.push_back(std::move(lo));
    cycles.push_back(std::move(hi));
  }
  return Permutation::from_cycles(n, cycles);
}

/// Euler's magic matrix with γ = 1 for every n ≥ 4 (never proper).
inline IntMatrix improper_construction(std::size_t n) {
  return perm_matrix(construction_permutation(n));
}

/// The four 2×2 Euler's magic matrices:
///   1: ((a,a),(a,−a))   2: ((a,a),(−a,a))   3: ((a,−a),(a,a))   4: ((−a,a),(a,a))
inline RatMatrix two_by_two_family(const Rational& a, int variant) {
  if (a == 0) throw std::domain_error("two_by_two_family: a must be nonzero");
  const Rational m = -a;
  switch (variant) {
    case 1: return RatMatrix::from_rows({{a, a}, {a, m}});
    case 2: return RatMatrix::from_rows({{a, a}, {m, a}});
    case 3: return RatMatrix::from_rows({{a, m}, {a, a}});
    case 4: return RatMatrix::from_rows({{m, a}, {a, a}});
    default: throw std::invalid_argument("two_by_two_family: variant must be 1..4");
  }
}

}  // namespace eulermagic
