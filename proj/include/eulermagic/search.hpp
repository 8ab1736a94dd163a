#pragma once

// Seeded search harnesses.
//
// search5_cayley samples rational skew-symmetric 5×5 matrices, maps them to
// orthogonal matrices with the Cayley transform and keeps those whose squared
// diagonal and anti-diagonal both sum to 1. search8_seeded specializes
// M = L·R to three unknowns (u, v, w), verifies supplied rational solutions
// and enumerates (u, v) of bounded height, solving for w.
// greedy_backtrack_left produces (a..h, p..t) tuples of small integers for
// which the specialized matrix is still proper as a polynomial matrix.
//
// Results are reproducible from the configuration alone. Work is split over
// sample indices; every sample draws from its own stream
// (Xoshiro256ss::for_sample), and merged results are ordered by
// (score desc, sample index asc), so the worker count never changes output.

#include "eulermagic/cayley.hpp"
#include "eulermagic/family8.hpp"
#include "eulermagic/random.hpp"
#include "eulermagic/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace eulermagic {

struct SearchConfig {
  std::uint64_t seed = 0;
  std::int64_t numerator_bound = 1;
  std::int64_t denominator_bound = 1;
  std::uint64_t max_iterations = 1;
  std::size_t score_threshold = 0;
  unsigned workers = 1;
  // Also test the 5! column permutations of each orthogonal sample; they
  // keep M·Mᵗ = I and move different entries onto the two diagonals.
  bool permute_columns = false;

  void validate() const {
    if (numerator_bound < 1 || denominator_bound < 1)
      throw std::invalid_argument("search: bounds must be >= 1");
    if (workers < 1) throw std::invalid_argument("search: workers must be >= 1");
  }
};

struct Candidate {
  nlohmann::json source_params;
  IntMatrix matrix;  // primitive, sign-canonical
  std::size_t score = 0;
  std::vector<DuplicatePair> duplicates;
  std::uint64_t sample_index = 0;
};

/// Lexicographically smaller of m and −m (row-major).
inline IntMatrix sign_canonical(const IntMatrix& m) {
  for (const auto& x : m.entries()) {
    if (x == 0) continue;
    return x < 0 ? -m : m;
  }
  return m;
}

inline Candidate make_candidate(const RatMatrix& m, nlohmann::json params, std::uint64_t index) {
  Candidate c;
  c.matrix = sign_canonical(rescale_primitive(m));
  const VerifyReport r = verify(c.matrix);
  if (!r.is_euler_magic) throw std::logic_error("candidate is not an Euler's magic matrix");
  c.score = r.distinct_square_count;
  c.duplicates = r.duplicate_pairs;
  c.source_params = std::move(params);
  c.sample_index = index;
  return c;
}

inline nlohmann::json candidate_to_json(const Candidate& c) {
  auto dups = nlohmann::json::array();
  for (const auto& [a, b] : c.duplicates) dups.push_back({{a.first, a.second}, {b.first, b.second}});
  return {{"kind", "candidate"},
          {"sample", c.sample_index},
          {"params", c.source_params},
          {"score", c.score},
          {"duplicates", std::move(dups)},
          {"matrix", entries_json(c.matrix)}};
}

namespace detail {

/// Runs body(index, local_state) over [0, count) on `workers` threads, each
/// on a contiguous block, and returns the per-worker states in block order.
template <typename State, typename Body>
std::vector<State> run_partitioned(std::uint64_t count, unsigned workers, Body body) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count)));
  std::vector<State> states(workers);
  if (count == 0) return states;
  const std::uint64_t block = (count + workers - 1) / workers;
  auto run = [&](unsigned w) {
    const std::uint64_t lo = w * block, hi = std::min(count, lo + block);
    for (std::uint64_t i = lo; i < hi; ++i) body(i, states[w]);
  };
  if (workers == 1) {
    run(0);
    return states;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        run(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return states;
}

/// Score desc, then sample index asc; drops later duplicates of a matrix.
inline std::vector<Candidate> rank_and_dedupe(std::vector<Candidate> all) {
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.sample_index < b.sample_index;
  });
  std::vector<Candidate> out;
  std::set<std::string> seen;
  for (auto& c : all)
    if (seen.insert(format_matrix_text(c.matrix)).second) out.push_back(std::move(c));
  return out;
}

}  // namespace detail

// ---- 5×5 Cayley search ------------------------------------------------------

struct Search5Result {
  std::vector<Candidate> candidates;
  std::uint64_t iterations = 0;
  std::uint64_t hits = 0;         // Euler magic samples before threshold/dedup
  std::uint64_t near_misses = 0;  // samples where exactly one diagonal sum equals 1
  std::size_t best_score = 0;
};

inline Search5Result search5_cayley(const SearchConfig& cfg) {
  cfg.validate();
  constexpr std::size_t n = 5;
  std::vector<std::array<std::size_t, n>> perms;
  {
    std::array<std::size_t, n> p{};
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (cfg.permute_columns && std::next_permutation(p.begin(), p.end()));
  }

  struct Local {
    std::vector<Candidate> found;
    std::uint64_t hits = 0, near = 0;
  };
  auto states = detail::run_partitioned<Local>(
      cfg.max_iterations, cfg.workers, [&](std::uint64_t index, Local& local) {
        auto rng = Xoshiro256ss::for_sample(cfg.seed, index);
        std::vector<Rational> upper(n * (n - 1) / 2);
        for (auto& x : upper) x = rng.rational(cfg.numerator_bound, cfg.denominator_bound);
        const RatMatrix m = cayley(SkewMatrix::from_upper(n, upper));
        const RatMatrix sq =
            map_entries<Rational>(m, [](const Rational& x) { return Rational(x * x); });
        bool near = false;
        for (const auto& perm : perms) {
          Rational diag = 0, anti = 0;
          for (std::size_t i = 0; i < n; ++i) {
            diag += sq(i, perm[i]);
            anti += sq(i, perm[n - 1 - i]);
          }
          const bool d_ok = diag == 1, a_ok = anti == 1;
          if (d_ok != a_ok) near = true;
          if (!(d_ok && a_ok)) continue;
          RatMatrix pm(n, n);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) pm(i, j) = m(i, perm[j]);
          auto params = nlohmann::json::object();
          auto up = nlohmann::json::array();
          for (const auto& x : upper) up.push_back(to_string(x));
          params["skew_upper"] = std::move(up);
          params["columns"] = std::vector<std::size_t>(perm.begin(), perm.end());
          for (auto& c : params["columns"]) c = c.get<std::size_t>() + 1;
          Candidate cand = make_candidate(pm, std::move(params), index);
          ++local.hits;
          if (cand.score >= cfg.score_threshold) local.found.push_back(std::move(cand));
        }
        if (near) ++local.near;
      });

  Search5Result res;
  res.iterations = cfg.max_iterations;
  std::vector<Candidate> all;
  for (auto& s : states) {
    res.hits += s.hits;
    res.near_misses += s.near;
    for (auto& c : s.found) all.push_back(std::move(c));
  }
  res.candidates = detail::rank_and_dedupe(std::move(all));
  for (const auto& c : res.candidates) res.best_score = std::max(res.best_score, c.score);
  return res;
}

inline nlohmann::json search5_summary_json(const Search5Result& r) {
  return {{"kind", "summary"},
          {"iterations", r.iterations},
          {"hits", r.hits},
          {"near_misses", r.near_misses},
          {"candidates", r.candidates.size()},
          {"best_score", r.best_score}};
}

// ---- 8×8 specialization search ------------------------------------------------

class ImproperPolynomialMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Search8Config {
  std::int64_t numerator_bound = 0;  // 0 disables enumeration
  std::int64_t denominator_bound = 1;
  unsigned workers = 1;
};

struct Search8Result {
  std::vector<Candidate> candidates;
  std::vector<std::string> rejected;  // supplied points that are not solutions
  std::uint64_t pairs_tried = 0;
  std::uint64_t hits = 0;
  std::uint64_t free_w = 0;  // (u, v) where both conditions vanish identically in w
  std::size_t best_score = 0;
};

/// M = L(left)·R(p,q,r,s,t,u,v,w) with p..t fixed and u, v, w symbolic.
inline Matrix<MultiPoly> specialized_product(const IntOct& left,
                                             const std::array<Rational, 5>& partial) {
  const auto ctx = right_context();
  OctParams<MultiPoly> right;
  for (std::size_t i = 0; i < 5; ++i) right[i] = MultiPoly::constant(ctx, partial[i]);
  right[5] = MultiPoly::variable(ctx, "u");
  right[6] = MultiPoly::variable(ctx, "v");
  right[7] = MultiPoly::variable(ctx, "w");
  return octonion_product(oct_constants(ctx, left), right);
}

/// Throws ImproperPolynomialMatrix when the specialized matrix cannot give a
/// proper solution: two entries agree up to sign identically, or A = 0
/// forces such an agreement.
inline void require_polynomially_proper(const Matrix<MultiPoly>& m, const MultiPoly& a) {
  if (!polynomially_proper(m))
    throw ImproperPolynomialMatrix("polynomial matrix improper: two entries agree up to sign");
  if (auto forced = forced_improper(a, improper_witnesses(m))) {
    std::string which;
    for (const auto& w : *forced)
      which += " (" + std::to_string(w.first.first) + "," + std::to_string(w.first.second) +
               (w.is_sum ? ")+(" : ")-(") + std::to_string(w.second.first) + "," +
               std::to_string(w.second.second) + ")";
    throw ImproperPolynomialMatrix("polynomial matrix improper: A = 0 forces a witness to vanish:" +
                                   which);
  }
}

/// All reduced n/d with |n| ≤ N, 1 ≤ d ≤ D, ordered by denominator then numerator.
inline std::vector<Rational> bounded_height_rationals(std::int64_t num_bound,
                                                      std::int64_t den_bound) {
  std::vector<Rational> out;
  for (std::int64_t d = 1; d <= den_bound; ++d)
    for (std::int64_t k = -num_bound; k <= num_bound; ++k)
      if (std::gcd(k, d) == 1 || (k == 0 && d == 1)) out.push_back(make_rational(k, d));
  return out;
}

/// Common rational roots in w of two polynomials of w-degree ≤ 2 (given as
/// coefficient triples, index = power). nullopt when both vanish identically.
inline std::optional<std::vector<Rational>> common_w_roots(const std::array<Rational, 3>& a,
                                                           const std::array<Rational, 3>& b) {
  auto roots = [](const std::array<Rational, 3>& c) -> std::optional<std::vector<Rational>> {
    if (c[2] != 0) {
      const Rational disc = c[1] * c[1] - 4 * c[2] * c[0];
      Rational root;
      if (!rational_sqrt(disc, root)) return std::vector<Rational>{};
      std::vector<Rational> out{Rational((-c[1] - root) / (2 * c[2]))};
      if (root != 0) out.push_back(Rational((-c[1] + root) / (2 * c[2])));
      std::sort(out.begin(), out.end());
      return out;
    }
    if (c[1] != 0) return std::vector<Rational>{Rational(-c[0] / c[1])};
    if (c[0] != 0) return std::vector<Rational>{};
    return std::nullopt;
  };
  auto at = [](const std::array<Rational, 3>& c, const Rational& w) {
    return Rational((c[2] * w + c[1]) * w + c[0]);
  };
  auto ra = roots(a);
  auto rb = roots(b);
  if (!ra && !rb) return std::nullopt;
  const auto& base = ra ? *ra : *rb;
  const auto& other = ra ? b : a;
  std::vector<Rational> out;
  for (const auto& w : base)
    if (at(other, w) == 0) out.push_back(w);
  return out;
}

inline Search8Result search8_seeded(const IntOct& left, const std::array<Rational, 5>& partial,
                                    const std::vector<std::array<Rational, 3>>& supplied,
                                    const Search8Config& cfg) {
  if (cfg.workers < 1) throw std::invalid_argument("search8: workers must be >= 1");
  const Matrix<MultiPoly> m = specialized_product(left, partial);
  const auto lr = to_rational(left);
  OctParams<MultiPoly> rp;
  const auto ctx = right_context();
  for (std::size_t i = 0; i < 5; ++i) rp[i] = MultiPoly::constant(ctx, partial[i]);
  rp[5] = MultiPoly::variable(ctx, "u");
  rp[6] = MultiPoly::variable(ctx, "v");
  rp[7] = MultiPoly::variable(ctx, "w");
  const auto [A, B] = detail::forms_of(m, gamma(oct_constants(ctx, lr), rp));
  require_polynomially_proper(m, A);

  auto right_at = [&](const Rational& u, const Rational& v, const Rational& w) {
    OctParams<Rational> r;
    for (std::size_t i = 0; i < 5; ++i) r[i] = partial[i];
    r[5] = u;
    r[6] = v;
    r[7] = w;
    return r;
  };
  auto params_json = [](const OctParams<Rational>& r) {
    auto arr = nlohmann::json::array();
    for (const auto& x : r) arr.push_back(to_string(x));
    return nlohmann::json{{"right", std::move(arr)}};
  };

  Search8Result res;
  std::vector<Candidate> all;
  // Supplied solutions come first, indexed 0..k-1.
  for (std::size_t k = 0; k < supplied.size(); ++k) {
    const auto r = right_at(supplied[k][0], supplied[k][1], supplied[k][2]);
    std::vector<Rational> vals(r.begin(), r.end());
    if (A.eval(vals) != 0 || B.eval(vals) != 0) {
      res.rejected.push_back("(" + to_string(r[5]) + ", " + to_string(r[6]) + ", " +
                             to_string(r[7]) + "): A = B = 0 fails");
      continue;
    }
    const RatMatrix num = octonion_product(lr, r);
    if (is_zero(num)) continue;
    ++res.hits;
    all.push_back(make_candidate(num, params_json(r), k));
  }

  if (cfg.numerator_bound > 0) {
    if (cfg.denominator_bound < 1) throw std::invalid_argument("search8: denominator bound < 1");
    const auto values = bounded_height_rationals(cfg.numerator_bound, cfg.denominator_bound);
    std::array<MultiPoly, 3> ac, bc;
    for (unsigned k = 0; k < 3; ++k) {
      ac[k] = A.coefficient_of("w", k);
      bc[k] = B.coefficient_of("w", k);
    }
    const std::uint64_t base = supplied.size();
    const std::uint64_t count = values.size() * values.size();
    struct Local {
      std::vector<Candidate> found;
      std::uint64_t hits = 0, free_w = 0;
    };
    auto states = detail::run_partitioned<Local>(count, cfg.workers, [&](std::uint64_t idx, Local& local) {
      const Rational& u = values[idx / values.size()];
      const Rational& v = values[idx % values.size()];
      std::vector<Rational> point(8, Rational(0));
      point[5] = u;
      point[6] = v;
      std::array<Rational, 3> a3, b3;
      for (unsigned k = 0; k < 3; ++k) {
        a3[k] = ac[k].eval(point);
        b3[k] = bc[k].eval(point);
      }
      auto ws = common_w_roots(a3, b3);
      if (!ws) {
        ++local.free_w;
        return;
      }
      for (const auto& w : *ws) {
        const auto r = right_at(u, v, w);
        const RatMatrix num = octonion_product(lr, r);
        if (is_zero(num)) continue;
        ++local.hits;
        local.found.push_back(make_candidate(num, params_json(r), base + idx));
      }
    });
    res.pairs_tried = count;
    for (auto& s : states) {
      res.hits += s.hits;
      res.free_w += s.free_w;
      for (auto& c : s.found) all.push_back(std::move(c));
    }
  }
  res.candidates = detail::rank_and_dedupe(std::move(all));
  for (const auto& c : res.candidates) res.best_score = std::max(res.best_score, c.score);
  return res;
}

inline nlohmann::json search8_summary_json(const Search8Result& r) {
  return {{"kind", "summary"},
          {"pairs_tried", r.pairs_tried},
          {"hits", r.hits},
          {"free_w", r.free_w},
          {"rejected", r.rejected},
          {"candidates", r.candidates.size()},
          {"best_score", r.best_score}};
}

// ---- greedy / backtracking tuple generation ------------------------------------

struct GreedyConfig {
  /// Inclusive [lo, hi] for a, b, ..., h, p, q, r, s, t.
  std::array<std::pair<long, long>, 13> bounds{};
  std::uint64_t seed = 0;
  std::size_t max_results = 16;
  std::uint64_t max_nodes = 100000;

  static GreedyConfig symmetric(long bound, std::uint64_t seed) {
    GreedyConfig c;
    c.bounds.fill({-bound, bound});
    c.seed = seed;
    return c;
  }
};

struct GreedyTuple {
  IntOct left;
  std::array<Integer, 5> partial;  // p, q, r, s, t

  friend bool operator==(const GreedyTuple&, const GreedyTuple&) = default;
};

struct GreedyResult {
  std::vector<GreedyTuple> tuples;
  std::uint64_t nodes = 0;
  bool exhausted = false;  // true when the whole bounded tree was searched
};

/// Depth-first over the 13 integers a..h, p..t, each trying its admissible
/// values by increasing absolute value (the seed decides whether +k or −k
/// comes first at each node), and backtracking as soon as the partially
/// specialized matrix in the remaining variables stops being proper.
inline GreedyResult greedy_backtrack_left(const GreedyConfig& cfg) {
  static const std::array<const char*, 13> names{"a", "b", "c", "d", "e", "f", "g",
                                                 "h", "p", "q", "r", "s", "t"};
  for (const auto& [lo, hi] : cfg.bounds)
    if (lo > hi) throw std::invalid_argument("greedy_backtrack_left: empty bound interval");
  Xoshiro256ss rng(cfg.seed);
  GreedyResult res;
  std::array<long, 13> current{};
  // levels[d] is the product with the first d integers substituted.
  std::vector<Matrix<MultiPoly>> levels{symbolic_product_full()};
  levels.reserve(14);

  auto stop = [&] {
    return res.tuples.size() >= cfg.max_results || res.nodes >= cfg.max_nodes;
  };
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == 13) {
      GreedyTuple t;
      for (std::size_t i = 0; i < 8; ++i) t.left[i] = current[i];
      for (std::size_t i = 0; i < 5; ++i) t.partial[i] = current[8 + i];
      res.tuples.push_back(t);
      return;
    }
    const auto [lo, hi] = cfg.bounds[depth];
    std::vector<long> order;
    const long reach = std::max(std::abs(lo), std::abs(hi));
    for (long k = 0; k <= reach; ++k) {
      std::array<long, 2> pair{k, -k};
      if (k != 0 && (rng() & 1u)) std::swap(pair[0], pair[1]);
      for (std::size_t j = 0; j < (k == 0 ? 1u : 2u); ++j)
        if (pair[j] >= lo && pair[j] <= hi) order.push_back(pair[j]);
    }
    for (long v : order) {
      if (stop()) return;
      ++res.nodes;
      current[depth] = v;
      Matrix<MultiPoly> next(8, 8);
      const std::map<std::string, Rational> one{{names[depth], Rational(v)}};
      for (std::size_t k = 0; k < 64; ++k)
        next.entries()[k] = levels.back().entries()[k].specialize(one);
      if (!polynomially_proper(next)) continue;
      levels.push_back(std::move(next));
      self(self, depth + 1);
      levels.pop_back();
    }
  };
  dfs(dfs, 0);
  res.exhausted = !stop();
  return res;
}

inline nlohmann::json greedy_tuple_json(const GreedyTuple& t) {
  auto left = nlohmann::json::array();
  for (const auto& x : t.left) left.push_back(x.get_si());
  auto partial = nlohmann::json::array();
  for (const auto& x : t.partial) partial.push_back(x.get_si());
  return {{"kind", "tuple"}, {"left", std::move(left)}, {"partial", std::move(partial)}};
}

}  // namespace eulermagic
