// eulermagic: verify, construct and search for Euler's magic matrices.
//
// Exit codes: 0 ok / verified, 1 read fine but not Euler magic (or a failed
// certificate line), 2 input or usage error.

#include "eulermagic/cayley.hpp"
#include "eulermagic/family8.hpp"
#include "eulermagic/matrix_io.hpp"
#include "eulermagic/permconstruct.hpp"
#include "eulermagic/search.hpp"
#include "eulermagic/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace eulermagic;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<Rational> parse_rationals(const std::vector<std::string>& args) {
  std::vector<Rational> out;
  for (const auto& a : args) out.push_back(parse_rational(a));
  return out;
}

IntOct parse_int_oct(const std::vector<std::string>& args, const char* what) {
  if (args.size() != 8) throw UsageError(std::string(what) + ": expected 8 integers");
  IntOct out;
  for (std::size_t i = 0; i < 8; ++i) {
    const Rational r = parse_rational(args[i]);
    if (!is_integral(r)) throw UsageError(std::string(what) + ": '" + args[i] + "' is not an integer");
    out[i] = r.get_num();
  }
  return out;
}

/// Reads the text matrix format, or the JSON object format when the first
/// non-blank character is '{'. "-" reads standard input.
RatMatrix read_matrix(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return matrix_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw ParseError(std::string("json: ") + e.what());
    }
  }
  return parse_matrix_text(text);
}

json magic_square_json(const MagicSquareReport& m) {
  auto sums = [](const std::vector<Integer>& v) {
    auto a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
  };
  return {{"row_sums", sums(m.row_sums)},
          {"col_sums", sums(m.col_sums)},
          {"diagonal_sum", to_string(m.diagonal_sum)},
          {"antidiagonal_sum", to_string(m.antidiagonal_sum)},
          {"all_sums_equal_gamma", m.all_sums_equal_gamma()}};
}

std::string magic_square_text(const MagicSquareReport& m) {
  std::size_t equal = 0;
  for (const auto& s : m.row_sums) equal += s == m.gamma;
  for (const auto& s : m.col_sums) equal += s == m.gamma;
  equal += m.diagonal_sum == m.gamma;
  equal += m.antidiagonal_sum == m.gamma;
  return "square_sums_equal_gamma: " + std::to_string(equal) + "/" +
         std::to_string(m.sum_count()) + "\n";
}

int cmd_verify(const std::string& path, bool as_json) {
  const RatMatrix m = read_matrix(path);
  const VerifyReport r = verify(m);
  std::optional<MagicSquareReport> magic;
  if (r.is_euler_magic && std::all_of(m.entries().begin(), m.entries().end(), is_integral))
    magic = magic_square_of_squares(to_integer(m));
  if (as_json) {
    json j = report_to_json(r);
    if (magic) j["magic_square"] = magic_square_json(*magic);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << report_to_text(r);
    if (magic) std::cout << magic_square_text(*magic);
  }
  return r.is_euler_magic ? kOk : kFalse;
}

int cmd_family(const std::vector<std::string>& args, bool as_json) {
  const auto v = parse_rationals(args);
  const FamilyResult f = theorem_family(v[0], v[1], v[2], v[3]);
  if (as_json) {
    std::cout << family_to_json(f).dump() << "\n";
  } else {
    std::cout << "X: " << to_string(f.X) << "\nright:";
    for (const auto& x : f.right) std::cout << " " << to_string(x);
    std::cout << "\n" << format_matrix_text(f.primitive) << report_to_text(f.report);
  }
  return f.report.is_euler_magic ? kOk : kFalse;
}

int cmd_prove3(bool as_json, const std::string& perturb) {
  CertificateOptions opts;
  if (!perturb.empty()) opts.main_identity_perturbation = parse_rational(perturb);
  const Certificate c = nonexistence_certificate(opts);
  if (as_json)
    std::cout << json{{"lines", certificate_to_json(c)}, {"all_pass", c.all_pass()}}.dump() << "\n";
  else
    std::cout << certificate_to_text(c);
  return c.all_pass() ? kOk : kFalse;
}

int cmd_perm(long n, bool as_json) {
  if (n < 0) throw UsageError("perm: n must be non-negative");
  const IntMatrix m = improper_construction(static_cast<std::size_t>(n));
  const VerifyReport r = verify(m);
  if (as_json) {
    std::cout << json{{"permutation", construction_permutation(n).images()},
                      {"matrix", entries_json(m)},
                      {"report", report_to_json(r)}}
                     .dump()
              << "\n";
  } else {
    std::cout << format_matrix_text(m) << report_to_text(r);
  }
  return r.is_euler_magic ? kOk : kFalse;
}

int cmd_search5(const SearchConfig& cfg, std::size_t top) {
  const Search5Result r = search5_cayley(cfg);
  std::size_t shown = 0;
  for (const auto& c : r.candidates) {
    if (top && shown++ == top) break;
    std::cout << candidate_to_json(c).dump() << "\n";
  }
  std::cout << search5_summary_json(r).dump() << "\n";
  return kOk;
}

std::array<Rational, 3> parse_solution(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("--solution expects u,v,w");
  const auto v = parse_rationals(parts);
  return {v[0], v[1], v[2]};
}

int cmd_search8(const std::vector<std::string>& left_args,
                const std::vector<std::string>& partial_args,
                const std::vector<std::string>& solutions, const Search8Config& cfg) {
  const IntOct left = parse_int_oct(left_args, "--left");
  if (partial_args.size() != 5) throw UsageError("--partial: expected 5 values p q r s t");
  const auto pv = parse_rationals(partial_args);
  std::array<Rational, 5> partial;
  std::copy(pv.begin(), pv.end(), partial.begin());
  std::vector<std::array<Rational, 3>> supplied;
  for (const auto& s : solutions) supplied.push_back(parse_solution(s));
  const Search8Result r = search8_seeded(left, partial, supplied, cfg);
  for (const auto& c : r.candidates) std::cout << candidate_to_json(c).dump() << "\n";
  std::cout << search8_summary_json(r).dump() << "\n";
  return r.rejected.empty() ? kOk : kFalse;
}

int cmd_greedy(const GreedyConfig& cfg) {
  const GreedyResult r = greedy_backtrack_left(cfg);
  for (const auto& t : r.tuples) std::cout << greedy_tuple_json(t).dump() << "\n";
  std::cout << json{{"kind", "summary"},
                    {"tuples", r.tuples.size()},
                    {"nodes", r.nodes},
                    {"exhausted", r.exhausted}}
                   .dump()
            << "\n";
  return kOk;
}

int cmd_forms(const std::vector<std::string>& args, bool as_json, bool validate) {
  const IntOct left = parse_int_oct(args, "forms");
  const DiagForms f = diag_forms(left, validate);
  const bool w1 = w1_check(left);
  std::optional<Elimination> e;
  if (w1) e = eliminate_w(f);
  if (as_json) {
    json j{{"left", to_string(left)}, {"A", f.A.to_string()}, {"B", f.B.to_string()}, {"w1", w1}};
    if (e) {
      j["x"] = e->x.to_string();
      j["y"] = e->y.to_string();
      j["F"] = e->F.to_string();
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "A = " << f.A.to_string() << "\nB = " << f.B.to_string() << "\n";
    if (e)
      std::cout << "x = " << e->x.to_string() << "\ny = " << e->y.to_string()
                << "\nF = " << e->F.to_string() << "\n";
    else
      std::cout << "w1: false (no elimination)\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler's magic matrices: verify, construct, search"};
  app.require_subcommand(1, 1);
  std::function<int()> action;
  bool as_json = false;

  auto* verify_cmd = app.add_subcommand("verify", "verify a matrix file (text or JSON; '-' = stdin)");
  std::string path;
  verify_cmd->add_option("path", path)->required();
  verify_cmd->add_flag("--json", as_json);
  verify_cmd->callback([&] { action = [&] { return cmd_verify(path, as_json); }; });

  auto* family_cmd = app.add_subcommand("family", "four-parameter proper 8x8 family at q r t u");
  std::vector<std::string> family_args;
  family_cmd->add_option("params", family_args, "q r t u")->expected(4)->required();
  family_cmd->add_flag("--json", as_json);
  family_cmd->callback([&] { action = [&] { return cmd_family(family_args, as_json); }; });

  auto* prove_cmd = app.add_subcommand("prove3", "certificate that no 3x3 rational example exists");
  std::string perturb;
  prove_cmd->add_flag("--json", as_json);
  prove_cmd->add_option("--perturb", perturb)->group("");
  prove_cmd->callback([&] { action = [&] { return cmd_prove3(as_json, perturb); }; });

  auto* perm_cmd = app.add_subcommand("perm", "improper permutation matrix of size n >= 4");
  long perm_n = 0;
  perm_cmd->add_option("n", perm_n)->required();
  perm_cmd->add_flag("--json", as_json);
  perm_cmd->callback([&] { action = [&] { return cmd_perm(perm_n, as_json); }; });

  auto* s5_cmd = app.add_subcommand("search5", "seeded Cayley-transform search over 5x5 matrices");
  SearchConfig s5;
  std::size_t top = 0;
  s5_cmd->add_option("--seed", s5.seed)->required();
  s5_cmd->add_option("--num-bound", s5.numerator_bound)->capture_default_str();
  s5_cmd->add_option("--den-bound", s5.denominator_bound)->capture_default_str();
  s5_cmd->add_option("--iterations", s5.max_iterations)->capture_default_str();
  s5_cmd->add_option("--threshold", s5.score_threshold, "minimum distinct squares to report");
  s5_cmd->add_option("--workers", s5.workers)->capture_default_str();
  s5_cmd->add_flag("--permute-columns", s5.permute_columns,
                   "also try every column permutation of each sample");
  s5_cmd->add_option("--top", top, "print at most this many candidates (0 = all)");
  s5_cmd->callback([&] { action = [&] { return cmd_search5(s5, top); }; });

  auto* s8_cmd = app.add_subcommand("search8", "specialized 8x8 search, or --greedy tuple generation");
  std::vector<std::string> left_args, partial_args, solutions;
  Search8Config s8;
  bool greedy = false;
  std::optional<std::uint64_t> greedy_seed;
  long greedy_bound = 6;
  GreedyConfig gcfg;
  s8_cmd->add_option("--left", left_args, "a b c d e f g h")->expected(8);
  s8_cmd->add_option("--partial", partial_args, "p q r s t")->expected(5);
  s8_cmd->add_option("--solution", solutions, "u,v,w to verify (repeatable)");
  s8_cmd->add_option("--num-bound", s8.numerator_bound, "enumerate u, v with |num| <= N (0 = off)");
  s8_cmd->add_option("--den-bound", s8.denominator_bound)->capture_default_str();
  s8_cmd->add_option("--workers", s8.workers)->capture_default_str();
  s8_cmd->add_flag("--greedy", greedy, "generate (a..h, p..t) tuples instead");
  s8_cmd->add_option("--seed", greedy_seed);
  s8_cmd->add_option("--bound", greedy_bound, "greedy: |value| <= bound")->capture_default_str();
  s8_cmd->add_option("--max-results", gcfg.max_results)->capture_default_str();
  s8_cmd->add_option("--max-nodes", gcfg.max_nodes)->capture_default_str();
  s8_cmd->callback([&] {
    action = [&] {
      if (greedy) {
        if (!greedy_seed) throw UsageError("search8 --greedy requires --seed");
        if (greedy_bound < 0) throw UsageError("--bound must be non-negative");
        GreedyConfig c = GreedyConfig::symmetric(greedy_bound, *greedy_seed);
        c.max_results = gcfg.max_results;
        c.max_nodes = gcfg.max_nodes;
        return cmd_greedy(c);
      }
      if (left_args.empty() || partial_args.empty())
        throw UsageError("search8 requires --left and --partial (or --greedy)");
      return cmd_search8(left_args, partial_args, solutions, s8);
    };
  });

  auto* forms_cmd = app.add_subcommand("forms", "diagonal forms A, B (and F when w1 holds) for a..h");
  std::vector<std::string> forms_args;
  bool no_validate = false;
  forms_cmd->add_option("left", forms_args, "a b c d e f g h")->expected(8)->required();
  forms_cmd->add_flag("--json", as_json);
  forms_cmd->add_flag("--no-validate", no_validate, "skip the black-box cross-check");
  forms_cmd->callback([&] { action = [&] { return cmd_forms(forms_args, as_json, !no_validate); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
