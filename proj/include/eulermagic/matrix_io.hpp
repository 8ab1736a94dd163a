#pragma once

// Matrix text format: one row per line, whitespace-separated entries written
// as "p" or "p/q". Blank lines and '#' comments are ignored.
// JSON form: {"rows": n, "cols": n, "entries": [["p/q", ...], ...]}.

#include "eulermagic/matrix.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eulermagic {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline RatMatrix parse_matrix_text(std::istream& in) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const std::exception& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(rows.front().size()) + " entries, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  return RatMatrix::from_rows(rows);
}

inline RatMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_text(in);
}

inline RatMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_matrix_text(in);
}

template <typename T>
std::string format_matrix_text(const Matrix<T>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

template <typename T>
nlohmann::json entries_json(const Matrix<T>& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
nlohmann::json matrix_to_json(const Matrix<T>& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_json(m)}};
}

inline RatMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows)
      throw ParseError("entries: expected " + std::to_string(rows) + " rows");
    std::vector<Rational> flat;
    flat.reserve(rows * cols);
    for (const auto& row : entries) {
      if (!row.is_array() || row.size() != cols)
        throw ParseError("entries: expected " + std::to_string(cols) + " columns");
      for (const auto& x : row) {
        if (x.is_string())
          flat.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
          flat.push_back(Rational(Integer(x.dump())));
        else
          throw ParseError("entry is neither a string nor an integer");
      }
    }
    return RatMatrix(rows, cols, std::move(flat));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("matrix json: ") + e.what());
  }
}

}  // namespace eulermagic
