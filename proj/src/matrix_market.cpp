#include "cho/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace cho {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

void write_matrix_market(std::ostream& out, const SymmetricSparseMatrix& m,
                         const std::string& comment) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);) out << "% " << line << '\n';
  }
  out << m.rows() << ' ' << m.rows() << ' ' << m.stored_entries() << '\n';
  const auto row_start = m.row_start();
  const auto columns = m.columns();
  const auto values = m.values();
  char buffer[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) {
      // Upper (i, j >= i) is emitted as lower (j, i).
      std::snprintf(buffer, sizeof buffer, "%.17g", values[k]);
      out << columns[k] + 1 << ' ' << i + 1 << ' ' << buffer << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing Matrix Market stream");
}

SymmetricSparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty Matrix Market stream");
  std::istringstream header(lowercase(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix" || format != "coordinate" ||
      field != "real" || symmetry != "symmetric")
    throw std::runtime_error("unsupported Matrix Market header: " + line);

  do {
    if (!std::getline(in, line)) throw std::runtime_error("missing Matrix Market size line");
  } while (line.empty() || line[0] == '%');

  std::size_t rows = 0, cols = 0, entries = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> entries) || rows != cols)
      throw std::runtime_error("bad Matrix Market size line: " + line);
  }

  std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
  triplets.reserve(entries);
  for (std::size_t e = 0; e < entries;) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated Matrix Market data");
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > rows)
      throw std::runtime_error("bad Matrix Market entry: " + line);
    if (i > j) std::swap(i, j);
    triplets.emplace_back(i - 1, j - 1, v);
    ++e;
  }
  std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });

  const auto duplicate = std::adjacent_find(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) == std::get<0>(b) && std::get<1>(a) == std::get<1>(b);
  });
  if (duplicate != triplets.end()) throw std::runtime_error("duplicate Matrix Market entry");

  std::vector<std::size_t> row_start(rows + 1, 0);
  std::vector<Label> columns;
  std::vector<double> values;
  columns.reserve(triplets.size());
  values.reserve(triplets.size());
  for (const auto& [i, j, v] : triplets) {
    ++row_start[i + 1];
    columns.push_back(j);
    values.push_back(v);
  }
  for (std::size_t i = 0; i < rows; ++i) row_start[i + 1] += row_start[i];
  return SymmetricSparseMatrix(rows, std::move(row_start), std::move(columns), std::move(values));
}

}  // namespace cho
