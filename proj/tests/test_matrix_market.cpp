#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cho/hamiltonian.hpp"
#include "cho/matrix_market.hpp"

using namespace cho;

TEST_CASE("header, comment and entry count") {
  const OscillatorConfig cfg(2, 4, 1.0);
  const auto h = assemble_sparse(cfg);
  std::ostringstream out;
  write_matrix_market(out, h.sparse(), "d=2 N=4\nsecond line");
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "%%MatrixMarket matrix coordinate real symmetric");
  std::getline(lines, line);
  CHECK(line == "% d=2 N=4");
  std::getline(lines, line);
  CHECK(line == "% second line");
  std::getline(lines, line);
  CHECK(line == "16 16 " + std::to_string(h.sparse().stored_entries()));
  std::size_t entries = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    fields >> i >> j >> v;
    CHECK(i >= j);  // lower triangle
    CHECK(j >= 1);
    CHECK(i <= 16);
    ++entries;
  }
  CHECK(entries == h.sparse().stored_entries());
  CHECK(2 * entries - 16 == structural_nonzeros(cfg));
}

TEST_CASE("lambda = 0 exports only the diagonal") {
  const auto h = assemble_sparse(OscillatorConfig(2, 5, 0.0));
  std::ostringstream out;
  write_matrix_market(out, h.sparse());
  CHECK(out.str().find("25 25 25\n") != std::string::npos);
}

TEST_CASE("round trip is bit exact") {
  for (auto [d, n] : {std::pair{1u, 9u}, {2u, 6u}, {3u, 5u}}) {
    const OscillatorConfig cfg(d, n, 1.37);
    const auto h = assemble_sparse(cfg);
    std::stringstream io;
    write_matrix_market(io, h.sparse(), "round trip");
    const SymmetricSparseMatrix back = read_matrix_market(io);
    CHECK(back.rows() == h.sparse().rows());
    CHECK(std::vector(back.values().begin(), back.values().end()) ==
          std::vector(h.sparse().values().begin(), h.sparse().values().end()));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(cfg.size()), y1(cfg.size()), y2(cfg.size());
    for (auto& x : v) x = u(rng);
    h.multiply(v, y1);
    back.multiply(v, y2);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-13);
  }
}

TEST_CASE("reader accepts upper-triangle and unordered entries") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n% c\n3 3 4\n1 3 0.5\n2 2 2\n1 1 1\n3 3 3\n");
  const auto m = read_matrix_market(in);
  std::vector<double> x{1.0, 1.0, 1.0}, y(3);
  m.multiply(x, y);
  CHECK(y == std::vector<double>{1.5, 2.0, 3.5});
}

TEST_CASE("reader errors") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_matrix_market(in);
  };
  CHECK_THROWS_AS(read(""), std::runtime_error);
  CHECK_THROWS_AS(read("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(read("%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n1 1 1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(read("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(read("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n3 1 1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(read("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 1\n1 2 1\n"),
                  std::runtime_error);
}
