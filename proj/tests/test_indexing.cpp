#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "cho/error.hpp"
#include "cho/indexing.hpp"
#include "cho/int_matrix.hpp"

using namespace cho;

TEST_CASE("decompose examples") {
  CHECK(decompose(5, BasisShape(2, 3)) == MultiIndex{1, 0, 1});
  CHECK(decompose(0, BasisShape(4, 2)) == MultiIndex{0, 0});
  CHECK(decompose(7, BasisShape(3, 2)) == MultiIndex{2, 1});
  CHECK_THROWS_AS(decompose(8, BasisShape(2, 3)), std::domain_error);
}

TEST_CASE("compose examples") {
  const std::vector<std::uint32_t> a{1, 0, 1}, b{2, 1}, zero(4, 0);
  CHECK(compose(a, 2) == 5);
  CHECK(compose(b, 3) == 7);
  CHECK(compose(zero, 9) == 0);
  const std::vector<std::uint32_t> bad{0, 3};
  CHECK_THROWS_AS(compose(bad, 3), std::domain_error);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(BasisShape(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(BasisShape(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(BasisShape(1000, 7), size_error);
  CHECK(BasisShape(1, 50).size() == 1);
  CHECK(BasisShape(10, 3).size() == 1000);
}

TEST_CASE("round trip over every label") {
  for (auto [n, d] : {std::pair{2u, 20u}, {10u, 6u}, {1000u, 2u}, {7u, 3u}, {1u, 4u}}) {
    const BasisShape shape(n, d);
    for (Label s = 0; s < shape.size(); ++s) {
      const MultiIndex m = decompose(s, shape);
      REQUIRE(compose(m, n) == s);
    }
  }
}

TEST_CASE("component is 1-based with axis 1 most significant") {
  const BasisShape shape(3, 2);
  CHECK(component(7, 1, shape) == 2);
  CHECK(component(7, 2, shape) == 1);
  CHECK_THROWS_AS(component(7, 0, shape), std::out_of_range);
  CHECK_THROWS_AS(component(7, 3, shape), std::out_of_range);
}

TEST_CASE("agreement and alpha examples") {
  const BasisShape shape(2, 3);
  CHECK(agreement(5, 5, shape) == 3);
  CHECK(agreement(0, 7, shape) == 0);
  CHECK(agreement(5, 4, shape) == 2);
  CHECK(agreement(0, 15, BasisShape(4, 2)) == 0);
  CHECK(alpha_element(3, 5, 4, shape) == 0);
  CHECK(alpha_element(1, 5, 4, shape) == 1);
  for (std::uint32_t i = 1; i <= 3; ++i) CHECK(alpha_element(i, 6, 6, shape) == 1);
  CHECK_THROWS_AS(alpha_element(4, 0, 0, shape), std::out_of_range);
  CHECK_THROWS_AS(agreement(0, 8, shape), std::domain_error);
}

TEST_CASE("c element examples") {
  const BasisShape shape(3, 3);
  const std::vector<std::uint32_t> s{0, 1, 2}, t{0, 2, 2}, u{1, 2, 2};
  const Label ls = compose(s, 3), lt = compose(t, 3), lu = compose(u, 3);
  for (std::uint32_t i = 1; i <= 3; ++i) CHECK(c_element(i, ls, ls, shape) == 1);
  CHECK(c_element(2, ls, lt, shape) == 1);
  CHECK(c_element(1, ls, lt, shape) == 0);
  CHECK(c_element(3, ls, lt, shape) == 0);
  for (std::uint32_t i = 1; i <= 3; ++i) CHECK(c_element(i, ls, lu, shape) == 0);
  CHECK_THROWS_AS(c_element(0, ls, lt, shape), std::out_of_range);
}

TEST_CASE("differing axis") {
  CHECK(differing_axis(5, 4, BasisShape(2, 3)) == 3);
  const std::vector<std::uint32_t> s{0, 1}, t{2, 1};
  CHECK(differing_axis(compose(s, 3), compose(t, 3), BasisShape(3, 2)) == 1);
  CHECK_THROWS_AS(differing_axis(4, 4, BasisShape(2, 3)), contract_error);
  CHECK_THROWS_AS(differing_axis(0, 3, BasisShape(2, 3)), contract_error);
  CHECK(differing_axis(0, 2, BasisShape(3, 1)) == 1);
}

TEST_CASE("element identities on random pairs") {
  std::mt19937_64 rng(7);
  for (auto [n, d] : {std::pair{2u, 5u}, {3u, 4u}, {5u, 3u}, {6u, 1u}}) {
    const BasisShape shape(n, d);
    std::uniform_int_distribution<Label> pick(0, shape.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
      Label s = pick(rng), t = pick(rng);
      if (trial % 3 == 0) {
        // force a single-axis neighbour
        MultiIndex m = decompose(s, shape);
        const std::uint32_t axis = static_cast<std::uint32_t>(rng() % d);
        m[axis] = static_cast<std::uint32_t>((m[axis] + 1 + rng() % (n - 1)) % n);
        t = compose(m, n);
      }
      const std::uint32_t a = agreement(s, t, shape);
      CHECK((a == d) == (s == t));
      int c_sum = 0;
      for (std::uint32_t i = 1; i <= d; ++i) {
        const int c = c_element(i, s, t, shape);
        CHECK(c == c_element_from_alpha(i, s, t, shape));
        CHECK(alpha_element(i, s, t, shape) * c == static_cast<int>(s == t));
        CHECK(c_element(i, s, t, shape) == c_element(i, t, s, shape));
        c_sum += c;
      }
      const int expected = s == t ? static_cast<int>(d) : (a + 1 == d ? 1 : 0);
      CHECK(c_sum == expected);
      if (a + 1 == d) {
        std::uint32_t k = 0;
        for (std::uint32_t j = 1; j <= d; ++j) k += j * (1 - alpha_element(j, s, t, shape));
        CHECK(differing_axis(s, t, shape) == k);
      }
    }
  }
}

TEST_CASE("materialized structure matrices") {
  for (std::uint32_t n : {2u, 3u, 4u})
    for (std::uint32_t d : {1u, 2u, 3u}) {
      CAPTURE(n);
      CAPTURE(d);
      const BasisShape shape(n, d);
      const auto size = static_cast<std::size_t>(shape.size());
      const IntMatrix j = IntMatrix::all_ones(size);
      std::int64_t nd1 = 1;
      for (std::uint32_t k = 1; k < d; ++k) nd1 *= n;
      IntMatrix alpha(size);
      for (std::uint32_t i = 1; i <= d; ++i) {
        const IntMatrix ai = materialize_alpha(i, shape);
        CHECK(ai.is_symmetric());
        CHECK(ai.trace() == static_cast<std::int64_t>(size));
        CHECK(ai.rank() == n);
        CHECK(ai * ai == nd1 * ai);
        for (std::uint32_t k = 1; k <= d; ++k) {
          if (k == i) continue;
          const IntMatrix ak = materialize_alpha(k, shape);
          CHECK(ai * ak == ak * ai);
          CHECK(ai * ak == (nd1 / n) * j);
        }
        const IntMatrix ci = materialize_c(i, shape);
        CHECK(ci.is_symmetric());
        CHECK(ci * ci == static_cast<std::int64_t>(n) * ci);
        CHECK(ci.trace() == static_cast<std::int64_t>(size));
        CHECK(ci.rank() == static_cast<std::size_t>(nd1));
        alpha = alpha + ai;
      }
      IntMatrix rhs = nd1 * alpha;
      if (d >= 2) rhs = rhs + (nd1 / n * static_cast<std::int64_t>(d * (d - 1))) * j;
      CHECK(alpha * alpha == rhs);
    }
}

TEST_CASE("materialization cap") {
  CHECK_THROWS_AS(materialize_alpha(1, BasisShape(65, 2)), size_error);
  CHECK_NOTHROW(materialize_c(1, BasisShape(16, 2)));
}

TEST_CASE("exact rank") {
  CHECK(IntMatrix::identity(5).rank() == 5);
  CHECK(IntMatrix::all_ones(6).rank() == 1);
  CHECK(IntMatrix(3).rank() == 0);
}
