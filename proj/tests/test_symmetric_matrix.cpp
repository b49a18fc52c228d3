#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "disco/errors.hpp"
#include "disco/symmetric_matrix.hpp"

using disco::SymmetricAssembler;
using disco::SymmetricMatrix;

TEST_CASE("constructor validates shape and exact symmetry") {
  CHECK_THROWS_AS(SymmetricMatrix(0, {}), disco::DimensionError);
  CHECK_THROWS_AS(SymmetricMatrix(2, {1.0, 2.0, 2.0}), disco::DimensionError);
  CHECK_THROWS_AS(SymmetricMatrix(2, {1.0, 2.0, 2.0 + 1e-15, 1.0}), disco::InputError);
  const SymmetricMatrix m(2, {1.0, 2.0, 2.0, 3.0});
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == 2.0);
  CHECK(m.trace() == 4.0);
}

TEST_CASE("factories") {
  const auto id = SymmetricMatrix::identity(4);
  CHECK(id.trace() == 4.0);
  CHECK(id(1, 2) == 0.0);

  const std::vector<double> d{3.0, -4.0};
  const auto diag = SymmetricMatrix::diagonal(d);
  CHECK(diag(1, 1) == -4.0);
  CHECK(diag.max_abs_entry() == 4.0);

  const auto rows = SymmetricMatrix::from_rows({{1, 5}, {5, 2}});
  CHECK(rows(0, 1) == 5.0);
  CHECK_THROWS_AS(SymmetricMatrix::from_rows({{1, 5}, {4, 2}}), disco::InputError);

  int calls = 0;
  const auto g = SymmetricMatrix::generate(3, [&](std::size_t i, std::size_t j) {
    ++calls;
    return static_cast<double>(10 * i + j);
  });
  CHECK(calls == 6);
  CHECK(g(2, 0) == 2.0);
  CHECK(g(0, 2) == 2.0);
}

TEST_CASE("arithmetic, blocks and finiteness") {
  const auto a = SymmetricMatrix::from_rows({{1, 2}, {2, 3}});
  const auto b = SymmetricMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK((a + b) == SymmetricMatrix::from_rows({{1, 3}, {3, 3}}));
  CHECK((a - b) == SymmetricMatrix::from_rows({{1, 1}, {1, 3}}));
  CHECK((2.0 * a) == SymmetricMatrix::from_rows({{2, 4}, {4, 6}}));
  CHECK(a.all_finite());
  const auto bad = SymmetricMatrix::diagonal(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()});
  CHECK_FALSE(bad.all_finite());

  const auto big = SymmetricMatrix::generate(4, [](std::size_t i, std::size_t j) { return double(i + j); });
  const auto blk = big.block(2, 2, 2);
  CHECK(blk == SymmetricMatrix::from_rows({{4, 5}, {5, 6}}));
}

TEST_CASE("assembler mirrors every write") {
  SymmetricAssembler as(4);
  as.place(SymmetricMatrix::from_rows({{1, 2}, {2, 1}}), 0, 2);
  as.set(0, 3, 7.0);
  const auto m = std::move(as).finish();
  CHECK(m(3, 0) == 7.0);
  CHECK(m(2, 0) == 1.0);
  CHECK(m(3, 0) == m(0, 3));
  CHECK(m(2, 1) == 2.0);
  CHECK(m(1, 2) == 2.0);
}
