#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "disco/bounds.hpp"
#include "disco/disco.hpp"
#include "disco/errors.hpp"
#include "disco/spectra.hpp"

using namespace disco;

namespace {

std::vector<double> sorted_union(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

TEST_CASE("1-disco of scalars") {
  const auto a = SymmetricMatrix::from_rows({{1}});
  const std::vector<SymmetricMatrix> bs{SymmetricMatrix::from_rows({{2}})};
  CHECK(build_disco(a, bs) == SymmetricMatrix::from_rows({{1, 2}, {2, 1}}));
}

TEST_CASE("2-disco layout written out by hand") {
  const auto a = SymmetricMatrix::from_rows({{1}});
  const std::vector<SymmetricMatrix> bs{SymmetricMatrix::from_rows({{2}}),
                                        SymmetricMatrix::from_rows({{3, 4}, {4, 5}})};
  const auto expected = SymmetricMatrix::from_rows({
      {1, 2, 3, 4},
      {2, 1, 4, 5},
      {3, 4, 1, 2},
      {4, 5, 2, 1},
  });
  CHECK(build_disco(a, bs) == expected);
}

TEST_CASE("B_i dimensions are checked") {
  const auto a = SymmetricMatrix::identity(2);
  const std::vector<SymmetricMatrix> bad{SymmetricMatrix::identity(3)};
  CHECK_THROWS_AS(build_disco(a, bad), DimensionError);
}

TEST_CASE("plans: dimensions, validation and reseeding") {
  const auto plan = make_disco_plan(Pst{}, RealSymmetric{}, 3, 4, EntryDistribution::StandardNormal, 9);
  CHECK(plan.dim() == 32);
  CHECK(plan.b_specs.size() == 3);
  CHECK(plan.b_specs[2].dim == 16);
  CHECK(draw_disco(plan).dim() == 32);
  CHECK(draw_disco(plan) == draw_disco(plan));
  CHECK_FALSE(draw_disco(plan) == draw_disco(plan.reseeded(10)));
  CHECK(plan.with_base_dim(8).dim() == 64);
  DiscoPlan broken = plan;
  broken.b_specs.pop_back();
  CHECK_THROWS_AS(broken.validate(), ConfigError);
}

TEST_CASE("1-disco spectrum is eig(A + B) joined with eig(A - B)") {
  // [[A, B], [B, A]] is block-diagonalized by (x, y) -> (x + y, x - y).
  const auto plan = make_disco_plan(Pst{}, RealSymmetric{}, 1, 24, EntryDistribution::StandardNormal, 4);
  const auto c = draw_components(plan);
  const auto d = build_disco(plan, c.a, c.bs);
  const auto expected = sorted_union(eigenvalues(c.a + c.bs[0]).raw, eigenvalues(c.a - c.bs[0]).raw);
  const auto got = eigenvalues(d).raw;
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("B/C decomposition reconstructs integer discos exactly") {
  const auto plan = make_disco_plan(Pst{}, RealSymmetric{}, 2, 6, EntryDistribution::Rademacher, 21);
  const auto c = draw_components(plan);
  REQUIRE(c.b0.has_value());
  const auto d = build_disco(plan, c.a, c.bs);
  const auto parts = decompose(plan, c.a, *c.b0, c.bs);
  CHECK((parts.b_part + parts.c_part) == d);
  // C is block diagonal with copies of A - B_0.
  const auto diff = c.a - *c.b0;
  for (std::size_t r = 0; r < d.dim(); r += 6) CHECK(parts.c_part.block(r, r, 6) == diff);
  CHECK(parts.c_part(0, 6) == 0.0);
  // B's diagonal blocks are B_0.
  CHECK(parts.b_part.block(6, 6, 6) == *c.b0);
}

TEST_CASE("B/C decomposition is accurate to rounding for Gaussian entries") {
  const auto plan = make_disco_plan(Pst{}, RealSymmetric{}, 1, 8, EntryDistribution::StandardNormal, 5);
  const auto c = draw_components(plan);
  const auto d = build_disco(plan, c.a, c.bs);
  const auto parts = decompose(plan, c.a, *c.b0, c.bs);
  const auto sum = parts.b_part + parts.c_part;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    for (std::size_t j = 0; j < d.dim(); ++j) {
      CHECK(std::abs(sum(i, j) - d(i, j)) <= 4 * 2.220446049250313e-16 * std::max(1.0, std::abs(d(i, j))));
    }
  }
}

TEST_CASE("hat decomposition and its trace identities") {
  const auto a = draw(EnsembleSpec{Pst{}, 5, EntryDistribution::Rademacher, 1});
  const auto b0 = draw(EnsembleSpec{RealSymmetric{}, 5, EntryDistribution::Rademacher, 2});
  const auto hat = hat_decompose(a, b0);
  const std::vector<SymmetricMatrix> bs{b0};
  CHECK((hat.a_hat + hat.b_hat) == build_disco(a, bs));
  for (int k : {2, 4, 6}) {
    CHECK(exact_trace_power(hat.a_hat, k) == 2 * exact_trace_power(a, k));
    CHECK(exact_trace_power(hat.b_hat, k) == 2 * exact_trace_power(b0, k));
  }
  CHECK(exact_trace_power(hat.b_hat, 3) == 0);
  CHECK_THROWS_AS(hat_decompose(a, SymmetricMatrix::identity(4)), DimensionError);
}

TEST_CASE("Kronecker product entries and spectrum") {
  const auto a = SymmetricMatrix::from_rows({{1, 2}, {2, 3}});
  const auto b = SymmetricMatrix::from_rows({{0, 5, 1}, {5, 4, 2}, {1, 2, 7}});
  const auto k = kronecker(a, b);
  REQUIRE(k.dim() == 6);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t q = 0; q < 3; ++q) CHECK(k(i * 3 + p, j * 3 + q) == a(i, j) * b(p, q));
      }
    }
  }
  std::vector<double> products;
  for (double x : eigenvalues(a).raw) {
    for (double y : eigenvalues(b).raw) products.push_back(x * y);
  }
  std::sort(products.begin(), products.end());
  const auto got = eigenvalues(k).raw;
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(products[i]).epsilon(1e-10));
}
