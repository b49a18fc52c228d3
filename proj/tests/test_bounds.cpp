#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "disco/bounds.hpp"
#include "disco/errors.hpp"
#include "disco/rng.hpp"
#include "disco/spectra.hpp"

using namespace disco;

namespace {

SymmetricMatrix rs(std::size_t n, std::uint64_t seed) {
  return draw(EnsembleSpec{RealSymmetric{}, n, EntryDistribution::StandardNormal, seed});
}

// Tr(X^4) of 2x2 [[p, q], [q, r]] from X^2 = [[p^2+q^2, q(p+r)], [q(p+r), r^2+q^2]].
std::int64_t trace4_2x2(std::int64_t p, std::int64_t q, std::int64_t r) {
  const std::int64_t d1 = p * p + q * q, off = q * (p + r), d2 = r * r + q * q;
  return d1 * d1 + 2 * off * off + d2 * d2;
}

}  // namespace

TEST_CASE("Schatten norms") {
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(schatten_norm(SymmetricMatrix::identity(5), p) == doctest::Approx(std::pow(5.0, 1.0 / p)));
  }
  CHECK(schatten_norm(SymmetricMatrix::diagonal(std::vector<double>{3.0, -4.0}), 1.0) == doctest::Approx(7.0));
  const auto m = rs(8, 1);
  double frob = 0.0;
  for (double x : m.entries()) frob += x * x;
  CHECK(std::abs(schatten_norm(m, 2.0) - std::sqrt(frob)) < 1e-9);
  CHECK_THROWS_AS(schatten_norm(m, 0.0), ConfigError);
  CHECK_THROWS_AS(schatten_norm(SymmetricMatrix::diagonal(std::vector<double>{NAN, 1.0}), 2.0), InputError);
}

TEST_CASE("singular values: symmetric route equals the general SVD route") {
  const auto m = rs(12, 4);
  const auto sym = singular_values(m);
  const auto gen = singular_values(Eigen::MatrixXd(m.view()));
  REQUIRE(sym.values.size() == gen.values.size());
  for (std::size_t i = 0; i < sym.values.size(); ++i) {
    CHECK(sym.values[i] == doctest::Approx(gen.values[i]).epsilon(1e-9));
    if (i > 0) CHECK(sym.values[i] <= sym.values[i - 1]);
    CHECK(sym.values[i] >= 0.0);
  }
}

TEST_CASE("exponent vectors") {
  CHECK_NOTHROW(ExponentVector({2.0, 2.0}));
  CHECK_NOTHROW(ExponentVector({6.0, 3.0, 2.0}));
  CHECK_THROWS_AS(ExponentVector({2.0, 3.0}), ConfigError);
  CHECK_THROWS_AS(ExponentVector({-2.0, 2.0 / 3.0}), ConfigError);
  CHECK_THROWS_AS(ExponentVector({}), ConfigError);
  for (std::size_t k : {2u, 3u, 4u}) CHECK(holder_exponents(k).size() == 3);
  CHECK_THROWS_AS(holder_exponents(5), ConfigError);
}

TEST_CASE("Hoelder: identities give equality") {
  const std::vector<SymmetricMatrix> ms(3, SymmetricMatrix::identity(4));
  const auto c = holder_trace_check(ms, ExponentVector({3.0, 3.0, 3.0}));
  CHECK(c.lhs == doctest::Approx(4.0));
  CHECK(c.rhs == doctest::Approx(4.0));
  CHECK(c.holds);
}

TEST_CASE("Hoelder with p = (2, 2) against Cauchy-Schwarz computed directly") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::vector<SymmetricMatrix> ms{rs(6, derive_seed(s, 0)), rs(6, derive_seed(s, 1))};
    const auto c = holder_trace_check(ms, ExponentVector({2.0, 2.0}));
    double tab = 0.0, taa = 0.0, tbb = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        tab += ms[0](i, j) * ms[1](j, i);
        taa += ms[0](i, j) * ms[0](j, i);
        tbb += ms[1](i, j) * ms[1](j, i);
      }
    }
    CHECK(c.lhs == doctest::Approx(std::abs(tab)).epsilon(1e-10));
    CHECK(c.rhs == doctest::Approx(std::sqrt(taa * tbb)).epsilon(1e-10));
    CHECK(c.holds);
  }
}

TEST_CASE("Hoelder with three factors and a dimension mismatch") {
  const std::vector<SymmetricMatrix> ms{rs(5, 1), rs(5, 2), rs(5, 3)};
  CHECK(holder_trace_check(ms, ExponentVector({3.0, 3.0, 3.0})).holds);
  CHECK_THROWS_AS(holder_trace_check(ms, ExponentVector({2.0, 2.0})), DimensionError);
  const std::vector<SymmetricMatrix> mixed{rs(5, 1), rs(4, 2)};
  CHECK_THROWS_AS(holder_trace_check(mixed, ExponentVector({2.0, 2.0})), DimensionError);
}

TEST_CASE("Hoelder sweep: parallel equals serial") {
  omp_set_num_threads(3);
  const auto par = holder_sweep(60, 5, 7);
  omp_set_num_threads(omp_get_num_procs());
  const auto ser = holder_sweep_serial(60, 5, 7);
  CHECK(par.tuples == 60);
  CHECK(par.violations == ser.violations);
  CHECK(par.max_ratio == ser.max_ratio);
  CHECK(par.violations == 0);
}

TEST_CASE("singular value product bound on random triples") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::vector<SymmetricMatrix> ms{rs(6, derive_seed(s, 0)), rs(6, derive_seed(s, 1)), rs(6, derive_seed(s, 2))};
    for (double p : {1.0, 2.0}) CHECK(singular_product_bound_check(ms, p).holds);
  }
}

TEST_CASE("mixed trace bound") {
  const auto a = rs(8, 10);
  const auto b = rs(8, 11);
  CHECK(mixed_trace_bound_check(a, b, {{2, 2}}).holds);
  const auto zero = SymmetricMatrix::zeros(8);
  const auto c = mixed_trace_bound_check(a, zero, {{4, 0}});
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-10));
  double tr4 = 0.0;
  for (double x : eigenvalues(a).raw) tr4 += x * x * x * x;
  CHECK(c.lhs == doctest::Approx(tr4).epsilon(1e-10));
  for (std::uint64_t s = 0; s < 100; ++s) {
    CHECK(mixed_trace_bound_check(rs(8, derive_seed(s, 0)), rs(8, derive_seed(s, 1)), {{2, 2}, {2, 2}}).holds);
  }
  CHECK_THROWS_AS(mixed_trace_bound_check(a, b, {{1, 3}}), ConfigError);
  CHECK_THROWS_AS(mixed_trace_bound_check(a, b, {{0, 0}}), ConfigError);
  const EnsembleSpec spec{RealSymmetric{}, 8};
  CHECK(mixed_trace_bound_average(spec, spec, {{2, 2}, {2, 2}}, 20, 3).holds);
}

TEST_CASE("sandwich: shared draw and order 2") {
  const EnsembleSpec a{Pst{}, 32};
  const EnsembleSpec b{RealSymmetric{}, 32};
  const auto same = sandwich_bound_check(b, b, 4, 10, 1, true);
  CHECK(same.m_a == same.m_b);
  CHECK(same.holds);
  const auto two = sandwich_bound_check(a, b, 2, 10, 1);
  CHECK(two.lower == doctest::Approx(std::min(two.m_a, two.m_b)));
  CHECK(two.upper == doctest::Approx(std::max(two.m_a, two.m_b)));
  CHECK(two.holds);
  CHECK_THROWS_AS(sandwich_bound_check(a, b, 3, 10, 1), ConfigError);
}

TEST_CASE("exact trace powers") {
  // [[1, 1], [1, 0]]^n has trace equal to the Lucas number L_n.
  const auto fib = SymmetricMatrix::from_rows({{1, 1}, {1, 0}});
  CHECK(exact_trace_power(fib, 4) == 7);
  CHECK(exact_trace_power(fib, 10) == 123);
  CHECK(exact_trace_power(fib, 0) == 2);
  CHECK_THROWS_AS(exact_trace_power(SymmetricMatrix::from_rows({{0.5}}), 2), InputError);
}

TEST_CASE("integer counterexample to the trace inequality") {
  const auto r = conjecture_counterexample();
  const std::int64_t ta = 10 * trace4_2x2(-33, -31, -82);
  const std::int64_t tb = 10 * trace4_2x2(26, 78, -15);
  const std::int64_t mixed = 10 * (trace4_2x2(-33 + 26, -31 + 78, -82 - 15) + trace4_2x2(-33 - 26, -31 - 78, -82 + 15)) / 8;
  CHECK(r.trace_a4 == ta);
  CHECK(r.trace_b4 == tb);
  CHECK(r.mixed == mixed);
  CHECK(r.trace_a4 == 886801750);
  CHECK(r.trace_b4 == 869734090);
  CHECK(r.mixed == 1336343790);
  CHECK(r.refutes());
}

TEST_CASE("conjecture scan with equal specs") {
  const EnsembleSpec spec{RealSymmetric{}, 48};
  const std::vector<int> orders{2, 4};
  const auto rows = conjecture_moment_scan(spec, spec, orders, 24, 5);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    const double se = std::sqrt(r.se_d * r.se_d + r.se_a * r.se_a);
    CHECK(std::abs(r.m_d - r.m_a) <= 3 * se + 0.05 * r.m_a);
  }
}
