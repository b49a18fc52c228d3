#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <omp.h>

#include "disco/errors.hpp"
#include "disco/spectra.hpp"

using namespace disco;

namespace {

// N^{-(m/2+1)} Tr(M^m) by repeated matrix multiplication.
double moment_by_powers(const SymmetricMatrix& m, int order) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(m.dim(), m.dim());
  for (int i = 0; i < order; ++i) p = p * m.view();
  return p.trace() / std::pow(static_cast<double>(m.dim()), order / 2.0 + 1.0);
}

}  // namespace

TEST_CASE("eigenvalues of a diagonal matrix, ascending") {
  const auto m = SymmetricMatrix::diagonal(std::vector<double>{3.0, -1.0, 2.0});
  const auto s = eigenvalues(m);
  REQUIRE(s.raw.size() == 3);
  CHECK(s.raw[0] == doctest::Approx(-1.0));
  CHECK(s.raw[2] == doctest::Approx(3.0));
  CHECK(s.scale == doctest::Approx(std::sqrt(3.0)));
  CHECK(s.normalized()[2] == doctest::Approx(3.0 / std::sqrt(3.0)));
}

TEST_CASE("trace equals the eigenvalue sum") {
  const auto m = draw(EnsembleSpec{RealSymmetric{}, 40, EntryDistribution::StandardNormal, 8});
  const auto s = eigenvalues(m);
  CHECK(std::accumulate(s.raw.begin(), s.raw.end(), 0.0) == doctest::Approx(m.trace()).epsilon(1e-10));
}

TEST_CASE("non-finite input is rejected") {
  const auto m = SymmetricMatrix::diagonal(std::vector<double>{1.0, INFINITY});
  CHECK_THROWS_AS(eigenvalues(m), InputError);
}

TEST_CASE("empirical moments agree with matrix powers") {
  const auto m = draw(EnsembleSpec{Pst{}, 30, EntryDistribution::StandardNormal, 2});
  const std::vector<int> orders{1, 2, 3, 4, 6};
  const auto got = empirical_moments(eigenvalues(m), orders);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    CHECK(got[i] == doctest::Approx(moment_by_powers(m, orders[i])).epsilon(1e-9));
  }
  const std::vector<int> bad{0};
  CHECK_THROWS_AS(empirical_moments(eigenvalues(m), bad), ConfigError);
}

TEST_CASE("Monte Carlo: parallel and serial reports are bitwise equal") {
  const MomentSource source = make_disco_plan(Pst{}, RealSymmetric{}, 1, 24, EntryDistribution::StandardNormal, 0);
  const std::vector<int> orders{2, 3, 4};
  omp_set_num_threads(4);
  const auto par = monte_carlo_moments(source, orders, 17, 123);
  omp_set_num_threads(1);
  const auto ser = monte_carlo_moments_serial(source, orders, 17, 123);
  omp_set_num_threads(omp_get_num_procs());
  CHECK(par.values == ser.values);
  CHECK(par.stderrs == ser.stderrs);
  CHECK(par.variances == ser.variances);
  CHECK(par.dim == 48);
  CHECK(par.trials == 17);
}

TEST_CASE("Monte Carlo edge cases") {
  const MomentSource source = EnsembleSpec{RealSymmetric{}, 10};
  const std::vector<int> orders{2};
  const auto one = monte_carlo_moments(source, orders, 1, 5);
  CHECK(one.stderrs[0] == 0.0);
  CHECK(one.variances[0] == 0.0);
  CHECK_THROWS_AS(monte_carlo_moments(source, orders, 0, 5), ConfigError);
}

TEST_CASE("RS fourth moment is near the Catalan value") {
  const MomentSource source = EnsembleSpec{RealSymmetric{}, 200};
  const std::vector<int> orders{2, 4};
  const auto r = monte_carlo_moments(source, orders, 20, 77);
  // Finite-N mean is 2 + O(1/N); 5 standard errors plus that bias.
  CHECK(std::abs(r.values[0] - 1.0) < 5 * r.stderrs[0] + 0.01);
  CHECK(std::abs(r.values[1] - 2.0) < 5 * r.stderrs[1] + 0.02);
}

TEST_CASE("odd moment decay and variance scan") {
  const MomentSource source = EnsembleSpec{RealSymmetric{}, 16};
  const std::vector<std::size_t> dims{16, 64};
  const auto odd = odd_moment_decay(source, 3, dims, 10, 1);
  REQUIRE(odd.size() == 2);
  CHECK(odd[1].base_dim == 64);
  CHECK_THROWS_AS(odd_moment_decay(source, 4, dims, 10, 1), ConfigError);
  const auto var = moment_variance_scan(source, 4, dims, 10, 1);
  CHECK(var.size() == 2);
  const std::vector<std::size_t> one{16};
  CHECK_THROWS_AS(moment_variance_scan(source, 4, one, 10, 1), ConfigError);
  CHECK_THROWS_AS(moment_variance_scan(source, 4, dims, 1, 1), ConfigError);
}

TEST_CASE("pooled spectrum concatenates draws in order") {
  const MomentSource source = EnsembleSpec{Pst{}, 12};
  const auto pooled = pooled_spectrum(source, 3, 9);
  CHECK(pooled.size() == 36);
  CHECK(pooled == pooled_spectrum(source, 3, 9));
}

TEST_CASE("histograms") {
  const std::vector<double> xs{-1.0, -0.5, 0.0, 0.25, 0.5, 1.0};
  BinPolicy fixed;
  fixed.kind = BinPolicy::Kind::FixedCount;
  fixed.count = 4;
  const auto h = histogram(xs, fixed);
  CHECK(h.counts.size() == 4);
  CHECK(h.bin_edges.size() == 5);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == xs.size());
  CHECK(h.total == xs.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) mass += h.density(i) * (h.bin_edges[i + 1] - h.bin_edges[i]);
  CHECK(mass == doctest::Approx(1.0));
  CHECK_THROWS_AS(histogram(std::vector<double>{}), InputError);

  const auto fd = histogram(pooled_spectrum(EnsembleSpec{RealSymmetric{}, 100}, 2, 3));
  CHECK(fd.counts.size() > 5);
  CHECK(fd.gauss_pdf.size() == fd.counts.size());
  CHECK(fd.semicircle_pdf.size() == fd.counts.size());
}

TEST_CASE("reference densities") {
  CHECK(gaussian_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  CHECK(semicircle_pdf(0.0) == doctest::Approx(1.0 / std::numbers::pi));
  CHECK(semicircle_pdf(2.5) == 0.0);
}

TEST_CASE("gap spacings") {
  const auto s = eigenvalues(draw(EnsembleSpec{RealSymmetric{}, 50, EntryDistribution::StandardNormal, 4}));
  const auto gaps = gap_spacings(s);
  CHECK(gaps.size() == 49);
  for (double g : gaps) CHECK(g >= 0.0);
  const auto raw = gap_spacings(s, 1.0);
  CHECK(raw[0] == doctest::Approx(gaps[0] * std::sqrt(50.0)));
}
