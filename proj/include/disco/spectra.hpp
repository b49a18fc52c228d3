#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "disco/disco.hpp"
#include "disco/ensembles.hpp"
#include "disco/symmetric_matrix.hpp"

namespace disco {

/// Full spectrum of one matrix.
struct SpectralSample {
  std::vector<double> raw;  ///< ascending
  double scale = 1.0;       ///< sqrt(matrix dimension)

  std::size_t dim() const noexcept { return raw.size(); }
  std::vector<double> normalized() const;
};

/// All eigenvalues of `m`, ascending. Throws InputError on non-finite entries.
SpectralSample eigenvalues(const SymmetricMatrix& m);

/// dim^{-(m/2+1)} * sum_i raw_i^m for every requested order m >= 1.
std::vector<double> empirical_moments(const SpectralSample& sample, std::span<const int> orders);

/// Anything a Monte Carlo trial can draw a matrix from.
using MomentSource = std::variant<EnsembleSpec, DiscoPlan>;

std::size_t source_dim(const MomentSource& source);
/// Base dimension: EnsembleSpec::dim or DiscoPlan::base_dim.
std::size_t source_base_dim(const MomentSource& source);
MomentSource with_base_dim(const MomentSource& source, std::size_t n);
/// Matrix for trial seed `trial_seed`. Seeds inside `source` are ignored.
SymmetricMatrix draw_source(const MomentSource& source, std::uint64_t trial_seed);

/// Per-order Monte Carlo estimates.
struct MomentReport {
  std::vector<int> orders;
  std::vector<double> values;    ///< mean over trials
  std::vector<double> stderrs;   ///< sample std / sqrt(trials); 0 for one trial
  std::vector<double> variances; ///< unbiased sample variance; 0 for one trial
  std::size_t trials = 0;
  std::size_t dim = 0;
};

/// Trial t draws from derive_seed(master_seed, t). Per-trial moments are kept
/// in trial order and reduced serially, so the report is bitwise independent
/// of the thread count. Trials run under OpenMP.
MomentReport monte_carlo_moments(const MomentSource& source, std::span<const int> orders,
                                 std::size_t trials, std::uint64_t master_seed);
/// Single-threaded reference for monte_carlo_moments; identical output.
MomentReport monte_carlo_moments_serial(const MomentSource& source, std::span<const int> orders,
                                        std::size_t trials, std::uint64_t master_seed);

/// Normalized eigenvalues of `trials` draws (trial t from derive_seed(master_seed,
/// t)), concatenated in trial order. Draws run under OpenMP.
std::vector<double> pooled_spectrum(const MomentSource& source, std::size_t trials, std::uint64_t master_seed);

struct OddMomentPoint {
  std::size_t base_dim;
  double abs_value;
  double stderr_;
};

/// |M_m| estimates at each base dimension in `dims` (m odd).
std::vector<OddMomentPoint> odd_moment_decay(const MomentSource& source, int m, std::span<const std::size_t> dims,
                                             std::size_t trials, std::uint64_t master_seed);

struct VariancePoint {
  std::size_t base_dim;
  double variance;
};

/// Sample variance of M_m across trials at each base dimension. Needs at
/// least two dimensions and two trials.
std::vector<VariancePoint> moment_variance_scan(const MomentSource& source, int m,
                                                std::span<const std::size_t> dims, std::size_t trials,
                                                std::uint64_t master_seed);

struct BinPolicy {
  enum class Kind { FreedmanDiaconis, FixedWidth, FixedCount };
  Kind kind = Kind::FreedmanDiaconis;
  double width = 0.1;      ///< FixedWidth
  std::size_t count = 50;  ///< FixedCount
};

/// Counts of normalized eigenvalues with the Gaussian and semicircle densities
/// evaluated at each bin centre for overlay.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  std::vector<double> gauss_pdf;
  std::vector<double> semicircle_pdf;

  /// counts[i] / (total * width_i), comparable with the pdf columns.
  double density(std::size_t bin) const;
};

Histogram histogram(std::span<const double> values, const BinPolicy& policy = {});

/// Consecutive differences of the sorted raw eigenvalues divided by `divisor`.
std::vector<double> gap_spacings(const SpectralSample& sample, double divisor);
/// Same with the density normalization sqrt(matrix dimension).
std::vector<double> gap_spacings(const SpectralSample& sample);

double gaussian_pdf(double x);
/// Semicircle density on [-2, 2].
double semicircle_pdf(double x);

}  // namespace disco
