#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "disco/rng.hpp"
#include "disco/symmetric_matrix.hpp"

namespace disco {

/// Law of the independent entries. Both have mean 0 and variance 1.
enum class EntryDistribution { StandardNormal, Rademacher };

/// Symmetric Toeplitz matrix whose first row is a palindrome.
struct Pst {};
/// Real symmetric (Wigner) matrix with i.i.d. upper triangle.
struct RealSymmetric {};
/// Symmetric matrix with b(i,j) == b(i+period, j+period), indices mod dim.
struct BlockCirculant {
  std::size_t period = 1;
};
/// Deterministic block-diagonal matrix: `block` tiled along the diagonal.
struct RepeatedBlock {
  SymmetricMatrix block;
};

using EnsembleKind = std::variant<Pst, RealSymmetric, BlockCirculant, RepeatedBlock>;

/// Recipe for one random matrix.
struct EnsembleSpec {
  EnsembleKind kind = Pst{};
  std::size_t dim = 1;
  EntryDistribution dist = EntryDistribution::StandardNormal;
  std::uint64_t seed = 0;

  /// Throws ConfigError on dim == 0, period not dividing dim, block size not
  /// dividing dim.
  void validate() const;
  EnsembleSpec with_seed(std::uint64_t s) const;
  EnsembleSpec with_dim(std::size_t n) const;
};

/// Seeded source of mean-0 variance-1 scalars.
class EntrySampler {
 public:
  EntrySampler(EntryDistribution dist, std::uint64_t seed) : dist_(dist), engine_(seed) {}

  double operator()();

 private:
  EntryDistribution dist_;
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Draws one matrix. Pure function of `spec` (including its seed).
SymmetricMatrix draw(const EnsembleSpec& spec);

/// Number of independent scalars a draw consumes: PST ceil(N/2), RS N(N+1)/2,
/// block circulant one per symmetric shift-orbit, repeated block 0.
std::size_t free_parameter_count(const EnsembleSpec& spec);

/// Index of the free scalar at (i, j) of an N x N PST matrix.
constexpr std::size_t pst_index(std::size_t i, std::size_t j, std::size_t n) noexcept {
  const std::size_t d = i > j ? i - j : j - i;
  return d < n - 1 - d ? d : n - 1 - d;
}

/// Short names used by the CLI and in reports: "pst", "rs", "bc3", "identity",
/// "counterexample-a", "counterexample-b".
std::string kind_name(const EnsembleKind& kind);
/// Inverse of kind_name. Throws ConfigError on unknown names.
EnsembleKind parse_kind(std::string_view name);

std::string dist_name(EntryDistribution dist);
EntryDistribution parse_dist(std::string_view name);

/// The 2x2 blocks of the trace-inequality counterexample.
SymmetricMatrix counterexample_block_a();
SymmetricMatrix counterexample_block_b();

}  // namespace disco
