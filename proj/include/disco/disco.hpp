#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "disco/ensembles.hpp"
#include "disco/symmetric_matrix.hpp"

namespace disco {

/// Recipe for the d-fold disco D_d(A, B_1..B_d).
///
/// D_0 = A and D_d = [[D_{d-1}, B_d], [B_d, D_{d-1}]], so B_i has dimension
/// 2^{i-1} N and the result has dimension 2^d N. `b0_spec` (dimension N) is
/// only used by the decompositions.
struct DiscoPlan {
  std::size_t depth = 1;
  std::size_t base_dim = 1;
  EnsembleSpec a_spec;
  std::vector<EnsembleSpec> b_specs;
  std::optional<EnsembleSpec> b0_spec;

  /// Throws ConfigError when the component dimensions disagree with depth and
  /// base_dim, or when a component spec is itself invalid.
  void validate() const;
  std::size_t dim() const noexcept { return base_dim << depth; }

  /// Copy whose component seeds are derived from `trial_seed`: A gets stream
  /// 0, B_i stream i, B_0 stream depth + 1.
  DiscoPlan reseeded(std::uint64_t trial_seed) const;
  /// Same kinds and depth at a different base dimension.
  DiscoPlan with_base_dim(std::size_t n) const;
};

/// Plan with A of kind `a_kind` and every B_i of kind `b_kind`; B_0 shares
/// the kind of the B_i.
DiscoPlan make_disco_plan(const EnsembleKind& a_kind, const EnsembleKind& b_kind,
                          std::size_t depth, std::size_t base_dim,
                          EntryDistribution dist = EntryDistribution::StandardNormal,
                          std::uint64_t seed = 0);

/// Realized components of one draw of a plan.
struct DiscoComponents {
  SymmetricMatrix a;
  std::vector<SymmetricMatrix> bs;
  std::optional<SymmetricMatrix> b0;
};

DiscoComponents draw_components(const DiscoPlan& plan);

/// Block recursion on realized matrices. bs[i-1] must have dimension
/// 2^{i-1} a.dim(); an empty `bs` returns `a`.
SymmetricMatrix build_disco(const SymmetricMatrix& a, std::span<const SymmetricMatrix> bs);
/// Same, after checking the operands against `plan`.
SymmetricMatrix build_disco(const DiscoPlan& plan, const SymmetricMatrix& a,
                            std::span<const SymmetricMatrix> bs);
/// Draws every component of `plan` and assembles D_d.
SymmetricMatrix draw_disco(const DiscoPlan& plan);

/// D_d split as B_part + C_part with C_part = 2^d diagonal copies of (A - B_0).
/// B_part then carries B_0 on every N x N diagonal block.
struct DiscoDecomposition {
  SymmetricMatrix b_part;
  SymmetricMatrix c_part;
};

DiscoDecomposition decompose(const DiscoPlan& plan, const SymmetricMatrix& a, const SymmetricMatrix& b0,
                             std::span<const SymmetricMatrix> bs);

/// D_1(A, B_0) = a_hat + b_hat with a_hat = diag(A, A) and b_hat the
/// anti-diagonal [[0, B_0], [B_0, 0]].
struct HatDecomposition {
  SymmetricMatrix a_hat;
  SymmetricMatrix b_hat;
};

HatDecomposition hat_decompose(const SymmetricMatrix& a, const SymmetricMatrix& b0);

/// A (x) B: block (i, j) is a(i, j) * B.
SymmetricMatrix kronecker(const SymmetricMatrix& a, const SymmetricMatrix& b);

}  // namespace disco
