#include "disco/disco.hpp"

#include <string>

#include "disco/errors.hpp"
#include "disco/rng.hpp"

namespace disco {

namespace {

std::string dims(std::size_t got, std::size_t want) {
  return std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

}  // namespace

void DiscoPlan::validate() const {
  if (base_dim == 0) throw ConfigError("disco base dimension must be >= 1");
  if (b_specs.size() != depth) {
    throw ConfigError("disco plan has " + std::to_string(b_specs.size()) + " B specs for depth " +
                      std::to_string(depth));
  }
  if (a_spec.dim != base_dim) throw ConfigError("A spec dimension " + dims(a_spec.dim, base_dim));
  a_spec.validate();
  for (std::size_t i = 0; i < depth; ++i) {
    const std::size_t want = base_dim << i;
    if (b_specs[i].dim != want) {
      throw ConfigError("B_" + std::to_string(i + 1) + " spec dimension " + dims(b_specs[i].dim, want));
    }
    b_specs[i].validate();
  }
  if (b0_spec) {
    if (b0_spec->dim != base_dim) throw ConfigError("B_0 spec dimension " + dims(b0_spec->dim, base_dim));
    b0_spec->validate();
  }
}

DiscoPlan DiscoPlan::reseeded(std::uint64_t trial_seed) const {
  DiscoPlan out = *this;
  out.a_spec.seed = derive_seed(trial_seed, 0);
  for (std::size_t i = 0; i < out.b_specs.size(); ++i) out.b_specs[i].seed = derive_seed(trial_seed, i + 1);
  if (out.b0_spec) out.b0_spec->seed = derive_seed(trial_seed, depth + 1);
  return out;
}

DiscoPlan DiscoPlan::with_base_dim(std::size_t n) const {
  DiscoPlan out = *this;
  out.base_dim = n;
  out.a_spec.dim = n;
  for (std::size_t i = 0; i < out.b_specs.size(); ++i) out.b_specs[i].dim = n << i;
  if (out.b0_spec) out.b0_spec->dim = n;
  return out;
}

DiscoPlan make_disco_plan(const EnsembleKind& a_kind, const EnsembleKind& b_kind, std::size_t depth,
                          std::size_t base_dim, EntryDistribution dist, std::uint64_t seed) {
  DiscoPlan plan;
  plan.depth = depth;
  plan.base_dim = base_dim;
  plan.a_spec = EnsembleSpec{a_kind, base_dim, dist, 0};
  for (std::size_t i = 0; i < depth; ++i) plan.b_specs.push_back(EnsembleSpec{b_kind, base_dim << i, dist, 0});
  plan.b0_spec = EnsembleSpec{b_kind, base_dim, dist, 0};
  plan = plan.reseeded(seed);
  plan.validate();
  return plan;
}

DiscoComponents draw_components(const DiscoPlan& plan) {
  plan.validate();
  DiscoComponents out{draw(plan.a_spec), {}, std::nullopt};
  out.bs.reserve(plan.depth);
  for (const auto& spec : plan.b_specs) out.bs.push_back(draw(spec));
  if (plan.b0_spec) out.b0 = draw(*plan.b0_spec);
  return out;
}

SymmetricMatrix build_disco(const SymmetricMatrix& a, std::span<const SymmetricMatrix> bs) {
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::size_t want = a.dim() << i;
    if (bs[i].dim() != want) {
      throw DimensionError("build_disco: B_" + std::to_string(i + 1) + " has dimension " +
                           dims(bs[i].dim(), want));
    }
  }
  SymmetricMatrix current = a;
  for (const SymmetricMatrix& b : bs) {
    const std::size_t n = current.dim();
    SymmetricAssembler next(2 * n);
    next.place(current, 0, 0);
    next.place(current, n, n);
    next.place(b, 0, n);
    current = std::move(next).finish();
  }
  return current;
}

SymmetricMatrix build_disco(const DiscoPlan& plan, const SymmetricMatrix& a,
                            std::span<const SymmetricMatrix> bs) {
  if (a.dim() != plan.base_dim) throw DimensionError("build_disco: A has dimension " + dims(a.dim(), plan.base_dim));
  if (bs.size() != plan.depth) {
    throw DimensionError("build_disco: got " + std::to_string(bs.size()) + " B matrices for depth " +
                         std::to_string(plan.depth));
  }
  return build_disco(a, bs);
}

SymmetricMatrix draw_disco(const DiscoPlan& plan) {
  const DiscoComponents c = draw_components(plan);
  return build_disco(plan, c.a, c.bs);
}

DiscoDecomposition decompose(const DiscoPlan& plan, const SymmetricMatrix& a, const SymmetricMatrix& b0,
                             std::span<const SymmetricMatrix> bs) {
  if (b0.dim() != plan.base_dim) throw DimensionError("decompose: B_0 has dimension " + dims(b0.dim(), plan.base_dim));
  // B_part is assembled from B_0 directly so its diagonal blocks are B_0 bit for
  // bit; B_part + C_part reproduces D_d exactly whenever A - B_0 is exact.
  SymmetricMatrix b_part = build_disco(plan, b0, bs);
  const SymmetricMatrix c = a - b0;
  const std::size_t n = plan.base_dim;
  SymmetricAssembler c_part(b_part.dim());
  for (std::size_t r = 0; r < b_part.dim(); r += n) c_part.place(c, r, r);
  return {std::move(b_part), std::move(c_part).finish()};
}

HatDecomposition hat_decompose(const SymmetricMatrix& a, const SymmetricMatrix& b0) {
  if (a.dim() != b0.dim()) {
    throw DimensionError("hat_decompose: A has dimension " + std::to_string(a.dim()) + ", B_0 has " +
                         std::to_string(b0.dim()));
  }
  const std::size_t n = a.dim();
  SymmetricAssembler a_hat(2 * n);
  a_hat.place(a, 0, 0);
  a_hat.place(a, n, n);
  SymmetricAssembler b_hat(2 * n);
  b_hat.place(b0, 0, n);
  return {std::move(a_hat).finish(), std::move(b_hat).finish()};
}

SymmetricMatrix kronecker(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  const std::size_t n = a.dim();
  const std::size_t m = b.dim();
  SymmetricAssembler out(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double s = a(i, j);
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) out.set(i * m + k, j * m + l, s * b(k, l));
      }
    }
  }
  return std::move(out).finish();
}

}  // namespace disco
