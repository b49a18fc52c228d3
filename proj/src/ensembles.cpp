#include "disco/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "disco/errors.hpp"

namespace disco {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Orbit key of (i, j) under simultaneous cyclic shift by `period`, merged with
// the key of its transpose.
std::size_t circulant_key(std::size_t i, std::size_t j, std::size_t n, std::size_t period) {
  const std::size_t k1 = (i % period) * n + (j + n - i) % n;
  const std::size_t k2 = (j % period) * n + (i + n - j) % n;
  return std::min(k1, k2);
}

SymmetricMatrix draw_pst(const EnsembleSpec& spec) {
  const std::size_t n = spec.dim;
  EntrySampler sample(spec.dist, spec.seed);
  std::vector<double> b((n + 1) / 2);
  for (double& v : b) v = sample();
  return SymmetricMatrix::generate(n, [&](std::size_t i, std::size_t j) { return b[pst_index(i, j, n)]; });
}

SymmetricMatrix draw_rs(const EnsembleSpec& spec) {
  EntrySampler sample(spec.dist, spec.seed);
  // generate() visits (i, j), i <= j, in row-major order; the draw order is part
  // of the determinism contract.
  return SymmetricMatrix::generate(spec.dim, [&](std::size_t, std::size_t) { return sample(); });
}

SymmetricMatrix draw_block_circulant(const EnsembleSpec& spec, std::size_t period) {
  const std::size_t n = spec.dim;
  EntrySampler sample(spec.dist, spec.seed);
  std::vector<double> values(period * n);
  for (double& v : values) v = sample();
  return SymmetricMatrix::generate(
      n, [&](std::size_t i, std::size_t j) { return values[circulant_key(i, j, n, period)]; });
}

SymmetricMatrix draw_repeated(const EnsembleSpec& spec, const SymmetricMatrix& block) {
  const std::size_t m = block.dim();
  SymmetricAssembler out(spec.dim);
  for (std::size_t r = 0; r < spec.dim; r += m) out.place(block, r, r);
  return std::move(out).finish();
}

}  // namespace

void EnsembleSpec::validate() const {
  if (dim == 0) throw ConfigError("ensemble dimension must be >= 1");
  std::visit(Overloaded{
                 [](const Pst&) {},
                 [](const RealSymmetric&) {},
                 [this](const BlockCirculant& bc) {
                   if (bc.period == 0 || dim % bc.period != 0) {
                     throw ConfigError("block circulant period " + std::to_string(bc.period) +
                                       " does not divide dimension " + std::to_string(dim));
                   }
                 },
                 [this](const RepeatedBlock& rb) {
                   if (dim % rb.block.dim() != 0) {
                     throw ConfigError("block size " + std::to_string(rb.block.dim()) +
                                       " does not divide dimension " + std::to_string(dim));
                   }
                 },
             },
             kind);
}

EnsembleSpec EnsembleSpec::with_seed(std::uint64_t s) const {
  EnsembleSpec out = *this;
  out.seed = s;
  return out;
}

EnsembleSpec EnsembleSpec::with_dim(std::size_t n) const {
  EnsembleSpec out = *this;
  out.dim = n;
  return out;
}

double EntrySampler::operator()() {
  if (dist_ == EntryDistribution::Rademacher) return (engine_() >> 63) != 0 ? 1.0 : -1.0;
  return normal_(engine_);
}

SymmetricMatrix draw(const EnsembleSpec& spec) {
  spec.validate();
  return std::visit(Overloaded{
                        [&](const Pst&) { return draw_pst(spec); },
                        [&](const RealSymmetric&) { return draw_rs(spec); },
                        [&](const BlockCirculant& bc) { return draw_block_circulant(spec, bc.period); },
                        [&](const RepeatedBlock& rb) { return draw_repeated(spec, rb.block); },
                    },
                    spec.kind);
}

std::size_t free_parameter_count(const EnsembleSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dim;
  return std::visit(Overloaded{
                        [&](const Pst&) { return (n + 1) / 2; },
                        [&](const RealSymmetric&) { return n * (n + 1) / 2; },
                        [&](const BlockCirculant& bc) {
                          std::vector<bool> used(bc.period * n, false);
                          std::size_t count = 0;
                          for (std::size_t i = 0; i < n; ++i) {
                            for (std::size_t j = i; j < n; ++j) {
                              const std::size_t k = circulant_key(i, j, n, bc.period);
                              if (!used[k]) {
                                used[k] = true;
                                ++count;
                              }
                            }
                          }
                          return count;
                        },
                        [](const RepeatedBlock&) { return std::size_t{0}; },
                    },
                    spec.kind);
}

SymmetricMatrix counterexample_block_a() { return SymmetricMatrix::from_rows({{-33, -31}, {-31, -82}}); }
SymmetricMatrix counterexample_block_b() { return SymmetricMatrix::from_rows({{26, 78}, {78, -15}}); }

std::string kind_name(const EnsembleKind& kind) {
  return std::visit(Overloaded{
                        [](const Pst&) { return std::string("pst"); },
                        [](const RealSymmetric&) { return std::string("rs"); },
                        [](const BlockCirculant& bc) { return "bc" + std::to_string(bc.period); },
                        [](const RepeatedBlock& rb) {
                          if (rb.block == SymmetricMatrix::identity(1)) return std::string("identity");
                          if (rb.block == counterexample_block_a()) return std::string("counterexample-a");
                          if (rb.block == counterexample_block_b()) return std::string("counterexample-b");
                          return "block" + std::to_string(rb.block.dim());
                        },
                    },
                    kind);
}

EnsembleKind parse_kind(std::string_view name) {
  if (name == "pst") return Pst{};
  if (name == "rs") return RealSymmetric{};
  if (name == "identity") return RepeatedBlock{SymmetricMatrix::identity(1)};
  if (name == "counterexample-a") return RepeatedBlock{counterexample_block_a()};
  if (name == "counterexample-b") return RepeatedBlock{counterexample_block_b()};
  if (name.starts_with("bc")) {
    std::size_t period = 0;
    const char* first = name.data() + 2;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, period);
    if (ec == std::errc{} && ptr == last && period > 0) return BlockCirculant{period};
  }
  throw ConfigError("unknown ensemble kind '" + std::string(name) +
                    "' (expected pst, rs, bc<period>, identity, counterexample-a, counterexample-b)");
}

std::string dist_name(EntryDistribution dist) {
  return dist == EntryDistribution::Rademacher ? "rademacher" : "normal";
}

EntryDistribution parse_dist(std::string_view name) {
  if (name == "normal" || name == "gaussian") return EntryDistribution::StandardNormal;
  if (name == "rademacher") return EntryDistribution::Rademacher;
  throw ConfigError("unknown entry distribution '" + std::string(name) + "' (expected normal or rademacher)");
}

}  // namespace disco
