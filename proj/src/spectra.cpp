#include "disco/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "disco/errors.hpp"
#include "disco/rng.hpp"

namespace disco {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_orders(std::span<const int> orders) {
  for (int m : orders) {
    if (m < 1) throw ConfigError("moment orders must be >= 1, got " + std::to_string(m));
  }
}

void validate_source(const MomentSource& source) {
  std::visit([](const auto& s) { s.validate(); }, source);
}

std::vector<double> trial_moments(const MomentSource& source, std::span<const int> orders,
                                  std::uint64_t master_seed, std::size_t trial) {
  const SymmetricMatrix m = draw_source(source, derive_seed(master_seed, trial));
  return empirical_moments(eigenvalues(m), orders);
}

// Serial reduction in trial order; shared by both execution paths.
MomentReport reduce(std::span<const int> orders, const std::vector<std::vector<double>>& per_trial,
                    std::size_t dim) {
  const std::size_t k = orders.size();
  const std::size_t t = per_trial.size();
  MomentReport r;
  r.orders.assign(orders.begin(), orders.end());
  r.values.assign(k, 0.0);
  r.stderrs.assign(k, 0.0);
  r.variances.assign(k, 0.0);
  r.trials = t;
  r.dim = dim;
  for (std::size_t o = 0; o < k; ++o) {
    double sum = 0.0;
    for (const auto& row : per_trial) sum += row[o];
    const double mean = sum / static_cast<double>(t);
    double ss = 0.0;
    for (const auto& row : per_trial) ss += (row[o] - mean) * (row[o] - mean);
    r.values[o] = mean;
    if (t > 1) {
      r.variances[o] = ss / static_cast<double>(t - 1);
      r.stderrs[o] = std::sqrt(r.variances[o] / static_cast<double>(t));
    }
  }
  return r;
}

double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<double> SpectralSample::normalized() const {
  std::vector<double> out(raw.size());
  std::transform(raw.begin(), raw.end(), out.begin(), [this](double x) { return x / scale; });
  return out;
}

SpectralSample eigenvalues(const SymmetricMatrix& m) {
  if (!m.all_finite()) throw InputError("eigenvalues: matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.view(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InputError("eigenvalues: solver did not converge");
  SpectralSample s;
  const auto& ev = solver.eigenvalues();
  s.raw.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.raw.begin(), s.raw.end());
  s.scale = std::sqrt(static_cast<double>(m.dim()));
  return s;
}

std::vector<double> empirical_moments(const SpectralSample& sample, std::span<const int> orders) {
  validate_orders(orders);
  const int max_order = orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end());
  std::vector<double> power_sums(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (double x : sample.raw) {
    double p = 1.0;
    for (int m = 1; m <= max_order; ++m) {
      p *= x;
      power_sums[static_cast<std::size_t>(m)] += p;
    }
  }
  const auto n = static_cast<double>(sample.dim());
  std::vector<double> out;
  out.reserve(orders.size());
  for (int m : orders) {
    out.push_back(power_sums[static_cast<std::size_t>(m)] * std::pow(n, -(m / 2.0 + 1.0)));
  }
  return out;
}

std::size_t source_dim(const MomentSource& source) {
  return std::visit(Overloaded{[](const EnsembleSpec& s) { return s.dim; },
                               [](const DiscoPlan& p) { return p.dim(); }},
                    source);
}

std::size_t source_base_dim(const MomentSource& source) {
  return std::visit(Overloaded{[](const EnsembleSpec& s) { return s.dim; },
                               [](const DiscoPlan& p) { return p.base_dim; }},
                    source);
}

MomentSource with_base_dim(const MomentSource& source, std::size_t n) {
  return std::visit(Overloaded{[n](const EnsembleSpec& s) -> MomentSource { return s.with_dim(n); },
                               [n](const DiscoPlan& p) -> MomentSource { return p.with_base_dim(n); }},
                    source);
}

SymmetricMatrix draw_source(const MomentSource& source, std::uint64_t trial_seed) {
  return std::visit(
      Overloaded{[trial_seed](const EnsembleSpec& s) { return draw(s.with_seed(trial_seed)); },
                 [trial_seed](const DiscoPlan& p) { return draw_disco(p.reseeded(trial_seed)); }},
      source);
}

MomentReport monte_carlo_moments(const MomentSource& source, std::span<const int> orders,
                                 std::size_t trials, std::uint64_t master_seed) {
  if (trials < 1) throw ConfigError("monte_carlo_moments: trials must be >= 1");
  validate_orders(orders);
  validate_source(source);
  std::vector<std::vector<double>> per_trial(trials);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    try {
      per_trial[static_cast<std::size_t>(t)] =
          trial_moments(source, orders, master_seed, static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(disco_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return reduce(orders, per_trial, source_dim(source));
}

MomentReport monte_carlo_moments_serial(const MomentSource& source, std::span<const int> orders,
                                        std::size_t trials, std::uint64_t master_seed) {
  if (trials < 1) throw ConfigError("monte_carlo_moments: trials must be >= 1");
  validate_orders(orders);
  validate_source(source);
  std::vector<std::vector<double>> per_trial;
  per_trial.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) per_trial.push_back(trial_moments(source, orders, master_seed, t));
  return reduce(orders, per_trial, source_dim(source));
}

std::vector<double> pooled_spectrum(const MomentSource& source, std::size_t trials, std::uint64_t master_seed) {
  if (trials < 1) throw ConfigError("pooled_spectrum: trials must be >= 1");
  validate_source(source);
  std::vector<std::vector<double>> per_trial(trials);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    try {
      const auto seed = derive_seed(master_seed, static_cast<std::size_t>(t));
      per_trial[static_cast<std::size_t>(t)] = eigenvalues(draw_source(source, seed)).normalized();
    } catch (...) {
#pragma omp critical(disco_pool_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> out;
  for (const auto& v : per_trial) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<OddMomentPoint> odd_moment_decay(const MomentSource& source, int m, std::span<const std::size_t> dims,
                                             std::size_t trials, std::uint64_t master_seed) {
  if (m < 1 || m % 2 == 0) throw ConfigError("odd_moment_decay: order must be odd, got " + std::to_string(m));
  if (!std::is_sorted(dims.begin(), dims.end())) throw ConfigError("odd_moment_decay: dims must be ascending");
  const int orders[] = {m};
  std::vector<OddMomentPoint> out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const MomentReport r = monte_carlo_moments(with_base_dim(source, dims[i]), orders, trials,
                                               derive_seed(master_seed, i));
    out.push_back({dims[i], std::abs(r.values[0]), r.stderrs[0]});
  }
  return out;
}

std::vector<VariancePoint> moment_variance_scan(const MomentSource& source, int m,
                                                std::span<const std::size_t> dims, std::size_t trials,
                                                std::uint64_t master_seed) {
  if (dims.size() < 2) throw ConfigError("moment_variance_scan: need at least two dimensions");
  if (trials < 2) throw ConfigError("moment_variance_scan: variance needs at least two trials");
  const int orders[] = {m};
  std::vector<VariancePoint> out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const MomentReport r = monte_carlo_moments(with_base_dim(source, dims[i]), orders, trials,
                                               derive_seed(master_seed, i));
    out.push_back({dims[i], r.variances[0]});
  }
  return out;
}

double Histogram::density(std::size_t bin) const {
  const double w = bin_edges[bin + 1] - bin_edges[bin];
  return total == 0 ? 0.0 : static_cast<double>(counts[bin]) / (static_cast<double>(total) * w);
}

Histogram histogram(std::span<const double> values, const BinPolicy& policy) {
  if (values.empty()) throw InputError("histogram: no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double lo = sorted.front();
  double hi = sorted.back();
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("histogram: non-finite value");
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }

  std::size_t bins = 1;
  switch (policy.kind) {
    case BinPolicy::Kind::FixedWidth: {
      if (!(policy.width > 0.0)) throw ConfigError("histogram: bin width must be positive");
      lo = std::floor(lo / policy.width) * policy.width;
      hi = std::ceil(hi / policy.width) * policy.width;
      if (hi <= sorted.back()) hi += policy.width;
      bins = static_cast<std::size_t>(std::llround((hi - lo) / policy.width));
      break;
    }
    case BinPolicy::Kind::FixedCount:
      if (policy.count == 0) throw ConfigError("histogram: bin count must be positive");
      bins = policy.count;
      break;
    case BinPolicy::Kind::FreedmanDiaconis: {
      const double iqr = sorted.size() > 1 ? quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25) : 0.0;
      const double n = static_cast<double>(sorted.size());
      if (iqr > 0.0) {
        const double width = 2.0 * iqr / std::cbrt(n);
        bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
      } else {
        bins = static_cast<std::size_t>(std::ceil(std::sqrt(n)));
      }
      bins = std::clamp<std::size_t>(bins, 1, 100000);
      break;
    }
  }

  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.bin_edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double x : sorted) {
    // upper_bound keeps every value inside [edges.front(), edges.back()].
    auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - h.bin_edges.begin());
    idx = idx == 0 ? 0 : std::min(idx - 1, bins - 1);
    ++h.counts[idx];
  }
  h.total = sorted.size();
  h.gauss_pdf.resize(bins);
  h.semicircle_pdf.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double c = 0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]);
    h.gauss_pdf[i] = gaussian_pdf(c);
    h.semicircle_pdf[i] = semicircle_pdf(c);
  }
  return h;
}

std::vector<double> gap_spacings(const SpectralSample& sample, double divisor) {
  if (sample.dim() < 2) throw InputError("gap_spacings: need at least two eigenvalues");
  if (!(divisor > 0.0)) throw ConfigError("gap_spacings: divisor must be positive");
  std::vector<double> gaps(sample.dim() - 1);
  for (std::size_t i = 0; i + 1 < sample.dim(); ++i) gaps[i] = (sample.raw[i + 1] - sample.raw[i]) / divisor;
  return gaps;
}

std::vector<double> gap_spacings(const SpectralSample& sample) { return gap_spacings(sample, sample.scale); }

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double semicircle_pdf(double x) {
  return std::abs(x) >= 2.0 ? 0.0 : std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

}  // namespace disco
