#include "disco/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <string>

#include "disco/disco.hpp"
#include "disco/errors.hpp"
#include "disco/rng.hpp"
#include "disco/spectra.hpp"

namespace disco {

namespace {

// Runs f(t) for t in [0, n) under OpenMP and returns the results in index order.
template <typename T, typename F>
std::vector<T> run_indexed(std::size_t n, F&& f) {
  std::vector<T> out(n);
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    try {
      out[static_cast<std::size_t>(t)] = f(static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(disco_bounds_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

bool within_slack(double lhs, double rhs) { return lhs <= rhs * (1.0 + kRelativeSlack); }

Eigen::MatrixXd product(std::span<const SymmetricMatrix> ms) {
  if (ms.empty()) throw ConfigError("matrix product of an empty list");
  const std::size_t n = ms.front().dim();
  for (const auto& m : ms) {
    if (m.dim() != n) {
      throw DimensionError("matrix product: dimensions " + std::to_string(n) + " and " + std::to_string(m.dim()));
    }
    if (!m.all_finite()) throw InputError("matrix product: non-finite entry");
  }
  Eigen::MatrixXd p = ms.front().view();
  for (std::size_t i = 1; i < ms.size(); ++i) p = p * ms[i].view();
  return p;
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, int e) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < e; ++i) out = out * m;
  return out;
}

SymmetricMatrix rs_factor(std::size_t dim, std::uint64_t seed) {
  return draw(EnsembleSpec{RealSymmetric{}, dim, EntryDistribution::StandardNormal, seed});
}

InequalityCheck holder_tuple(std::size_t t, std::size_t dim, std::uint64_t seed) {
  const std::size_t factors = 2 + t % 3;
  const std::vector<ExponentVector> exps = holder_exponents(factors);
  const ExponentVector& e = exps[(t / 3) % exps.size()];
  const std::uint64_t tuple_seed = derive_seed(seed, t);
  std::vector<SymmetricMatrix> ms;
  ms.reserve(factors);
  for (std::size_t i = 0; i < factors; ++i) ms.push_back(rs_factor(dim, derive_seed(tuple_seed, i)));
  return holder_trace_check(ms, e);
}

HolderSweepReport summarize(const std::vector<InequalityCheck>& checks) {
  HolderSweepReport r;
  r.tuples = checks.size();
  for (const auto& c : checks) {
    if (!c.holds) ++r.violations;
    if (c.rhs > 0.0) r.max_ratio = std::max(r.max_ratio, c.lhs / c.rhs);
  }
  return r;
}

void validate_pattern(const MixedPattern& pattern, int& total_a, int& total_b) {
  total_a = 0;
  total_b = 0;
  for (const auto& [i, j] : pattern) {
    if (i < 0 || j < 0 || i % 2 != 0 || j % 2 != 0) {
      throw ConfigError("mixed trace bound: exponents must be even and non-negative");
    }
    total_a += i;
    total_b += j;
  }
  if (total_a + total_b == 0) throw ConfigError("mixed trace bound: total exponent must be positive");
}

double pattern_trace(const SymmetricMatrix& a, const SymmetricMatrix& b, const MixedPattern& pattern) {
  const Eigen::MatrixXd av = a.view();
  const Eigen::MatrixXd bv = b.view();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(av.rows(), av.cols());
  for (const auto& [i, j] : pattern) p = p * matrix_power(av, i) * matrix_power(bv, j);
  return p.trace();
}

// Tr(X^k) from the spectrum, which stays accurate for large powers.
double trace_power(const SymmetricMatrix& m, int k) {
  double s = 0.0;
  for (double x : eigenvalues(m).raw) s += std::pow(x, k);
  return s;
}

// x^{num/den}, with 0^0 == 1.
double fractional_power(double x, int num, int den) {
  if (num == 0) return 1.0;
  return std::pow(x, static_cast<double>(num) / static_cast<double>(den));
}

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Estimate estimate(const std::vector<double>& xs) {
  Estimate e;
  if (xs.empty()) return e;
  double s = 0.0;
  for (double x : xs) s += x;
  e.mean = s / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

double moment_of(const SymmetricMatrix& m, int order) {
  const int orders[] = {order};
  return empirical_moments(eigenvalues(m), orders).front();
}

std::vector<BigInt> to_integer_entries(const SymmetricMatrix& m) {
  std::vector<BigInt> out;
  out.reserve(m.dim() * m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v != std::trunc(v) || std::abs(v) > 9.0e15) {
        throw InputError("exact_trace_power: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") is not an integer");
      }
      out.emplace_back(static_cast<std::int64_t>(v));
    }
  }
  return out;
}

}  // namespace

SingularSpectrum singular_values(const SymmetricMatrix& m) {
  SingularSpectrum s;
  s.values = eigenvalues(m).raw;
  for (double& v : s.values) v = std::abs(v);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

SingularSpectrum singular_values(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw InputError("singular_values: non-finite entry");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& v = svd.singularValues();
  SingularSpectrum s;
  s.values.assign(v.data(), v.data() + v.size());
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

double schatten_norm(const SingularSpectrum& s, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("schatten_norm: p must be a positive finite number");
  double sum = 0.0;
  for (double v : s.values) sum += std::pow(v, p);
  return std::pow(sum, 1.0 / p);
}

double schatten_norm(const SymmetricMatrix& m, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("schatten_norm: p must be a positive finite number");
  return schatten_norm(singular_values(m), p);
}

ExponentVector::ExponentVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw ConfigError("ExponentVector: empty");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("ExponentVector: exponents must be positive and finite");
    sum += 1.0 / x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ConfigError("ExponentVector: reciprocals sum to " + std::to_string(sum) + ", not 1");
  }
}

InequalityCheck holder_trace_check(std::span<const SymmetricMatrix> ms, const ExponentVector& e) {
  if (ms.size() != e.size()) {
    throw DimensionError("holder_trace_check: " + std::to_string(ms.size()) + " matrices for " +
                         std::to_string(e.size()) + " exponents");
  }
  InequalityCheck c;
  c.lhs = std::abs(product(ms).trace());
  c.rhs = 1.0;
  for (std::size_t i = 0; i < ms.size(); ++i) c.rhs *= schatten_norm(ms[i], e.values()[i]);
  c.holds = within_slack(c.lhs, c.rhs);
  return c;
}

std::vector<ExponentVector> holder_exponents(std::size_t factors) {
  switch (factors) {
    case 2:
      return {ExponentVector({2.0, 2.0}), ExponentVector({3.0, 1.5}), ExponentVector({4.0, 4.0 / 3.0})};
    case 3:
      return {ExponentVector({3.0, 3.0, 3.0}), ExponentVector({2.0, 4.0, 4.0}), ExponentVector({6.0, 3.0, 2.0})};
    case 4:
      return {ExponentVector({4.0, 4.0, 4.0, 4.0}), ExponentVector({2.0, 6.0, 6.0, 6.0}),
              ExponentVector({8.0, 8.0, 4.0, 2.0})};
    default:
      throw ConfigError("holder_exponents: factor count must be 2, 3 or 4");
  }
}

HolderSweepReport holder_sweep(std::size_t tuples, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ConfigError("holder_sweep: dim must be >= 1");
  return summarize(run_indexed<InequalityCheck>(tuples, [&](std::size_t t) { return holder_tuple(t, dim, seed); }));
}

HolderSweepReport holder_sweep_serial(std::size_t tuples, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ConfigError("holder_sweep: dim must be >= 1");
  std::vector<InequalityCheck> checks;
  checks.reserve(tuples);
  for (std::size_t t = 0; t < tuples; ++t) checks.push_back(holder_tuple(t, dim, seed));
  return summarize(checks);
}

InequalityCheck singular_product_bound_check(std::span<const SymmetricMatrix> ms, double p) {
  if (!(p > 0.0)) throw ConfigError("singular_product_bound_check: p must be positive");
  const SingularSpectrum prod = singular_values(product(ms));
  std::vector<SingularSpectrum> factors;
  for (const auto& m : ms) factors.push_back(singular_values(m));
  InequalityCheck c;
  for (double v : prod.values) c.lhs += std::pow(v, p);
  for (std::size_t i = 0; i < prod.values.size(); ++i) {
    double term = 1.0;
    for (const auto& f : factors) term *= std::pow(f.values[i], p);
    c.rhs += term;
  }
  c.holds = within_slack(c.lhs, c.rhs);
  return c;
}

InequalityCheck mixed_trace_bound_check(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                        const MixedPattern& pattern) {
  int total_a = 0;
  int total_b = 0;
  validate_pattern(pattern, total_a, total_b);
  if (a.dim() != b.dim()) {
    throw DimensionError("mixed_trace_bound_check: dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  }
  const int k = total_a + total_b;
  InequalityCheck c;
  c.lhs = pattern_trace(a, b, pattern);
  c.rhs = fractional_power(trace_power(a, k), total_a, k) * fractional_power(trace_power(b, k), total_b, k);
  c.holds = within_slack(c.lhs, c.rhs);
  return c;
}

InequalityCheck mixed_trace_bound_average(const EnsembleSpec& a_spec, const EnsembleSpec& b_spec,
                                          const MixedPattern& pattern, std::size_t trials, std::uint64_t seed) {
  int total_a = 0;
  int total_b = 0;
  validate_pattern(pattern, total_a, total_b);
  if (trials < 1) throw ConfigError("mixed_trace_bound_average: trials must be >= 1");
  if (a_spec.dim != b_spec.dim) throw DimensionError("mixed_trace_bound_average: spec dimensions differ");
  const int k = total_a + total_b;
  struct Sample {
    double mixed = 0.0, ta = 0.0, tb = 0.0;
  };
  const auto samples = run_indexed<Sample>(trials, [&](std::size_t t) {
    const std::uint64_t s = derive_seed(seed, t);
    const SymmetricMatrix a = draw(a_spec.with_seed(derive_seed(s, 0)));
    const SymmetricMatrix b = draw(b_spec.with_seed(derive_seed(s, 1)));
    return Sample{pattern_trace(a, b, pattern), trace_power(a, k), trace_power(b, k)};
  });
  double mixed = 0.0, ta = 0.0, tb = 0.0;
  for (const auto& x : samples) {
    mixed += x.mixed;
    ta += x.ta;
    tb += x.tb;
  }
  const auto n = static_cast<double>(trials);
  InequalityCheck c;
  c.lhs = mixed / n;
  c.rhs = fractional_power(ta / n, total_a, k) * fractional_power(tb / n, total_b, k);
  c.holds = within_slack(c.lhs, c.rhs);
  return c;
}

SandwichReport sandwich_bound_check(const EnsembleSpec& a_spec, const EnsembleSpec& b0_spec, int order,
                                    std::size_t trials, std::uint64_t seed, bool share_draw) {
  if (order < 2 || order % 2 != 0) throw ConfigError("sandwich_bound_check: order must be even and >= 2");
  if (trials < 1) throw ConfigError("sandwich_bound_check: trials must be >= 1");
  if (a_spec.dim != b0_spec.dim) throw DimensionError("sandwich_bound_check: spec dimensions differ");
  a_spec.validate();
  b0_spec.validate();
  struct Sample {
    double a = 0.0, b = 0.0, d = 0.0;
  };
  const auto samples = run_indexed<Sample>(trials, [&](std::size_t t) {
    const std::uint64_t s = derive_seed(seed, t);
    const SymmetricMatrix a = draw(a_spec.with_seed(derive_seed(s, 0)));
    const SymmetricMatrix b0 = share_draw ? a : draw(b0_spec.with_seed(derive_seed(s, 1)));
    const SymmetricMatrix bs[] = {b0};
    const SymmetricMatrix d = build_disco(a, bs);
    return Sample{moment_of(a, order), moment_of(b0, order), moment_of(d, order)};
  });
  std::vector<double> xa, xb, xd;
  for (const auto& x : samples) {
    xa.push_back(x.a);
    xb.push_back(x.b);
    xd.push_back(x.d);
  }
  const Estimate ea = estimate(xa), eb = estimate(xb), ed = estimate(xd);
  SandwichReport r;
  r.order = order;
  r.dim = a_spec.dim;
  r.trials = trials;
  r.m_a = ea.mean;
  r.se_a = ea.stderr_;
  r.m_b = eb.mean;
  r.se_b = eb.stderr_;
  r.m_d = ed.mean;
  r.se_d = ed.stderr_;
  const double lo_factor = std::pow(2.0, 1.0 - order / 2.0);
  const double hi_factor = std::pow(2.0, order / 2.0 - 1.0);
  const Estimate& emin = ea.mean <= eb.mean ? ea : eb;
  const Estimate& emax = ea.mean <= eb.mean ? eb : ea;
  r.lower = lo_factor * emin.mean;
  r.upper = hi_factor * emax.mean;
  const double lo_margin = 3.0 * std::hypot(ed.stderr_, lo_factor * emin.stderr_);
  const double hi_margin = 3.0 * std::hypot(ed.stderr_, hi_factor * emax.stderr_);
  r.holds = r.m_d + lo_margin >= r.lower && r.m_d - hi_margin <= r.upper;
  return r;
}

BigInt exact_trace_power(const SymmetricMatrix& m, int power) {
  if (power < 0) throw ConfigError("exact_trace_power: negative power");
  const std::size_t n = m.dim();
  const std::vector<BigInt> base = to_integer_entries(m);
  std::vector<BigInt> acc(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) acc[i * n + i] = 1;
  for (int p = 0; p < power; ++p) {
    std::vector<BigInt> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (acc[i * n + k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += acc[i * n + k] * base[k * n + j];
      }
    }
    acc = std::move(next);
  }
  BigInt trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += acc[i * n + i];
  return trace;
}

CounterexampleRecord conjecture_counterexample() {
  CounterexampleRecord r;
  const std::size_t dim = 2 * r.copies;
  const SymmetricMatrix a = draw(EnsembleSpec{RepeatedBlock{counterexample_block_a()}, dim});
  const SymmetricMatrix b = draw(EnsembleSpec{RepeatedBlock{counterexample_block_b()}, dim});
  r.trace_a4 = exact_trace_power(a, 4);
  r.trace_b4 = exact_trace_power(b, 4);
  const BigInt sum = exact_trace_power(a + b, 4) + exact_trace_power(a - b, 4);
  if (sum % 8 != 0) throw InputError("conjecture_counterexample: mixed trace sum is not divisible by 8");
  r.mixed = sum / 8;
  return r;
}

std::vector<ConjectureRow> conjecture_moment_scan(const EnsembleSpec& a_spec, const EnsembleSpec& b_spec,
                                                  std::span<const int> orders, std::size_t trials,
                                                  std::uint64_t seed) {
  if (trials < 1) throw ConfigError("conjecture_moment_scan: trials must be >= 1");
  if (a_spec.dim != b_spec.dim) throw DimensionError("conjecture_moment_scan: spec dimensions differ");
  for (int o : orders) {
    if (o < 1) throw ConfigError("conjecture_moment_scan: orders must be >= 1");
  }
  a_spec.validate();
  b_spec.validate();
  struct Sample {
    std::vector<double> a, d, b;
  };
  const auto samples = run_indexed<Sample>(trials, [&](std::size_t t) {
    const std::uint64_t s = derive_seed(seed, t);
    const SymmetricMatrix a = draw(a_spec.with_seed(derive_seed(s, 0)));
    const SymmetricMatrix b = draw(b_spec.with_seed(derive_seed(s, 1)));
    const SymmetricMatrix bs[] = {b};
    const SymmetricMatrix d = build_disco(a, bs);
    return Sample{empirical_moments(eigenvalues(a), orders), empirical_moments(eigenvalues(d), orders),
                  empirical_moments(eigenvalues(b), orders)};
  });
  std::vector<ConjectureRow> rows;
  for (std::size_t o = 0; o < orders.size(); ++o) {
    std::vector<double> xa, xd, xb;
    for (const auto& x : samples) {
      xa.push_back(x.a[o]);
      xd.push_back(x.d[o]);
      xb.push_back(x.b[o]);
    }
    const Estimate ea = estimate(xa), ed = estimate(xd), eb = estimate(xb);
    rows.push_back({orders[o], ea.mean, ea.stderr_, ed.mean, ed.stderr_, eb.mean, eb.stderr_});
  }
  return rows;
}

}  // namespace disco
