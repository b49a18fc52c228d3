#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "disco/ensembles.hpp"
#include "disco/rational.hpp"
#include "disco/symmetric_matrix.hpp"

namespace disco {

/// Singular values, descending.
struct SingularSpectrum {
  std::vector<double> values;
};

/// For symmetric input these are the sorted absolute eigenvalues.
SingularSpectrum singular_values(const SymmetricMatrix& m);
/// General square matrix (products of symmetric matrices are not symmetric).
SingularSpectrum singular_values(const Eigen::MatrixXd& m);

/// (sum sigma_i^p)^{1/p}. Throws ConfigError for p <= 0, InputError on
/// non-finite entries.
double schatten_norm(const SymmetricMatrix& m, double p);
double schatten_norm(const SingularSpectrum& s, double p);

/// Hoelder exponents p_1..p_k with sum 1/p_i == 1 (within 1e-12).
class ExponentVector {
 public:
  explicit ExponentVector(std::vector<double> p);
  std::span<const double> values() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  std::vector<double> p_;
};

/// lhs <= rhs * (1 + slack) decides `holds`.
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kRelativeSlack = 1e-10;

/// |Tr(prod ms)| against prod ||ms_i||_{p_i}.
InequalityCheck holder_trace_check(std::span<const SymmetricMatrix> ms, const ExponentVector& e);

/// Three exponent vectors for each factor count 2, 3 and 4.
std::vector<ExponentVector> holder_exponents(std::size_t factors);

struct HolderSweepReport {
  std::size_t tuples = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  ///< largest lhs / rhs seen
};

/// Tuple t uses 2 + t % 3 Gaussian RS factors of dimension `dim` and exponent
/// vector (t / 3) % 3 for that factor count; factor i draws from
/// derive_seed(derive_seed(seed, t), i). Tuples run under OpenMP.
HolderSweepReport holder_sweep(std::size_t tuples, std::size_t dim, std::uint64_t seed);
HolderSweepReport holder_sweep_serial(std::size_t tuples, std::size_t dim, std::uint64_t seed);

/// sum_i sigma_i^p(X_1...X_k) <= sum_i prod_j sigma_i^p(X_j).
InequalityCheck singular_product_bound_check(std::span<const SymmetricMatrix> ms, double p);

/// (I_i, J_i) exponent pairs of Tr(prod A^{I_i} B^{J_i}).
using MixedPattern = std::vector<std::pair<int, int>>;

/// Tr(prod A^{I_i} B^{J_i}) <= Tr(A^K)^{I/K} Tr(B^K)^{J/K}, K = I + J.
/// Throws ConfigError on odd or negative exponents and on K == 0.
InequalityCheck mixed_trace_bound_check(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                        const MixedPattern& pattern);

/// Expectation form: mean of the left side against mean(Tr A^K)^{I/K} mean(Tr B^K)^{J/K}.
InequalityCheck mixed_trace_bound_average(const EnsembleSpec& a_spec, const EnsembleSpec& b_spec,
                                          const MixedPattern& pattern, std::size_t trials, std::uint64_t seed);

struct SandwichReport {
  int order = 0;
  std::size_t dim = 0;  ///< dimension of A and B_0
  std::size_t trials = 0;
  double m_a = 0.0, se_a = 0.0;
  double m_b = 0.0, se_b = 0.0;
  double m_d = 0.0, se_d = 0.0;
  double lower = 0.0;  ///< 2^{1-k/2} min
  double upper = 0.0;  ///< 2^{k/2-1} max
  bool holds = false;  ///< both sides hold within 3 combined standard errors
};

/// Monte Carlo estimates of M_k(A), M_k(B_0) and M_k(D_1) with D_1 =
/// [[A, B_0], [B_0, A]]. With `share_draw` B_0 is the same matrix as A.
/// Trials run under OpenMP; trial t draws from derive_seed(seed, t).
SandwichReport sandwich_bound_check(const EnsembleSpec& a_spec, const EnsembleSpec& b0_spec, int order,
                                    std::size_t trials, std::uint64_t seed, bool share_draw = false);

/// Exact integer trace of m^power. Throws InputError when an entry is not an
/// integer.
BigInt exact_trace_power(const SymmetricMatrix& m, int power);

struct CounterexampleRecord {
  BigInt trace_a4;
  BigInt trace_b4;
  BigInt mixed;  ///< (Tr((A+B)^4) + Tr((A-B)^4)) / 8
  std::size_t copies = 10;
  /// mixed > max(trace_a4, trace_b4): the trace inequality fails.
  bool refutes() const { return mixed > trace_a4 && mixed > trace_b4; }
};

/// A and B are 10 diagonal copies of the two 2x2 integer blocks.
CounterexampleRecord conjecture_counterexample();

struct ConjectureRow {
  int order = 0;
  double m_a = 0.0, se_a = 0.0;
  double m_d = 0.0, se_d = 0.0;
  double m_b = 0.0, se_b = 0.0;
};

/// Columns (Moment, M_k(A), M_k(D_1(A, B)), M_k(B)) with D_1 = [[A, B], [B, A]].
/// A conjecture scan: nothing is asserted.
std::vector<ConjectureRow> conjecture_moment_scan(const EnsembleSpec& a_spec, const EnsembleSpec& b_spec,
                                                  std::span<const int> orders, std::size_t trials,
                                                  std::uint64_t seed);

}  // namespace disco
