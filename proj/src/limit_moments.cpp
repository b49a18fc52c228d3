#include "disco/limit_moments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "disco/errors.hpp"

namespace disco {

namespace {

constexpr int kHardCap = 24;

// (n-1)!! for n = 0..32 in 64 bits; index by n (even n only are used).
constexpr std::array<std::uint64_t, 33> kPairings = [] {
  std::array<std::uint64_t, 33> t{};
  for (std::size_t n = 0; n < t.size(); ++n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = n - 1; n > 0 && i > 1; i -= 2) r *= i;
    t[n] = n % 2 == 0 ? r : 0;
  }
  return t;
}();

// Noncrossing matchings are generated by pairing the first free point of a
// segment with every point that leaves an even count on both sides.
void emit_segment(std::vector<int>& partner, std::vector<std::pair<std::size_t, std::size_t>>& pending,
                  std::vector<std::vector<int>>& out) {
  if (pending.empty()) {
    out.push_back(partner);
    return;
  }
  const auto [lo, hi] = pending.back();
  pending.pop_back();
  if (lo >= hi) {
    emit_segment(partner, pending, out);
  } else {
    for (std::size_t j = lo + 1; j < hi; j += 2) {
      partner[lo] = static_cast<int>(j);
      partner[j] = static_cast<int>(lo);
      pending.emplace_back(lo + 1, j);
      pending.emplace_back(j + 1, hi);
      emit_segment(partner, pending, out);
      pending.pop_back();
      pending.pop_back();
    }
  }
  pending.emplace_back(lo, hi);
}

// Per matching, the arcs of each region. Depends only on the number of b's.
struct RegionTable {
  std::size_t points = 0;
  std::vector<std::vector<std::vector<int>>> regions;  // [matching][region] -> arcs
};

RegionTable make_region_table(std::size_t points) {
  RegionTable t;
  t.points = points;
  for (const auto& partner : noncrossing_matchings(points)) t.regions.push_back(matching_regions(partner));
  return t;
}

std::uint64_t count_legal(std::uint32_t mask, std::size_t n, const RegionTable& table) {
  const std::size_t nb = static_cast<std::size_t>(std::popcount(mask));
  const std::size_t na = n - nb;
  if (nb % 2 != 0 || na % 2 != 0) return 0;
  if (nb == 0) return kPairings[na];

  std::array<int, PairingWord::kMaxLength> pos{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) pos[k++] = static_cast<int>(i);
  }
  std::array<int, PairingWord::kMaxLength> gap{};
  for (std::size_t t = 0; t + 1 < nb; ++t) gap[t] = pos[t + 1] - pos[t] - 1;
  gap[nb - 1] = pos[0] + static_cast<int>(n) - pos[nb - 1] - 1;

  std::uint64_t total = 0;
  for (const auto& regions : table.regions) {
    std::uint64_t ways = 1;
    for (const auto& arcs : regions) {
      int a_in_region = 0;
      for (int arc : arcs) a_in_region += gap[static_cast<std::size_t>(arc)];
      if (a_in_region % 2 != 0) {
        ways = 0;
        break;
      }
      ways *= kPairings[static_cast<std::size_t>(a_in_region)];
    }
    total += ways;
  }
  return total;
}

std::uint32_t rotate(std::uint32_t mask, std::size_t r, std::size_t n) {
  if (r == 0) return mask;
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1U);
  return ((mask >> r) | (mask << (n - r))) & full;
}

void check_order(int order, const ExactOptions& options) {
  if (order < 0) throw ConfigError("exact_moment: order must be non-negative");
  if (options.cap > kHardCap) {
    throw ConfigError("exact_moment: cap " + std::to_string(options.cap) + " exceeds the supported maximum " +
                      std::to_string(kHardCap));
  }
  if (order > options.cap) {
    throw ConfigError("exact_moment: order " + std::to_string(order) + " exceeds the configured cap " +
                      std::to_string(options.cap));
  }
}

std::vector<RegionTable> region_tables_up_to(std::size_t n) {
  std::vector<RegionTable> tables;
  for (std::size_t nb = 0; nb <= n; nb += 2) tables.push_back(make_region_table(nb));
  return tables;
}

Rational power_of_two_inverse(int e) {
  BigInt den = 1;
  den <<= e;
  return Rational(BigInt(1), den);
}

void require_even(int a_count, int b_count, const char* what) {
  if (a_count < 0 || b_count < 0 || a_count % 2 != 0 || b_count % 2 != 0) {
    throw ConfigError(std::string(what) + ": I and J must be non-negative and even");
  }
  if (a_count + b_count == 0) throw ConfigError(std::string(what) + ": I + J must be positive");
}

}  // namespace

PairingWord::PairingWord(std::string_view letters) : length_(letters.size()) {
  if (letters.size() > kMaxLength) throw ConfigError("PairingWord: longer than 32 letters");
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == 'b') {
      b_mask_ |= 1U << i;
    } else if (letters[i] != 'a') {
      throw ConfigError("PairingWord: letters must be 'a' or 'b'");
    }
  }
}

PairingWord PairingWord::from_mask(std::size_t length, std::uint32_t b_mask) {
  if (length > kMaxLength) throw ConfigError("PairingWord: longer than 32 letters");
  if (length < kMaxLength && (b_mask >> length) != 0) throw ConfigError("PairingWord: mask has bits past the length");
  return PairingWord(length, b_mask);
}

std::size_t PairingWord::count_b() const noexcept { return static_cast<std::size_t>(std::popcount(b_mask_)); }

std::string PairingWord::letters() const {
  std::string s(length_, 'a');
  for (std::size_t i = 0; i < length_; ++i) {
    if ((b_mask_ >> i) & 1U) s[i] = 'b';
  }
  return s;
}

PairingWord PairingWord::canonical_rotation() const {
  std::uint32_t best = b_mask_;
  for (std::size_t r = 1; r < length_; ++r) best = std::min(best, rotate(b_mask_, r, length_));
  return PairingWord(length_, best);
}

std::vector<std::vector<int>> noncrossing_matchings(std::size_t points) {
  if (points % 2 != 0) throw ConfigError("noncrossing_matchings: odd number of points");
  std::vector<std::vector<int>> out;
  std::vector<int> partner(points, -1);
  std::vector<std::pair<std::size_t, std::size_t>> pending{{0, points}};
  emit_segment(partner, pending, out);
  return out;
}

std::vector<std::vector<int>> matching_regions(const std::vector<int>& partner) {
  const std::size_t n = partner.size();
  if (n == 0) return {{}};
  std::vector<std::vector<int>> regions;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> arcs;
    std::size_t arc = start;
    while (!seen[arc]) {
      seen[arc] = true;
      arcs.push_back(static_cast<int>(arc));
      arc = static_cast<std::size_t>(partner[(arc + 1) % n]);
    }
    regions.push_back(std::move(arcs));
  }
  return regions;
}

std::uint64_t legal_pairing_count(const PairingWord& word) {
  const std::size_t nb = word.count_b();
  if (nb % 2 != 0 || word.count_a() % 2 != 0) return 0;
  return count_legal(word.b_mask(), word.size(), make_region_table(nb));
}

Rational class_word_sum(int a_count, int b_count) {
  require_even(a_count, b_count, "class_word_sum");
  const auto n = static_cast<std::size_t>(a_count + b_count);
  if (n > static_cast<std::size_t>(kHardCap)) throw ConfigError("class_word_sum: word length above the supported maximum");
  const RegionTable table = make_region_table(static_cast<std::size_t>(b_count));
  BigInt sum = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) == b_count) sum += count_legal(mask, n, table);
  }
  return Rational(sum) * power_of_two_inverse(static_cast<int>(n / 2));
}

ExactMoment exact_moment(int order, const ExactOptions& options) {
  check_order(order, options);
  if (order % 2 != 0) return {order, Rational(0)};
  if (order == 0) return {0, Rational(1)};
  const auto n = static_cast<std::size_t>(order);

  struct Representative {
    std::uint32_t mask;
    std::uint32_t orbit_size;
  };
  std::vector<Representative> reps;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    std::uint32_t period = static_cast<std::uint32_t>(n);
    bool canonical = true;
    for (std::size_t r = 1; r < n; ++r) {
      const std::uint32_t rot = rotate(mask, r, n);
      if (rot < mask) {
        canonical = false;
        break;
      }
      if (rot == mask && period == n) period = static_cast<std::uint32_t>(r);
    }
    if (canonical) reps.push_back({mask, period});
  }

  const std::vector<RegionTable> tables = region_tables_up_to(n);
  std::vector<std::uint64_t> counts(reps.size());
  const auto m = static_cast<std::ptrdiff_t>(reps.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const auto& rep = reps[static_cast<std::size_t>(i)];
    const auto nb = static_cast<std::size_t>(std::popcount(rep.mask));
    counts[static_cast<std::size_t>(i)] = count_legal(rep.mask, n, tables[nb / 2]);
  }

  BigInt sum = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) sum += BigInt(counts[i]) * reps[i].orbit_size;
  return {order, Rational(sum) * power_of_two_inverse(order / 2)};
}

ExactMoment exact_moment_serial(int order, const ExactOptions& options) {
  check_order(order, options);
  if (order % 2 != 0) return {order, Rational(0)};
  if (order == 0) return {0, Rational(1)};
  const auto n = static_cast<std::size_t>(order);
  const std::vector<RegionTable> tables = region_tables_up_to(n);
  BigInt sum = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const auto nb = static_cast<std::size_t>(std::popcount(mask));
    if (nb % 2 != 0) continue;
    sum += count_legal(mask, n, tables[nb / 2]);
  }
  return {order, Rational(sum) * power_of_two_inverse(order / 2)};
}

Rational canonical_class_contribution(int a_count, int b_count) {
  require_even(a_count, b_count, "canonical_class_contribution");
  return Rational(double_factorial(a_count - 1)) * Rational(BigInt(2), BigInt(b_count + 2)) *
         Rational(binomial(b_count, b_count / 2));
}

std::vector<PlaneTreeDual> plane_tree_duals(int beta) {
  if (beta < 1) throw ConfigError("plane_tree_duals: beta must be >= 1");
  const auto n = static_cast<std::size_t>(2 * beta);
  auto rotated = [n](const std::vector<int>& partner, std::size_t r) {
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[(i + r) % n] = static_cast<int>((static_cast<std::size_t>(partner[i]) + r) % n);
    }
    return out;
  };
  std::vector<PlaneTreeDual> out;
  for (const auto& partner : noncrossing_matchings(n)) {
    bool canonical = true;
    int symmetry = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::vector<int> rot = rotated(partner, r);
      if (rot < partner) {
        canonical = false;
        break;
      }
      if (rot == partner) ++symmetry;
    }
    if (!canonical) continue;
    PlaneTreeDual tree;
    tree.partner = partner;
    tree.rotational_symmetry = symmetry;
    for (const auto& arcs : matching_regions(partner)) tree.degrees.push_back(static_cast<int>(arcs.size()));
    tree.vertex_count = tree.degrees.size();
    out.push_back(std::move(tree));
  }
  return out;
}

Rational p_alpha_beta(int alpha, int beta) {
  if (alpha < 0 || beta < 0) throw ConfigError("p_alpha_beta: arguments must be non-negative");
  if (beta == 0) {
    if (alpha == 0) throw ConfigError("p_alpha_beta: P(0, 0) is undefined");
    return Rational(double_factorial(2 * alpha - 1), BigInt(2 * alpha));
  }
  // Ways to put 2*gamma red points on the d arcs of a region and pair them.
  auto region_series = [alpha](int d) {
    std::vector<BigInt> f(static_cast<std::size_t>(alpha) + 1);
    for (int g = 0; g <= alpha; ++g) f[static_cast<std::size_t>(g)] = double_factorial(2 * g - 1) * binomial(2 * g + d - 1, d - 1);
    return f;
  };
  Rational total = 0;
  for (const PlaneTreeDual& tree : plane_tree_duals(beta)) {
    std::vector<BigInt> acc(static_cast<std::size_t>(alpha) + 1, 0);
    acc[0] = 1;
    for (int d : tree.degrees) {
      const std::vector<BigInt> f = region_series(d);
      std::vector<BigInt> next(acc.size(), 0);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] == 0) continue;
        for (std::size_t j = 0; i + j < acc.size(); ++j) next[i + j] += acc[i] * f[j];
      }
      acc = std::move(next);
    }
    total += Rational(acc.back(), BigInt(tree.rotational_symmetry));
  }
  return total;
}

Rational class_contribution_via_trees(int a_count, int b_count) {
  require_even(a_count, b_count, "class_contribution_via_trees");
  const int n = a_count + b_count;
  return Rational(n) * p_alpha_beta(a_count / 2, b_count / 2) * power_of_two_inverse(n / 2);
}

BigInt gaussian_moment(int order) {
  if (order < 0) throw ConfigError("gaussian_moment: negative order");
  if (order % 2 != 0) return 0;
  return double_factorial(order - 1);
}

BigInt semicircle_moment(int order) {
  if (order < 0) throw ConfigError("semicircle_moment: negative order");
  if (order % 2 != 0) return 0;
  return catalan(order / 2);
}

BoundRecord bound_suite(int order, const ExactOptions& options) {
  if (order < 2 || order % 2 != 0) throw ConfigError("bound_suite: order must be even and >= 2");
  const int k = order / 2;
  BoundRecord r;
  r.order = order;
  r.moment = exact_moment(order, options).value;
  r.semicircle = semicircle_moment(order);
  r.gaussian = gaussian_moment(order);
  r.refined_upper = Rational(r.gaussian) * (Rational(1) + Rational(BigInt(1), factorial(k + 1)) - power_of_two_inverse(k));
  r.ratio = r.moment / Rational(r.gaussian);
  r.lower_holds = Rational(r.semicircle) <= r.moment;
  r.refined_upper_holds = r.moment <= r.refined_upper;
  r.upper_holds = r.refined_upper <= Rational(r.gaussian);
  // M^{1/2k} > sqrt(k)/2  <=>  M * 4^k > k^k
  BigInt four_k = 1;
  four_k <<= 2 * k;
  BigInt k_k = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k));
  r.root_holds = r.moment * Rational(four_k) > Rational(k_k);
  r.root = std::pow(to_double(r.moment), 1.0 / order);
  r.root_bound = std::sqrt(static_cast<double>(k)) / 2.0;
  return r;
}

bool BoundSuiteReport::all_hold() const noexcept {
  return ratio_strictly_decreasing &&
         std::all_of(rows.begin(), rows.end(), [](const BoundRecord& r) { return r.all_hold(); });
}

BoundSuiteReport bound_suite_range(int max_order, const ExactOptions& options) {
  BoundSuiteReport report;
  for (int order = 2; order <= max_order; order += 2) report.rows.push_back(bound_suite(order, options));
  report.ratio_strictly_decreasing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (!(report.rows[i].ratio < report.rows[i - 1].ratio)) report.ratio_strictly_decreasing = false;
  }
  return report;
}

std::vector<ClassTableRow> class_table(int max_order) {
  std::vector<ClassTableRow> rows;
  for (int order = 4; order <= max_order; order += 2) {
    for (int a = 2; a <= order - 2; a += 2) {
      const int b = order - a;
      const Rational weighted = Rational(order) * p_alpha_beta(a / 2, b / 2);
      rows.push_back({order, a, b, weighted, weighted * power_of_two_inverse(order / 2)});
    }
  }
  return rows;
}

}  // namespace disco
