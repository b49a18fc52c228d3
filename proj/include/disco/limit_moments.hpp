#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disco/rational.hpp"

// Exact limiting moments of the 1-disco of a palindromic Toeplitz matrix (A,
// letter 'a') and a Wigner matrix (B, letter 'b').
//
// M_2k = 2^{-k} * sum over binary words w of length 2k of T(w), where T(w)
// counts perfect matchings of the letters on a circle that pair like letters,
// let a-chords cross each other, and let nothing cross a b-chord. Two further
// routes are kept as cross-checks: the region/plane-tree formula P(alpha,
// beta) per class [A^I B^J], and the closed forms for the canonical words.

namespace disco {

/// Cyclic word over {a, b}; position 0 is the fixed linear representative.
class PairingWord {
 public:
  static constexpr std::size_t kMaxLength = 32;

  /// Throws ConfigError on letters other than 'a'/'b' or length > kMaxLength.
  explicit PairingWord(std::string_view letters);
  /// Word of `length` letters with 'b' wherever bit i of `b_mask` is set.
  static PairingWord from_mask(std::size_t length, std::uint32_t b_mask);

  std::size_t size() const noexcept { return length_; }
  std::uint32_t b_mask() const noexcept { return b_mask_; }
  std::size_t count_b() const noexcept;
  std::size_t count_a() const noexcept { return length_ - count_b(); }
  std::string letters() const;
  /// Lexicographically smallest rotation (by mask value).
  PairingWord canonical_rotation() const;

  friend bool operator==(const PairingWord&, const PairingWord&) = default;

 private:
  PairingWord(std::size_t length, std::uint32_t mask) : length_(length), b_mask_(mask) {}
  std::size_t length_ = 0;
  std::uint32_t b_mask_ = 0;
};

/// Perfect matching on positions 0..2k-1 as (i, j) pairs with i < j.
struct ChordDiagram {
  std::vector<std::pair<int, int>> chords;
};

/// Dual tree of a noncrossing matching of 2*beta circle points: one vertex per
/// region, one edge per chord. `degrees[s]` is the number of circle arcs on
/// the boundary of region s; `rotational_symmetry` is the number of the 2*beta
/// rotations that map the matching to itself.
struct PlaneTreeDual {
  std::size_t vertex_count = 1;
  std::vector<int> degrees;
  int rotational_symmetry = 1;
  std::vector<int> partner;  ///< representative matching, partner[i] of point i
};

/// Every noncrossing perfect matching of `points` points (even) in linear
/// order, as partner arrays. Catalan(points/2) of them.
std::vector<std::vector<int>> noncrossing_matchings(std::size_t points);

/// Region cycles of a noncrossing matching: arc t (from point t to t+1)
/// continues to arc partner[t+1]. Returns, per region, the list of its arcs.
std::vector<std::vector<int>> matching_regions(const std::vector<int>& partner);

/// T(word): number of legal pairings. Zero when either letter count is odd.
std::uint64_t legal_pairing_count(const PairingWord& word);

/// 2^{-(I+J)/2} * sum of T over every word with exactly I a's and J b's.
Rational class_word_sum(int a_count, int b_count);

struct ExactMoment {
  int order = 0;
  Rational value;
};

struct ExactOptions {
  int cap = 16;  ///< largest order accepted
};

/// Limiting moment of the given order. Odd orders are exactly 0. Words are
/// grouped by rotation class and classes are evaluated under OpenMP; the sum
/// is reduced in class order. Throws ConfigError above the cap.
ExactMoment exact_moment(int order, const ExactOptions& options = {});
/// Reference path: every word individually, single-threaded.
ExactMoment exact_moment_serial(int order, const ExactOptions& options = {});

/// (I-1)!! * 2/(J+2) * C(J, J/2), the pairing count of the canonical word a^I b^J.
Rational canonical_class_contribution(int a_count, int b_count);

/// One representative per rotation class of noncrossing matchings on 2*beta points.
std::vector<PlaneTreeDual> plane_tree_duals(int beta);

/// Rotation-weighted number of configurations of 2*alpha red and 2*beta blue
/// circle points. P(alpha, 0) = (2 alpha - 1)!! / (2 alpha).
Rational p_alpha_beta(int alpha, int beta);

/// (I+J) / 2^{(I+J)/2} * P(I/2, J/2).
Rational class_contribution_via_trees(int a_count, int b_count);

/// (2k-1)!! for order 2k, 0 for odd orders, 1 for order 0.
BigInt gaussian_moment(int order);
/// Catalan(k) for order 2k, 0 for odd orders, 1 for order 0.
BigInt semicircle_moment(int order);

/// Sandwich and growth checks on one exact moment M = M_2k.
struct BoundRecord {
  int order = 0;
  Rational moment;
  BigInt semicircle;
  BigInt gaussian;
  Rational refined_upper;  ///< G * (1 + 1/(k+1)! - 2^{-k})
  Rational ratio;          ///< M / G
  double root = 0.0;       ///< M^{1/2k}
  double root_bound = 0.0; ///< sqrt(k)/2
  bool lower_holds = false;        ///< S <= M
  bool refined_upper_holds = false;///< M <= refined_upper
  bool upper_holds = false;        ///< refined_upper <= G
  bool root_holds = false;         ///< M^{1/2k} > sqrt(k)/2, decided exactly
  bool all_hold() const noexcept { return lower_holds && refined_upper_holds && upper_holds && root_holds; }
};

BoundRecord bound_suite(int order, const ExactOptions& options = {});

struct BoundSuiteReport {
  std::vector<BoundRecord> rows;  ///< orders 2, 4, ..., max_order
  bool ratio_strictly_decreasing = false;
  bool all_hold() const noexcept;
};

BoundSuiteReport bound_suite_range(int max_order, const ExactOptions& options = {});

/// One line of the class-contribution table.
struct ClassTableRow {
  int order;
  int a_count;
  int b_count;
  Rational weighted_count;  ///< (I+J) * P(I/2, J/2)
  Rational contribution;
};

/// Rows for every even I, J >= 2 with 4 <= I+J <= max_order, by order then I.
std::vector<ClassTableRow> class_table(int max_order);

}  // namespace disco
