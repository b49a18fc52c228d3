#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace disco {

/// Dense real symmetric matrix, row-major flat storage.
///
/// Symmetry is checked bit-for-bit when a matrix is built from raw entries, so
/// every instance in circulation satisfies entries[i][j] == entries[j][i]
/// exactly. The factory `generate` fills the upper triangle from a callable and
/// mirrors it, which is symmetric by construction.
class SymmetricMatrix {
 public:
  /// Throws DimensionError if dim == 0 or entries.size() != dim*dim,
  /// and InputError if the entries are not exactly symmetric.
  SymmetricMatrix(std::size_t dim, std::vector<double> entries);

  static SymmetricMatrix zeros(std::size_t dim);
  static SymmetricMatrix identity(std::size_t dim);
  static SymmetricMatrix diagonal(std::span<const double> diag);
  static SymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  /// Builds a matrix from f(i, j), which is evaluated only for i <= j.
  template <typename F>
  static SymmetricMatrix generate(std::size_t dim, F&& f) {
    SymmetricMatrix m = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        const double v = f(i, j);
        m.entries_[i * dim + j] = v;
        m.entries_[j * dim + i] = v;
      }
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

  /// Read-only Eigen view. Row/column-major does not matter for a symmetric matrix.
  Eigen::Map<const Eigen::MatrixXd> view() const noexcept {
    return {entries_.data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_)};
  }

  double trace() const noexcept;
  double max_abs_entry() const noexcept;
  bool all_finite() const noexcept;

  /// Copy of the dim x dim block whose top-left corner is (row0, col0).
  /// The block must lie on the diagonal or be symmetric itself.
  SymmetricMatrix block(std::size_t row0, std::size_t col0, std::size_t size) const;

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend SymmetricMatrix operator*(double s, const SymmetricMatrix& a);

  /// Bitwise equality of every entry.
  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) noexcept;

 private:
  struct Unchecked {};
  SymmetricMatrix(Unchecked, std::size_t dim, std::vector<double> entries) noexcept
      : dim_(dim), entries_(std::move(entries)) {}

  friend class SymmetricAssembler;

  std::size_t dim_;
  std::vector<double> entries_;
};

/// Write access for code that assembles a matrix block by block (disco,
/// Kronecker). Every write goes to (i, j) and (j, i) together.
class SymmetricAssembler {
 public:
  explicit SymmetricAssembler(std::size_t dim);

  void set(std::size_t i, std::size_t j, double v) noexcept {
    entries_[i * dim_ + j] = v;
    entries_[j * dim_ + i] = v;
  }
  /// Places `block` with its top-left corner at (row0, col0) and mirrors it
  /// to (col0, row0). For off-diagonal placement the block must be symmetric.
  void place(const SymmetricMatrix& block, std::size_t row0, std::size_t col0) noexcept;

  std::size_t dim() const noexcept { return dim_; }
  SymmetricMatrix finish() &&;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

}  // namespace disco
