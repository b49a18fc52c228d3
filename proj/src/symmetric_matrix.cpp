#include "disco/symmetric_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "disco/errors.hpp"

namespace disco {

namespace {

bool same_bits(double a, double b) noexcept {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void require_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw DimensionError("SymmetricMatrix: dimension must be >= 1");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionError("SymmetricMatrix: expected " + std::to_string(dim_ * dim_) +
                         " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (!same_bits(entries_[i * dim_ + j], entries_[j * dim_ + i])) {
        throw InputError("SymmetricMatrix: entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") differs from its transpose");
      }
    }
  }
}

SymmetricMatrix SymmetricMatrix::zeros(std::size_t dim) {
  if (dim == 0) throw DimensionError("SymmetricMatrix: dimension must be >= 1");
  return SymmetricMatrix(Unchecked{}, dim, std::vector<double>(dim * dim, 0.0));
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
  SymmetricMatrix m = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> diag) {
  SymmetricMatrix m = zeros(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.entries_[i * diag.size() + i] = diag[i];
  return m;
}

SymmetricMatrix SymmetricMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionError("SymmetricMatrix::from_rows: matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return SymmetricMatrix(n, std::move(flat));
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

double SymmetricMatrix::max_abs_entry() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

bool SymmetricMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

SymmetricMatrix SymmetricMatrix::block(std::size_t row0, std::size_t col0,
                                       std::size_t size) const {
  if (size == 0 || row0 + size > dim_ || col0 + size > dim_) {
    throw DimensionError("SymmetricMatrix::block: block out of range");
  }
  std::vector<double> flat(size * size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) flat[i * size + j] = (*this)(row0 + i, col0 + j);
  }
  return SymmetricMatrix(size, std::move(flat));
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "operator+");
  std::vector<double> out(a.entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.entries_[i] + b.entries_[i];
  return SymmetricMatrix(SymmetricMatrix::Unchecked{}, a.dim_, std::move(out));
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "operator-");
  std::vector<double> out(a.entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.entries_[i] - b.entries_[i];
  return SymmetricMatrix(SymmetricMatrix::Unchecked{}, a.dim_, std::move(out));
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
  std::vector<double> out(a.entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.entries_[i];
  return SymmetricMatrix(SymmetricMatrix::Unchecked{}, a.dim_, std::move(out));
}

bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (!same_bits(a.entries_[i], b.entries_[i])) return false;
  }
  return true;
}

SymmetricAssembler::SymmetricAssembler(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {
  if (dim == 0) throw DimensionError("SymmetricAssembler: dimension must be >= 1");
}

void SymmetricAssembler::place(const SymmetricMatrix& block, std::size_t row0,
                               std::size_t col0) noexcept {
  const std::size_t n = block.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) set(row0 + i, col0 + j, block(i, j));
  }
}

SymmetricMatrix SymmetricAssembler::finish() && {
  return SymmetricMatrix(SymmetricMatrix::Unchecked{}, dim_, std::move(entries_));
}

}  // namespace disco
