#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lfin {

/// An element of the prime field F_l, always kept in [0, l).
using Fl = std::uint32_t;

bool is_prime(std::uint64_t n);

inline Fl fl_add(Fl a, Fl b, Fl p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return Fl(s >= p ? s - p : s);
}
inline Fl fl_sub(Fl a, Fl b, Fl p) { return a >= b ? a - b : Fl(std::uint64_t(a) + p - b); }
inline Fl fl_neg(Fl a, Fl p) { return a == 0 ? 0 : p - a; }
inline Fl fl_mul(Fl a, Fl b, Fl p) { return Fl((std::uint64_t(a) * b) % p); }
Fl fl_inv(Fl a, Fl p);
/// Reduces an arbitrary (possibly negative) integer into F_l.
Fl fl_reduce(long long v, Fl p);

/// Dense row-major matrix over F_l.
class FlMatrix {
 public:
  FlMatrix() = default;
  FlMatrix(std::size_t rows, std::size_t cols, Fl prime);

  static FlMatrix identity(std::size_t n, Fl prime);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fl prime() const { return prime_; }

  Fl& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fl operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Fl> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Fl> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Fl> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Fl> values);

  bool is_zero() const;
  bool operator==(const FlMatrix& other) const = default;

  FlMatrix operator*(const FlMatrix& rhs) const;
  std::vector<Fl> operator*(std::span<const Fl> v) const;
  FlMatrix operator+(const FlMatrix& rhs) const;
  FlMatrix operator-(const FlMatrix& rhs) const;
  FlMatrix scaled(Fl s) const;
  FlMatrix transpose() const;

  /// Columns [first, first + count).
  FlMatrix column_range(std::size_t first, std::size_t count) const;
  FlMatrix row_range(std::size_t first, std::size_t count) const;
  FlMatrix select_columns(std::span<const std::size_t> idx) const;
  FlMatrix select_rows(std::span<const std::size_t> idx) const;

  static FlMatrix hcat(const FlMatrix& a, const FlMatrix& b);
  static FlMatrix vcat(const FlMatrix& a, const FlMatrix& b);
  /// Block diagonal [[a, 0], [0, b]].
  static FlMatrix block_diag(const FlMatrix& a, const FlMatrix& b);

  const std::vector<Fl>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Fl prime_ = 2;
  std::vector<Fl> data_;
};

/// Reduced row echelon form plus the pivot column of each nonzero row.
struct RowEchelon {
  FlMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

namespace serial {
/// Reference Gauss-Jordan elimination. Pivots on the first nonzero entry of
/// each column, scanning rows top-down.
RowEchelon rref(FlMatrix m);
FlMatrix multiply(const FlMatrix& a, const FlMatrix& b);
}  // namespace serial

namespace parallel {
/// Same elimination order as serial::rref, with the row updates for each
/// pivot distributed across OpenMP threads. Bit-identical output.
RowEchelon rref(FlMatrix m);
FlMatrix multiply(const FlMatrix& a, const FlMatrix& b);
}  // namespace parallel

/// Dispatches to the parallel kernel for large inputs.
RowEchelon rref(FlMatrix m);

std::size_t rank(const FlMatrix& m);

/// Basis of the right null space {x : m x = 0}, as columns.
FlMatrix kernel(const FlMatrix& m);

/// A subset of the columns of m forming a basis of its column space.
FlMatrix column_basis(const FlMatrix& m);

/// Some x with a x = b (b may have several columns), or nullopt.
std::optional<FlMatrix> solve(const FlMatrix& a, const FlMatrix& b);

FlMatrix inverse(const FlMatrix& a);

/// For a matrix with independent columns, a matrix L with L * a = I.
FlMatrix left_inverse(const FlMatrix& a);

/// Whether every column of b lies in the column space of a.
bool column_space_contains(const FlMatrix& a, const FlMatrix& b);

}  // namespace lfin
