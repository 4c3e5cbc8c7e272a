#include "lfin/fl_matrix.hpp"

#include <algorithm>
#include <utility>

#include <omp.h>

#include "lfin/errors.hpp"

namespace lfin {

namespace {

// Below this many matrix entries the thread start-up cost dominates.
constexpr std::size_t kParallelThreshold = 1u << 14;

void check_prime_match(const FlMatrix& a, const FlMatrix& b) {
  if (a.prime() != b.prime()) throw Error(ErrorCode::DimensionMismatch, "matrices over different primes");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fl fl_inv(Fl a, Fl p) {
  if (a % p == 0) throw Error(ErrorCode::NotAUnit, "zero has no inverse in F_l");
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return Fl(result);
}

Fl fl_reduce(long long v, Fl p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return Fl(r);
}

FlMatrix::FlMatrix(std::size_t rows, std::size_t cols, Fl prime)
    : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0) {}

FlMatrix FlMatrix::identity(std::size_t n, Fl prime) {
  FlMatrix m(n, n, prime);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Fl> FlMatrix::column(std::size_t c) const {
  std::vector<Fl> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void FlMatrix::set_column(std::size_t c, std::span<const Fl> values) {
  if (values.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

bool FlMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Fl x) { return x == 0; });
}

FlMatrix FlMatrix::operator*(const FlMatrix& rhs) const {
  if (rows_ * rhs.cols_ * cols_ >= kParallelThreshold) return parallel::multiply(*this, rhs);
  return serial::multiply(*this, rhs);
}

std::vector<Fl> FlMatrix::operator*(std::span<const Fl> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  std::vector<Fl> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t((*this)(r, c)) * v[c]) % prime_;
    out[r] = Fl(acc);
  }
  return out;
}

FlMatrix FlMatrix::operator+(const FlMatrix& rhs) const {
  check_prime_match(*this, rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  FlMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = fl_add(data_[i], rhs.data_[i], prime_);
  return out;
}

FlMatrix FlMatrix::operator-(const FlMatrix& rhs) const {
  check_prime_match(*this, rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  FlMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = fl_sub(data_[i], rhs.data_[i], prime_);
  return out;
}

FlMatrix FlMatrix::scaled(Fl s) const {
  FlMatrix out(*this);
  for (auto& x : out.data_) x = fl_mul(x, s % prime_, prime_);
  return out;
}

FlMatrix FlMatrix::transpose() const {
  FlMatrix t(cols_, rows_, prime_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

FlMatrix FlMatrix::column_range(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw Error(ErrorCode::DimensionMismatch, "column range out of bounds");
  FlMatrix out(rows_, count, prime_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

FlMatrix FlMatrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw Error(ErrorCode::DimensionMismatch, "row range out of bounds");
  FlMatrix out(count, cols_, prime_);
  std::copy(data_.begin() + first * cols_, data_.begin() + (first + count) * cols_, out.data_.begin());
  return out;
}

FlMatrix FlMatrix::select_columns(std::span<const std::size_t> idx) const {
  FlMatrix out(rows_, idx.size(), prime_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = (*this)(r, idx[c]);
  return out;
}

FlMatrix FlMatrix::select_rows(std::span<const std::size_t> idx) const {
  FlMatrix out(idx.size(), cols_, prime_);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(idx[r], c);
  return out;
}

FlMatrix FlMatrix::hcat(const FlMatrix& a, const FlMatrix& b) {
  check_prime_match(a, b);
  if (a.rows_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "hcat row mismatch");
  FlMatrix out(a.rows_, a.cols_ + b.cols_, a.prime_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

FlMatrix FlMatrix::vcat(const FlMatrix& a, const FlMatrix& b) {
  check_prime_match(a, b);
  if (a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "vcat column mismatch");
  FlMatrix out(a.rows_ + b.rows_, a.cols_, a.prime_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
  return out;
}

FlMatrix FlMatrix::block_diag(const FlMatrix& a, const FlMatrix& b) {
  check_prime_match(a, b);
  FlMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_, a.prime_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) out(a.rows_ + r, a.cols_ + c) = b(r, c);
  return out;
}

namespace {

// Row update shared by both kernels: row_i -= factor * row_p, from column c on.
inline void eliminate_row(std::span<Fl> target, std::span<const Fl> pivot_row, Fl factor, std::size_t from, Fl p) {
  const Fl neg = fl_neg(factor, p);
  for (std::size_t c = from; c < target.size(); ++c) {
    if (pivot_row[c] == 0) continue;
    target[c] = Fl((target[c] + std::uint64_t(neg) * pivot_row[c]) % p);
  }
}

// Locates and normalizes the next pivot; returns false if column col is zero
// below row `rank`.
bool prepare_pivot(FlMatrix& m, std::size_t rank, std::size_t col) {
  const Fl p = m.prime();
  std::size_t pr = rank;
  while (pr < m.rows() && m(pr, col) == 0) ++pr;
  if (pr == m.rows()) return false;
  if (pr != rank) {
    auto a = m.row(pr), b = m.row(rank);
    std::swap_ranges(a.begin(), a.end(), b.begin());
  }
  const Fl inv = fl_inv(m(rank, col), p);
  for (auto& x : m.row(rank).subspan(col)) x = fl_mul(x, inv, p);
  return true;
}

}  // namespace

namespace serial {

RowEchelon rref(FlMatrix m) {
  RowEchelon out;
  const Fl p = m.prime();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    if (!prepare_pivot(m, rank, col)) continue;
    auto pivot_row = m.row(rank);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, col) == 0) continue;
      eliminate_row(m.row(r), pivot_row, m(r, col), col, p);
    }
    out.pivots.push_back(col);
    ++rank;
  }
  out.reduced = std::move(m);
  return out;
}

FlMatrix multiply(const FlMatrix& a, const FlMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  if (a.prime() != b.prime()) throw Error(ErrorCode::DimensionMismatch, "matrices over different primes");
  const Fl p = a.prime();
  FlMatrix out(a.rows(), b.cols(), p);
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Fl aik = a(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + std::uint64_t(aik) * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = Fl(acc[j]);
  }
  return out;
}

}  // namespace serial

namespace parallel {

RowEchelon rref(FlMatrix m) {
  RowEchelon out;
  const Fl p = m.prime();
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(m.rows());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    if (!prepare_pivot(m, rank, col)) continue;
    const std::ptrdiff_t pivot = static_cast<std::ptrdiff_t>(rank);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      if (r == pivot || m(r, col) == 0) continue;
      eliminate_row(m.row(r), m.row(rank), m(r, col), col, p);
    }
    out.pivots.push_back(col);
    ++rank;
  }
  out.reduced = std::move(m);
  return out;
}

FlMatrix multiply(const FlMatrix& a, const FlMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  if (a.prime() != b.prime()) throw Error(ErrorCode::DimensionMismatch, "matrices over different primes");
  const Fl p = a.prime();
  FlMatrix out(a.rows(), b.cols(), p);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel
  {
    std::vector<std::uint64_t> acc(b.cols());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const Fl aik = a(i, k);
        if (aik == 0) continue;
        auto brow = b.row(k);
        for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + std::uint64_t(aik) * brow[j]) % p;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = Fl(acc[j]);
    }
  }
  return out;
}

}  // namespace parallel

RowEchelon rref(FlMatrix m) {
  if (m.rows() * m.cols() >= kParallelThreshold && !omp_in_parallel()) return parallel::rref(std::move(m));
  return serial::rref(std::move(m));
}

std::size_t rank(const FlMatrix& m) { return rref(m).rank(); }

FlMatrix kernel(const FlMatrix& m) {
  const auto ech = rref(m);
  const Fl p = m.prime();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  FlMatrix basis(m.cols(), m.cols() - ech.rank(), p);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t i = 0; i < ech.rank(); ++i) basis(ech.pivots[i], k) = fl_neg(ech.reduced(i, free), p);
    ++k;
  }
  return basis;
}

FlMatrix column_basis(const FlMatrix& m) {
  const auto ech = rref(m);
  return m.select_columns(ech.pivots);
}

std::optional<FlMatrix> solve(const FlMatrix& a, const FlMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row mismatch");
  const auto ech = rref(FlMatrix::hcat(a, b));
  const std::size_t n = a.cols();
  FlMatrix x(n, b.cols(), a.prime());
  for (std::size_t i = 0; i < ech.rank(); ++i) {
    const std::size_t pc = ech.pivots[i];
    if (pc >= n) return std::nullopt;  // pivot in the augmented part: inconsistent
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = ech.reduced(i, n + j);
  }
  return x;
}

FlMatrix inverse(const FlMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const auto ech = rref(FlMatrix::hcat(a, FlMatrix::identity(n, a.prime())));
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
  return ech.reduced.column_range(n, n);
}

FlMatrix left_inverse(const FlMatrix& a) {
  // Independent rows of a (pivots of a^T) give an invertible square block.
  const auto rows = rref(a.transpose()).pivots;
  if (rows.size() != a.cols()) throw Error(ErrorCode::InvalidArgument, "left_inverse: columns are dependent");
  const FlMatrix block_inv = inverse(a.select_rows(rows));
  FlMatrix out(a.cols(), a.rows(), a.prime());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < rows.size(); ++k) out(i, rows[k]) = block_inv(i, k);
  return out;
}

bool column_space_contains(const FlMatrix& a, const FlMatrix& b) {
  if (b.cols() == 0) return true;
  return rank(FlMatrix::hcat(a, b)) == rank(a);
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::NotAnLGroup: return "NotAnLGroup";
    case ErrorCode::NotAPrime: return "NotAPrime";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::BoundarySquareNonzero: return "BoundarySquareNonzero";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::UnboundedHomology: return "UnboundedHomology";
    case ErrorCode::MaxDegree: return "MaxDegree";
    case ErrorCode::NotPerfect: return "NotPerfect";
    case ErrorCode::HorizonExhausted: return "HorizonExhausted";
    case ErrorCode::NotExactIntegrally: return "NotExactIntegrally";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error(ErrorCode::ParseError,
            std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

}  // namespace lfin
