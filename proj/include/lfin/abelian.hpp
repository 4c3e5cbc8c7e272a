#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lfin {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& other) const;
  IntMatrix transpose() const;
  bool is_zero() const;
  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
  IntMatrix column_range(std::size_t first, std::size_t count) const;
  IntMatrix row_range(std::size_t first, std::size_t count) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  std::vector<mpz_class> diagonal;  // nonzero invariant factors, all positive
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
};

/// Pivots on an entry of least absolute value to keep entries small.
SmithForm smith_normal_form(const IntMatrix& m);
std::vector<mpz_class> invariant_factors(const IntMatrix& m);
/// Determinant by fraction-free elimination; square input.
mpz_class determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

/// Z^generators / (row space of relations).
class FGAbelian {
 public:
  FGAbelian() = default;
  FGAbelian(IntMatrix relations, std::size_t generators);
  /// Z^rank + sum of Z/d.
  static FGAbelian from_invariants(std::size_t rank, const std::vector<mpz_class>& torsion);

  std::size_t generators() const { return generators_; }
  const IntMatrix& relations() const { return relations_; }
  std::size_t rank() const;
  /// Invariant factors exceeding 1.
  std::vector<mpz_class> torsion() const;
  std::string to_string() const;

 private:
  IntMatrix relations_;
  std::size_t generators_ = 0;
};

/// Parses e.g. "Z^2+Z/6+Z", "Z/4 + Z/2" or "0".
FGAbelian parse_abelian(std::string_view text);

FGAbelian direct_sum(const FGAbelian& a, const FGAbelian& b);

/// Finitely generated module over the l-adic integers: Z_l^rank plus cyclic
/// l-power torsion.
struct FGZlModule {
  unsigned long prime = 2;
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;  // sorted, each a power of prime exceeding 1

  bool operator==(const FGZlModule& other) const {
    return prime == other.prime && rank == other.rank && torsion == other.torsion;
  }
  /// "0", "Z_3", "Z_3^2 + Z/3 + Z/9", ...
  std::string to_string() const;
};

FGZlModule l_complete(const FGAbelian& a, unsigned long l);
FGZlModule direct_sum(const FGZlModule& a, const FGZlModule& b);

/// A homomorphism given on generators: column j is the image of generator j.
class AbelianMap {
 public:
  /// Throws InvalidMap if relations of the source do not map into relations of the target.
  AbelianMap(FGAbelian source, FGAbelian target, IntMatrix matrix);

  const FGAbelian& source() const { return source_; }
  const FGAbelian& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

 private:
  FGAbelian source_;
  FGAbelian target_;
  IntMatrix matrix_;
};

/// Lattice helpers on column vectors.
/// Basis of the integer kernel {x : m x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& m);
/// Whether every column of x lies in the integer column span of m.
bool lattice_contains(const IntMatrix& m, const IntMatrix& x);
/// Columns spanning the relation lattice of a (transpose of the relations).
IntMatrix relation_lattice(const FGAbelian& a);

/// Exactness of 0 -> A -> B -> C -> 0 over Z.
bool is_short_exact(const AbelianMap& f, const AbelianMap& g);

/// Per-spot exactness of the completed sequence, without integral validation.
struct CompletionExactness {
  bool at_source = false;
  bool at_middle = false;
  bool at_target = false;
  bool exact() const { return at_source && at_middle && at_target; }
};
CompletionExactness completion_exactness(const AbelianMap& f, const AbelianMap& g, unsigned long l);

/// Validates that 0 -> A -> B -> C -> 0 is exact over Z (NotExactIntegrally
/// otherwise), then decides exactness of the l-completed sequence.
bool check_exactness(const AbelianMap& f, const AbelianMap& g, unsigned long l);

}  // namespace lfin
