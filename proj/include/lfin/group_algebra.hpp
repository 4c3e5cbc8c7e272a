#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lfin/fl_matrix.hpp"

namespace lfin {

/// A finite l-group given by its multiplication table, together with the
/// prime l of the coefficient field. The element order fixes the coefficient
/// order of every GroupRingElement over this group.
class GroupTable {
 public:
  /// Validates associativity, identity and inverses by brute force, and that
  /// the order is a power of `prime`.
  GroupTable(std::vector<std::vector<std::size_t>> mult, Fl prime, std::string descriptor = {});

  std::size_t order() const { return order_; }
  Fl prime() const { return prime_; }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mult_[a * order_ + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  /// Text descriptor this table was built from; re-parsing it yields the same table.
  const std::string& descriptor() const { return descriptor_; }
  std::vector<std::vector<std::size_t>> table() const;
  /// A small generating set, chosen greedily in index order.
  const std::vector<std::size_t>& generators() const { return generators_; }
  bool is_abelian() const;

  bool operator==(const GroupTable& other) const {
    return order_ == other.order_ && prime_ == other.prime_ && mult_ == other.mult_;
  }

 private:
  std::size_t order_;
  Fl prime_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
  std::string descriptor_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// Parses `cyclic:N`, `product:cyclic:N,cyclic:M[,...]` or
/// `table:{r0;r1;...}` (rows of space-separated indices) and validates.
/// Cyclic groups index t^i as i; products index (a, b) as a * |B| + b.
GroupPtr build_group(std::string_view descriptor, Fl prime);
GroupPtr cyclic_group(std::size_t n, Fl prime);
GroupPtr product_group(const GroupTable& a, const GroupTable& b);

bool same_group(const GroupPtr& a, const GroupPtr& b);

/// Element of F_l[pi]: the coefficient of each group element, in table order.
struct GroupRingElement {
  std::vector<Fl> coeffs;
  bool operator==(const GroupRingElement&) const = default;
};

GroupRingElement ga_zero(const GroupTable& g);
GroupRingElement ga_one(const GroupTable& g);
/// The basis element of group element `index`, times `scalar`.
GroupRingElement ga_basis(const GroupTable& g, std::size_t index, Fl scalar = 1);
/// Norm element: the sum of all group elements.
GroupRingElement ga_norm(const GroupTable& g);
GroupRingElement ga_from_coeffs(const GroupTable& g, const std::vector<long long>& coeffs);

GroupRingElement ga_add(const GroupRingElement& a, const GroupRingElement& b, const GroupTable& g);
GroupRingElement ga_sub(const GroupRingElement& a, const GroupRingElement& b, const GroupTable& g);
GroupRingElement ga_neg(const GroupRingElement& a, const GroupTable& g);
GroupRingElement ga_scale(const GroupRingElement& a, Fl s, const GroupTable& g);
/// Convolution product: (ab)[xy] += a[x] b[y].
GroupRingElement ga_mul(const GroupRingElement& a, const GroupRingElement& b, const GroupTable& g);
bool ga_is_zero(const GroupRingElement& a);

/// Sum of coefficients mod l; the ring map F_l[pi] -> F_l.
Fl augmentation(const GroupRingElement& a, const GroupTable& g);

/// F_l[pi] is local with maximal ideal the augmentation ideal, so a is a
/// unit exactly when its augmentation is nonzero.
bool is_unit(const GroupRingElement& a, const GroupTable& g);

/// Writes a = e(1 - n) with e = augmentation(a) and n in the (nilpotent)
/// augmentation ideal, then sums the terminating series e^-1 (1 + n + n^2 + ...).
GroupRingElement ga_inverse(const GroupRingElement& a, const GroupTable& g);

/// Matrix over F_l[pi]. Stored flat: entry (r, c) occupies `order`
/// consecutive coefficients.
///
/// Matrices act on free left modules with f(e_j) = sum_i M(i, j) e_i, i.e.
/// column j is the image of the j-th basis vector. Composition is therefore
/// the product in the opposite ring; see `compose`.
class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(std::size_t rows, std::size_t cols, const GroupTable& g);

  static GroupRingMatrix identity(std::size_t n, const GroupTable& g);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t order() const { return order_; }

  GroupRingElement entry(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const GroupRingElement& e);
  Fl coeff(std::size_t r, std::size_t c, std::size_t g) const { return data_[(r * cols_ + c) * order_ + g]; }
  Fl& coeff(std::size_t r, std::size_t c, std::size_t g) { return data_[(r * cols_ + c) * order_ + g]; }

  bool is_zero() const;
  bool operator==(const GroupRingMatrix&) const = default;

  GroupRingMatrix select_rows(const std::vector<std::size_t>& idx) const;
  GroupRingMatrix select_columns(const std::vector<std::size_t>& idx) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t order_ = 1;
  std::vector<Fl> data_;
};

/// Matrix of after ∘ before: entry (k, j) = sum_i before(i, j) * after(k, i).
GroupRingMatrix compose(const GroupRingMatrix& after, const GroupRingMatrix& before, const GroupTable& g);
GroupRingMatrix ga_matrix_add(const GroupRingMatrix& a, const GroupRingMatrix& b, const GroupTable& g);
GroupRingMatrix ga_matrix_neg(const GroupRingMatrix& a, const GroupTable& g);
/// [[a, b], [c, d]] with compatible shapes; any block may be empty.
GroupRingMatrix ga_block(const GroupRingMatrix& a, const GroupRingMatrix& b, const GroupRingMatrix& c,
                         const GroupRingMatrix& d, const GroupTable& g);

/// The F_l matrix of the map on underlying vector spaces. The basis of a free
/// module of rank n is (j, g) -> j * order + g, standing for g e_j.
FlMatrix expand(const GroupRingMatrix& m, const GroupTable& g);

/// Inverse of `expand` on the basis vectors: interprets each column of `v`
/// (length rows * order) as an element of the free module F_l[pi]^rows.
GroupRingMatrix from_free_vectors(const FlMatrix& v, std::size_t rows, const GroupTable& g);

}  // namespace lfin
