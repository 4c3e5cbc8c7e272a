#include "lfin/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "lfin/errors.hpp"
#include "lfin/fl_matrix.hpp"

namespace lfin {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::DimensionMismatch, "integer matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "hcat row mismatch");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

IntMatrix IntMatrix::column_range(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Snf {
  IntMatrix a, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const mpz_class& k) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) += k * u(j, c);
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const mpz_class& k) {
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += k * a(r, j);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) += k * v(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Snf s{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  IntMatrix& a = s.a;
  const std::size_t steps = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    // Smallest nonzero entry of the remaining block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second)))) best = {i, j};
    if (!best) break;
    s.swap_rows(t, best->first);
    s.swap_cols(t, best->second);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        dirty = dirty || a(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        s.add_col(j, t, -q);
        dirty = dirty || a(t, j) != 0;
      }
      if (dirty) {
        // A remainder is now smaller than the pivot: move it into place.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the rest.
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            s.add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) s.negate_row(t);
  }
  SmithForm out;
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a(i, i));
  out.U = std::move(s.u);
  out.V = std::move(s.v);
  out.D = std::move(s.a);
  return out;
}

std::vector<mpz_class> invariant_factors(const IntMatrix& m) { return smith_normal_form(m).diagonal; }

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(r, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) { return m.rows() == m.cols() && abs(determinant(m)) == 1; }

// ---------------------------------------------------------------------------
// Lattices

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  const std::size_t r = s.diagonal.size();
  return s.V.column_range(r, m.cols() - r);
}

bool lattice_contains(const IntMatrix& m, const IntMatrix& x) {
  if (m.rows() != x.rows()) throw Error(ErrorCode::DimensionMismatch, "lattice membership shape mismatch");
  const SmithForm s = smith_normal_form(m);
  const IntMatrix y = s.U * x;
  const std::size_t r = s.diagonal.size();
  for (std::size_t c = 0; c < y.cols(); ++c)
    for (std::size_t i = 0; i < y.rows(); ++i) {
      if (i < r) {
        if (!mpz_divisible_p(y(i, c).get_mpz_t(), s.diagonal[i].get_mpz_t())) return false;
      } else if (y(i, c) != 0) {
        return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

FGAbelian::FGAbelian(IntMatrix relations, std::size_t generators)
    : relations_(std::move(relations)), generators_(generators) {
  if (relations_.cols() != generators_ && !(relations_.rows() == 0))
    throw Error(ErrorCode::DimensionMismatch, "relation matrix must have one column per generator");
  if (relations_.rows() == 0) relations_ = IntMatrix(0, generators_);
}

FGAbelian FGAbelian::from_invariants(std::size_t rank, const std::vector<mpz_class>& torsion) {
  const std::size_t n = rank + torsion.size();
  IntMatrix rel(torsion.size(), n);
  for (std::size_t i = 0; i < torsion.size(); ++i) rel(i, rank + i) = torsion[i];
  return FGAbelian(std::move(rel), n);
}

IntMatrix relation_lattice(const FGAbelian& a) { return a.relations().transpose(); }

std::size_t FGAbelian::rank() const { return generators_ - invariant_factors(relations_).size(); }

std::vector<mpz_class> FGAbelian::torsion() const {
  std::vector<mpz_class> out;
  for (auto& d : invariant_factors(relations_))
    if (d > 1) out.push_back(d);
  return out;
}

std::string FGAbelian::to_string() const {
  std::vector<std::string> terms;
  const std::size_t r = rank();
  if (r == 1) terms.push_back("Z");
  if (r > 1) terms.push_back("Z^" + std::to_string(r));
  for (auto& d : torsion()) terms.push_back("Z/" + d.get_str());
  if (terms.empty()) return "0";
  std::string s = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) s += " + " + terms[i];
  return s;
}

FGAbelian parse_abelian(std::string_view text) {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError(1, pos + 1, what); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::string {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return std::string(text.substr(start, pos - start));
  };
  bool any = false;
  for (;;) {
    skip();
    if (pos >= text.size()) fail("expected a term");
    if (text[pos] == '0') {
      ++pos;
    } else if (text[pos] == 'Z') {
      ++pos;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        rank += std::stoul(number());
      } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        mpz_class d(number());
        if (d == 0) fail("Z/0 is not allowed; write Z");
        torsion.push_back(d);
      } else {
        rank += 1;
      }
    } else {
      fail(std::string("unexpected character '") + text[pos] + "'");
    }
    any = true;
    skip();
    if (pos >= text.size()) break;
    if (text[pos] != '+') fail("expected '+'");
    ++pos;
  }
  if (!any) fail("empty group");
  return FGAbelian::from_invariants(rank, torsion);
}

FGAbelian direct_sum(const FGAbelian& a, const FGAbelian& b) {
  const std::size_t n = a.generators() + b.generators();
  IntMatrix rel(a.relations().rows() + b.relations().rows(), n);
  for (std::size_t i = 0; i < a.relations().rows(); ++i)
    for (std::size_t j = 0; j < a.generators(); ++j) rel(i, j) = a.relations()(i, j);
  for (std::size_t i = 0; i < b.relations().rows(); ++i)
    for (std::size_t j = 0; j < b.generators(); ++j) rel(a.relations().rows() + i, a.generators() + j) = b.relations()(i, j);
  return FGAbelian(std::move(rel), n);
}

// ---------------------------------------------------------------------------
// Completion

namespace {

mpz_class l_part(mpz_class d, unsigned long l) {
  mpz_class part = 1;
  while (mpz_divisible_ui_p(d.get_mpz_t(), l)) {
    d /= l;
    part *= l;
  }
  return part;
}

unsigned long valuation(const mpz_class& d, unsigned long l) {
  if (d == 0) return 0;
  mpz_class x = abs(d);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), l)) {
    x /= l;
    ++v;
  }
  return v;
}

}  // namespace

std::string FGZlModule::to_string() const {
  std::vector<std::string> terms;
  const std::string zl = "Z_" + std::to_string(prime);
  if (rank == 1) terms.push_back(zl);
  if (rank > 1) terms.push_back(zl + "^" + std::to_string(rank));
  for (auto& d : torsion) terms.push_back("Z/" + d.get_str());
  if (terms.empty()) return "0";
  std::string s = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) s += " + " + terms[i];
  return s;
}

FGZlModule l_complete(const FGAbelian& a, unsigned long l) {
  if (!is_prime(l)) throw Error(ErrorCode::NotAPrime, std::to_string(l) + " is not prime");
  FGZlModule out;
  out.prime = l;
  out.rank = a.rank();
  for (auto& d : a.torsion()) {
    mpz_class p = l_part(d, l);
    if (p > 1) out.torsion.push_back(p);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

FGZlModule direct_sum(const FGZlModule& a, const FGZlModule& b) {
  if (a.prime != b.prime) throw Error(ErrorCode::InvalidArgument, "completions at different primes");
  FGZlModule out{a.prime, a.rank + b.rank, a.torsion};
  out.torsion.insert(out.torsion.end(), b.torsion.begin(), b.torsion.end());
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

AbelianMap::AbelianMap(FGAbelian source, FGAbelian target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
    throw Error(ErrorCode::DimensionMismatch, "map matrix must be target generators x source generators");
  if (!lattice_contains(relation_lattice(target_), matrix_ * relation_lattice(source_)))
    throw Error(ErrorCode::InvalidMap, "relations of the source do not map to relations of the target");
}

namespace {

// Relation lattice of A / l^n A.
IntMatrix reduced_lattice(const FGAbelian& a, const mpz_class& ln) {
  IntMatrix scaled = IntMatrix::identity(a.generators());
  for (std::size_t i = 0; i < a.generators(); ++i) scaled(i, i) = ln;
  return IntMatrix::hcat(relation_lattice(a), scaled);
}

// Generators of {x : f x ∈ L}, as columns.
IntMatrix preimage(const IntMatrix& f, const IntMatrix& lattice) {
  IntMatrix neg = lattice;
  for (std::size_t i = 0; i < neg.rows(); ++i)
    for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
  const IntMatrix k = integer_kernel(IntMatrix::hcat(f, neg));
  return k.row_range(0, f.cols());
}

}  // namespace

bool is_short_exact(const AbelianMap& f, const AbelianMap& g) {
  if (!(f.target().relations() == g.source().relations()) || f.target().generators() != g.source().generators())
    throw Error(ErrorCode::DimensionMismatch, "maps are not composable");
  const IntMatrix la = relation_lattice(f.source());
  const IntMatrix lb = relation_lattice(f.target());
  const IntMatrix lc = relation_lattice(g.target());
  const IntMatrix& fm = f.matrix();
  const IntMatrix& gm = g.matrix();
  if (!lattice_contains(lc, gm * fm)) return false;
  if (!lattice_contains(la, preimage(fm, lb))) return false;
  if (!lattice_contains(IntMatrix::hcat(fm, lb), preimage(gm, lc))) return false;
  return lattice_contains(IntMatrix::hcat(gm, lc), IntMatrix::identity(g.target().generators()));
}

CompletionExactness completion_exactness(const AbelianMap& f, const AbelianMap& g, unsigned long l) {
  if (!is_prime(l)) throw Error(ErrorCode::NotAPrime, std::to_string(l) + " is not prime");
  const IntMatrix& fm = f.matrix();
  const IntMatrix& gm = g.matrix();
  // Pro-zero bounds from the largest l-valuation in the presentations and maps.
  unsigned long e = 0;
  for (const IntMatrix* m : {&f.source().relations(), &f.target().relations(), &g.target().relations(), &fm, &gm})
    for (auto& d : invariant_factors(*m)) e = std::max(e, valuation(d, l));
  for (auto& d : invariant_factors(IntMatrix::hcat(fm, relation_lattice(f.target())))) e = std::max(e, valuation(d, l));
  for (auto& d : invariant_factors(IntMatrix::hcat(gm, relation_lattice(g.target())))) e = std::max(e, valuation(d, l));
  const unsigned long n_max = e + 2;
  const unsigned long slack = 2 * e + 2;

  CompletionExactness out{true, true, true};
  mpz_class ln = 1;
  for (unsigned long n = 1; n <= n_max; ++n) {
    ln *= l;
    mpz_class lN = ln;
    for (unsigned long i = 0; i < slack; ++i) lN *= l;
    const IntMatrix la_n = reduced_lattice(f.source(), ln), lb_n = reduced_lattice(f.target(), ln),
                    lc_n = reduced_lattice(g.target(), ln);
    const IntMatrix lb_N = reduced_lattice(f.target(), lN), lc_N = reduced_lattice(g.target(), lN);
    // ker f_N maps to zero in A/l^n.
    out.at_source = out.at_source && lattice_contains(la_n, preimage(fm, lb_N));
    // ker g_N maps into im f_n in B/l^n.
    out.at_middle = out.at_middle && lattice_contains(IntMatrix::hcat(fm, lb_n), preimage(gm, lc_N));
    // coker g_n vanishes.
    out.at_target = out.at_target && lattice_contains(IntMatrix::hcat(gm, lc_n), IntMatrix::identity(g.target().generators()));
  }
  return out;
}

bool check_exactness(const AbelianMap& f, const AbelianMap& g, unsigned long l) {
  if (!is_short_exact(f, g)) throw Error(ErrorCode::NotExactIntegrally, "sequence is not exact over Z");
  return completion_exactness(f, g, l).exact();
}

}  // namespace lfin
