#include "lfin/group_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "lfin/errors.hpp"

namespace lfin {

namespace {

bool is_power_of(std::size_t n, std::size_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::vector<std::size_t>> cyclic_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

std::vector<std::vector<std::size_t>> product_table(const GroupTable& a, const GroupTable& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return t;
}

void check_element(const GroupRingElement& a, const GroupTable& g) {
  if (a.coeffs.size() != g.order())
    throw Error(ErrorCode::DimensionMismatch, "group ring element has " + std::to_string(a.coeffs.size()) +
                                                  " coefficients, group order is " + std::to_string(g.order()));
}

}  // namespace

GroupTable::GroupTable(std::vector<std::vector<std::size_t>> mult, Fl prime, std::string descriptor)
    : order_(mult.size()), prime_(prime), descriptor_(std::move(descriptor)) {
  if (!is_prime(prime)) throw Error(ErrorCode::NotAPrime, std::to_string(prime) + " is not prime");
  if (order_ == 0) throw Error(ErrorCode::NotAGroup, "empty table");
  mult_.reserve(order_ * order_);
  for (const auto& row : mult) {
    if (row.size() != order_) throw Error(ErrorCode::NotAGroup, "table is not square");
    for (auto v : row) {
      if (v >= order_) throw Error(ErrorCode::NotAGroup, "table entry out of range");
      mult_.push_back(v);
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < order_ && !found; ++e) {
    bool neutral = true;
    for (std::size_t x = 0; x < order_ && neutral; ++x) neutral = mul(e, x) == x && mul(x, e) == x;
    if (neutral) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::NotAGroup, "no identity element");
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      for (std::size_t c = 0; c < order_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw Error(ErrorCode::NotAGroup, "table is not associative");
  inverse_.assign(order_, order_);
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] == order_) throw Error(ErrorCode::NotAGroup, "element " + std::to_string(a) + " has no inverse");
  }
  if (!is_power_of(order_, prime_))
    throw Error(ErrorCode::NotAnLGroup,
                "order " + std::to_string(order_) + " is not a power of " + std::to_string(prime_));

  // Greedy generating set: add any element outside the subgroup generated so far.
  std::vector<bool> reached(order_, false);
  reached[identity_] = true;
  std::vector<std::size_t> members{identity_};
  for (std::size_t x = 0; x < order_; ++x) {
    if (reached[x]) continue;
    generators_.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto gen : generators_) {
        const std::size_t y = mul(members[i], gen);
        if (!reached[y]) {
          reached[y] = true;
          members.push_back(y);
        }
      }
    }
  }
}

std::vector<std::vector<std::size_t>> GroupTable::table() const {
  std::vector<std::vector<std::size_t>> t(order_, std::vector<std::size_t>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

bool GroupTable::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

GroupPtr cyclic_group(std::size_t n, Fl prime) {
  if (n == 0) throw Error(ErrorCode::NotAGroup, "cyclic group of order 0");
  return std::make_shared<const GroupTable>(cyclic_table(n), prime, "cyclic:" + std::to_string(n));
}

GroupPtr product_group(const GroupTable& a, const GroupTable& b) {
  if (a.prime() != b.prime()) throw Error(ErrorCode::GroupMismatch, "product of groups over different primes");
  auto strip = [](const std::string& d) {
    return d.rfind("product:", 0) == 0 ? d.substr(8) : d;
  };
  return std::make_shared<const GroupTable>(product_table(a, b), a.prime(),
                                            "product:" + strip(a.descriptor()) + "," + strip(b.descriptor()));
}

GroupPtr build_group(std::string_view d, Fl prime) {
  if (!is_prime(prime)) throw Error(ErrorCode::NotAPrime, std::to_string(prime) + " is not prime");
  if (d.rfind("cyclic:", 0) == 0) return cyclic_group(parse_size(d.substr(7), "cyclic order"), prime);
  if (d.rfind("product:", 0) == 0) {
    std::string_view rest = d.substr(8);
    std::vector<GroupPtr> factors;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto part = rest.substr(0, comma);
      if (part.rfind("cyclic:", 0) != 0)
        throw Error(ErrorCode::InvalidArgument, "product factors must be cyclic:N, got '" + std::string(part) + "'");
      factors.push_back(cyclic_group(parse_size(part.substr(7), "cyclic order"), prime));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (factors.size() < 2) throw Error(ErrorCode::InvalidArgument, "product needs at least two factors");
    GroupPtr g = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) g = product_group(*g, *factors[i]);
    return g;
  }
  if (d.rfind("table:{", 0) == 0 && d.back() == '}') {
    std::string body(d.substr(7, d.size() - 8));
    std::vector<std::vector<std::size_t>> rows;
    std::stringstream rs(body);
    std::string row;
    while (std::getline(rs, row, ';')) {
      std::stringstream es(row);
      std::vector<std::size_t> r;
      std::string tok;
      while (es >> tok) r.push_back(parse_size(tok, "table entry"));
      rows.push_back(std::move(r));
    }
    return std::make_shared<const GroupTable>(std::move(rows), prime, std::string(d));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown group descriptor '" + std::string(d) + "'");
}

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

GroupRingElement ga_zero(const GroupTable& g) { return {std::vector<Fl>(g.order(), 0)}; }

GroupRingElement ga_one(const GroupTable& g) { return ga_basis(g, g.identity()); }

GroupRingElement ga_basis(const GroupTable& g, std::size_t index, Fl scalar) {
  auto e = ga_zero(g);
  e.coeffs.at(index) = scalar % g.prime();
  return e;
}

GroupRingElement ga_norm(const GroupTable& g) { return {std::vector<Fl>(g.order(), 1 % g.prime())}; }

GroupRingElement ga_from_coeffs(const GroupTable& g, const std::vector<long long>& coeffs) {
  if (coeffs.size() != g.order()) throw Error(ErrorCode::DimensionMismatch, "coefficient count must equal group order");
  GroupRingElement e;
  for (auto c : coeffs) e.coeffs.push_back(fl_reduce(c, g.prime()));
  return e;
}

GroupRingElement ga_add(const GroupRingElement& a, const GroupRingElement& b, const GroupTable& g) {
  check_element(a, g);
  check_element(b, g);
  auto out = a;
  for (std::size_t i = 0; i < g.order(); ++i) out.coeffs[i] = fl_add(a.coeffs[i], b.coeffs[i], g.prime());
  return out;
}

GroupRingElement ga_sub(const GroupRingElement& a, const GroupRingElement& b, const GroupTable& g) {
  return ga_add(a, ga_neg(b, g), g);
}

GroupRingElement ga_neg(const GroupRingElement& a, const GroupTable& g) {
  check_element(a, g);
  auto out = a;
  for (auto& c : out.coeffs) c = fl_neg(c, g.prime());
  return out;
}

GroupRingElement ga_scale(const GroupRingElement& a, Fl s, const GroupTable& g) {
  check_element(a, g);
  auto out = a;
  for (auto& c : out.coeffs) c = fl_mul(c, s % g.prime(), g.prime());
  return out;
}

GroupRingElement ga_mul(const GroupRingElement& a, const GroupRingElement& b, const GroupTable& g) {
  check_element(a, g);
  check_element(b, g);
  const Fl p = g.prime();
  std::vector<std::uint64_t> acc(g.order(), 0);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (a.coeffs[x] == 0) continue;
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (b.coeffs[y] == 0) continue;
      auto& slot = acc[g.mul(x, y)];
      slot = (slot + std::uint64_t(a.coeffs[x]) * b.coeffs[y]) % p;
    }
  }
  GroupRingElement out;
  out.coeffs.assign(acc.begin(), acc.end());
  return out;
}

bool ga_is_zero(const GroupRingElement& a) {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](Fl c) { return c == 0; });
}

Fl augmentation(const GroupRingElement& a, const GroupTable& g) {
  check_element(a, g);
  std::uint64_t s = 0;
  for (auto c : a.coeffs) s += c;
  return Fl(s % g.prime());
}

bool is_unit(const GroupRingElement& a, const GroupTable& g) { return augmentation(a, g) != 0; }

GroupRingElement ga_inverse(const GroupRingElement& a, const GroupTable& g) {
  const Fl eps = augmentation(a, g);
  if (eps == 0) throw Error(ErrorCode::NotAUnit, "element has augmentation zero");
  const Fl eps_inv = fl_inv(eps, g.prime());
  // u = a / eps has augmentation 1; n = 1 - u lies in the augmentation ideal.
  const auto n = ga_sub(ga_one(g), ga_scale(a, eps_inv, g), g);
  auto sum = ga_one(g);
  auto power = n;
  // The augmentation ideal has nilpotency index at most |pi|.
  for (std::size_t k = 1; k <= g.order() && !ga_is_zero(power); ++k) {
    sum = ga_add(sum, power, g);
    power = ga_mul(power, n, g);
  }
  if (!ga_is_zero(power)) throw Error(ErrorCode::NotAUnit, "augmentation ideal failed to be nilpotent");
  return ga_scale(sum, eps_inv, g);
}

GroupRingMatrix::GroupRingMatrix(std::size_t rows, std::size_t cols, const GroupTable& g)
    : rows_(rows), cols_(cols), order_(g.order()), data_(rows * cols * g.order(), 0) {}

GroupRingMatrix GroupRingMatrix::identity(std::size_t n, const GroupTable& g) {
  GroupRingMatrix m(n, n, g);
  for (std::size_t i = 0; i < n; ++i) m.coeff(i, i, g.identity()) = 1;
  return m;
}

GroupRingElement GroupRingMatrix::entry(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::DimensionMismatch, "matrix index out of range");
  GroupRingElement e;
  auto first = data_.begin() + (r * cols_ + c) * order_;
  e.coeffs.assign(first, first + order_);
  return e;
}

void GroupRingMatrix::set(std::size_t r, std::size_t c, const GroupRingElement& e) {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::DimensionMismatch, "matrix index out of range");
  if (e.coeffs.size() != order_) throw Error(ErrorCode::DimensionMismatch, "entry length does not match group order");
  std::copy(e.coeffs.begin(), e.coeffs.end(), data_.begin() + (r * cols_ + c) * order_);
}

bool GroupRingMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Fl c) { return c == 0; });
}

GroupRingMatrix GroupRingMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  GroupRingMatrix out;
  out.rows_ = idx.size();
  out.cols_ = cols_;
  out.order_ = order_;
  out.data_.reserve(idx.size() * cols_ * order_);
  for (auto r : idx) {
    auto first = data_.begin() + r * cols_ * order_;
    out.data_.insert(out.data_.end(), first, first + cols_ * order_);
  }
  return out;
}

GroupRingMatrix GroupRingMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  GroupRingMatrix out;
  out.rows_ = rows_;
  out.cols_ = idx.size();
  out.order_ = order_;
  out.data_.reserve(rows_ * idx.size() * order_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (auto c : idx) {
      auto first = data_.begin() + (r * cols_ + c) * order_;
      out.data_.insert(out.data_.end(), first, first + order_);
    }
  return out;
}

GroupRingMatrix compose(const GroupRingMatrix& after, const GroupRingMatrix& before, const GroupTable& g) {
  if (after.cols() != before.rows())
    throw Error(ErrorCode::DimensionMismatch, "compose: " + std::to_string(after.rows()) + "x" +
                                                  std::to_string(after.cols()) + " after " +
                                                  std::to_string(before.rows()) + "x" + std::to_string(before.cols()));
  const Fl p = g.prime();
  const std::size_t n = g.order();
  GroupRingMatrix out(after.rows(), before.cols(), g);
  for (std::size_t k = 0; k < after.rows(); ++k)
    for (std::size_t j = 0; j < before.cols(); ++j)
      for (std::size_t i = 0; i < before.rows(); ++i)
        for (std::size_t x = 0; x < n; ++x) {
          const Fl bx = before.coeff(i, j, x);
          if (bx == 0) continue;
          for (std::size_t y = 0; y < n; ++y) {
            const Fl ay = after.coeff(k, i, y);
            if (ay == 0) continue;
            Fl& slot = out.coeff(k, j, g.mul(x, y));
            slot = Fl((slot + std::uint64_t(bx) * ay) % p);
          }
        }
  return out;
}

GroupRingMatrix ga_matrix_add(const GroupRingMatrix& a, const GroupRingMatrix& b, const GroupTable& g) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  GroupRingMatrix out(a.rows(), a.cols(), g);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      for (std::size_t x = 0; x < g.order(); ++x) out.coeff(r, c, x) = fl_add(a.coeff(r, c, x), b.coeff(r, c, x), g.prime());
  return out;
}

GroupRingMatrix ga_matrix_neg(const GroupRingMatrix& a, const GroupTable& g) {
  GroupRingMatrix out(a.rows(), a.cols(), g);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      for (std::size_t x = 0; x < g.order(); ++x) out.coeff(r, c, x) = fl_neg(a.coeff(r, c, x), g.prime());
  return out;
}

GroupRingMatrix ga_block(const GroupRingMatrix& a, const GroupRingMatrix& b, const GroupRingMatrix& c,
                         const GroupRingMatrix& d, const GroupTable& g) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw Error(ErrorCode::DimensionMismatch, "block matrix shapes are incompatible");
  GroupRingMatrix out(a.rows() + c.rows(), a.cols() + b.cols(), g);
  auto put = [&](const GroupRingMatrix& m, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t cc = 0; cc < m.cols(); ++cc)
        for (std::size_t x = 0; x < g.order(); ++x) out.coeff(r0 + r, c0 + cc, x) = m.coeff(r, cc, x);
  };
  put(a, 0, 0);
  put(b, 0, a.cols());
  put(c, a.rows(), 0);
  put(d, a.rows(), a.cols());
  return out;
}

FlMatrix expand(const GroupRingMatrix& m, const GroupTable& g) {
  const std::size_t n = g.order();
  FlMatrix out(m.rows() * n, m.cols() * n, g.prime());
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(m.cols());
#pragma omp parallel for schedule(static) if (m.rows() * m.cols() * n * n > 4096)
  for (std::ptrdiff_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t h = 0; h < n; ++h) {
        const Fl v = m.coeff(i, j, h);
        if (v == 0) continue;
        // Column (j, x) holds x * m(i, j); its coefficient at x*h is v.
        for (std::size_t x = 0; x < n; ++x) out(i * n + g.mul(x, h), j * n + x) = v;
      }
  return out;
}

GroupRingMatrix from_free_vectors(const FlMatrix& v, std::size_t rows, const GroupTable& g) {
  if (v.rows() != rows * g.order()) throw Error(ErrorCode::DimensionMismatch, "free module vector has the wrong length");
  GroupRingMatrix out(rows, v.cols(), g);
  for (std::size_t c = 0; c < v.cols(); ++c)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t x = 0; x < g.order(); ++x) out.coeff(i, c, x) = v(i * g.order() + x, c);
  return out;
}

}  // namespace lfin
