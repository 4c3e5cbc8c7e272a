#include "lfin/random.hpp"

#include "lfin/errors.hpp"

namespace lfin {

namespace {

Fl random_scalar(Fl p, Rng& rng) { return Fl(std::uniform_int_distribution<std::uint32_t>(0, p - 1)(rng)); }

Fl random_nonzero(Fl p, Rng& rng) { return Fl(std::uniform_int_distribution<std::uint32_t>(1, p - 1)(rng)); }

// Left action of a group-ring element on a vector of the free module F^rank.
std::vector<Fl> act(const GroupRingElement& z, const std::vector<Fl>& v, std::size_t rank, const GroupTable& g) {
  const std::size_t n = g.order();
  const Fl p = g.prime();
  std::vector<Fl> out(v.size(), 0);
  for (std::size_t h = 0; h < n; ++h) {
    if (z.coeffs[h] == 0) continue;
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t x = 0; x < n; ++x) {
        Fl& o = out[j * n + g.mul(h, x)];
        o = fl_add(o, fl_mul(z.coeffs[h], v[j * n + x], p), p);
      }
  }
  return out;
}

}  // namespace

GroupRingElement random_element(const GroupTable& g, Rng& rng) {
  GroupRingElement e = ga_zero(g);
  for (auto& c : e.coeffs) c = random_scalar(g.prime(), rng);
  return e;
}

GroupRingElement random_radical_element(const GroupTable& g, Rng& rng) {
  GroupRingElement e = random_element(g, rng);
  const Fl a = augmentation(e, g);
  auto& c = e.coeffs[g.identity()];
  c = fl_sub(c, a, g.prime());
  return e;
}

GroupRingElement random_unit(const GroupTable& g, Rng& rng) {
  GroupRingElement e = random_radical_element(g, rng);
  auto& c = e.coeffs[g.identity()];
  c = fl_add(c, random_nonzero(g.prime(), rng), g.prime());
  return e;
}

std::vector<std::size_t> center(const GroupTable& g) {
  std::vector<std::size_t> z;
  for (std::size_t a = 0; a < g.order(); ++a) {
    bool central = true;
    for (std::size_t b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

GroupRingMatrix random_matrix(std::size_t rows, std::size_t cols, const GroupTable& g, Rng& rng) {
  GroupRingMatrix m(rows, cols, g);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, random_element(g, rng));
  return m;
}

std::pair<GroupRingMatrix, GroupRingMatrix> random_invertible(std::size_t n, const GroupTable& g, Rng& rng) {
  GroupRingMatrix diag = GroupRingMatrix::identity(n, g);
  GroupRingMatrix diag_inv = GroupRingMatrix::identity(n, g);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = random_unit(g, rng);
    diag.set(i, i, u);
    diag_inv.set(i, i, ga_inverse(u, g));
  }
  GroupRingMatrix m = diag;
  GroupRingMatrix inv = diag_inv;
  if (n < 2) return {m, inv};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) j = (j + 1) % n;
    const auto r = random_element(g, rng);
    GroupRingMatrix e = GroupRingMatrix::identity(n, g);
    GroupRingMatrix e_inv = GroupRingMatrix::identity(n, g);
    e.set(i, j, r);
    e_inv.set(i, j, ga_neg(r, g));
    m = compose(e, m, g);
    inv = compose(inv, e_inv, g);
  }
  return {m, inv};
}

ChainComplex random_minimal_complex(const GroupPtr& group, int bottom, const std::vector<std::size_t>& ranks, Rng& rng) {
  const auto& g = *group;
  std::vector<GroupRingMatrix> d;
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    const std::size_t rows = ranks[i - 1], cols = ranks[i];
    if (i == 1) {
      GroupRingMatrix m(rows, cols, g);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, random_radical_element(g, rng));
      d.push_back(std::move(m));
      continue;
    }
    const FlMatrix cycles = kernel(expand(d.back(), g));
    FlMatrix columns(rows * g.order(), cols, g.prime());
    for (std::size_t c = 0; c < cols && cycles.cols() > 0; ++c) {
      std::vector<Fl> v(rows * g.order(), 0);
      for (std::size_t k = 0; k < cycles.cols(); ++k) {
        const Fl s = random_scalar(g.prime(), rng);
        if (s == 0) continue;
        for (std::size_t r = 0; r < v.size(); ++r) v[r] = fl_add(v[r], fl_mul(s, cycles(r, k), g.prime()), g.prime());
      }
      columns.set_column(c, act(random_radical_element(g, rng), v, rows, g));
    }
    d.push_back(from_free_vectors(columns, rows, g));
  }
  return ChainComplex(group, bottom, ranks, std::move(d));
}

BasisChange random_basis_change(const ChainComplex& c, Rng& rng) {
  const auto& g = c.table();
  BasisChange out;
  for (int q = c.bottom(); q <= c.top(); ++q) {
    auto [m, inv] = random_invertible(c.rank(q), g, rng);
    out.forward.push_back(std::move(m));
    out.backward.push_back(std::move(inv));
  }
  std::vector<GroupRingMatrix> d;
  for (int q = c.bottom() + 1; q <= c.top(); ++q) {
    const std::size_t i = std::size_t(q - c.bottom());
    d.push_back(compose(out.forward[i - 1], compose(c.boundary(q), out.backward[i], g), g));
  }
  out.complex = ChainComplex(c.group(), c.bottom(), c.ranks(), std::move(d));
  return out;
}

}  // namespace lfin
