// Test-only helpers: a catalogue of small l-groups built independently of
// the library's descriptor parser, naive linear algebra over Z/p, and
// brute-force oracles.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lfin/abelian.hpp"
#include "lfin/chain.hpp"
#include "lfin/cw_equivariant.hpp"
#include "lfin/group_algebra.hpp"
#include "lfin/pi_module.hpp"
#include "lfin/random.hpp"

namespace testing_support {

using lfin::Fl;
using lfin::GroupPtr;

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

// Elements are index tuples; `mul` combines two index tuples.
inline GroupPtr from_rule(std::size_t order, Fl prime, const std::function<std::size_t(std::size_t, std::size_t)>& mul) {
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) t[a][b] = mul(a, b);
  return std::make_shared<const lfin::GroupTable>(t, prime);
}

// a^i b^j with a^n = 1, b a b^-1 = a^r, b^m = a^s. Index i + n j.
inline GroupPtr metacyclic(std::size_t n, std::size_t m, std::size_t r, std::size_t s, Fl prime) {
  std::vector<std::size_t> rpow(m, 1);
  for (std::size_t j = 1; j < m; ++j) rpow[j] = rpow[j - 1] * r % n;
  return from_rule(n * m, prime, [=](std::size_t x, std::size_t y) {
    const std::size_t i1 = x % n, j1 = x / n, i2 = y % n, j2 = y / n;
    std::size_t i = (i1 + rpow[j1] * i2) % n, j = j1 + j2;
    if (j >= m) {
      j -= m;
      i = (i + s) % n;
    }
    return i + n * j;
  });
}

inline GroupPtr direct(const GroupPtr& a, const GroupPtr& b) {
  const std::size_t nb = b->order();
  return from_rule(a->order() * nb, a->prime(), [&](std::size_t x, std::size_t y) {
    return a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb);
  });
}

inline GroupPtr cyc(std::size_t n, Fl p) { return metacyclic(n, 1, 1, 0, p); }

/// Every group of order 2, 4, 8, 16 (over F_2) and 3, 9, 27 (over F_3).
inline std::vector<NamedGroup> small_l_groups() {
  std::vector<NamedGroup> out;
  const auto c2 = cyc(2, 2), c4 = cyc(4, 2), c8 = cyc(8, 2);
  const auto d8 = metacyclic(4, 2, 3, 0, 2), q8 = metacyclic(4, 2, 3, 2, 2);
  out.push_back({"C2", c2});
  out.push_back({"C4", c4});
  out.push_back({"C2xC2", direct(c2, c2)});
  out.push_back({"C8", c8});
  out.push_back({"C4xC2", direct(c4, c2)});
  out.push_back({"C2^3", direct(direct(c2, c2), c2)});
  out.push_back({"D8", d8});
  out.push_back({"Q8", q8});
  out.push_back({"C16", cyc(16, 2)});
  out.push_back({"C4xC4", direct(c4, c4)});
  out.push_back({"C8xC2", direct(c8, c2)});
  out.push_back({"M16", metacyclic(8, 2, 5, 0, 2)});
  out.push_back({"D16", metacyclic(8, 2, 7, 0, 2)});
  out.push_back({"SD16", metacyclic(8, 2, 3, 0, 2)});
  out.push_back({"Q16", metacyclic(8, 2, 7, 4, 2)});
  out.push_back({"C4:C4", metacyclic(4, 4, 3, 0, 2)});
  out.push_back({"C4xC2xC2", direct(direct(c4, c2), c2)});
  out.push_back({"C2^4", direct(direct(c2, c2), direct(c2, c2))});
  out.push_back({"C2xD8", direct(c2, d8)});
  out.push_back({"C2xQ8", direct(c2, q8)});
  // (C4 x C2) : C2, c acting by a -> ab. Index i + 4 j + 8 k.
  out.push_back({"(C4xC2):C2", from_rule(16, 2, [](std::size_t x, std::size_t y) {
                   const std::size_t i1 = x % 4, j1 = (x / 4) % 2, k1 = x / 8;
                   const std::size_t i2 = y % 4, j2 = (y / 4) % 2, k2 = y / 8;
                   return (i1 + i2) % 4 + 4 * ((j1 + j2 + k1 * i2) % 2) + 8 * ((k1 + k2) % 2);
                 })});
  // Pauli group: i^k X^x Z^z, with Z X = -X Z. Index k + 4 x + 8 z.
  out.push_back({"Pauli", from_rule(16, 2, [](std::size_t a, std::size_t b) {
                   const std::size_t k1 = a % 4, x1 = (a / 4) % 2, z1 = a / 8;
                   const std::size_t k2 = b % 4, x2 = (b / 4) % 2, z2 = b / 8;
                   return (k1 + k2 + 2 * z1 * x2) % 4 + 4 * (x1 ^ x2) + 8 * (z1 ^ z2);
                 })});
  const auto c3 = cyc(3, 3), c9 = cyc(9, 3);
  out.push_back({"C3", c3});
  out.push_back({"C9", c9});
  out.push_back({"C3xC3", direct(c3, c3)});
  out.push_back({"C27", cyc(27, 3)});
  out.push_back({"C9xC3", direct(c9, c3)});
  out.push_back({"C3^3", direct(direct(c3, c3), c3)});
  out.push_back({"M27", metacyclic(9, 3, 4, 0, 3)});
  // Heisenberg group mod 3: (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
  out.push_back({"Heis27", from_rule(27, 3, [](std::size_t x, std::size_t y) {
                   const std::size_t a1 = x % 3, b1 = (x / 3) % 3, c1 = x / 9;
                   const std::size_t a2 = y % 3, b2 = (y / 3) % 3, c2 = y / 9;
                   return (a1 + a2) % 3 + 3 * ((b1 + b2) % 3) + 9 * ((c1 + c2 + a1 * b2) % 3);
                 })});
  return out;
}

// ---------------------------------------------------------------------------
// Naive dense linear algebra over Z/p, written separately from FlMatrix.

using Rows = std::vector<std::vector<long long>>;

inline long long modp(long long v, long long p) { return ((v % p) + p) % p; }

inline long long inv_mod(long long a, long long p) {
  for (long long x = 1; x < p; ++x)
    if (modp(a * x, p) == 1) return x;
  return 0;
}

inline std::size_t naive_rank(Rows m, long long p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && modp(m[piv][c], p) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const long long inv = inv_mod(modp(m[rank][c], p), p);
    for (auto& v : m[rank]) v = modp(v * inv, p);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && modp(m[r][c], p) != 0) {
        const long long f = modp(m[r][c], p);
        for (std::size_t k = 0; k < cols; ++k) m[r][k] = modp(m[r][k] - f * m[rank][k], p);
      }
    ++rank;
  }
  return rank;
}

/// Whether a x = b has a solution (b a single column).
inline bool naive_solvable(const Rows& a, const std::vector<long long>& b, long long p) {
  Rows aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  return naive_rank(a, p) == naive_rank(aug, p);
}

/// Left multiplication by x on F_l[pi], column g is x * g.
inline Rows left_multiplication(const lfin::GroupTable& g, const std::vector<Fl>& x) {
  const std::size_t n = g.order();
  Rows m(n, std::vector<long long>(n, 0));
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) m[g.mul(k, h)][h] += x[k];
  return m;
}

/// Literal search for a two-sided inverse over all p^|pi| elements.
inline bool has_inverse_by_search(const lfin::GroupTable& g, const std::vector<Fl>& x) {
  const std::size_t n = g.order();
  const Fl p = g.prime();
  std::vector<Fl> y(n, 0);
  for (;;) {
    std::vector<long long> xy(n, 0), yx(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        xy[g.mul(a, b)] += (long long)x[a] * y[b];
        yx[g.mul(a, b)] += (long long)y[a] * x[b];
      }
    bool one = true;
    for (std::size_t k = 0; k < n && one; ++k) {
      const long long want = k == g.identity() ? 1 : 0;
      one = modp(xy[k], p) == want && modp(yx[k], p) == want;
    }
    if (one) return true;
    std::size_t i = 0;
    while (i < n && ++y[i] == p) y[i++] = 0;
    if (i == n) return false;
  }
}

/// Splitting oracle: M is projective iff the cover F_l[pi]^{dim M} -> M,
/// e_i -> m_i, has an equivariant section. Solves for the section entries.
inline bool projective_by_splitting(const lfin::PiModule& m) {
  const auto& g = *m.group();
  const std::size_t n = m.dim(), order = g.order(), fdim = n * order;
  const long long p = g.prime();
  if (n == 0) return true;
  // Cover matrix: basis vector (i, h) maps to h . m_i.
  Rows cover(n, std::vector<long long>(fdim, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < order; ++h)
      for (std::size_t r = 0; r < n; ++r) cover[r][i * order + h] = m.action(h)(r, i);
  // Unknowns s[a][b], a < fdim, b < n, flattened as a * n + b.
  const std::size_t unknowns = fdim * n;
  Rows eqs;
  std::vector<long long> rhs;
  // cover * s = I
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<long long> e(unknowns, 0);
      for (std::size_t a = 0; a < fdim; ++a) e[a * n + b] = cover[r][a];
      eqs.push_back(e);
      rhs.push_back(r == b ? 1 : 0);
    }
  // s rho_M(h) = rho_F(h) s for every h. rho_F(h) sends (i, k) to (i, hk).
  for (std::size_t h = 0; h < order; ++h)
    for (std::size_t a = 0; a < fdim; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<long long> e(unknowns, 0);
        for (std::size_t c = 0; c < n; ++c) e[a * n + c] += m.action(h)(c, b);
        // (rho_F(h) s)[a][b] = s[rho_F(h)^-1 a][b]
        const std::size_t i = a / order, k = a % order;
        const std::size_t src = i * order + g.mul(g.inverse(h), k);
        e[src * n + b] -= 1;
        for (auto& v : e) v = modp(v, p);
        eqs.push_back(e);
        rhs.push_back(0);
      }
  return naive_solvable(eqs, rhs, p);
}

/// Quotient of F_l[pi]^rank by the submodule generated by `gens` random vectors.
inline lfin::PiModule random_quotient_module(const GroupPtr& group, std::mt19937_64& rng) {
  const auto& g = *group;
  const std::size_t rank = 1 + rng() % 2;
  const lfin::PiModule f = lfin::regular_module(group, rank);
  const std::size_t gens = rng() % 3;
  lfin::FlMatrix sub(f.dim(), 0, g.prime());
  for (std::size_t k = 0; k < gens; ++k) {
    lfin::FlMatrix v(f.dim(), 1, g.prime());
    switch (rng() % 3) {
      case 0:  // a unit multiple of a basis vector: the quotient drops a free summand
        {
          const auto u = lfin::random_unit(g, rng);
          const std::size_t j = rng() % rank;
          for (std::size_t h = 0; h < g.order(); ++h) v(j * g.order() + h, 0) = u.coeffs[h];
        }
        break;
      case 1:  // a radical element times a basis vector
        {
          const auto r = lfin::random_radical_element(g, rng);
          const std::size_t j = rng() % rank;
          for (std::size_t h = 0; h < g.order(); ++h) v(j * g.order() + h, 0) = r.coeffs[h];
        }
        break;
      default:
        for (std::size_t i = 0; i < f.dim(); ++i) v(i, 0) = Fl(rng() % g.prime());
    }
    lfin::FlMatrix orbit(f.dim(), g.order(), g.prime());
    for (std::size_t h = 0; h < g.order(); ++h) {
      const auto w = f.action(h) * v;
      for (std::size_t i = 0; i < f.dim(); ++i) orbit(i, h) = w(i, 0);
    }
    sub = lfin::FlMatrix::hcat(sub, orbit);
  }
  return lfin::quotient(f, sub).module;
}

// ---------------------------------------------------------------------------
// Cellular homology of the orbit space by brute force: expand every boundary
// over F_l, then identify each cell with its orbit by summing coefficients.

inline std::vector<std::size_t> orbit_space_homology(const lfin::EquivariantCellComplex& x) {
  const auto& g = *x.group;
  const long long p = g.prime();
  const std::size_t dims = x.orbits.size();
  std::vector<Rows> d(dims);  // d[q]: orbits[q-1] x orbits[q]
  for (std::size_t q = 1; q < dims; ++q) {
    const auto& b = x.boundaries[q - 1];
    Rows m(x.orbits[q - 1], std::vector<long long>(x.orbits[q], 0));
    // Cell (j, e) has boundary sum_i b(i, j) e_i; cell (i, h) in the
    // orbit-space picture is identified with orbit i for every h.
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t h = 0; h < g.order(); ++h) m[i][j] = modp(m[i][j] + b.coeff(i, j, h), p);
    d[q] = m;
  }
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < dims; ++q) {
    const std::size_t rk_out = q == 0 ? 0 : naive_rank(d[q], p);
    const std::size_t rk_in = q + 1 < dims ? naive_rank(d[q + 1], p) : 0;
    out.push_back(x.orbits[q] - rk_out - rk_in);
  }
  return out;
}

/// Mod-l homology of the lens-type quotient of S^n by C_m from its integral
/// homology (Z, Z/m in odd degrees below n, Z or 0 on top) and the
/// universal coefficient theorem.
inline std::vector<std::size_t> lens_space_mod_l(unsigned l, unsigned m, unsigned n) {
  // integral homology as (rank, torsion order) per degree
  std::vector<std::pair<int, unsigned>> hz(n + 1, {0, 1});
  hz[0] = {1, 1};
  for (unsigned q = 1; q <= n; ++q) {
    if (q % 2 == 1) hz[q] = q == n ? std::pair<int, unsigned>{1, 1} : std::pair<int, unsigned>{0, m};
    else hz[q] = {0, 1};
  }
  std::vector<std::size_t> out;
  for (unsigned q = 0; q <= n; ++q) {
    std::size_t dim = hz[q].first + (hz[q].second % l == 0 ? 1 : 0);
    if (q > 0 && hz[q - 1].second % l == 0) ++dim;  // Tor(H_{q-1}, F_l)
    out.push_back(dim);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer helpers for abelian tests.

/// gcd of all k x k minors, by brute-force expansion; small matrices only.
inline mpz_class minor_gcd(const lfin::IntMatrix& m, std::size_t k) {
  const std::size_t r = m.rows(), c = m.cols();
  mpz_class g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<mpz_class(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> det =
      [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) -> mpz_class {
    if (rs.empty()) return 1;
    mpz_class sum = 0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (m(rs[0], cs[j]) == 0) continue;
      std::vector<std::size_t> rr(rs.begin() + 1, rs.end()), cc;
      for (std::size_t t = 0; t < cs.size(); ++t)
        if (t != j) cc.push_back(cs[t]);
      const mpz_class term = m(rs[0], cs[j]) * det(rr, cc);
      sum += j % 2 == 0 ? term : mpz_class(-term);
    }
    return sum;
  };
  std::function<void(std::size_t, std::size_t)> pick_rows;
  std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      const mpz_class d = det(rows, cols);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t j = start; j < c; ++j) {
      cols[depth] = j;
      pick_cols(j + 1, depth + 1);
    }
  };
  pick_rows = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t i = start; i < r; ++i) {
      rows[depth] = i;
      pick_rows(i + 1, depth + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

inline lfin::IntMatrix random_int_matrix(std::size_t rows, std::size_t cols, int bound, std::mt19937_64& rng) {
  lfin::IntMatrix m(rows, cols);
  std::uniform_int_distribution<int> d(-bound, bound);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}


// ---------------------------------------------------------------------------
// Random perfect complexes: a minimal core, padded by cones of identities,
// under a random change of basis.

struct PerfectSample {
  lfin::ChainComplex complex;
  lfin::ChainComplex core;
};

inline PerfectSample random_perfect(const GroupPtr& group, std::mt19937_64& rng) {
  const int bottom = int(rng() % 3) - 1;
  std::vector<std::size_t> ranks(1 + rng() % 4);
  for (auto& r : ranks) r = rng() % 3;
  const lfin::ChainComplex core = lfin::random_minimal_complex(group, bottom, ranks, rng);
  lfin::ChainComplex padded = core;
  const std::size_t pads = rng() % 3;
  for (std::size_t k = 0; k < pads; ++k) {
    std::vector<std::size_t> pr(1 + rng() % 2);
    for (auto& r : pr) r = rng() % 2 + (k == 0 ? 1 : 0);
    const auto piece = lfin::random_minimal_complex(group, bottom + int(rng() % 3) - 1, pr, rng);
    padded = lfin::direct_sum(padded, lfin::cone_of_identity(piece));
  }
  return {lfin::random_basis_change(padded, rng).complex, core};
}

/// Elementary unimodular matrix and its inverse.
inline std::pair<lfin::IntMatrix, lfin::IntMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng) {
  lfin::IntMatrix q = lfin::IntMatrix::identity(n), inv = lfin::IntMatrix::identity(n);
  if (n < 2) return {q, inv};
  for (int k = 0; k < 6; ++k) {
    const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
    const long c = long(rng() % 5) - 2;
    lfin::IntMatrix e = lfin::IntMatrix::identity(n), ei = lfin::IntMatrix::identity(n);
    e(i, j) = c;
    ei(i, j) = -c;
    q = e * q;
    inv = inv * ei;
  }
  return {q, inv};
}

struct ShortExact {
  lfin::AbelianMap f;
  lfin::AbelianMap g;
};

/// 0 -> A -> B -> C -> 0 with B an extension of C by A given by a random
/// cocycle, then a random change of generators of B.
inline ShortExact random_short_exact(std::mt19937_64& rng) {
  const std::size_t a = rng() % 3, c = 1 + rng() % 2, ra = rng() % 3, rc = rng() % (c + 1);
  const lfin::IntMatrix rel_a = random_int_matrix(ra, a, 12, rng);
  // Rows of rel_c must be independent for A -> B to stay injective.
  lfin::IntMatrix rel_c(rc, c);
  for (std::size_t i = 0; i < rc; ++i) {
    rel_c(i, i) = 1 + long(rng() % 18);
    for (std::size_t j = i + 1; j < c; ++j) rel_c(i, j) = long(rng() % 7) - 3;
  }
  const std::size_t n = a + c;
  lfin::IntMatrix rel_b(ra + rc, n);
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < a; ++j) rel_b(i, j) = rel_a(i, j);
  for (std::size_t i = 0; i < rc; ++i) {
    for (std::size_t j = 0; j < a; ++j) rel_b(ra + i, j) = long(rng() % 11) - 5;
    for (std::size_t j = 0; j < c; ++j) rel_b(ra + i, a + j) = rel_c(i, j);
  }
  lfin::IntMatrix f(n, a), g(c, n);
  for (std::size_t i = 0; i < a; ++i) f(i, i) = 1;
  for (std::size_t i = 0; i < c; ++i) g(i, a + i) = 1;
  const auto [q, qi] = random_unimodular(n, rng);
  const lfin::FGAbelian A(rel_a, a), B(rel_b * q.transpose(), n), C(rel_c, c);
  return {lfin::AbelianMap(A, B, q * f), lfin::AbelianMap(B, C, g * qi)};
}

}  // namespace testing_support
