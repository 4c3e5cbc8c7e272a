#include "lfin/towers.hpp"

#include <algorithm>
#include <string>

#include "lfin/errors.hpp"
#include "lfin/random.hpp"

namespace lfin {

ChainComplex pad_to(const ChainComplex& c, int low, int high) {
  if (!c.empty()) {
    for (int q = c.bottom(); q < low; ++q)
      if (c.rank(q) != 0) throw Error(ErrorCode::DimensionMismatch, "complex extends below the tower range");
    for (int q = high + 1; q <= c.top(); ++q)
      if (c.rank(q) != 0) throw Error(ErrorCode::DimensionMismatch, "complex extends above the tower range");
  }
  std::vector<std::size_t> ranks;
  std::vector<GroupRingMatrix> d;
  for (int q = low; q <= high; ++q) {
    ranks.push_back(c.rank(q));
    if (q > low) d.push_back(c.boundary(q));
  }
  return ChainComplex(c.group(), low, std::move(ranks), std::move(d));
}

Tower::Tower(GroupPtr group, int low, int high, std::vector<ChainComplex> levels, std::vector<ChainMap> bonds)
    : group_(std::move(group)), low_(low), high_(high), levels_(std::move(levels)), bonds_(std::move(bonds)) {
  if (high_ < low_) throw Error(ErrorCode::InvalidArgument, "empty tower degree range");
  if (levels_.empty()) throw Error(ErrorCode::InvalidArgument, "tower without levels");
  if (bonds_.size() + 1 != levels_.size()) throw Error(ErrorCode::DimensionMismatch, "need one bond per adjacent level pair");
  for (const auto& l : levels_) {
    if (!same_group(group_, l.group())) throw Error(ErrorCode::GroupMismatch, "tower level over a different group");
    if (l.bottom() != low_ || l.top() != high_)
      throw Error(ErrorCode::DimensionMismatch, "tower level not supported on the tower degree range");
  }
  for (std::size_t n = 0; n < bonds_.size(); ++n)
    if (!(bonds_[n].source() == levels_[n + 1]) || !(bonds_[n].target() == levels_[n]))
      throw Error(ErrorCode::InvalidMap, "bond " + std::to_string(n) + " does not connect adjacent levels");
}

FlMatrix Tower::composite(int q, std::size_t n, std::size_t h) const {
  FlMatrix m = FlMatrix::identity(levels_.at(n).rank(q) * group_->order(), prime());
  for (std::size_t i = n; i < n + h; ++i) m = m * expand(bonds_.at(i).component(q), *group_);
  return m;
}

Tower Tower::reindexed(std::size_t k) const {
  if (k >= levels_.size()) throw Error(ErrorCode::HorizonExhausted, "cannot drop every level");
  return Tower(group_, low_, high_, std::vector<ChainComplex>(levels_.begin() + std::ptrdiff_t(k), levels_.end()),
               std::vector<ChainMap>(bonds_.begin() + std::ptrdiff_t(k), bonds_.end()));
}

StableImage stable_images(const Tower& t, int q, std::size_t n, std::size_t h) {
  if (n + h + 1 >= t.size())
    throw Error(ErrorCode::HorizonExhausted, "need level " + std::to_string(n + h + 1) + " but the tower has " +
                                                 std::to_string(t.size()) + " levels");
  const FlMatrix a = t.composite(q, n, h);
  const FlMatrix b = t.composite(q, n, h + 1);
  StableImage s;
  s.basis = column_basis(a);
  s.dim = s.basis.cols();
  // Im(b) ⊆ Im(a), so equal ranks mean equal images.
  s.stable = rank(b) == s.dim;
  return s;
}

std::size_t stabilization_horizon(const Tower& t, int q, std::size_t n) {
  for (std::size_t h = 0; n + h + 1 < t.size(); ++h)
    if (stable_images(t, q, n, h).stable) return h;
  throw Error(ErrorCode::HorizonExhausted, "degree " + std::to_string(q) + " images into level " + std::to_string(n) +
                                               " do not stabilise within the supplied levels");
}

TowerLimit limit_complex(const Tower& t, std::size_t horizon, std::optional<int> up_to_degree) {
  const int hi = up_to_degree ? std::min(t.high(), *up_to_degree) : t.high();
  const int lo = t.low();
  for (std::size_t n = 0; n + horizon + 2 < t.size(); ++n) {
    std::vector<FlMatrix> bases;
    bool ok = true;
    for (int q = lo; q <= hi && ok; ++q) {
      const StableImage here = stable_images(t, q, n, horizon);
      const StableImage next = stable_images(t, q, n + 1, horizon);
      ok = here.stable && next.stable && here.dim == next.dim;
      bases.push_back(here.basis);
    }
    if (!ok) continue;
    ModuleComplex complex = stable_image_complex(t, n, bases);
    return {n, horizon, std::move(complex), std::move(bases)};
  }
  throw Error(ErrorCode::HorizonExhausted, "stable images do not settle within the supplied levels");
}

ModuleComplex stable_image_complex(const Tower& t, std::size_t level, const std::vector<FlMatrix>& bases) {
  const ChainComplex& x = t.level(level);
  const auto& g = t.table();
  const int lo = t.low();
  std::vector<PiModule> modules;
  std::vector<FlMatrix> d;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const int q = lo + int(i);
    modules.push_back(restrict_to(regular_module(t.group(), x.rank(q)), bases[i]));
    if (i > 0) d.push_back(left_inverse(bases[i - 1]) * (expand(x.boundary(q), g) * bases[i]));
  }
  return ModuleComplex(t.group(), lo, std::move(modules), std::move(d));
}

PerfectnessVerdict pro_decide_perfect(const Tower& t, std::size_t horizon, std::optional<int> homology_bound,
                                      const DecideOptions& options) {
  if (!homology_bound) return decide_perfect(limit_complex(t, horizon).complex, options);
  const TowerLimit lim = limit_complex(t, horizon, *homology_bound + 1);
  return decide_perfect(good_truncation(lim.complex, *homology_bound), options);
}

std::vector<std::size_t> homology_image_dims(const Tower& t, std::size_t horizon) {
  const auto& g = t.table();
  std::vector<std::size_t> out;
  for (int q = t.low(); q <= t.high(); ++q) {
    // H_q of every level, then the induced bonds H(X_{n+1}) -> H(X_n).
    std::vector<Subquotient> h;
    for (const auto& x : t.levels())
      h.push_back(subquotient(regular_module(t.group(), x.rank(q)), kernel(expand(x.boundary(q), g)),
                              expand(x.boundary(q + 1), g)));
    std::vector<FlMatrix> induced;
    for (std::size_t n = 0; n + 1 < t.size(); ++n)
      induced.push_back(h[n].classify * (expand(t.bond(n).component(q), g) * h[n + 1].reps));
    auto image_rank = [&](std::size_t n, std::size_t steps) {
      FlMatrix m = FlMatrix::identity(h[n].module.dim(), t.prime());
      for (std::size_t i = n; i < n + steps; ++i) m = m * induced[i];
      return rank(m);
    };
    bool found = false;
    for (std::size_t n = 0; n + horizon + 2 < t.size() && !found; ++n) {
      const std::size_t here = image_rank(n, horizon);
      const std::size_t next = image_rank(n + 1, horizon);
      if (here == image_rank(n, horizon + 1) && next == image_rank(n + 1, horizon + 1) && here == next) {
        out.push_back(here);
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::HorizonExhausted, "homology images do not settle in degree " + std::to_string(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures

Tower constant_tower(const ChainComplex& c, std::size_t levels) {
  const ChainComplex x = c.empty() ? ChainComplex(c.group(), c.bottom(), {0}, {}) : c;
  std::vector<ChainComplex> ls(levels, x);
  std::vector<ChainMap> bonds(levels > 0 ? levels - 1 : 0, ChainMap::identity(x));
  return Tower(x.group(), x.bottom(), x.top(), std::move(ls), std::move(bonds));
}

Tower multiplication_tower(const GroupPtr& group, const GroupRingElement& element, std::size_t levels, int degree) {
  const ChainComplex x = ChainComplex::single(group, degree, 1);
  GroupRingMatrix m(1, 1, *group);
  m.set(0, 0, element);
  std::vector<ChainComplex> ls(levels, x);
  std::vector<ChainMap> bonds(levels > 0 ? levels - 1 : 0, ChainMap(x, x, degree, {m}));
  return Tower(group, degree, degree, std::move(ls), std::move(bonds));
}

Tower truncation_tower(const ChainComplex& c, std::size_t levels) {
  const auto& g = c.table();
  const int lo = c.bottom(), hi = c.top();
  auto level = [&](std::size_t n) {
    const int cut = hi - int(n);
    std::vector<std::size_t> ranks;
    std::vector<GroupRingMatrix> d;
    for (int q = lo; q <= hi; ++q) {
      ranks.push_back(q >= cut ? c.rank(q) : 0);
      if (q > lo) d.push_back(q - 1 >= cut ? c.boundary(q) : GroupRingMatrix(ranks[ranks.size() - 2], ranks.back(), g));
    }
    return ChainComplex(c.group(), lo, std::move(ranks), std::move(d));
  };
  std::vector<ChainComplex> ls;
  for (std::size_t n = 0; n < levels; ++n) ls.push_back(level(n));
  std::vector<ChainMap> bonds;
  for (std::size_t n = 0; n + 1 < levels; ++n) {
    std::vector<GroupRingMatrix> comps;
    for (int q = lo; q <= hi; ++q) {
      const std::size_t rows = ls[n].rank(q), cols = ls[n + 1].rank(q);
      comps.push_back(rows == cols && rows > 0 ? GroupRingMatrix::identity(rows, g) : GroupRingMatrix(rows, cols, g));
    }
    bonds.emplace_back(ls[n + 1], ls[n], lo, std::move(comps));
  }
  return Tower(c.group(), lo, hi, std::move(ls), std::move(bonds));
}

namespace {

GroupRingMatrix scalar_matrix(std::size_t n, const GroupRingElement& e, const GroupTable& g) {
  GroupRingMatrix m(n, n, g);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, e);
  return m;
}

}  // namespace

Tower random_stabilizing_tower(const ChainComplex& core, std::size_t levels, std::uint64_t seed) {
  Rng rng(seed);
  const GroupPtr& group = core.group();
  const auto& g = *group;
  const int lo = core.empty() ? 0 : core.bottom();
  const int hi = core.empty() ? 0 : std::max(core.top(), lo + 1);
  std::uniform_int_distribution<std::size_t> small(0, 2);

  // Part whose bonds are nilpotent: a random minimal complex.
  std::vector<std::size_t> dying_ranks;
  for (int q = lo; q <= hi; ++q) dying_ranks.push_back(small(rng));
  const ChainComplex dying = random_minimal_complex(group, lo, dying_ranks, rng);
  // Contractible part: cone of the identity on a complex in [lo, hi-1].
  std::vector<std::size_t> cone_ranks;
  for (int q = lo; q < hi; ++q) cone_ranks.push_back(small(rng));
  const ChainComplex contractible = cone_of_identity(random_minimal_complex(group, lo, cone_ranks, rng));

  const ChainComplex base =
      pad_to(direct_sum(direct_sum(pad_to(core.empty() ? ChainComplex(group, lo, {0}, {}) : core, lo, hi), dying),
                        contractible),
             lo, hi);

  const auto centre = center(g);
  std::vector<std::size_t> nontrivial;
  for (auto z : centre)
    if (z != g.identity()) nontrivial.push_back(z);
  const GroupRingElement nilpotent =
      nontrivial.empty() ? ga_zero(g) : ga_sub(ga_basis(g, nontrivial[rng() % nontrivial.size()]), ga_one(g), g);

  // Bond components on base: unit on the core and contractible part, nilpotent on the dying part.
  // The unit must be the same in every degree of one bond.
  auto bond_on_base = [&](int q, const GroupRingElement& unit) {
    const std::size_t rc = core.rank(q), rd = dying.rank(q), rk = contractible.rank(q);
    const auto head = ga_block(scalar_matrix(rc, unit, g), GroupRingMatrix(rc, rd, g), GroupRingMatrix(rd, rc, g),
                               scalar_matrix(rd, nilpotent, g), g);
    return ga_block(head, GroupRingMatrix(rc + rd, rk, g), GroupRingMatrix(rk, rc + rd, g), scalar_matrix(rk, unit, g), g);
  };

  std::vector<BasisChange> changes;
  std::vector<ChainComplex> ls;
  for (std::size_t n = 0; n < levels; ++n) {
    changes.push_back(random_basis_change(base, rng));
    ls.push_back(changes.back().complex);
  }
  std::vector<ChainMap> bonds;
  for (std::size_t n = 0; n + 1 < levels; ++n) {
    const auto unit = ga_basis(g, centre[rng() % centre.size()], Fl(1 + rng() % (g.prime() - 1)));
    std::vector<GroupRingMatrix> comps;
    for (int q = lo; q <= hi; ++q) {
      const std::size_t i = std::size_t(q - lo);
      comps.push_back(compose(changes[n].forward[i], compose(bond_on_base(q, unit), changes[n + 1].backward[i], g), g));
    }
    bonds.emplace_back(ls[n + 1], ls[n], lo, std::move(comps));
  }
  return Tower(group, lo, hi, std::move(ls), std::move(bonds));
}

Tower resolution_tower(const GroupPtr& group, int length, std::size_t levels, std::uint64_t seed) {
  const Resolution r = minimal_resolution(PiModule::trivial(group, 1), length);
  return random_stabilizing_tower(r.complex, levels, seed);
}

}  // namespace lfin
