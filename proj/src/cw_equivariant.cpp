#include "lfin/cw_equivariant.hpp"

#include "lfin/errors.hpp"

namespace lfin {

ChainComplex chains_of_cover(const EquivariantCellComplex& x) {
  if (!x.group) throw Error(ErrorCode::InvalidArgument, "cell complex without a group");
  return ChainComplex(x.group, 0, x.orbits, x.boundaries);
}

EquivariantCellComplex lens_complex(unsigned l, unsigned k, unsigned n) {
  std::size_t order = 1;
  for (unsigned i = 0; i < k; ++i) order *= l;
  const GroupPtr group = cyclic_group(order, Fl(l));
  const auto& g = *group;
  EquivariantCellComplex x{group, std::vector<std::size_t>(n + 1, 1), {}};
  const GroupRingElement t_minus_one = ga_sub(ga_basis(g, order > 1 ? 1 : 0), ga_one(g), g);
  for (unsigned q = 1; q <= n; ++q) {
    GroupRingMatrix d(1, 1, g);
    d.set(0, 0, q % 2 == 1 ? t_minus_one : ga_norm(g));
    x.boundaries.push_back(std::move(d));
  }
  return x;
}

EquivariantCellComplex point(const GroupPtr& group) { return {group, {1}, {}}; }

namespace {

FlMatrix coinvariant_boundary(const EquivariantCellComplex& x, std::size_t i) {
  const auto& g = *x.group;
  const GroupRingMatrix& d = x.boundaries[i];
  FlMatrix m(d.rows(), d.cols(), g.prime());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) m(r, c) = augmentation(d.entry(r, c), g);
  return m;
}

}  // namespace

std::vector<std::size_t> base_homology_dims(const EquivariantCellComplex& x) {
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < x.boundaries.size(); ++i) ranks.push_back(rank(coinvariant_boundary(x, i)));
  std::vector<std::size_t> h;
  for (std::size_t q = 0; q < x.orbits.size(); ++q) {
    const std::size_t out = q > 0 ? ranks[q - 1] : 0;
    const std::size_t in = q < ranks.size() ? ranks[q] : 0;
    h.push_back(x.orbits[q] - out - in);
  }
  return h;
}

std::size_t base_homology(const EquivariantCellComplex& x, int q) {
  if (q < 0 || q >= int(x.orbits.size())) return 0;
  return base_homology_dims(x)[std::size_t(q)];
}

}  // namespace lfin
