#pragma once

#include <cstddef>
#include <vector>

#include "lfin/chain.hpp"

namespace lfin {

/// Cells with a free pi-action, given by one representative per orbit. The
/// boundary of each representative in dimension q is a group-ring
/// combination of the representatives in dimension q-1: column j of
/// boundaries[q-1] is the boundary of cell j.
struct EquivariantCellComplex {
  GroupPtr group;
  std::vector<std::size_t> orbits;  // per dimension from 0
  std::vector<GroupRingMatrix> boundaries;
};

/// Cellular chains of the total space, a free F_l[pi]-complex in degrees
/// 0..dim. Throws BoundarySquareNonzero on inconsistent cell data.
ChainComplex chains_of_cover(const EquivariantCellComplex& x);

/// Periodic cell structure on S^n with free C_{l^k}-action: one orbit per
/// dimension, d = t - 1 in odd dimensions and the norm element in even ones.
EquivariantCellComplex lens_complex(unsigned l, unsigned k, unsigned n);

/// One free orbit of points.
EquivariantCellComplex point(const GroupPtr& group);

/// dim_F_l H_q of the orbit space, computed from the coinvariants
/// C ⊗_{F_l[pi]} F_l.
std::size_t base_homology(const EquivariantCellComplex& x, int q);
std::vector<std::size_t> base_homology_dims(const EquivariantCellComplex& x);

}  // namespace lfin
