#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lfin/chain.hpp"

namespace lfin {

using Rng = std::mt19937_64;

GroupRingElement random_element(const GroupTable& g, Rng& rng);
/// Uniform in the augmentation ideal.
GroupRingElement random_radical_element(const GroupTable& g, Rng& rng);
GroupRingElement random_unit(const GroupTable& g, Rng& rng);

/// Group elements commuting with everything.
std::vector<std::size_t> center(const GroupTable& g);

GroupRingMatrix random_matrix(std::size_t rows, std::size_t cols, const GroupTable& g, Rng& rng);

/// An invertible matrix and its inverse, as a product of elementary and
/// diagonal unit matrices.
std::pair<GroupRingMatrix, GroupRingMatrix> random_invertible(std::size_t n, const GroupTable& g, Rng& rng);

/// A complex with every boundary entry in the augmentation ideal. Each d_{q+1}
/// has columns drawn from radical multiples of the cycles of d_q.
ChainComplex random_minimal_complex(const GroupPtr& group, int bottom, const std::vector<std::size_t>& ranks, Rng& rng);

/// The same complex after a random invertible change of basis in every
/// degree, with the isomorphism from the original.
struct BasisChange {
  ChainComplex complex;
  std::vector<GroupRingMatrix> forward;  // per degree from bottom: original -> new
  std::vector<GroupRingMatrix> backward;
};
BasisChange random_basis_change(const ChainComplex& c, Rng& rng);

}  // namespace lfin
