#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lfin/finiteness.hpp"

namespace lfin {

/// Inverse system X_0 <- X_1 <- X_2 <- ... of bounded free complexes, all
/// supported in degrees [low, high]. bonds[n] : X_{n+1} -> X_n.
class Tower {
 public:
  Tower(GroupPtr group, int low, int high, std::vector<ChainComplex> levels, std::vector<ChainMap> bonds);

  const GroupPtr& group() const { return group_; }
  const GroupTable& table() const { return *group_; }
  Fl prime() const { return group_->prime(); }
  int low() const { return low_; }
  int high() const { return high_; }
  std::size_t size() const { return levels_.size(); }
  const ChainComplex& level(std::size_t n) const { return levels_.at(n); }
  const ChainMap& bond(std::size_t n) const { return bonds_.at(n); }
  const std::vector<ChainComplex>& levels() const { return levels_; }
  const std::vector<ChainMap>& bonds() const { return bonds_; }

  /// The F_l matrix of X_{n+h} -> X_n in degree q.
  FlMatrix composite(int q, std::size_t n, std::size_t h) const;

  /// Drops the first k levels.
  Tower reindexed(std::size_t k) const;

 private:
  GroupPtr group_;
  int low_;
  int high_;
  std::vector<ChainComplex> levels_;
  std::vector<ChainMap> bonds_;
};

/// Pads c with zero modules so that it lives exactly on [low, high].
ChainComplex pad_to(const ChainComplex& c, int low, int high);

struct StableImage {
  FlMatrix basis;  // columns in X_n, degree q
  std::size_t dim = 0;
  /// Image from level n+h equals the image from level n+h+1.
  bool stable = false;
};

/// Im(X_{n+h} -> X_n) in degree q. Throws HorizonExhausted when level n+h+1
/// is not supplied.
StableImage stable_images(const Tower& t, int q, std::size_t n, std::size_t h);

/// Smallest h at which the degree-q images into level n are stable.
std::size_t stabilization_horizon(const Tower& t, int q, std::size_t n);

struct TowerLimit {
  /// Level at which the limit is represented.
  std::size_t level;
  std::size_t horizon;
  ModuleComplex complex;
  /// Per degree from complex.bottom(): basis of the stable image in X_level.
  std::vector<FlMatrix> inclusions;
};

/// The inverse limit, realised as the complex of stable images at the first
/// level n where images from n+h are stable and the bond from level n+1
/// restricts to an isomorphism of stable images. Degrees above
/// `up_to_degree` are dropped.
TowerLimit limit_complex(const Tower& t, std::size_t horizon, std::optional<int> up_to_degree = std::nullopt);

/// The complex of stable images at `level`, one basis per degree from
/// t.low(); differentials restricted from the level.
ModuleComplex stable_image_complex(const Tower& t, std::size_t level, const std::vector<FlMatrix>& bases);

/// With a homology bound m, decides the good truncation at m of the limit;
/// otherwise the whole limit.
PerfectnessVerdict pro_decide_perfect(const Tower& t, std::size_t horizon, std::optional<int> homology_bound = std::nullopt,
                                      const DecideOptions& options = {});

/// Stabilised dims of the image towers of H_q(X_n), computed on homology
/// first (independently of limit_complex); one entry per degree in [low, high].
std::vector<std::size_t> homology_image_dims(const Tower& t, std::size_t horizon);

// Fixtures.

Tower constant_tower(const ChainComplex& c, std::size_t levels);
/// Single rank-1 module in `degree`, bonds multiplication by `element`.
Tower multiplication_tower(const GroupPtr& group, const GroupRingElement& element, std::size_t levels, int degree = 0);
/// X_n = brutal truncation of c to degrees >= top - n, bonds the projections.
Tower truncation_tower(const ChainComplex& c, std::size_t levels);
/// Core complex padded per level with a part killed by nilpotent bonds and a
/// contractible part, core bonds multiplication by central units, then a
/// random change of basis in every level.
Tower random_stabilizing_tower(const ChainComplex& core, std::size_t levels, std::uint64_t seed);
/// Towers whose levels are the length-`length` truncation of the minimal
/// resolution of the trivial module, randomly padded as above.
Tower resolution_tower(const GroupPtr& group, int length, std::size_t levels, std::uint64_t seed);

}  // namespace lfin
