#pragma once

#include <optional>

#include "lfin/chain.hpp"

namespace lfin {

/// A free complex F in degrees [bottom, m-1] with a chain map f: F -> M whose
/// cone has homology only in degree m.
struct FreeApproximation {
  ChainComplex free;
  ModuleChainMap map;
  int top_degree;
};

struct ApproximationOptions {
  /// Pick homology generators from the last candidates first.
  bool reverse_choice = false;
};

/// Throws UnboundedHomology if M has homology above m.
FreeApproximation free_approximation(const ModuleComplex& m, int top_degree, const ApproximationOptions& options = {});
FreeApproximation free_approximation(const ChainComplex& c, int top_degree, const ApproximationOptions& options = {});

struct PerfectnessVerdict {
  bool perfect = false;
  /// Top homology degree of the input; empty for acyclic input.
  std::optional<int> top_degree;
  /// P = H_m of the approximation cone.
  PiModule top_obstruction;
  std::optional<long> euler_class;
  /// Minimal free replacement and a quasi-isomorphism into the input.
  std::optional<ChainComplex> replacement;
  std::optional<ModuleChainMap> witness;
  /// For a negative verdict: the approximation whose cone exhibits P.
  std::optional<FreeApproximation> approximation;
};

struct DecideOptions {
  /// Raise MaxDegree instead of working above this homology degree.
  std::optional<int> max_degree;
  bool reverse_choice = false;
};

PerfectnessVerdict decide_perfect(const ModuleComplex& m, const DecideOptions& options = {});
PerfectnessVerdict decide_perfect(const ChainComplex& c, const DecideOptions& options = {});

/// The witness of a verdict on a free input, as a group-ring chain map.
ChainMap chain_witness(const PerfectnessVerdict& v, const ChainComplex& input);

/// Class in K_0(F_l[pi]) = Z together with the reduced class, which vanishes.
struct WallClass {
  long k0 = 0;
  long reduced = 0;
};

/// Throws NotPerfect.
WallClass wall_class(const ChainComplex& c);

/// Minimal free resolution F_length -> ... -> F_0 of M, in degrees 0..length,
/// with the augmentation F_0 -> M as an F_l matrix.
struct Resolution {
  ChainComplex complex;
  FlMatrix augmentation;
};

Resolution minimal_resolution(const PiModule& m, int length);

/// Converts an equivariant F_l map between free modules to group-ring form.
GroupRingMatrix to_group_ring(const FlMatrix& m, std::size_t target_rank, std::size_t source_rank, const GroupTable& g);

}  // namespace lfin
