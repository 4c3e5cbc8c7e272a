#pragma once

#include <cstddef>
#include <vector>

#include "lfin/fl_matrix.hpp"
#include "lfin/group_algebra.hpp"

namespace lfin {

/// Finite-dimensional F_l vector space with a left action of pi, one
/// invertible matrix per group element.
class PiModule {
 public:
  PiModule() = default;
  /// Validates action(e) = 1 and action(g) action(h) = action(gh); checking
  /// g over a generating set suffices.
  PiModule(GroupPtr group, std::vector<FlMatrix> action);

  /// Skips validation; for modules built by this library from valid data.
  static PiModule trusted(GroupPtr group, std::vector<FlMatrix> action);
  static PiModule zero(GroupPtr group);
  static PiModule trivial(GroupPtr group, std::size_t dim);

  const GroupPtr& group() const { return group_; }
  std::size_t dim() const { return dim_; }
  Fl prime() const { return group_->prime(); }
  const FlMatrix& action(std::size_t g) const { return action_.at(g); }
  const std::vector<FlMatrix>& actions() const { return action_; }

  bool operator==(const PiModule& other) const {
    return same_group(group_, other.group_) && dim_ == other.dim_ && action_ == other.action_;
  }

 private:
  GroupPtr group_;
  std::size_t dim_ = 0;
  std::vector<FlMatrix> action_;
};

/// Equivariant F_l-linear map; matrix is target.dim x source.dim.
class PiModuleMap {
 public:
  PiModuleMap(PiModule source, PiModule target, FlMatrix matrix);

  const PiModule& source() const { return source_; }
  const PiModule& target() const { return target_; }
  const FlMatrix& matrix() const { return matrix_; }

 private:
  PiModule source_;
  PiModule target_;
  FlMatrix matrix_;
};

/// F_l[pi]^rank with pi acting by left multiplication.
PiModule regular_module(GroupPtr group, std::size_t rank);

PiModule direct_sum(const PiModule& a, const PiModule& b);

/// Columns spanning rad(M) = span{(g - 1) m}.
FlMatrix radical_span(const PiModule& m);

/// Nakayama: dim M / rad(M).
std::size_t minimal_generators(const PiModule& m);

/// The induced module on an invariant subspace spanned by independent
/// columns of `basis`. Throws InvalidModule if the span is not invariant.
PiModule restrict_to(const PiModule& m, const FlMatrix& basis);

/// A subquotient Z/B of an ambient module, with Z and B invariant and B ⊆ Z.
/// `reps` are ambient lifts of the quotient basis; for z in Z,
/// `classify * z` gives its class in quotient coordinates.
struct Subquotient {
  PiModule module;
  FlMatrix reps;
  FlMatrix classify;
};

/// `cycles` and `boundaries` are given by spanning columns (need not be
/// independent). With reverse_choice the quotient basis is picked from the
/// last candidate columns first.
Subquotient subquotient(const PiModule& ambient, const FlMatrix& cycles, const FlMatrix& boundaries,
                        bool reverse_choice = false);

/// M / span(sub).
Subquotient quotient(const PiModule& m, const FlMatrix& sub, bool reverse_choice = false);

/// Lifts of a minimal generating set (a basis of M / rad M), as columns.
FlMatrix minimal_generator_lifts(const PiModule& m, bool reverse_choice = false);

struct Kernel {
  PiModule module;
  FlMatrix inclusion;  // source.dim x ker.dim
};

Kernel kernel_of_map(const PiModuleMap& f);

/// The equivariant map F_l[pi]^k -> M sending e_j to column j of `images`.
FlMatrix free_cover_matrix(const PiModule& m, const FlMatrix& images);

struct FreenessResult {
  bool free = false;
  std::size_t rank = 0;  // valid when free
  std::size_t minimal_generators = 0;
  std::size_t cover_kernel_dim = 0;
  /// Lifted minimal generators; a free basis when `free`.
  FlMatrix generators;
};

/// Builds the minimal free cover F_l[pi]^k -> M and checks that its kernel
/// vanishes. Over the local ring F_l[pi] this decides freeness, and since
/// projective modules are free it also decides projectivity.
FreenessResult is_free(const PiModule& m, bool reverse_choice = false);
bool is_projective(const PiModule& m);

/// Whether the matrix intertwines the two actions.
bool is_equivariant(const PiModule& source, const PiModule& target, const FlMatrix& matrix);

}  // namespace lfin
