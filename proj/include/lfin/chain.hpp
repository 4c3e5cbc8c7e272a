#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lfin/group_algebra.hpp"
#include "lfin/pi_module.hpp"

namespace lfin {

/// Bounded complex of finitely generated free F_l[pi]-modules, homological
/// grading. Degree q has rank(q); d_q maps degree q to degree q-1.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// `boundaries[i]` is d_{bottom+i+1}, a ranks[i] x ranks[i+1] matrix.
  /// Rejects d∘d != 0 with BoundarySquareNonzero.
  ChainComplex(GroupPtr group, int bottom, std::vector<std::size_t> ranks, std::vector<GroupRingMatrix> boundaries);

  static ChainComplex zero(GroupPtr group, int bottom = 0);
  /// A single free module of the given rank in one degree.
  static ChainComplex single(GroupPtr group, int degree, std::size_t rank);

  const GroupPtr& group() const { return group_; }
  const GroupTable& table() const { return *group_; }
  Fl prime() const { return group_->prime(); }
  int bottom() const { return bottom_; }
  int top() const { return bottom_ + static_cast<int>(ranks_.size()) - 1; }
  bool empty() const { return ranks_.empty(); }
  std::size_t rank(int q) const;
  /// d_q, zero-shaped outside the stored range.
  GroupRingMatrix boundary(int q) const;
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<GroupRingMatrix>& boundaries() const { return boundaries_; }

  /// Drops zero-rank degrees at both ends.
  ChainComplex trimmed() const;

  bool operator==(const ChainComplex& other) const {
    return same_group(group_, other.group_) && bottom_ == other.bottom_ && ranks_ == other.ranks_ &&
           boundaries_ == other.boundaries_;
  }

 private:
  GroupPtr group_;
  int bottom_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<GroupRingMatrix> boundaries_;
};

/// Degreewise group-ring matrices commuting with the boundaries.
class ChainMap {
 public:
  /// `components[i]` is the degree (first + i) component; degrees not given are zero.
  ChainMap(ChainComplex source, ChainComplex target, int first, std::vector<GroupRingMatrix> components);

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  /// target.rank(q) x source.rank(q).
  GroupRingMatrix component(int q) const;
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(components_.size()) - 1; }

 private:
  ChainComplex source_;
  ChainComplex target_;
  int low_ = 0;
  std::vector<GroupRingMatrix> components_;
};

ChainMap compose(const ChainMap& after, const ChainMap& before);

/// Bounded complex of finite PiModules with F_l boundary matrices; the
/// general setting for homology, cones, and tower limits.
class ModuleComplex {
 public:
  ModuleComplex() = default;
  /// `boundaries[i]` is d_{bottom+i+1}. Validates equivariance and d∘d = 0.
  ModuleComplex(GroupPtr group, int bottom, std::vector<PiModule> modules, std::vector<FlMatrix> boundaries);

  const GroupPtr& group() const { return group_; }
  Fl prime() const { return group_->prime(); }
  int bottom() const { return bottom_; }
  int top() const { return bottom_ + static_cast<int>(modules_.size()) - 1; }
  bool empty() const { return modules_.empty(); }
  PiModule module(int q) const;
  std::size_t dim(int q) const;
  FlMatrix boundary(int q) const;
  const std::vector<PiModule>& modules() const { return modules_; }
  const std::vector<FlMatrix>& boundaries() const { return boundaries_; }

 private:
  GroupPtr group_;
  int bottom_ = 0;
  std::vector<PiModule> modules_;
  std::vector<FlMatrix> boundaries_;
};

ModuleComplex as_module_complex(const ChainComplex& c);

class ModuleChainMap {
 public:
  ModuleChainMap(ModuleComplex source, ModuleComplex target, int first, std::vector<FlMatrix> components);

  const ModuleComplex& source() const { return source_; }
  const ModuleComplex& target() const { return target_; }
  FlMatrix component(int q) const;

 private:
  ModuleComplex source_;
  ModuleComplex target_;
  int low_ = 0;
  std::vector<FlMatrix> components_;
};

ModuleChainMap as_module_map(const ChainMap& f);
ModuleChainMap compose(const ModuleChainMap& after, const ModuleChainMap& before);

/// ker(d_q) / im(d_{q+1}) with cycle representatives.
Subquotient homology_data(const ModuleComplex& c, int q, bool reverse_choice = false);
PiModule homology(const ModuleComplex& c, int q);
PiModule homology(const ChainComplex& c, int q);

/// dim_F_l H_q for q in [bottom, top]; degrees are evaluated in parallel.
std::vector<std::size_t> homology_dims(const ModuleComplex& c);
std::vector<std::size_t> homology_dims(const ChainComplex& c);
bool is_acyclic(const ModuleComplex& c);
std::optional<int> top_homology_degree(const ModuleComplex& c);

/// Degree q is source_{q-1} ⊕ target_q with d(s, t) = (-d s, f s + d t).
ChainComplex mapping_cone(const ChainMap& f);
ModuleComplex mapping_cone(const ModuleChainMap& f);

bool is_quasi_iso(const ChainMap& f);
bool is_quasi_iso(const ModuleChainMap& f);

/// Every boundary entry lies in the augmentation ideal.
bool is_minimal(const ChainComplex& c);

struct MinimalModel {
  ChainComplex complex;
  ChainMap witness;  // complex -> original, a quasi-isomorphism
};

/// Gaussian cancellation: repeatedly removes a pair of rank-one summands
/// joined by a unit boundary entry (first in row-major order, lowest degree
/// first) until every entry is in the radical.
MinimalModel minimalize(const ChainComplex& c);

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
/// The inclusion a -> a ⊕ b.
ChainMap inclusion_first(const ChainComplex& a, const ChainComplex& b);
ChainComplex shift(const ChainComplex& c, int k);
ChainComplex cone_of_identity(const ChainComplex& c);

long euler_characteristic(const ChainComplex& c);

/// τ≤m: degrees above m dropped, degree m replaced by C_m / im d_{m+1}.
ModuleComplex good_truncation(const ModuleComplex& c, int m);

}  // namespace lfin
