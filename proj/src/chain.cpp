#include "lfin/chain.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lfin/errors.hpp"

namespace lfin {

namespace {

std::string deg(int q) { return "degree " + std::to_string(q); }

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (!same_group(a, b)) throw Error(ErrorCode::GroupMismatch, "complexes over different groups");
}

// Union of the supports of two complexes; nullopt when both are empty.
template <class A, class B>
std::optional<std::pair<int, int>> union_range(const A& a, const B& b) {
  if (a.empty() && b.empty()) return std::nullopt;
  if (a.empty()) return std::pair{b.bottom(), b.top()};
  if (b.empty()) return std::pair{a.bottom(), a.top()};
  return std::pair{std::min(a.bottom(), b.bottom()), std::max(a.top(), b.top())};
}

std::vector<std::size_t> index_range_except(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (i != skip) idx.push_back(i);
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(GroupPtr group, int bottom, std::vector<std::size_t> ranks,
                           std::vector<GroupRingMatrix> boundaries)
    : group_(std::move(group)), bottom_(bottom), ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {
  if (!group_) throw Error(ErrorCode::InvalidArgument, "complex without a group");
  const std::size_t expected = ranks_.empty() ? 0 : ranks_.size() - 1;
  if (boundaries_.size() != expected)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(expected) + " boundary matrices, got " +
                                                  std::to_string(boundaries_.size()));
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    const auto& d = boundaries_[i];
    if (d.rows() != ranks_[i] || d.cols() != ranks_[i + 1] || d.order() != group_->order())
      throw Error(ErrorCode::DimensionMismatch, "boundary in " + deg(bottom_ + int(i) + 1) + " has the wrong shape");
  }
  for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i)
    if (!compose(boundaries_[i], boundaries_[i + 1], *group_).is_zero())
      throw Error(ErrorCode::BoundarySquareNonzero, "d∘d != 0 at " + deg(bottom_ + int(i) + 2));
}

ChainComplex ChainComplex::zero(GroupPtr group, int bottom) { return ChainComplex(std::move(group), bottom, {}, {}); }

ChainComplex ChainComplex::single(GroupPtr group, int degree, std::size_t rank) {
  return ChainComplex(std::move(group), degree, {rank}, {});
}

std::size_t ChainComplex::rank(int q) const {
  if (q < bottom_ || q > top()) return 0;
  return ranks_[std::size_t(q - bottom_)];
}

GroupRingMatrix ChainComplex::boundary(int q) const {
  if (q <= bottom_ || q > top()) return GroupRingMatrix(rank(q - 1), rank(q), *group_);
  return boundaries_[std::size_t(q - bottom_ - 1)];
}

ChainComplex ChainComplex::trimmed() const {
  int lo = bottom_, hi = top();
  while (lo <= hi && rank(lo) == 0) ++lo;
  while (hi >= lo && rank(hi) == 0) --hi;
  if (lo > hi) return zero(group_, bottom_);
  std::vector<std::size_t> r;
  std::vector<GroupRingMatrix> d;
  for (int q = lo; q <= hi; ++q) {
    r.push_back(rank(q));
    if (q > lo) d.push_back(boundary(q));
  }
  return ChainComplex(group_, lo, std::move(r), std::move(d));
}

// ---------------------------------------------------------------------------
// ChainMap

ChainMap::ChainMap(ChainComplex source, ChainComplex target, int first, std::vector<GroupRingMatrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  require_same_group(source_.group(), target_.group());
  const auto& g = source_.table();
  const auto range = union_range(source_, target_);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const int q = first + int(i);
    const auto& c = components[i];
    if (c.rows() != target_.rank(q) || c.cols() != source_.rank(q))
      throw Error(ErrorCode::DimensionMismatch, "chain map component in " + deg(q) + " has the wrong shape");
  }
  if (!range) return;
  low_ = range->first;
  for (int q = range->first; q <= range->second; ++q) {
    const int i = q - first;
    if (i >= 0 && i < int(components.size()))
      components_.push_back(components[std::size_t(i)]);
    else
      components_.emplace_back(target_.rank(q), source_.rank(q), g);
  }
  for (int q = range->first; q <= range->second + 1; ++q) {
    const auto lhs = compose(target_.boundary(q), component(q), g);
    const auto rhs = compose(component(q - 1), source_.boundary(q), g);
    if (lhs != rhs) throw Error(ErrorCode::InvalidMap, "chain map does not commute with boundaries in " + deg(q));
  }
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::vector<GroupRingMatrix> comps;
  for (int q = c.bottom(); q <= c.top(); ++q) comps.push_back(GroupRingMatrix::identity(c.rank(q), c.table()));
  return ChainMap(c, c, c.bottom(), std::move(comps));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  return ChainMap(source, target, 0, {});
}

GroupRingMatrix ChainMap::component(int q) const {
  const int i = q - low_;
  if (i < 0 || i >= int(components_.size())) return GroupRingMatrix(target_.rank(q), source_.rank(q), source_.table());
  return components_[std::size_t(i)];
}

ChainMap compose(const ChainMap& after, const ChainMap& before) {
  if (!(after.source() == before.target()))
    throw Error(ErrorCode::InvalidMap, "composed chain maps do not share the middle complex");
  const auto range = union_range(before.source(), after.target());
  std::vector<GroupRingMatrix> comps;
  if (range)
    for (int q = range->first; q <= range->second; ++q)
      comps.push_back(compose(after.component(q), before.component(q), before.source().table()));
  return ChainMap(before.source(), after.target(), range ? range->first : 0, std::move(comps));
}

// ---------------------------------------------------------------------------
// ModuleComplex

ModuleComplex::ModuleComplex(GroupPtr group, int bottom, std::vector<PiModule> modules, std::vector<FlMatrix> boundaries)
    : group_(std::move(group)), bottom_(bottom), modules_(std::move(modules)), boundaries_(std::move(boundaries)) {
  if (!group_) throw Error(ErrorCode::InvalidArgument, "complex without a group");
  const std::size_t expected = modules_.empty() ? 0 : modules_.size() - 1;
  if (boundaries_.size() != expected) throw Error(ErrorCode::DimensionMismatch, "wrong number of boundary matrices");
  for (const auto& m : modules_) require_same_group(group_, m.group());
  for (std::size_t i = 0; i < boundaries_.size(); ++i)
    if (!is_equivariant(modules_[i + 1], modules_[i], boundaries_[i]))
      throw Error(ErrorCode::InvalidMap, "boundary in " + deg(bottom_ + int(i) + 1) + " is not an equivariant map");
  for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i)
    if (!(boundaries_[i] * boundaries_[i + 1]).is_zero())
      throw Error(ErrorCode::BoundarySquareNonzero, "d∘d != 0 at " + deg(bottom_ + int(i) + 2));
}

PiModule ModuleComplex::module(int q) const {
  if (q < bottom_ || q > top()) return PiModule::zero(group_);
  return modules_[std::size_t(q - bottom_)];
}

std::size_t ModuleComplex::dim(int q) const {
  if (q < bottom_ || q > top()) return 0;
  return modules_[std::size_t(q - bottom_)].dim();
}

FlMatrix ModuleComplex::boundary(int q) const {
  if (q <= bottom_ || q > top()) return FlMatrix(dim(q - 1), dim(q), prime());
  return boundaries_[std::size_t(q - bottom_ - 1)];
}

ModuleComplex as_module_complex(const ChainComplex& c) {
  std::vector<PiModule> modules;
  std::vector<FlMatrix> boundaries;
  for (int q = c.bottom(); q <= c.top(); ++q) {
    modules.push_back(regular_module(c.group(), c.rank(q)));
    if (q > c.bottom()) boundaries.push_back(expand(c.boundary(q), c.table()));
  }
  return ModuleComplex(c.group(), c.bottom(), std::move(modules), std::move(boundaries));
}

ModuleChainMap::ModuleChainMap(ModuleComplex source, ModuleComplex target, int first, std::vector<FlMatrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  require_same_group(source_.group(), target_.group());
  const auto range = union_range(source_, target_);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const int q = first + int(i);
    if (!is_equivariant(source_.module(q), target_.module(q), components[i]))
      throw Error(ErrorCode::InvalidMap, "chain map component in " + deg(q) + " is not an equivariant map");
  }
  if (!range) return;
  low_ = range->first;
  for (int q = range->first; q <= range->second; ++q) {
    const int i = q - first;
    if (i >= 0 && i < int(components.size()))
      components_.push_back(components[std::size_t(i)]);
    else
      components_.emplace_back(target_.dim(q), source_.dim(q), source_.prime());
  }
  for (int q = range->first; q <= range->second + 1; ++q)
    if (target_.boundary(q) * component(q) != component(q - 1) * source_.boundary(q))
      throw Error(ErrorCode::InvalidMap, "chain map does not commute with boundaries in " + deg(q));
}

FlMatrix ModuleChainMap::component(int q) const {
  const int i = q - low_;
  if (i < 0 || i >= int(components_.size())) return FlMatrix(target_.dim(q), source_.dim(q), source_.prime());
  return components_[std::size_t(i)];
}

ModuleChainMap as_module_map(const ChainMap& f) {
  std::vector<FlMatrix> comps;
  const auto range = union_range(f.source(), f.target());
  if (range)
    for (int q = range->first; q <= range->second; ++q) comps.push_back(expand(f.component(q), f.source().table()));
  return ModuleChainMap(as_module_complex(f.source()), as_module_complex(f.target()), range ? range->first : 0,
                        std::move(comps));
}

ModuleChainMap compose(const ModuleChainMap& after, const ModuleChainMap& before) {
  const auto range = union_range(before.source(), after.target());
  std::vector<FlMatrix> comps;
  if (range)
    for (int q = range->first; q <= range->second; ++q) comps.push_back(after.component(q) * before.component(q));
  return ModuleChainMap(before.source(), after.target(), range ? range->first : 0, std::move(comps));
}

// ---------------------------------------------------------------------------
// Homology

Subquotient homology_data(const ModuleComplex& c, int q, bool reverse_choice) {
  return subquotient(c.module(q), kernel(c.boundary(q)), c.boundary(q + 1), reverse_choice);
}

PiModule homology(const ModuleComplex& c, int q) { return homology_data(c, q).module; }

PiModule homology(const ChainComplex& c, int q) {
  const auto& g = c.table();
  const FlMatrix d_in = expand(c.boundary(q + 1), g);
  const FlMatrix d_out = expand(c.boundary(q), g);
  return subquotient(regular_module(c.group(), c.rank(q)), kernel(d_out), d_in).module;
}

namespace {

std::vector<std::size_t> dims_from_ranks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks) {
  // ranks[i] is the rank of d_{bottom+i+1}.
  std::vector<std::size_t> h(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t out = i > 0 ? ranks[i - 1] : 0;
    const std::size_t in = i < ranks.size() ? ranks[i] : 0;
    h[i] = dims[i] - out - in;
  }
  return h;
}

}  // namespace

std::vector<std::size_t> homology_dims(const ModuleComplex& c) {
  const auto& bs = c.boundaries();
  std::vector<std::size_t> ranks(bs.size());
  const std::ptrdiff_t n = std::ptrdiff_t(bs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) ranks[std::size_t(i)] = rank(bs[std::size_t(i)]);
  std::vector<std::size_t> dims;
  for (const auto& m : c.modules()) dims.push_back(m.dim());
  return dims_from_ranks(dims, ranks);
}

std::vector<std::size_t> homology_dims(const ChainComplex& c) {
  const auto& bs = c.boundaries();
  std::vector<std::size_t> ranks(bs.size());
  const std::ptrdiff_t n = std::ptrdiff_t(bs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) ranks[std::size_t(i)] = rank(expand(bs[std::size_t(i)], c.table()));
  std::vector<std::size_t> dims;
  for (auto r : c.ranks()) dims.push_back(r * c.table().order());
  return dims_from_ranks(dims, ranks);
}

bool is_acyclic(const ModuleComplex& c) {
  const auto h = homology_dims(c);
  return std::all_of(h.begin(), h.end(), [](std::size_t d) { return d == 0; });
}

std::optional<int> top_homology_degree(const ModuleComplex& c) {
  const auto h = homology_dims(c);
  for (std::size_t i = h.size(); i-- > 0;)
    if (h[i] != 0) return c.bottom() + int(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cones

ChainComplex mapping_cone(const ChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  const auto& g = s.table();
  if (s.empty() && t.empty()) return ChainComplex::zero(s.group());
  int lo = t.empty() ? s.bottom() + 1 : t.bottom();
  int hi = t.empty() ? s.top() + 1 : t.top();
  if (!s.empty()) {
    lo = std::min(lo, s.bottom() + 1);
    hi = std::max(hi, s.top() + 1);
  }
  std::vector<std::size_t> ranks;
  std::vector<GroupRingMatrix> ds;
  for (int q = lo; q <= hi; ++q) {
    ranks.push_back(s.rank(q - 1) + t.rank(q));
    if (q == lo) continue;
    ds.push_back(ga_block(ga_matrix_neg(s.boundary(q - 1), g), GroupRingMatrix(s.rank(q - 2), t.rank(q), g),
                          f.component(q - 1), t.boundary(q), g));
  }
  return ChainComplex(s.group(), lo, std::move(ranks), std::move(ds));
}

ModuleComplex mapping_cone(const ModuleChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  const Fl p = s.prime();
  if (s.empty() && t.empty()) return ModuleComplex(s.group(), 0, {}, {});
  int lo = t.empty() ? s.bottom() + 1 : t.bottom();
  int hi = t.empty() ? s.top() + 1 : t.top();
  if (!s.empty()) {
    lo = std::min(lo, s.bottom() + 1);
    hi = std::max(hi, s.top() + 1);
  }
  std::vector<PiModule> modules;
  std::vector<FlMatrix> ds;
  for (int q = lo; q <= hi; ++q) {
    modules.push_back(direct_sum(s.module(q - 1), t.module(q)));
    if (q == lo) continue;
    const FlMatrix top = FlMatrix::hcat(s.boundary(q - 1).scaled(p - 1), FlMatrix(s.dim(q - 2), t.dim(q), p));
    const FlMatrix bottom = FlMatrix::hcat(f.component(q - 1), t.boundary(q));
    ds.push_back(FlMatrix::vcat(top, bottom));
  }
  return ModuleComplex(s.group(), lo, std::move(modules), std::move(ds));
}

bool is_quasi_iso(const ChainMap& f) {
  const auto cone = mapping_cone(f);
  const auto h = homology_dims(cone);
  return std::all_of(h.begin(), h.end(), [](std::size_t d) { return d == 0; });
}

bool is_quasi_iso(const ModuleChainMap& f) { return is_acyclic(mapping_cone(f)); }

// ---------------------------------------------------------------------------
// Minimalization

bool is_minimal(const ChainComplex& c) {
  for (const auto& d : c.boundaries())
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (is_unit(d.entry(i, j), c.table())) return false;
  return true;
}

MinimalModel minimalize(const ChainComplex& c) {
  const auto& g = c.table();
  if (c.empty()) return {c, ChainMap::identity(c)};
  const int lo = c.bottom();
  const std::size_t n = c.ranks().size();
  std::vector<std::size_t> ranks = c.ranks();
  std::vector<GroupRingMatrix> d = c.boundaries();  // d[i] = d_{lo+i+1}
  std::vector<GroupRingMatrix> witness;             // original rank x current rank
  for (auto r : ranks) witness.push_back(GroupRingMatrix::identity(r, g));

  for (;;) {
    bool cancelled = false;
    for (std::size_t k = 0; k < d.size() && !cancelled; ++k) {
      const GroupRingMatrix& dq = d[k];
      for (std::size_t i = 0; i < dq.rows() && !cancelled; ++i)
        for (std::size_t j = 0; j < dq.cols() && !cancelled; ++j) {
          const auto u = dq.entry(i, j);
          if (!is_unit(u, g)) continue;
          // d_q : C_q = R e_j ⊕ C'_q -> C_{q-1} = R e_i ⊕ C'_{q-1}, entry u at (i, j).
          const auto u_inv = ga_inverse(u, g);
          const auto keep_rows = index_range_except(dq.rows(), i);
          const auto keep_cols = index_range_except(dq.cols(), j);
          GroupRingMatrix reduced(keep_rows.size(), keep_cols.size(), g);
          for (std::size_t a = 0; a < keep_rows.size(); ++a)
            for (std::size_t b = 0; b < keep_cols.size(); ++b) {
              const std::size_t row = keep_rows[a], col = keep_cols[b];
              const auto correction = ga_mul(ga_mul(dq.entry(i, col), u_inv, g), dq.entry(row, j), g);
              reduced.set(a, b, ga_sub(dq.entry(row, col), correction, g));
            }
          // Inclusion of the reduced complex: e_l -> e_l - (d(i,l) u^-1) e_j in degree q,
          // plain inclusion in degree q-1.
          GroupRingMatrix incl_q(dq.cols(), keep_cols.size(), g);
          for (std::size_t b = 0; b < keep_cols.size(); ++b) {
            incl_q.set(keep_cols[b], b, ga_one(g));
            incl_q.set(j, b, ga_neg(ga_mul(dq.entry(i, keep_cols[b]), u_inv, g), g));
          }
          GroupRingMatrix incl_q1(dq.rows(), keep_rows.size(), g);
          for (std::size_t a = 0; a < keep_rows.size(); ++a) incl_q1.set(keep_rows[a], a, ga_one(g));

          witness[k + 1] = compose(witness[k + 1], incl_q, g);
          witness[k] = compose(witness[k], incl_q1, g);
          if (k + 1 < d.size()) d[k + 1] = d[k + 1].select_rows(keep_cols);
          if (k > 0) d[k - 1] = d[k - 1].select_columns(keep_rows);
          d[k] = std::move(reduced);
          --ranks[k];
          --ranks[k + 1];
          cancelled = true;
        }
    }
    if (!cancelled) break;
  }
  ChainComplex minimal(c.group(), lo, ranks, d);
  (void)n;
  return {minimal, ChainMap(minimal, c, lo, std::move(witness))};
}

// ---------------------------------------------------------------------------
// Sums, shifts, Euler characteristic

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  require_same_group(a.group(), b.group());
  const auto range = union_range(a, b);
  if (!range) return ChainComplex::zero(a.group(), a.bottom());
  const auto& g = a.table();
  std::vector<std::size_t> ranks;
  std::vector<GroupRingMatrix> ds;
  for (int q = range->first; q <= range->second; ++q) {
    ranks.push_back(a.rank(q) + b.rank(q));
    if (q == range->first) continue;
    ds.push_back(ga_block(a.boundary(q), GroupRingMatrix(a.rank(q - 1), b.rank(q), g),
                          GroupRingMatrix(b.rank(q - 1), a.rank(q), g), b.boundary(q), g));
  }
  return ChainComplex(a.group(), range->first, std::move(ranks), std::move(ds));
}

ChainMap inclusion_first(const ChainComplex& a, const ChainComplex& b) {
  const auto sum = direct_sum(a, b);
  const auto& g = a.table();
  std::vector<GroupRingMatrix> comps;
  for (int q = sum.bottom(); q <= sum.top(); ++q)
    comps.push_back(ga_block(GroupRingMatrix::identity(a.rank(q), g), GroupRingMatrix(a.rank(q), 0, g),
                             GroupRingMatrix(b.rank(q), a.rank(q), g), GroupRingMatrix(b.rank(q), 0, g), g));
  return ChainMap(a, sum, sum.bottom(), std::move(comps));
}

ChainComplex shift(const ChainComplex& c, int k) {
  return ChainComplex(c.group(), c.bottom() + k, c.ranks(), c.boundaries());
}

ChainComplex cone_of_identity(const ChainComplex& c) { return mapping_cone(ChainMap::identity(c)); }

long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  for (int q = c.bottom(); q <= c.top(); ++q) chi += (q % 2 == 0 ? 1 : -1) * long(c.rank(q));
  return chi;
}

ModuleComplex good_truncation(const ModuleComplex& c, int m) {
  if (c.empty() || m >= c.top()) return c;
  if (m < c.bottom()) return ModuleComplex(c.group(), c.bottom(), {}, {});
  std::vector<PiModule> modules;
  std::vector<FlMatrix> ds;
  for (int q = c.bottom(); q < m; ++q) {
    modules.push_back(c.module(q));
    if (q > c.bottom()) ds.push_back(c.boundary(q));
  }
  const auto top = quotient(c.module(m), c.boundary(m + 1));
  modules.push_back(top.module);
  if (m > c.bottom()) ds.push_back(c.boundary(m) * top.reps);
  return ModuleComplex(c.group(), c.bottom(), std::move(modules), std::move(ds));
}

}  // namespace lfin
