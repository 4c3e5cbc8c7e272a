#include "lfin/pi_module.hpp"

#include <algorithm>
#include <numeric>

#include "lfin/errors.hpp"

namespace lfin {

PiModule::PiModule(GroupPtr group, std::vector<FlMatrix> action) : group_(std::move(group)), action_(std::move(action)) {
  if (!group_) throw Error(ErrorCode::InvalidModule, "module without a group");
  const auto& g = *group_;
  if (action_.size() != g.order()) throw Error(ErrorCode::InvalidModule, "need one action matrix per group element");
  dim_ = action_[0].rows();
  for (const auto& a : action_)
    if (a.rows() != dim_ || a.cols() != dim_ || a.prime() != g.prime())
      throw Error(ErrorCode::InvalidModule, "action matrices must be dim x dim over F_l");
  if (action_[g.identity()] != FlMatrix::identity(dim_, g.prime()))
    throw Error(ErrorCode::InvalidModule, "identity does not act trivially");
  for (auto x : g.generators())
    for (std::size_t y = 0; y < g.order(); ++y)
      if (action_[x] * action_[y] != action_[g.mul(x, y)])
        throw Error(ErrorCode::InvalidModule, "action is not multiplicative");
}

PiModule PiModule::trusted(GroupPtr group, std::vector<FlMatrix> action) {
  PiModule m;
  m.dim_ = action.empty() ? 0 : action[0].rows();
  m.group_ = std::move(group);
  m.action_ = std::move(action);
  return m;
}

PiModule PiModule::zero(GroupPtr group) { return trivial(std::move(group), 0); }

PiModule PiModule::trivial(GroupPtr group, std::size_t dim) {
  std::vector<FlMatrix> action(group->order(), FlMatrix::identity(dim, group->prime()));
  return PiModule(std::move(group), std::move(action));
}

bool is_equivariant(const PiModule& source, const PiModule& target, const FlMatrix& matrix) {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  for (auto g : source.group()->generators())
    if (target.action(g) * matrix != matrix * source.action(g)) return false;
  return true;
}

PiModuleMap::PiModuleMap(PiModule source, PiModule target, FlMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!same_group(source_.group(), target_.group())) throw Error(ErrorCode::GroupMismatch, "map between modules over different groups");
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
    throw Error(ErrorCode::DimensionMismatch, "map matrix shape does not match modules");
  if (!is_equivariant(source_, target_, matrix_)) throw Error(ErrorCode::InvalidMap, "map is not equivariant");
}

PiModule regular_module(GroupPtr group, std::size_t rank) {
  const auto& g = *group;
  const std::size_t n = g.order();
  std::vector<FlMatrix> action;
  action.reserve(n);
  for (std::size_t h = 0; h < n; ++h) {
    FlMatrix a(rank * n, rank * n, g.prime());
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t x = 0; x < n; ++x) a(j * n + g.mul(h, x), j * n + x) = 1;
    action.push_back(std::move(a));
  }
  return PiModule::trusted(std::move(group), std::move(action));
}

PiModule direct_sum(const PiModule& a, const PiModule& b) {
  if (!same_group(a.group(), b.group())) throw Error(ErrorCode::GroupMismatch, "direct sum of modules over different groups");
  std::vector<FlMatrix> action;
  for (std::size_t g = 0; g < a.group()->order(); ++g) action.push_back(FlMatrix::block_diag(a.action(g), b.action(g)));
  return PiModule::trusted(a.group(), std::move(action));
}

FlMatrix radical_span(const PiModule& m) {
  const auto& g = *m.group();
  const FlMatrix id = FlMatrix::identity(m.dim(), g.prime());
  FlMatrix span(m.dim(), 0, g.prime());
  // (gh - 1) = g(h - 1) + (g - 1), so generators of pi suffice.
  for (auto x : g.generators()) span = FlMatrix::hcat(span, m.action(x) - id);
  return span;
}

std::size_t minimal_generators(const PiModule& m) { return m.dim() - rank(radical_span(m)); }

PiModule restrict_to(const PiModule& m, const FlMatrix& basis) {
  if (basis.cols() == 0) return PiModule::zero(m.group());
  const auto& g = *m.group();
  const FlMatrix left = left_inverse(basis);
  std::vector<FlMatrix> action;
  action.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    const FlMatrix moved = m.action(x) * basis;
    FlMatrix coords = left * moved;
    if (basis * coords != moved) throw Error(ErrorCode::InvalidModule, "subspace is not invariant");
    action.push_back(std::move(coords));
  }
  return PiModule::trusted(m.group(), std::move(action));
}

Subquotient subquotient(const PiModule& ambient, const FlMatrix& cycles, const FlMatrix& boundaries, bool reverse_choice) {
  const Fl p = ambient.prime();
  const FlMatrix b_basis = column_basis(boundaries);
  FlMatrix candidates = cycles;
  if (reverse_choice) {
    std::vector<std::size_t> idx(cycles.cols());
    std::iota(idx.rbegin(), idx.rend(), std::size_t{0});
    candidates = cycles.select_columns(idx);
  }
  // Pivots of [B | Z] that fall in the Z block pick a complement of B in Z.
  const auto ech = rref(FlMatrix::hcat(b_basis, candidates));
  std::vector<std::size_t> picked;
  for (auto c : ech.pivots)
    if (c >= b_basis.cols()) picked.push_back(c - b_basis.cols());
  const FlMatrix reps = candidates.select_columns(picked);
  const FlMatrix full = FlMatrix::hcat(b_basis, reps);
  const std::size_t k = reps.cols();
  const FlMatrix left = left_inverse(full);
  const FlMatrix classify = left.row_range(b_basis.cols(), k);

  const auto& g = *ambient.group();
  std::vector<FlMatrix> action;
  action.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) action.push_back(classify * (ambient.action(x) * reps));
  Subquotient out{k == 0 ? PiModule::zero(ambient.group()) : PiModule::trusted(ambient.group(), std::move(action)), reps, classify};
  if (k == 0) out.classify = FlMatrix(0, ambient.dim(), p);
  return out;
}

Subquotient quotient(const PiModule& m, const FlMatrix& sub, bool reverse_choice) {
  return subquotient(m, FlMatrix::identity(m.dim(), m.prime()), sub, reverse_choice);
}

FlMatrix minimal_generator_lifts(const PiModule& m, bool reverse_choice) {
  return quotient(m, radical_span(m), reverse_choice).reps;
}

Kernel kernel_of_map(const PiModuleMap& f) {
  FlMatrix basis = kernel(f.matrix());
  PiModule module = restrict_to(f.source(), basis);
  return {std::move(module), std::move(basis)};
}

FlMatrix free_cover_matrix(const PiModule& m, const FlMatrix& images) {
  const auto& g = *m.group();
  const std::size_t n = g.order();
  FlMatrix cover(m.dim(), images.cols() * n, g.prime());
  for (std::size_t j = 0; j < images.cols(); ++j) {
    const auto img = images.column(j);
    for (std::size_t x = 0; x < n; ++x) cover.set_column(j * n + x, m.action(x) * std::span<const Fl>(img));
  }
  return cover;
}

FreenessResult is_free(const PiModule& m, bool reverse_choice) {
  FreenessResult r;
  const std::size_t n = m.group()->order();
  r.generators = minimal_generator_lifts(m, reverse_choice);
  r.minimal_generators = r.generators.cols();
  const std::size_t cover_dim = r.minimal_generators * n;
  if (m.dim() % n != 0) {
    // A free module has dimension divisible by |pi|; the cover is surjective
    // by Nakayama, so its kernel has the complementary dimension.
    r.cover_kernel_dim = cover_dim - m.dim();
    return r;
  }
  const FlMatrix cover = free_cover_matrix(m, r.generators);
  r.cover_kernel_dim = cover_dim - rank(cover);
  r.free = r.cover_kernel_dim == 0;
  if (r.free) r.rank = r.minimal_generators;
  return r;
}

bool is_projective(const PiModule& m) { return is_free(m).free; }

}  // namespace lfin
