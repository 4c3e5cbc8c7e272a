#include "lfin/finiteness.hpp"

#include <string>

#include "lfin/errors.hpp"

namespace lfin {

namespace {

// F and f during construction; f[i] is the component in degree bottom + i.
struct Builder {
  const ModuleComplex& target;
  GroupPtr group;
  int bottom;
  std::vector<std::size_t> ranks;
  std::vector<GroupRingMatrix> d;  // d[i] = d_{bottom+i+1}
  std::vector<FlMatrix> f;

  std::size_t rank(int q) const {
    const int i = q - bottom;
    return i >= 0 && i < int(ranks.size()) ? ranks[std::size_t(i)] : 0;
  }

  FlMatrix free_boundary(int q) const {
    const int i = q - bottom - 1;
    if (i < 0 || i >= int(d.size())) return FlMatrix(rank(q - 1) * group->order(), rank(q) * group->order(), group->prime());
    return expand(d[std::size_t(i)], *group);
  }

  FlMatrix map(int q) const {
    const int i = q - bottom;
    if (i < 0 || i >= int(f.size())) return FlMatrix(target.dim(q), rank(q) * group->order(), group->prime());
    return f[std::size_t(i)];
  }

  // Cone degree q is F_{q-1} ⊕ M_q.
  PiModule cone_module(int q) const {
    return direct_sum(regular_module(group, rank(q - 1)), target.module(q));
  }

  FlMatrix cone_boundary(int q) const {
    const Fl p = group->prime();
    const std::size_t n = group->order();
    const FlMatrix top = FlMatrix::hcat(free_boundary(q - 1).scaled(p - 1), FlMatrix(rank(q - 2) * n, target.dim(q), p));
    const FlMatrix low = FlMatrix::hcat(map(q - 1), target.boundary(q));
    return FlMatrix::vcat(top, low);
  }

  Subquotient cone_homology(int q, bool reverse) const {
    return subquotient(cone_module(q), kernel(cone_boundary(q)), cone_boundary(q + 1), reverse);
  }

  // For each cycle column (a, b) of cone_q = F_{q-1} ⊕ M_q, adds a free
  // generator x in degree q with d x = -a and f x = b.
  void attach(int q, const FlMatrix& cycles) {
    const std::size_t k = cycles.cols();
    if (k == 0) return;
    const Fl p = group->prime();
    const std::size_t n = group->order();
    const std::size_t below = rank(q - 1) * n;
    while (q - bottom >= int(ranks.size())) {
      ranks.push_back(0);
      f.emplace_back(target.dim(bottom + int(ranks.size()) - 1), 0, p);
      if (ranks.size() > 1) d.emplace_back(ranks[ranks.size() - 2], 0, *group);
    }
    const std::size_t i = std::size_t(q - bottom);
    const FlMatrix a = cycles.row_range(0, below).scaled(p - 1);
    const FlMatrix b = cycles.row_range(below, target.dim(q));
    if (i > 0) {
      const GroupRingMatrix new_cols = from_free_vectors(a, rank(q - 1), *group);
      GroupRingMatrix grown(d[i - 1].rows(), d[i - 1].cols() + k, *group);
      for (std::size_t r = 0; r < grown.rows(); ++r) {
        for (std::size_t c = 0; c < d[i - 1].cols(); ++c) grown.set(r, c, d[i - 1].entry(r, c));
        for (std::size_t c = 0; c < k; ++c) grown.set(r, d[i - 1].cols() + c, new_cols.entry(r, c));
      }
      d[i - 1] = std::move(grown);
    }
    f[i] = FlMatrix::hcat(f[i], free_cover_matrix(target.module(q), b));
    ranks[i] += k;
  }

  ChainComplex complex() const { return ChainComplex(group, bottom, ranks, d); }

  ModuleChainMap chain_map() const {
    return ModuleChainMap(as_module_complex(complex()), target, bottom, f);
  }
};

void check_bound(const ModuleComplex& m, int top_degree) {
  const auto h = homology_dims(m);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0 && m.bottom() + int(i) > top_degree)
      throw Error(ErrorCode::UnboundedHomology,
                  "homology in degree " + std::to_string(m.bottom() + int(i)) + " exceeds " + std::to_string(top_degree));
}

Builder approximate(const ModuleComplex& m, int top_degree, bool reverse) {
  Builder b{m, m.group(), m.bottom(), {}, {}, {}};
  for (int n = m.bottom() - 1; n <= top_degree - 2; ++n) {
    const Subquotient h = b.cone_homology(n + 1, reverse);
    if (h.module.dim() == 0) continue;
    const FlMatrix gens = minimal_generator_lifts(h.module, reverse);
    b.attach(n + 1, h.reps * gens);
  }
  return b;
}

}  // namespace

FreeApproximation free_approximation(const ModuleComplex& m, int top_degree, const ApproximationOptions& options) {
  check_bound(m, top_degree);
  const Builder b = approximate(m, top_degree, options.reverse_choice);
  return {b.complex(), b.chain_map(), top_degree};
}

FreeApproximation free_approximation(const ChainComplex& c, int top_degree, const ApproximationOptions& options) {
  return free_approximation(as_module_complex(c), top_degree, options);
}

PerfectnessVerdict decide_perfect(const ModuleComplex& m, const DecideOptions& options) {
  PerfectnessVerdict v;
  v.top_degree = top_homology_degree(m);
  v.top_obstruction = PiModule::zero(m.group());
  if (!v.top_degree) {
    const ChainComplex zero = ChainComplex::zero(m.group(), m.bottom());
    v.perfect = true;
    v.euler_class = 0;
    v.replacement = zero;
    v.witness = ModuleChainMap(as_module_complex(zero), m, m.bottom(), {});
    return v;
  }
  const int top = *v.top_degree;
  if (options.max_degree && top > *options.max_degree)
    throw Error(ErrorCode::MaxDegree, "top homology degree " + std::to_string(top) + " exceeds the cap " +
                                          std::to_string(*options.max_degree));
  Builder b = approximate(m, top, options.reverse_choice);
  const Subquotient p = b.cone_homology(top, options.reverse_choice);
  v.top_obstruction = p.module;
  const FreenessResult freeness = is_free(p.module, options.reverse_choice);
  if (!freeness.free) {
    v.approximation = FreeApproximation{b.complex(), b.chain_map(), top};
    return v;
  }
  b.attach(top, p.reps * freeness.generators);
  const MinimalModel minimal = minimalize(b.complex());
  v.perfect = true;
  v.replacement = minimal.complex;
  v.witness = compose(b.chain_map(), as_module_map(minimal.witness));
  v.euler_class = euler_characteristic(minimal.complex);
  return v;
}

PerfectnessVerdict decide_perfect(const ChainComplex& c, const DecideOptions& options) {
  return decide_perfect(as_module_complex(c), options);
}

GroupRingMatrix to_group_ring(const FlMatrix& m, std::size_t target_rank, std::size_t source_rank, const GroupTable& g) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < source_rank; ++j) cols.push_back(j * g.order() + g.identity());
  return from_free_vectors(m.select_columns(cols), target_rank, g);
}

ChainMap chain_witness(const PerfectnessVerdict& v, const ChainComplex& input) {
  if (!v.perfect || !v.replacement || !v.witness) throw Error(ErrorCode::NotPerfect, "no replacement available");
  const ChainComplex& r = *v.replacement;
  const auto& g = input.table();
  std::vector<GroupRingMatrix> comps;
  const int lo = std::min(r.bottom(), input.bottom());
  const int hi = std::max(r.top(), input.top());
  for (int q = lo; q <= hi; ++q) comps.push_back(to_group_ring(v.witness->component(q), input.rank(q), r.rank(q), g));
  return ChainMap(r, input, lo, std::move(comps));
}

WallClass wall_class(const ChainComplex& c) {
  const auto v = decide_perfect(c);
  if (!v.perfect) throw Error(ErrorCode::NotPerfect, "complex is not perfect");
  return {*v.euler_class, 0};
}

Resolution minimal_resolution(const PiModule& m, int length) {
  const GroupPtr& group = m.group();
  const auto& g = *group;
  const FlMatrix gens = minimal_generator_lifts(m);
  Resolution res{ChainComplex(), free_cover_matrix(m, gens)};
  std::vector<std::size_t> ranks{gens.cols()};
  std::vector<GroupRingMatrix> d;
  FlMatrix current = res.augmentation;
  for (int q = 1; q <= length; ++q) {
    const std::size_t below = ranks.back();
    const FlMatrix k = kernel(current);
    const PiModule syzygy = restrict_to(regular_module(group, below), k);
    const FlMatrix cycles = k * minimal_generator_lifts(syzygy);
    const GroupRingMatrix dq = from_free_vectors(cycles, below, g);
    ranks.push_back(cycles.cols());
    current = expand(dq, g);
    d.push_back(dq);
  }
  res.complex = ChainComplex(group, 0, std::move(ranks), std::move(d));
  return res;
}

}  // namespace lfin
