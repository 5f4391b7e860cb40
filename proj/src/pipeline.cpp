#include "lcl/pipeline.hpp"

#include <random>

#include "lcl/gen.hpp"
#include "lcl/round_elim.hpp"
#include "lcl/sim_local.hpp"
#include "lcl/transform.hpp"

namespace lcl {

PipelineResult run_pipeline(std::shared_ptr<const Problem> pi, const PipelineOptions& opt) {
  if (!pi) throw LclError("pipeline needs a problem");
  if (opt.sizes.empty()) throw LclError("pipeline needs at least one instance size");
  for (int n : opt.sizes)
    if (n < 1) throw LclError("instance sizes must be >= 1");
  PipelineResult res;

  res.sped = std::make_shared<const Problem>(speedup_problem(*pi, opt.guard));
  auto sped_zr = find_zero_round(*res.sped, opt.guard);
  res.sped_zero_round = sped_zr.has_value();

  LocalAlgorithm fast;
  if (opt.start) {
    if (opt.start->radius < 1)
      throw LclError("the starting algorithm must have radius >= 1");
    fast = derive_speedup_algorithm(*opt.start, opt.guard);
    res.fast_source = "round-dropped";
  } else {
    if (!sped_zr)
      throw LclError("the sped-up problem has no zero-round solution; "
                     "provide a starting algorithm instead");
    fast = inflate_zero_round(*sped_zr, 0, res.sped);
    res.fast_source = "zero-round-search";
  }

  LocalAlgorithm slow = derive_slowdown_algorithm(fast, pi, opt.guard);

  res.n0 = opt.n0 > 0 ? opt.n0
                      : *std::max_element(opt.sizes.begin(), opt.sizes.end());
  res.final_algorithm = lock_order_invariant(slow, res.n0, 1);

  std::mt19937_64 master(opt.seed);
  auto instance = [&](int n, std::uint64_t s1, std::uint64_t s2) {
    GenSpec gs;
    gs.n = n;
    gs.delta = pi->delta();
    gs.topology = Topology::UniformRandomTree;
    gs.sigma_in = pi->sigma_in();
    gs.seed = s1;
    return assign_ids(generate(gs), IdMode::DeterministicId, 2, s2);
  };

  for (int i = 0; i < opt.trials; ++i) {
    int n = opt.sizes[i % opt.sizes.size()];
    PortGraph g = instance(n, master(), master());
    HalfEdgeLabeling f = run_local(res.final_algorithm, g);
    auto viols = verify_nec(g, f, *pi);
    if (!viols.empty() && res.first_violation.empty())
      res.first_violation = viols[0].line();
    res.violations += static_cast<long long>(viols.size());
    ++res.trials_run;
  }

  for (int j = 0; j < opt.remaps; ++j) {
    int n = opt.sizes[j % opt.sizes.size()];
    PortGraph g = instance(n, master(), master());
    HalfEdgeLabeling f0 = run_local(res.final_algorithm, g);
    PortGraph g2 = remap_ids_order_preserving(g, master());
    HalfEdgeLabeling f1 = run_local(res.final_algorithm, g2);
    if (!(f0 == f1)) ++res.remap_mismatches;
    ++res.remap_checks;
  }
  return res;
}

}  // namespace lcl
