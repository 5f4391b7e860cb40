#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcl/algorithm.hpp"
#include "lcl/compiler.hpp"
#include "lcl/gen.hpp"
#include "lcl/pipeline.hpp"
#include "lcl/report.hpp"
#include "lcl/round_elim.hpp"
#include "lcl/sim_grid.hpp"
#include "lcl/sim_local.hpp"
#include "lcl/sim_volume.hpp"
#include "lcl/transform.hpp"

namespace {

using namespace lcl;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LclError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

bool looks_general(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    if (line.compare(pos, 7, "radius:") == 0) return true;
  }
  return false;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Shared command state: payload is the text-mode output, rep the report-mode
// one; violations feeds the flag-selectable exit policy.
struct Ctx {
  Guard guard;
  std::string format = "text";
  bool fail_on_violation = false;
  std::string command;
  std::string inputs;  // concatenated raw input texts (digested in reports)
  std::uint64_t seed = 0;
  RunReport rep;
  std::string payload;
  long long violations = -1;
  int exit_code = 0;
};

std::string decimal_or_power(const mpz_class& value, bool exact, const mpz_class& base,
                             const mpz_class& expo) {
  if (exact) return value.get_str();
  return base.get_str() + "^" + expo.get_str();
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  if (const char* env = std::getenv("LCL_GUARD")) {
    try {
      ctx.guard.limit = std::stoull(env);
    } catch (...) {
      std::cerr << "bad LCL_GUARD value: " << env << "\n";
      return 2;
    }
  }

  CLI::App app{"locally checkable labeling toolkit"};
  app.require_subcommand(1);
  app.add_option("--guard", ctx.guard.limit, "size guard (items)");
  app.add_option("--format", ctx.format, "text|report")
      ->check(CLI::IsMember({"text", "report"}));
  app.add_flag("--fail-on-violation", ctx.fail_on_violation,
               "exit 1 when violations were found");

  auto sub = [&](const std::string& name, const std::string& desc, CLI::App* parent = nullptr) {
    CLI::App* s = (parent ? parent : &app)->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // ---- parse / validate -----------------------------------------------
  static std::string file_a, file_b, file_c;
  {
    auto* s = sub("parse", "parse a problem file and print its canonical form");
    s->add_option("file", file_a)->required();
    s->callback([&] {
      ctx.command = "parse";
      std::string text = read_file(file_a);
      ctx.inputs = text;
      if (looks_general(text)) {
        GeneralLcl l = parse_general(text);
        ctx.payload = serialize_general(l);
        ctx.rep.add("kind", "general");
        ctx.rep.add("accepted-balls", static_cast<long long>(l.accepted.size()));
      } else {
        Problem p = parse_problem(text);
        ctx.payload = serialize_problem(p);
        ctx.rep.add("kind", "node-edge");
        ctx.rep.add("sigma-out", static_cast<long long>(p.sigma_out().size()));
      }
    });
  }
  static std::string val_file;
  {
    auto* s = sub("validate", "parse and run structural diagnostics");
    s->add_option("file", val_file)->required();
    s->callback([&] {
      ctx.command = "validate";
      std::string text = read_file(val_file);
      ctx.inputs = text;
      Problem p = parse_problem(text);
      auto diags = validate_problem(p);
      long long errs = 0, warns = 0;
      for (const auto& d : diags) {
        bool err = d.severity == Diagnostic::Severity::Error;
        (err ? errs : warns) += 1;
        ctx.payload += std::string(err ? "error" : "warning") + ": " + d.message + "\n";
      }
      if (errs == 0) ctx.payload += "ok\n";
      ctx.rep.add("errors", errs);
      ctx.rep.add("warnings", warns);
      if (errs > 0) ctx.exit_code = 1;
    });
  }

  // ---- compiler --------------------------------------------------------
  static std::string cmp_file;
  {
    auto* s = sub("compile", "compile a radius-r description to radius 1");
    s->add_option("file", cmp_file)->required();
    s->callback([&] {
      ctx.command = "compile";
      std::string text = read_file(cmp_file);
      ctx.inputs = text;
      GeneralLcl l = parse_general(text);
      Problem out = compile_general(l, ctx.guard);
      ctx.payload = serialize_problem(out);
      ctx.rep.add("marked-balls", static_cast<long long>(out.sigma_out().size()));
    });
  }
  static std::string tr_general, tr_graph, tr_lab;
  {
    auto* s = sub("lift", "turn a valid original labeling into a compiled one");
    s->add_option("general", tr_general)->required();
    s->add_option("graph", tr_graph)->required();
    s->add_option("labeling", tr_lab)->required();
    s->callback([&] {
      ctx.command = "lift";
      std::string tg = read_file(tr_general), tgr = read_file(tr_graph),
                  tl = read_file(tr_lab);
      ctx.inputs = tg + tgr + tl;
      GeneralLcl l = parse_general(tg);
      Problem compiled = compile_general(l, ctx.guard);
      PortGraph g = parse_graph(tgr);
      HalfEdgeLabeling f = parse_labeling(tl, g);
      ctx.payload = serialize_labeling(lift_solution(l, compiled, g, f));
    });
  }
  {
    auto* s = sub("project", "turn a valid compiled labeling back into an original one");
    s->add_option("general", file_b)->required();
    s->add_option("graph", file_c)->required();
    static std::string lab2;
    s->add_option("labeling", lab2)->required();
    s->callback([&] {
      ctx.command = "project";
      std::string tg = read_file(file_b), tgr = read_file(file_c), tl = read_file(lab2);
      ctx.inputs = tg + tgr + tl;
      GeneralLcl l = parse_general(tg);
      Problem compiled = compile_general(l, ctx.guard);
      PortGraph g = parse_graph(tgr);
      HalfEdgeLabeling f2 = parse_labeling(tl, g);
      ctx.payload = serialize_labeling(project_solution(l, compiled, g, f2));
    });
  }

  // ---- round elimination ------------------------------------------------
  static std::string re_file;
  for (const char* name : {"re", "rere", "speedup-problem"}) {
    auto* s = sub(name, std::string("apply ") + name + " to a problem");
    s->add_option("file", re_file)->required();
    std::string op = name;
    s->callback([&ctx, op] {
      ctx.command = op;
      std::string text = read_file(re_file);
      ctx.inputs = text;
      Problem p = parse_problem(text);
      Problem out = op == "re"     ? re(p, ctx.guard)
                    : op == "rere" ? rere(p, ctx.guard)
                                   : speedup_problem(p, ctx.guard);
      ctx.payload = serialize_problem(out);
      ctx.rep.add("sigma-out", static_cast<long long>(out.sigma_out().size()));
    });
  }
  static std::string it_file;
  static int it_steps = 1;
  {
    auto* s = sub("iterate", "apply the speedup step k times with stats");
    s->add_option("file", it_file)->required();
    s->add_option("--steps", it_steps, "number of speedup steps")->required();
    s->callback([&] {
      ctx.command = "iterate";
      std::string text = read_file(it_file);
      ctx.inputs = text;
      Problem p = parse_problem(text);
      ProblemSequence seq = iterate_sequence(p, it_steps, ctx.guard);
      for (std::size_t i = 0; i < seq.stats.size(); ++i)
        ctx.payload += "step " + std::to_string(i) + ": sigma_out = " +
                       seq.stats[i].sigma_out_size + " node = " +
                       std::to_string(seq.stats[i].node_config_count) + " edge = " +
                       std::to_string(seq.stats[i].edge_config_count) + "\n";
      ctx.payload += "sizes:";
      for (const auto& sz : seq.projected_sizes) ctx.payload += " " + sz;
      ctx.payload += "\n";
      if (seq.truncated) ctx.payload += "truncated: " + seq.truncation_reason + "\n";
      ctx.rep.add("steps", static_cast<long long>(seq.stats.size() - 1));
      ctx.rep.add("truncated", yes_no(seq.truncated));
    });
  }
  {
    auto* s = sub("budget", "failure-probability bookkeeping for one speedup step");
    static int delta = 0;
    static unsigned T = 0;
    static unsigned long b_sin = 0, b_sout = 0, b_sre = 0;
    static double log2p = 0;
    static unsigned long long b_n = 0;
    s->add_option("--delta", delta)->required();
    s->add_option("--T", T)->required();
    s->add_option("--sin", b_sin)->required();
    s->add_option("--sout", b_sout)->required();
    s->add_option("--sre", b_sre)->required();
    s->add_option("--log2p", log2p)->required();
    auto* n_opt = s->add_option("--n", b_n);
    s->callback([&, n_opt] {
      ctx.command = "budget";
      ctx.inputs = "";
      std::optional<unsigned long long> n;
      if (n_opt->count()) n = b_n;
      FailureBudget fb = failure_budget(delta, T, b_sin, b_sout, b_sre, log2p, n);
      ctx.payload += "delta: " + std::to_string(fb.delta) + "\n";
      ctx.payload += "T: " + std::to_string(fb.T) + "\n";
      ctx.payload += "sin: " + std::to_string(fb.sin) + "\n";
      ctx.payload += "sout: " + std::to_string(fb.sout) + "\n";
      ctx.payload += "sre: " + std::to_string(fb.sre) + "\n";
      ctx.payload += "delta^T: " + fb.delta_pow_T.get_str() + "\n";
      std::string y = "?";
      if (fb.sin == 1) {
        y = "1";
      } else if (mpz_fits_ulong_p(fb.delta_pow_T.get_mpz_t())) {
        mpz_class bits = ceil_log2_pow(mpz_class(fb.sin), fb.delta_pow_T);
        if (bits <= (1u << 20)) {
          mpz_class Y;
          mpz_ui_pow_ui(Y.get_mpz_t(), fb.sin, fb.delta_pow_T.get_ui());
          y = Y.get_str();
        } else {
          y = std::to_string(fb.sin) + "^" + fb.delta_pow_T.get_str();
        }
      } else {
        y = std::to_string(fb.sin) + "^" + fb.delta_pow_T.get_str();
      }
      ctx.payload += "Y: " + y + "\n";
      ctx.payload += "log2(Y): " + fb.log2_Y + "\n";
      ctx.payload += "log2(p): " + fb.log2_p + "\n";
      ctx.payload += "log2(p'): " + fb.log2_p1 + "\n";
      ctx.payload += "log2(p''): " + fb.log2_p2 + "\n";
      if (fb.has_n) {
        ctx.payload += "n: " + std::to_string(fb.n) + "\n";
        ctx.payload += "cond-alphabet: " + yes_no(fb.cond_alphabet) + "\n";
        ctx.payload += "cond-p: " + yes_no(fb.cond_p) + "\n";
      }
      ctx.rep.add("Y", y);
      ctx.rep.add("log2(p'')", fb.log2_p2);
    });
  }

  // ---- algorithm transforms ----------------------------------------------
  static std::string ds_alg, ds_prob;
  {
    auto* s = sub("derive-speedup", "drop one round from an algorithm");
    s->add_option("algorithm", ds_alg)->required();
    s->add_option("--problem", ds_prob, "problem file for hash references");
    s->callback([&] {
      ctx.command = "derive-speedup";
      std::string ta = read_file(ds_alg);
      ctx.inputs = ta;
      std::shared_ptr<const Problem> fb;
      if (!ds_prob.empty()) {
        std::string tp = read_file(ds_prob);
        ctx.inputs += tp;
        fb = std::make_shared<const Problem>(parse_problem(tp));
      }
      LocalAlgorithm a = parse_algorithm(ta, dir_of(ds_alg), fb);
      LocalAlgorithm out = derive_speedup_algorithm(a, ctx.guard);
      ctx.payload = serialize_algorithm(out);
      ctx.rep.add("radius", out.radius);
      ctx.rep.add("table-entries", static_cast<long long>(out.table.size()));
    });
  }
  static std::string dl_alg, dl_prob;
  {
    auto* s = sub("derive-slowdown", "add one round back for the original problem");
    s->add_option("algorithm", dl_alg)->required();
    s->add_option("problem", dl_prob)->required();
    s->callback([&] {
      ctx.command = "derive-slowdown";
      std::string ta = read_file(dl_alg), tp = read_file(dl_prob);
      ctx.inputs = ta + tp;
      auto pi = std::make_shared<const Problem>(parse_problem(tp));
      auto sped = std::make_shared<const Problem>(speedup_problem(*pi, ctx.guard));
      LocalAlgorithm fast = parse_algorithm(ta, dir_of(dl_alg), sped);
      LocalAlgorithm out = derive_slowdown_algorithm(fast, pi, ctx.guard);
      ctx.payload = serialize_algorithm(out);
      ctx.rep.add("radius", out.radius);
      ctx.rep.add("mode", id_mode_name(out.mode));
    });
  }
  static std::string zr_file;
  {
    auto* s = sub("zero-round", "complete search for a zero-round solution");
    s->add_option("file", zr_file)->required();
    s->callback([&] {
      ctx.command = "zero-round";
      std::string text = read_file(zr_file);
      ctx.inputs = text;
      Problem p = parse_problem(text);
      auto z = find_zero_round(p, ctx.guard);
      if (z) {
        ctx.payload = serialize_zero_round(*z);
        ctx.rep.add("outcome", "found");
      } else {
        ctx.payload = "none\n";
        ctx.rep.add("outcome", "none");
      }
    });
  }
  static std::string lk_alg, lk_prob;
  static long long lk_n0 = 0;
  {
    auto* s = sub("lock", "restrict an algorithm to identifier order types");
    s->add_option("algorithm", lk_alg)->required();
    s->add_option("--n0", lk_n0, "instance-size bound the lock is taken at")->required();
    s->add_option("--problem", lk_prob, "problem file for hash references");
    s->callback([&] {
      ctx.command = "lock";
      std::string ta = read_file(lk_alg);
      ctx.inputs = ta;
      std::shared_ptr<const Problem> fb;
      if (!lk_prob.empty()) {
        std::string tp = read_file(lk_prob);
        ctx.inputs += tp;
        fb = std::make_shared<const Problem>(parse_problem(tp));
      }
      LocalAlgorithm a = parse_algorithm(ta, dir_of(lk_alg), fb);
      LocalAlgorithm locked = lock_order_invariant(a, lk_n0, 1);
      // The locked evaluator is a wrapper, not a table; report its shape.
      ctx.payload += "locked: order-invariant\n";
      ctx.payload += "radius: " + std::to_string(locked.radius) + "\n";
      ctx.payload += "n0: " + std::to_string(locked.locked_n0) + "\n";
      ctx.payload += "source-mode: " + id_mode_name(a.mode) + "\n";
      ctx.rep.add("n0", locked.locked_n0);
    });
  }

  // ---- instances ----------------------------------------------------------
  {
    auto* s = sub("gen", "generate a reproducible random forest");
    static int n = 10, delta = 3, components = 1;
    static std::string topology = "uniform-random-tree", fixed;
    static std::vector<std::string> inputs = {"a"};
    s->add_option("--n", n);
    s->add_option("--delta", delta);
    s->add_option("--seed", ctx.seed);
    s->add_option("--topology", topology);
    s->add_option("--components", components);
    s->add_option("--inputs", inputs)->delimiter(',');
    s->add_option("--fixed-input", fixed, "use one fixed input label everywhere");
    s->callback([&] {
      ctx.command = "gen";
      GenSpec gs;
      gs.n = n;
      gs.delta = delta;
      auto topo = topology_from(topology);
      if (!topo) throw LclError("unknown topology: " + topology);
      gs.topology = *topo;
      gs.forest_components = components;
      std::vector<Label> ls;
      for (const auto& t : inputs) ls.push_back(Label::base(t));
      gs.sigma_in = Alphabet(ls);
      if (!fixed.empty()) gs.fixed_input = Label::base(fixed);
      gs.seed = ctx.seed;
      ctx.payload = serialize_graph(generate(gs));
      ctx.rep.add("n", n);
    });
  }
  static std::string ids_graph, ids_mode = "deterministic-id";
  static int ids_k = 2;
  {
    auto* s = sub("ids", "assign identifiers to a graph");
    s->add_option("graph", ids_graph)->required();
    s->add_option("--mode", ids_mode);
    s->add_option("--k", ids_k, "identifier space exponent: ids < n^k");
    s->add_option("--seed", ctx.seed);
    s->callback([&] {
      ctx.command = "ids";
      std::string tg = read_file(ids_graph);
      ctx.inputs = tg;
      auto mode = id_mode_from(ids_mode);
      if (!mode) throw LclError("unknown mode: " + ids_mode);
      ctx.payload = serialize_graph(assign_ids(parse_graph(tg), *mode, ids_k, ctx.seed));
    });
  }
  static std::string run_alg, run_graph, run_prob;
  {
    auto* s = sub("run", "run an algorithm on every node of a graph");
    s->add_option("algorithm", run_alg)->required();
    s->add_option("graph", run_graph)->required();
    s->add_option("--problem", run_prob, "problem file for hash references");
    s->callback([&] {
      ctx.command = "run";
      std::string ta = read_file(run_alg), tg = read_file(run_graph);
      ctx.inputs = ta + tg;
      std::shared_ptr<const Problem> fb;
      if (!run_prob.empty()) {
        std::string tp = read_file(run_prob);
        ctx.inputs += tp;
        fb = std::make_shared<const Problem>(parse_problem(tp));
      }
      LocalAlgorithm a = parse_algorithm(ta, dir_of(run_alg), fb);
      PortGraph g = parse_graph(tg);
      ctx.payload = serialize_labeling(run_local(a, g));
    });
  }
  static std::string vf_prob, vf_graph, vf_lab;
  {
    auto* s = sub("verify", "check a labeling against a problem");
    s->add_option("problem", vf_prob)->required();
    s->add_option("graph", vf_graph)->required();
    s->add_option("labeling", vf_lab)->required();
    s->callback([&] {
      ctx.command = "verify";
      std::string tp = read_file(vf_prob), tg = read_file(vf_graph), tl = read_file(vf_lab);
      ctx.inputs = tp + tg + tl;
      PortGraph g = parse_graph(tg);
      HalfEdgeLabeling f = parse_labeling(tl, g);
      std::vector<Violation> viols;
      if (looks_general(tp))
        viols = verify_general(g, f, parse_general(tp));
      else
        viols = verify_nec(g, f, parse_problem(tp));
      for (const auto& v : viols) ctx.payload += v.line() + "\n";
      ctx.payload += "violations: " + std::to_string(viols.size()) + "\n";
      ctx.violations = static_cast<long long>(viols.size());
      ctx.rep.add("violations", ctx.violations);
    });
  }
  static std::string rm_graph;
  {
    auto* s = sub("remap", "fresh identifiers with the same relative order");
    s->add_option("graph", rm_graph)->required();
    s->add_option("--seed", ctx.seed);
    s->callback([&] {
      ctx.command = "remap";
      std::string tg = read_file(rm_graph);
      ctx.inputs = tg;
      ctx.payload = serialize_graph(remap_ids_order_preserving(parse_graph(tg), ctx.seed));
    });
  }

  // ---- probe model ---------------------------------------------------------
  auto* vol = app.add_subcommand("volume", "probe-bounded model");
  vol->require_subcommand(1);
  vol->fallthrough();
  static std::string vr_alg, vr_graph, vr_prob;
  static int vr_node = 0, vr_port = 1;
  static long long vr_n0 = 0;
  {
    auto* s = sub("run", "answer one half-edge query by probing", vol);
    s->add_option("algorithm", vr_alg)->required();
    s->add_option("graph", vr_graph)->required();
    s->add_option("--node", vr_node)->required();
    s->add_option("--port", vr_port)->required();
    s->add_option("--problem", vr_prob, "problem file for hash references");
    s->add_option("--n0", vr_n0, "also lock the strategy at this instance bound");
    s->callback([&] {
      ctx.command = "volume-run";
      std::string ta = read_file(vr_alg), tg = read_file(vr_graph);
      ctx.inputs = ta + tg;
      std::shared_ptr<const Problem> fb;
      if (!vr_prob.empty()) {
        std::string tp = read_file(vr_prob);
        ctx.inputs += tp;
        fb = std::make_shared<const Problem>(parse_problem(tp));
      }
      LocalAlgorithm a = parse_algorithm(ta, dir_of(vr_alg), fb);
      ProbeStrategy st = ball_scan_strategy(a);
      if (vr_n0 > 0) st = lock_order_invariant_volume(st, vr_n0);
      PortGraph g = parse_graph(tg);
      auto [label, tr] = run_volume(st, g, vr_node, vr_port);
      for (const auto& ln : tr.probe_lines()) ctx.payload += ln + "\n";
      ctx.payload += "answer: " + label.text() + "\n";
      ctx.payload += "probes: " + std::to_string(tr.probes) + "\n";
      ctx.payload += "budget: " + std::to_string(st.budget) + "\n";
      ctx.rep.add("probes", static_cast<long long>(tr.probes));
      ctx.rep.add("answer", label.text());
    });
  }
  {
    auto* s = sub("params", "exact speedup parameters for the probe model", vol);
    static unsigned long tau = 1, delta = 2, r = 1, p_sin = 1, p_sout = 1;
    s->add_option("--tau", tau)->required();
    s->add_option("--delta", delta)->required();
    s->add_option("--r", r)->required();
    s->add_option("--sin", p_sin)->required();
    s->add_option("--sout", p_sout)->required();
    s->callback([&] {
      ctx.command = "volume-params";
      RamseyVolumeParams pr = ramsey_params_volume(tau, delta, r, p_sin, p_sout);
      ctx.payload += "p: " + pr.p.get_str() + "\n";
      ctx.payload += "m: " + pr.m.get_str() + "\n";
      ctx.payload += "z-bound: " + pr.z_bound.get_str() + "\n";
      ctx.payload += "c: " + decimal_or_power(pr.c, pr.c_exact, pr.c_base, pr.c_expo) + "\n";
      ctx.payload += "log2ceil(c): " + pr.c_log2_ceil.get_str() + "\n";
      ctx.payload += "log*(p): " + std::to_string(pr.log_star_p) + "\n";
      ctx.payload += "log*(m): " + std::to_string(pr.log_star_m) + "\n";
      ctx.payload += "log*(z): " + std::to_string(pr.log_star_z) + "\n";
      ctx.payload += "log*(c): " + std::to_string(pr.log_star_c) + "\n";
      ctx.payload += "log*(m)+log*(c): " + std::to_string(pr.log_star_sum) + "\n";
      ctx.payload += "sum-below-p: " + yes_no(pr.sum_below_p) + "\n";
      ctx.rep.add("p", pr.p.get_str());
      ctx.rep.add("z-bound", pr.z_bound.get_str());
      ctx.rep.add("sum-below-p", yes_no(pr.sum_below_p));
    });
  }

  // ---- oriented grids -------------------------------------------------------
  auto* grid = app.add_subcommand("grid", "oriented toroidal grids");
  grid->require_subcommand(1);
  grid->fallthrough();
  {
    auto* s = sub("gen", "generate an oriented grid", grid);
    static int d = 1, toroidal = 1;
    static std::vector<int> sides = {4};
    static std::vector<std::string> inputs = {"a"};
    static bool random_inputs = false;
    s->add_option("--d", d);
    s->add_option("--sides", sides)->delimiter(',');
    s->add_option("--toroidal", toroidal);
    s->add_option("--inputs", inputs)->delimiter(',');
    s->add_flag("--random-inputs", random_inputs);
    s->add_option("--seed", ctx.seed);
    s->callback([&] {
      ctx.command = "grid-gen";
      GridSpec gs;
      gs.d = d;
      gs.sides = sides;
      gs.toroidal = toroidal != 0;
      std::vector<Label> ls;
      for (const auto& t : inputs) ls.push_back(Label::base(t));
      gs.sigma_in = Alphabet(ls);
      gs.fixed_input = !random_inputs;
      gs.seed = ctx.seed;
      ctx.payload = serialize_grid(gen_grid(gs));
      ctx.rep.add("d", d);
    });
  }
  static std::string gi_grid;
  static int gi_c = 1;
  {
    auto* s = sub("ids", "assign per-dimension coordinate identifiers", grid);
    s->add_option("grid", gi_grid)->required();
    s->add_option("--c", gi_c);
    s->add_option("--seed", ctx.seed);
    s->callback([&] {
      ctx.command = "grid-ids";
      std::string tg = read_file(gi_grid);
      ctx.inputs = tg;
      OrientedGrid g = parse_grid(tg);
      ctx.payload = serialize_prod_ids(assign_prod_ids(g, gi_c, ctx.seed));
    });
  }
  static std::string gc_grid, gc_ids;
  {
    auto* s = sub("combine", "combine per-dimension identifiers into one", grid);
    s->add_option("grid", gc_grid)->required();
    s->add_option("ids", gc_ids)->required();
    s->callback([&] {
      ctx.command = "grid-combine";
      std::string tg = read_file(gc_grid), ti = read_file(gc_ids);
      ctx.inputs = tg + ti;
      OrientedGrid g = parse_grid(tg);
      ProdIds ids = parse_prod_ids(ti);
      auto comb = combine_ids(g, ids, ids.n, ids.c);
      for (int v = 0; v < g.graph.n(); ++v)
        ctx.payload += "id " + std::to_string(v) + " " + comb[v].get_str() + "\n";
    });
  }
  static std::string gr_alg, gr_grid, gr_ids, gr_prob;
  static bool gr_combined = false, gr_locked = false;
  {
    auto* s = sub("run", "run an algorithm on every grid node", grid);
    s->add_option("algorithm", gr_alg)->required();
    s->add_option("grid", gr_grid)->required();
    s->add_option("ids", gr_ids);
    s->add_flag("--combined", gr_combined, "recover tuples from combined identifiers");
    s->add_flag("--locked", gr_locked, "orientation-locked run (no identifiers)");
    s->add_option("--problem", gr_prob, "problem file for hash references");
    s->callback([&] {
      ctx.command = "grid-run";
      std::string ta = read_file(gr_alg), tg = read_file(gr_grid);
      ctx.inputs = ta + tg;
      std::shared_ptr<const Problem> fb;
      if (!gr_prob.empty()) {
        std::string tp = read_file(gr_prob);
        ctx.inputs += tp;
        fb = std::make_shared<const Problem>(parse_problem(tp));
      }
      LocalAlgorithm a = parse_algorithm(ta, dir_of(gr_alg), fb);
      OrientedGrid g = parse_grid(tg);
      HalfEdgeLabeling f(g.graph);
      if (gr_locked) {
        f = run_orientation_locked(a, g);
      } else {
        if (gr_ids.empty()) throw LclError("grid run needs an ids file unless --locked");
        std::string ti = read_file(gr_ids);
        ctx.inputs += ti;
        ProdIds ids = parse_prod_ids(ti);
        f = gr_combined ? run_prod_local_combined(a, g, ids) : run_prod_local(a, g, ids);
      }
      ctx.payload = serialize_labeling(f);
    });
  }
  {
    auto* s = sub("params", "exact speedup parameters for oriented grids", grid);
    static unsigned long t = 0, d = 1, r = 1, p_sin = 1, p_sout = 1;
    s->add_option("--t", t)->required();
    s->add_option("--d", d)->required();
    s->add_option("--r", r)->required();
    s->add_option("--sin", p_sin)->required();
    s->add_option("--sout", p_sout)->required();
    s->callback([&] {
      ctx.command = "grid-params";
      RamseyGridParams pr = ramsey_params_grid(t, d, r, p_sin, p_sout);
      ctx.payload += "p: " + pr.p.get_str() + "\n";
      ctx.payload += "m: " + pr.m.get_str() + "\n";
      ctx.payload += "z: " + decimal_or_power(pr.z, pr.z_exact, pr.z_base, pr.z_expo) + "\n";
      ctx.payload += "log2ceil(z): " + pr.z_log2_ceil.get_str() + "\n";
      std::string c = pr.c_exact ? pr.c.get_str()
                     : pr.z_exact
                         ? pr.c_base.get_str() + "^" + pr.c_expo.get_str()
                         : pr.c_base.get_str() + "^(d*p!*z)";
      ctx.payload += "c: " + c + "\n";
      if (pr.z_exact) ctx.payload += "log2ceil(c): " + pr.c_log2_ceil.get_str() + "\n";
      ctx.rep.add("p", pr.p.get_str());
    });
  }

  // ---- end-to-end -------------------------------------------------------------
  static std::string pl_prob, pl_alg;
  static std::vector<int> pl_sizes = {10, 100, 1000};
  static int pl_trials = 1000, pl_remaps = 100;
  static long long pl_n0 = 0;
  {
    auto* s = sub("pipeline", "speedup, zero-round, slowdown, lock, simulate, verify");
    s->add_option("problem", pl_prob)->required();
    s->add_option("--n", pl_sizes)->delimiter(',');
    s->add_option("--trials", pl_trials);
    s->add_option("--remaps", pl_remaps);
    s->add_option("--seed", ctx.seed);
    s->add_option("--n0", pl_n0);
    s->add_option("--algorithm", pl_alg, "radius >= 1 starting algorithm");
    s->callback([&] {
      ctx.command = "pipeline";
      std::string tp = read_file(pl_prob);
      ctx.inputs = tp;
      auto pi = std::make_shared<const Problem>(parse_problem(tp));
      PipelineOptions opt;
      opt.sizes = pl_sizes;
      opt.trials = pl_trials;
      opt.remaps = pl_remaps;
      opt.seed = ctx.seed;
      opt.n0 = pl_n0;
      opt.guard = ctx.guard;
      if (!pl_alg.empty()) {
        std::string ta = read_file(pl_alg);
        ctx.inputs += ta;
        opt.start = parse_algorithm(ta, dir_of(pl_alg), pi);
      }
      PipelineResult res = run_pipeline(pi, opt);
      ctx.rep.add("sped-sigma-out", static_cast<long long>(res.sped->sigma_out().size()));
      ctx.rep.add("fast-source", res.fast_source);
      ctx.rep.add("sped-zero-round", res.sped_zero_round ? "found" : "none");
      ctx.rep.add("lock-n0", res.n0);
      ctx.rep.add("trials", res.trials_run);
      ctx.rep.add("violations", res.violations);
      if (!res.first_violation.empty())
        ctx.rep.add("first-violation", res.first_violation);
      ctx.rep.add("remap-checks", res.remap_checks);
      ctx.rep.add("remap-mismatches", res.remap_mismatches);
      ctx.violations = res.violations + res.remap_mismatches;
      ctx.payload.clear();  // consolidated report in both formats
    });
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const GuardError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const lcl::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const LclError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();

  RunReport head;
  head.add("command", ctx.command);
  head.add("inputs", input_digest(ctx.inputs));
  head.add("seed", static_cast<long long>(ctx.seed));
  for (auto& e : ctx.rep.entries) head.entries.push_back(std::move(e));
  head.add("outcome", ctx.exit_code == 0 ? "ok" : "error");
  if (ctx.format == "report" || ctx.payload.empty()) {
    std::cout << head.body();
    if (ctx.format == "report") {
      RunReport tail;
      tail.add_volatile("wall-ms", std::to_string(wall_ms));
      std::cout << tail.render();
    }
  } else {
    std::cout << ctx.payload;
  }
  if (ctx.fail_on_violation && ctx.violations > 0) return 1;
  return ctx.exit_code;
}
