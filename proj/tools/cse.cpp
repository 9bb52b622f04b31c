#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cse/export.hpp"

using namespace cse;

namespace {

struct Options {
  std::string program_path;
  std::string mode = "compact";
  std::string strategy = "first";
  uint64_t seed = 0;
  long max_nodes = 100000;
  int max_depth = 64;
  double max_seconds = 0;
  int cycles_cap = 1000;
  int bound = 4;
  int depth = -1;  // verify/compare: classic depth; -1 = derive from bound
  std::string solver = "z3";
  int timeout_ms = 5000;
  std::string logic = "ALL";
  std::string log_queries;
  std::string replay;
  bool no_presolve = false;
  std::string out_json;
  std::string out_dot;
  std::string report_json;
  bool dot_with_pc = false;
  int verbosity = 0;
};

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.solver_path = o.solver;
  cfg.timeout_ms = o.timeout_ms;
  cfg.logic = o.logic;
  cfg.log_dir = o.log_queries;
  cfg.replay_dir = o.replay;
  cfg.presolve = !o.no_presolve;
  return cfg;
}

Limits limits(const Options& o) { return Limits{o.max_nodes, o.max_depth, o.max_seconds}; }

SelectionStrategy strategy(const Options& o) {
  if (o.strategy == "never") return SelectionStrategy::never();
  if (o.strategy == "random") return SelectionStrategy::random(o.seed);
  return SelectionStrategy::first();
}

Flowgraph load(const Options& o) {
  Flowgraph fg = parse_flowgraph_file(o.program_path);
  for (const auto& w : fg.warnings) std::cerr << o.program_path << ": warning: " << w << "\n";
  return fg;
}

void add_solver_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--solver", o.solver, "solver executable (CSE_SOLVER overrides)");
  cmd->add_option("--timeout", o.timeout_ms, "per-query timeout, ms");
  cmd->add_option("--logic", o.logic, "solver logic, default ALL");
  cmd->add_option("--log-queries", o.log_queries, "directory for q<N>.smt2/.out logs");
  cmd->add_option("--replay", o.replay, "answer queries from logged files in DIR");
  cmd->add_flag("--no-presolve", o.no_presolve, "disable the internal model search");
}

void print_summary(const ExecTree& t) {
  std::cout << "nodes=" << t.nodes.size() << " failed_leaves=" << t.failed_leaf_count
            << " smt_unknown=" << t.smt_unknown
            << " templates_applied=" << t.templates_applied << "\n";
}

void write_tree_outputs(const Options& o, const ExecTree& tree, const Flowgraph& fg) {
  if (!o.out_json.empty()) write_file(o.out_json, tree_to_json(tree, fg).dump(2) + "\n");
  if (!o.out_dot.empty()) write_file(o.out_dot, tree_to_dot(tree, fg, o.dot_with_pc));
}

int classic_depth_for(const Flowgraph& fg, const TemplatePool& pool, int bound,
                      int explicit_depth) {
  if (explicit_depth > 0) return explicit_depth;
  size_t longest_core = 1;
  for (const Template& t : pool.templates)
    longest_core = std::max(longest_core, t.cycle.core.edges.size());
  return static_cast<int>((bound + 1) * longest_core + fg.locations.size() + 2);
}

void print_report(const std::string& kind, const MatchReport& rep, int verbosity) {
  std::cout << kind << ": matched=" << rep.matched << " unmatched=" << rep.unmatched
            << " inconclusive=" << rep.inconclusive
            << " excluded_cut_leaves=" << rep.excluded_cut_leaves
            << (rep.aborted ? " ABORTED" : "") << "\n";
  if (rep.aborted) std::cout << "  " << rep.diagnostic << "\n";
  for (const LeafVerdict& r : rep.rows) {
    if (verbosity == 0 && r.kind == LeafVerdict::Kind::Matched) continue;
    std::cout << "  leaf " << r.leaf << ": " << to_string(r.kind);
    if (r.counterpart >= 0)
      std::cout << " ~ " << r.counterpart << " at " << r.valuation.str();
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compact symbolic execution for flowgraph programs"};
  app.require_subcommand(1);
  Options o;

  auto* parse_cmd = app.add_subcommand("parse", "validate a program and print its canonical form");
  parse_cmd->add_option("program", o.program_path)->required();

  auto* cycles_cmd = app.add_subcommand("cycles", "enumerate cycles");
  cycles_cmd->add_option("program", o.program_path)->required();
  cycles_cmd->add_option("--cycles-cap", o.cycles_cap, "max cycles to enumerate");
  cycles_cmd->add_option("--json", o.report_json, "write JSON to FILE");

  auto* templates_cmd = app.add_subcommand("templates", "compute templates for all cycles");
  templates_cmd->add_option("program", o.program_path)->required();
  templates_cmd->add_option("--cycles-cap", o.cycles_cap);
  templates_cmd->add_option("--json", o.report_json, "write JSON to FILE");
  add_solver_flags(templates_cmd, o);

  auto* run_cmd = app.add_subcommand("run", "build a symbolic execution tree");
  run_cmd->add_option("program", o.program_path)->required();
  run_cmd->add_option("--mode", o.mode, "classic|compact")
      ->check(CLI::IsMember({"classic", "compact"}));
  run_cmd->add_option("--strategy", o.strategy, "never|first|random")
      ->check(CLI::IsMember({"never", "first", "random"}));
  run_cmd->add_option("--seed", o.seed, "random strategy seed");
  run_cmd->add_option("--max-nodes", o.max_nodes);
  run_cmd->add_option("--max-depth", o.max_depth);
  run_cmd->add_option("--max-seconds", o.max_seconds);
  run_cmd->add_option("--cycles-cap", o.cycles_cap);
  run_cmd->add_option("--out", o.out_json, "tree JSON output");
  run_cmd->add_option("--dot", o.out_dot, "tree DOT output");
  run_cmd->add_flag("--dot-pc", o.dot_with_pc, "include path conditions in DOT labels");
  add_solver_flags(run_cmd, o);

  auto* verify_cmd = app.add_subcommand(
      "verify", "bounded soundness/completeness differential test");
  verify_cmd->add_option("program", o.program_path)->required();
  verify_cmd->add_option("--bound", o.bound, "max parameter value per component");
  verify_cmd->add_option("--depth", o.depth, "classic tree depth (derived when omitted)");
  verify_cmd->add_option("--max-nodes", o.max_nodes);
  verify_cmd->add_option("--cycles-cap", o.cycles_cap);
  verify_cmd->add_option("--json", o.report_json, "write JSON report to FILE");
  verify_cmd->add_flag("-v,--verbose", o.verbosity, "list matched leaves too");
  add_solver_flags(verify_cmd, o);

  auto* compare_cmd =
      app.add_subcommand("compare", "run classic and compact side by side");
  compare_cmd->add_option("program", o.program_path)->required();
  compare_cmd->add_option("--depth", o.max_depth, "BFS depth limit for both runs");
  compare_cmd->add_option("--max-nodes", o.max_nodes);
  compare_cmd->add_option("--strategy", o.strategy)
      ->check(CLI::IsMember({"never", "first", "random"}));
  compare_cmd->add_option("--seed", o.seed);
  compare_cmd->add_option("--cycles-cap", o.cycles_cap);
  add_solver_flags(compare_cmd, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) {
      Flowgraph fg = load(o);
      std::cout << print_flowgraph(fg);
      return 0;
    }

    if (cycles_cmd->parsed()) {
      Flowgraph fg = load(o);
      CycleSet cs = enumerate_cycles(fg, o.cycles_cap);
      for (const Cycle& c : cs.cycles) {
        std::cout << "core=" << c.core_string() << " entry=" << c.entry << " witness="
                  << c.entry_witness->src << "->" << c.entry_witness->dst << " exits=";
        for (size_t i = 0; i < c.exits.size(); ++i)
          std::cout << (i ? "," : "") << c.exits[i]->src << "->" << c.exits[i]->dst;
        std::cout << "\n";
      }
      if (cs.truncated)
        std::cerr << "warning: cycle enumeration truncated at " << o.cycles_cap << "\n";
      if (!o.report_json.empty())
        write_file(o.report_json, cycles_to_json(cs, fg).dump(2) + "\n");
      return 0;
    }

    if (templates_cmd->parsed()) {
      Flowgraph fg = load(o);
      SolverConfig cfg = solver_config(o);
      ParamGen pg;
      TemplatePool pool = compute_all_templates(fg, cfg, pg, o.cycles_cap);
      for (const Template& t : pool.templates) {
        std::cout << "template entry=" << t.entry << " core=" << t.cycle.core_string()
                  << " param=k#" << t.param << "\n";
        for (const auto& [var, val] : t.theta_star.entries)
          std::cout << "  theta*(" << var << ") = " << to_string(val) << "\n";
        for (const TemplateExit& ex : t.exits)
          std::cout << "  exit " << ex.loc << ": pc = " << to_string(ex.pc) << "\n";
      }
      for (const TemplateFailure& f : pool.failures)
        std::cout << "failure: " << f.str() << "\n";
      std::cout << pool.templates.size() << " template(s), " << pool.failures.size()
                << " failure(s)\n";
      if (!o.report_json.empty())
        write_file(o.report_json, templates_to_json(pool, fg).dump(2) + "\n");
      return 0;
    }

    if (run_cmd->parsed()) {
      Flowgraph fg = load(o);
      SolverConfig cfg = solver_config(o);
      ExecTree tree;
      if (o.mode == "classic") {
        tree = run_classic(fg, cfg, limits(o));
      } else {
        ParamGen pg;
        TemplatePool pool = compute_all_templates(fg, cfg, pg, o.cycles_cap);
        tree = run_compact(fg, pool.templates, strategy(o), cfg, limits(o), pg);
      }
      print_summary(tree);
      write_tree_outputs(o, tree, fg);
      return tree.tripped() ? 2 : 0;
    }

    if (verify_cmd->parsed()) {
      Flowgraph fg = load(o);
      SolverConfig cfg = solver_config(o);
      ParamGen pg;
      TemplatePool pool = compute_all_templates(fg, cfg, pg, o.cycles_cap);
      Limits classic_lim{o.max_nodes,
                         classic_depth_for(fg, pool, o.bound, o.depth), 0};
      Limits compact_lim{o.max_nodes, classic_lim.max_depth, 0};
      ExecTree classic = run_classic(fg, cfg, classic_lim);
      ExecTree compact =
          run_compact(fg, pool.templates, SelectionStrategy::first(), cfg, compact_lim, pg);
      MatchReport sound = check_soundness(classic, compact, o.bound, cfg);
      MatchReport complete = check_completeness(compact, classic, o.bound, cfg);
      print_report("soundness", sound, o.verbosity);
      print_report("completeness", complete, o.verbosity);
      if (!o.report_json.empty()) {
        Json j;
        j["format_version"] = kFormatVersion;
        j["program"] = fg.name;
        j["soundness"] = report_to_json(sound, "soundness");
        j["completeness"] = report_to_json(complete, "completeness");
        write_file(o.report_json, j.dump(2) + "\n");
      }
      bool mismatch = sound.unmatched > 0 || complete.unmatched > 0 || sound.aborted ||
                      complete.aborted;
      return mismatch ? 3 : 0;
    }

    if (compare_cmd->parsed()) {
      Flowgraph fg = load(o);
      SolverConfig cfg = solver_config(o);
      ExecTree classic = run_classic(fg, cfg, limits(o));
      ParamGen pg;
      TemplatePool pool = compute_all_templates(fg, cfg, pg, o.cycles_cap);
      ExecTree compact = run_compact(fg, pool.templates, strategy(o), cfg, limits(o), pg);
      std::cout << "            nodes  failed  smt_unknown  templates\n";
      std::cout << "compact  " << std::setw(8) << compact.nodes.size() << std::setw(8)
                << compact.failed_leaf_count << std::setw(13) << compact.smt_unknown
                << std::setw(11) << compact.templates_applied
                << (compact.tripped() ? "   [limit: " + compact.limit_tripped + "]" : "")
                << "\n";
      std::cout << "classic  " << std::setw(8) << classic.nodes.size() << std::setw(8)
                << classic.failed_leaf_count << std::setw(13) << classic.smt_unknown
                << std::setw(11) << "-"
                << (classic.tripped() ? "   [limit: " + classic.limit_tripped + "]" : "")
                << "\n";
      return classic.tripped() || compact.tripped() ? 2 : 0;
    }
  } catch (const ParseError& e) {
    std::cerr << o.program_path << ":" << e.line << ":" << e.col << ": "
              << (e.kind == ParseError::Kind::Syntax ? "syntax" : "semantic")
              << " error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
