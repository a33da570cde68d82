// Command-line front end: instance generation, solving, oracle runs, bounds
// verification, and benchmark sweeps. Single solves emit JSON, sweeps emit
// CSV; exit codes are 0 (success), 2 (input error), 3 (resource guard).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "balfactor/bounds.hpp"
#include "balfactor/errors.hpp"
#include "balfactor/harness.hpp"
#include "balfactor/oracle.hpp"
#include "balfactor/version.hpp"

namespace {

using balfactor::ColouredCompleteGraph;
using balfactor::PatternGraph;
using nlohmann::ordered_json;

int default_threads() {
  if (const char* env = std::getenv("BF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string join_flags(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

ColouredCompleteGraph load_colouring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw balfactor::Error("cannot open '" + path + "'");
  return ColouredCompleteGraph::load(in);
}

PatternGraph load_pattern(const std::string& h_path, int h_complete) {
  if (!h_path.empty() && h_complete > 0) {
    throw balfactor::Error("give either a pattern file or a complete-clique "
                           "size, not both");
  }
  if (!h_path.empty()) {
    std::ifstream in(h_path);
    if (!in) throw balfactor::Error("cannot open '" + h_path + "'");
    return PatternGraph::load(in);
  }
  if (h_complete > 0) return PatternGraph::complete(h_complete);
  throw balfactor::Error("a pattern is required: --h <file> or "
                         "--h-complete <r>");
}

balfactor::PivotRule parse_rule(const std::string& name) {
  if (name == "best") return balfactor::PivotRule::kBest;
  if (name == "first") return balfactor::PivotRule::kFirst;
  throw balfactor::Error("unknown strategy '" + name + "'");
}

struct GenArgs {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const auto palette = balfactor::Palette::simplex(a.k);
  const auto g = balfactor::random_balanced_colouring(
      static_cast<balfactor::Vertex>(a.n), palette, a.seed);
  const double alpha = balfactor::balance_alpha(g);
  if (a.out.empty()) {
    g.save(std::cout);
    std::cerr << "alpha " << alpha << '\n';
  } else {
    std::ofstream out(a.out);
    if (!out) throw balfactor::Error("cannot write '" + a.out + "'");
    g.save(out);
    std::cout << "alpha " << alpha << '\n';
  }
  return 0;
}

struct SolveArgs {
  std::string input;
  std::string h_path;
  int h_complete = 0;
  std::string strategy = "best";
  std::uint64_t seed = 0;
  int restarts = 1;
  std::int64_t max_iters = -1;
  std::string out;
  std::string flags;
};

int run_solve(const SolveArgs& a) {
  const auto g = load_colouring_file(a.input);
  const auto h = load_pattern(a.h_path, a.h_complete);

  balfactor::SolveOptions opts;
  opts.rule = parse_rule(a.strategy);
  opts.restarts = a.restarts;
  opts.seed = a.seed;
  opts.max_iters = a.max_iters;
  opts.threads = default_threads();
  const auto outcome = balfactor::solve_instance(g, h, opts);
  const auto& rep = outcome.report;

  ordered_json j;
  j["version"] = std::string(balfactor::kVersion);
  j["command"] = "solve";
  j["flags"] = a.flags;
  j["input"] = a.input;
  j["n_v"] = rep.n_v;
  j["k"] = rep.k;
  j["r"] = rep.r;
  j["seed"] = rep.seed;
  j["strategy"] = a.strategy;
  j["restarts"] = rep.restarts_used;
  j["alpha"] = rep.alpha;
  j["clique_norm_sq"] = rep.exact_norm ? rep.clique_norm_sq.to_string()
                                       : std::to_string(rep.clique_norm_sq_real);
  j["clique_norm_sq_real"] = rep.clique_norm_sq_real;
  j["clique_deviation"] = rep.clique_deviation.to_string();
  j["h_deviation"] = rep.h_deviation.to_string();
  j["h_norm"] = rep.h_norm;
  j["iterations"] = rep.iterations;
  j["improving_steps"] = rep.improving_steps;
  j["best_restart"] = rep.best_restart;
  j["wall_time_ms"] = rep.wall_time_ms;
  j["bound_check"] = {{"log_c", rep.bound_log_c},
                      {"satisfied", rep.bound_satisfied}};

  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out);
    if (!out) throw balfactor::Error("cannot write '" + a.out + "'");
    out << text;
  }
  return 0;
}

struct OracleArgs {
  std::string input;
  std::string h_path;
  int h_complete = 0;
};

int run_oracle(const OracleArgs& a) {
  const auto g = load_colouring_file(a.input);
  const auto h = load_pattern(a.h_path, a.h_complete);
  const auto res = balfactor::min_deviation_bruteforce(g, h);
  std::cout << "min_deviation " << res.min_deviation << '\n';
  std::cout << "counts";
  for (auto c : res.counts) std::cout << ' ' << c;
  std::cout << '\n';
  for (std::size_t p = 0; p < res.embedding.assignments.size(); ++p) {
    std::cout << "copy " << p << ':';
    for (auto v : res.embedding.assignments[p]) std::cout << ' ' << v;
    std::cout << '\n';
  }
  return 0;
}

struct SweepArgs {
  std::vector<int> n_list;
  int k = 2;
  int r = 2;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string h_path;
  std::string strategy = "best";
  int restarts = 1;
  std::string out;
  std::string flags;
};

int run_sweep(const SweepArgs& a) {
  balfactor::SweepOptions opts;
  opts.n_list = a.n_list;
  opts.k = a.k;
  opts.r = a.r;
  opts.trials = a.trials;
  opts.seed = a.seed;
  if (!a.h_path.empty()) {
    std::ifstream in(a.h_path);
    if (!in) throw balfactor::Error("cannot open '" + a.h_path + "'");
    opts.h = PatternGraph::load(in);
  }
  opts.rule = parse_rule(a.strategy);
  opts.restarts = a.restarts;
  opts.threads = default_threads();
  const auto rows = balfactor::run_sweep(opts);
  if (a.out.empty()) {
    balfactor::write_sweep_csv(std::cout, rows, a.flags);
  } else {
    std::ofstream out(a.out);
    if (!out) throw balfactor::Error("cannot write '" + a.out + "'");
    balfactor::write_sweep_csv(out, rows, a.flags);
  }
  return 0;
}

struct BoundsArgs {
  int d = 0;
  int r = 0;
};

int run_verify_bounds(const BoundsArgs& a) {
  const auto facts = balfactor::verify_lattice_facts(a.d, a.r);
  const auto table = balfactor::constants(a.d + 1, a.r);
  std::cout << "d " << a.d << '\n';
  std::cout << "r " << a.r << '\n';
  std::cout << "min_norm_sq " << facts.min_norm_sq << '\n';
  std::cout << "max_norm_sq " << facts.max_norm_sq << '\n';
  std::cout << "max_norm " << facts.max_norm << '\n';
  std::cout << "pass " << (facts.pass ? "true" : "false") << '\n';
  std::cout << "gain_threshold " << table.gain_threshold << '\n';
  std::cout << "log_min_angle " << table.log_min_angle << '\n';
  std::cout << "log_angle_ratio " << table.log_angle_ratio << '\n';
  std::cout << "swap_space_size " << table.swap_space_size.str() << '\n';
  std::cout << "log_clique_norm_bound " << table.log_clique_norm_bound << '\n';
  std::cout << "log_general_bound " << table.log_general_bound << '\n';
  std::cout << "log_k_colour_bound " << table.log_k_colour_bound << '\n';
  std::cout << "embed_error_term " << table.embed_error_term.str() << '\n';
  return facts.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nearly colour-balanced H-factors of edge-coloured complete "
               "graphs"};
  // The pattern option is spelled --h, so help must not own the short -h.
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a near-balanced colouring");
  gen->add_option("--n", gen_args.n, "vertex count")->required();
  gen->add_option("--k", gen_args.k, "colour count")->required();
  gen->add_option("--seed", gen_args.seed, "generator seed")->required();
  gen->add_option("--out", gen_args.out, "output file (default stdout)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "local search plus embedding");
  solve->add_option("--input", solve_args.input, "colouring file")->required();
  solve->add_option("--h", solve_args.h_path, "pattern graph file");
  solve->add_option("--h-complete", solve_args.h_complete,
                    "use the complete pattern on this many vertices");
  solve->add_option("--strategy", solve_args.strategy, "best or first");
  solve->add_option("--seed", solve_args.seed, "restart seed");
  solve->add_option("--restarts", solve_args.restarts, "restart count");
  solve->add_option("--max-iters", solve_args.max_iters,
                    "swap budget (negative: automatic)");
  solve->add_option("--out", solve_args.out, "JSON file (default stdout)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "brute-force exact minimum");
  oracle->add_option("--input", oracle_args.input, "colouring file")
      ->required();
  oracle->add_option("--h", oracle_args.h_path, "pattern graph file");
  oracle->add_option("--h-complete", oracle_args.h_complete,
                     "use the complete pattern on this many vertices");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "seeded benchmark sweep to CSV");
  sweep->add_option("--n-list", sweep_args.n_list, "instance scales")
      ->required()
      ->delimiter(',');
  sweep->add_option("--k", sweep_args.k, "colour count")->required();
  sweep->add_option("--r", sweep_args.r, "part size")->required();
  sweep->add_option("--trials", sweep_args.trials, "trials per scale")
      ->required();
  sweep->add_option("--seed", sweep_args.seed, "sweep seed")->required();
  sweep->add_option("--h", sweep_args.h_path,
                    "pattern graph file (default: complete on r vertices)");
  sweep->add_option("--strategy", sweep_args.strategy, "best or first");
  sweep->add_option("--restarts", sweep_args.restarts, "restarts per solve");
  sweep->add_option("--out", sweep_args.out, "CSV file (default stdout)");

  BoundsArgs bounds_args;
  auto* vb = app.add_subcommand("verify-bounds",
                                "check the swap-lattice facts and print the "
                                "constants table");
  vb->add_option("--d", bounds_args.d, "palette dimension")->required();
  vb->add_option("--r", bounds_args.r, "part size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string flags = join_flags(argc, argv);
  solve_args.flags = flags;
  sweep_args.flags = flags;

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (vb->parsed()) return run_verify_bounds(bounds_args);
  } catch (const balfactor::TooLargeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
