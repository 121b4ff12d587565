// jigsawlab: seeded experiments on double graphs — generation, the
// cluster-merge process, absorption and construction algorithms, exhaustive
// configuration counts, and the identity/domination verification suite.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jigsaw/absorption.hpp"
#include "jigsaw/construction.hpp"
#include "jigsaw/double_graph.hpp"
#include "jigsaw/engine.hpp"
#include "jigsaw/enumeration.hpp"
#include "jigsaw/errors.hpp"
#include "jigsaw/harness.hpp"
#include "jigsaw/verification.hpp"

namespace {

using namespace jigsaw;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open output file: " + path);
  return os;
}

DoubleGraph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open input file: " + path);
  return read_double_graph(is);
}

std::vector<std::vector<Vertex>> parse_clusters(const std::string& text) {
  std::vector<std::vector<Vertex>> clusters;
  std::stringstream blocks(text);
  std::string block;
  while (std::getline(blocks, block, '|')) {
    std::vector<Vertex> cluster;
    std::stringstream items(block);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      cluster.push_back(static_cast<Vertex>(std::stoul(item)));
    }
    if (!cluster.empty()) clusters.push_back(std::move(cluster));
  }
  return clusters;
}

void emit_records(const std::vector<TrialRecord>& records, const std::string& out,
                  const std::string& format) {
  const bool json = format == "json";
  if (out.empty()) {
    json ? write_json(std::cout, records) : write_csv(std::cout, records);
  } else {
    auto os = open_out(out);
    json ? write_json(os, records) : write_csv(os, records);
  }
}

void print_summaries(std::ostream& os, const std::vector<SweepSummary>& summaries) {
  os << "c        p1            p2            trials  fraction  ci_lo    ci_hi    "
        "mean_rounds  mean_max_cluster  mean_ms\n";
  for (const auto& s : summaries) {
    os << std::left << std::setw(9) << s.c << std::setw(14) << s.p1 << std::setw(14) << s.p2
       << std::setw(8) << s.trials << std::setw(10) << s.fraction << std::setw(9)
       << std::setprecision(4) << s.ci.lo << std::setw(9) << s.ci.hi << std::setw(13)
       << s.mean_rounds << std::setw(18) << s.mean_max_cluster << s.mean_runtime_ms
       << std::setprecision(6) << '\n';
    if (s.below_connectivity_floor)
      std::cerr << "warning: c=" << s.c << " puts p2 below the connectivity floor (ln n - ln ln n)/n\n";
  }
}

int cmd_gen(Vertex n, double p1, double p2, std::uint64_t seed, const std::string& out) {
  const DoubleGraph g = generate_double_graph({n, p1, p2, seed});
  if (out.empty()) {
    write_double_graph(std::cout, g);
  } else {
    auto os = open_out(out);
    write_double_graph(os, g);
  }
  return 0;
}

int cmd_run(const std::string& input, Vertex n, double p1, double p2, std::uint64_t seed,
            const std::string& out, const std::string& format) {
  TrialRecord rec;
  if (!input.empty()) {
    const DoubleGraph g = load_graph(input);
    const auto t0 = std::chrono::steady_clock::now();
    const JigsawResult res = run_jigsaw(g);
    const auto t1 = std::chrono::steady_clock::now();
    rec.n = g.vertex_count();
    rec.seed = seed;
    rec.percolated = res.percolated;
    rec.rounds = static_cast<std::uint32_t>(res.rounds);
    rec.max_cluster = res.final_max_cluster();
    rec.red_edges = g.edges(Colour::Red).size();
    rec.blue_edges = g.edges(Colour::Blue).size();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  } else {
    rec = run_trial(n, p1, p2, seed);
  }
  emit_records({rec}, out, format);
  return 0;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out, const std::string& format) {
  const SweepResult res = run_sweep(cfg);
  emit_records(res.records, out, format);
  print_summaries(out.empty() ? std::cerr : std::cout, res.summaries);
  return 0;
}

int cmd_absorb(const std::string& input, Vertex n, double p1, double p2, std::uint64_t seed,
               std::optional<Vertex> v1, const std::string& clusters_text, Vertex cap) {
  std::optional<DoubleGraph> g;
  if (!input.empty())
    g = load_graph(input);
  else
    g = generate_double_graph({n, p1, p2, seed});

  auto print_trace = [&](const AbsorptionTrace& tr) {
    std::cout << "percolated: " << (tr.percolated ? "yes" : "no") << "\nsteps: " << tr.steps
              << "\norder:";
    for (Vertex v : tr.vertex_order) std::cout << ' ' << v;
    std::cout << '\n';
    for (std::size_t i = 0; i < tr.per_step_added.size(); ++i) {
      std::cout << "step " << i + 1 << " merged:";
      for (const auto& c : tr.per_step_added[i]) {
        std::cout << " {";
        for (std::size_t k = 0; k < c.size(); ++k) std::cout << (k ? "," : "") << c[k];
        std::cout << '}';
      }
      std::cout << '\n';
    }
  };

  if (v1) {
    AbsorptionInput in{*v1, parse_clusters(clusters_text)};
    print_trace(run_absorption(*g, in));
    return 0;
  }
  const auto found = find_percolating_input(*g, cap);
  if (!found) {
    std::cout << "no percolating input exists\n";
    return 0;
  }
  std::cout << "start: " << found->input.start << "\nclusters:";
  for (const auto& c : found->input.clusters) {
    std::cout << " {";
    for (std::size_t k = 0; k < c.size(); ++k) std::cout << (k ? "," : "") << c[k];
    std::cout << '}';
  }
  std::cout << "\nminimal steps: " << found->steps << '\n';
  print_trace(run_absorption(*g, found->input));
  return 0;
}

int cmd_construct(Vertex n, double p1, double p2, std::optional<double> c, double epsilon,
                  std::uint64_t seed, bool force, const std::string& report_path,
                  const std::string& instrument) {
  if (c) {
    const auto split = split_probabilities(n, *c);
    p1 = split.p1;
    p2 = split.p2;
  }
  ConstructionOptions opts;
  if (instrument == "on") opts.instrument = Instrument::On;
  if (instrument == "off") opts.instrument = Instrument::Off;
  const PipelineReport rep = supercritical_pipeline(n, p1, p2, epsilon, seed, force, opts);

  std::ostringstream os;
  os << "n: " << n << "\np1: " << p1 << "\np2: " << p2 << "\nepsilon: " << epsilon
     << "\nseed: " << seed << "\nprecondition_ok: " << rep.precondition_ok
     << "\nforced: " << rep.forced << "\nomega: " << rep.params.log_log_n
     << "\nbottleneck_size_k0: " << rep.params.bottleneck_size
     << "\ntarget_size_k1: " << rep.params.target_size
     << "\npool_size: " << rep.params.pool_size << "\nrounds_run: " << rep.rounds_run
     << "\ntotal_steps: " << rep.total_steps << "\nreached_k1: " << rep.reached_target
     << "\nfrontier_condition: " << rep.frontier_condition
     << "\nwinning_round: " << rep.winning_round
     << "\nevent_H_fraction: " << rep.event_h_fraction
     << "\ninstrumented: " << rep.instrumented
     << "\nduplicate_queries: " << rep.duplicate_queries
     << "\nwhole_graph_percolated: " << rep.whole_graph_percolated
     << "\njigsaw_rounds: " << rep.jigsaw_rounds << "\nmax_cluster: " << rep.max_cluster
     << '\n';
  if (report_path.empty()) {
    std::cout << os.str();
  } else {
    auto f = open_out(report_path);
    f << os.str();
  }
  return 0;
}

int cmd_enumerate(int k, std::optional<int> l, std::optional<int> r, int cap, unsigned threads,
                  const std::string& out) {
  std::ostringstream os;
  os << std::setprecision(6);
  if (l && r) {
    const auto rep = count_Mklr(k, *l, *r, cap, threads);
    os << "Mklr k=" << rep.k << " l=" << rep.l << " r=" << rep.r << " count=" << rep.exact_count
       << " closed_form_bound=" << rep.closed_form << " closed_form_ok=" << rep.closed_form_ok
       << " partition_bound=" << rep.partition_bound << " partition_ok=" << rep.partition_ok
       << '\n';
  } else if (l) {
    const auto rep = count_Mprime(k, *l, cap, threads);
    os << "Mprime k=" << rep.k << " l=" << rep.l << " count=" << rep.exact_count
       << " bound=" << rep.bound << " ok=" << rep.bound_satisfied << '\n';
  } else {
    const auto rep = count_minimal_configs(k, cap, threads);
    os << "minimal_configs k=" << rep.k << " count=" << rep.exact_count
       << " cayley_bound=" << rep.bound << " ok=" << rep.bound_satisfied << '\n';
  }
  if (out.empty()) {
    std::cout << os.str();
  } else {
    auto f = open_out(out);
    f << os.str();
  }
  return 0;
}

int cmd_verify() {
  const auto checks = run_verification_suite();
  std::size_t fails = 0;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  [" << c.group << "] " << c.name;
    if (!c.pass && !c.detail.empty()) std::cout << " —" << c.detail;
    std::cout << '\n';
    fails += !c.pass;
  }
  std::cout << checks.size() - fails << "/" << checks.size() << " checks passed\n";
  return fails == 0 ? 0 : 1;
}

int cmd_bottleneck(std::uint64_t n, double c, std::uint32_t trials, std::uint64_t seed,
                   std::uint32_t workers) {
  const auto rep = bottleneck_compare(n, c, trials, seed, workers);
  std::cout << "n: " << rep.n << "\nc: " << rep.c << "\np1: " << rep.p1 << "\np2: " << rep.p2
            << "\ntrials: " << rep.trials << "\npredicted_root: " << rep.predicted_root
            << "\nmedian_max_cluster: " << rep.median_max_cluster
            << "\nmedian_ratio: " << rep.median_ratio
            << "\nwithin_factor_two: " << rep.within_factor_two
            << "\nfraction_above_bottleneck: " << rep.fraction_above_bottleneck << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jigsawlab: percolation experiments on random double graphs"};
  app.require_subcommand(1);

  // shared option storage
  std::uint64_t n = 1000, seed = 1, trials = 100;
  double p1 = 0.0, p2 = 0.0, epsilon = 1.0;
  std::uint32_t workers = 1;
  std::string out, format = "csv", input, instrument = "auto", split_name = "symmetric";
  std::vector<double> c_values;
  std::optional<double> c_single;
  std::optional<std::uint64_t> v1;
  std::string clusters_text;
  std::optional<int> op_l, op_r;
  int op_k = 4, cap = 6;

  auto* gen = app.add_subcommand("gen", "generate a seeded double graph");
  gen->add_option("--n", n)->required();
  gen->add_option("--p1", p1)->required();
  gen->add_option("--p2", p2)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out);

  auto* run = app.add_subcommand("run", "run the merge process on one double graph");
  run->add_option("--input", input);
  run->add_option("--n", n);
  run->add_option("--p1", p1);
  run->add_option("--p2", p2);
  run->add_option("--seed", seed);
  run->add_option("--out", out);
  run->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "seeded Monte Carlo sweep over threshold multiples");
  sweep->add_option("--n", n)->required();
  sweep->add_option("--c", c_values)->expected(-1);
  sweep->add_option("--trials", trials);
  sweep->add_option("--seed", seed);
  sweep->add_option("--workers", workers);
  sweep->add_option("--split", split_name)->check(CLI::IsMember({"symmetric", "sqrtn"}));
  sweep->add_option("--out", out);
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* absorb = app.add_subcommand("absorb", "absorption process / input search");
  absorb->add_option("--input", input);
  absorb->add_option("--n", n);
  absorb->add_option("--p1", p1);
  absorb->add_option("--p2", p2);
  absorb->add_option("--seed", seed);
  absorb->add_option("--v1", v1);
  absorb->add_option("--clusters", clusters_text, "e.g. \"2,3|4|5,6\"");
  absorb->add_option("--cap", cap);

  auto* construct = app.add_subcommand("construct", "supercritical construction pipeline");
  construct->add_option("--n", n)->required();
  construct->add_option("--p1", p1);
  construct->add_option("--p2", p2);
  construct->add_option("--c", c_single);
  construct->add_option("--epsilon", epsilon);
  construct->add_option("--seed", seed);
  construct->add_flag("--force", "run despite violated preconditions");
  construct->add_option("--report", out);
  construct->add_option("--instrument", instrument)->check(CLI::IsMember({"auto", "on", "off"}));

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive configuration counts");
  enumerate->add_option("--k", op_k)->required();
  enumerate->add_option("--l", op_l);
  enumerate->add_option("--r", op_r);
  enumerate->add_option("--cap", cap);
  enumerate->add_option("--workers", workers);
  enumerate->add_option("--out", out);

  auto* verify = app.add_subcommand("verify", "identity / domination / root-identity suite");
  (void)verify;

  auto* bottleneck = app.add_subcommand("bottleneck", "largest cluster vs predicted root");
  bottleneck->add_option("--n", n)->required();
  bottleneck->add_option("--c", c_single);
  bottleneck->add_option("--trials", trials);
  bottleneck->add_option("--seed", seed);
  bottleneck->add_option("--workers", workers);

  try {
    app.parse(argc, argv);

    if (gen->parsed())
      return cmd_gen(static_cast<jigsaw::Vertex>(n), p1, p2, seed, out);
    if (run->parsed())
      return cmd_run(input, static_cast<jigsaw::Vertex>(n), p1, p2, seed, out, format);
    if (sweep->parsed()) {
      jigsaw::SweepConfig cfg;
      cfg.n = n;
      cfg.c_values = c_values;
      cfg.split = split_name == "sqrtn" ? jigsaw::SplitRule::SqrtN : jigsaw::SplitRule::Symmetric;
      cfg.trials = static_cast<std::uint32_t>(trials);
      cfg.seed = seed;
      cfg.workers = workers;
      return cmd_sweep(cfg, out, format);
    }
    if (absorb->parsed()) {
      std::optional<jigsaw::Vertex> start;
      if (v1) start = static_cast<jigsaw::Vertex>(*v1);
      return cmd_absorb(input, static_cast<jigsaw::Vertex>(n), p1, p2, seed, start,
                        clusters_text, static_cast<jigsaw::Vertex>(cap));
    }
    if (construct->parsed())
      return cmd_construct(static_cast<jigsaw::Vertex>(n), p1, p2, c_single, epsilon, seed,
                           construct->count("--force") > 0, out, instrument);
    if (enumerate->parsed()) return cmd_enumerate(op_k, op_l, op_r, cap, workers, out);
    if (verify->parsed()) return cmd_verify();
    if (bottleneck->parsed())
      return cmd_bottleneck(n, c_single.value_or(0.5), static_cast<std::uint32_t>(trials), seed,
                            workers);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const jigsaw::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const jigsaw::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const jigsaw::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
