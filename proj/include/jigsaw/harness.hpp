#ifndef JIGSAW_HARNESS_HPP
#define JIGSAW_HARNESS_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "jigsaw/analysis.hpp"
#include "jigsaw/double_graph.hpp"
#include "jigsaw/engine.hpp"
#include "jigsaw/errors.hpp"
#include "jigsaw/parallel.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

struct TrialRecord {
  std::uint64_t n = 0;
  double p1 = 0, p2 = 0;
  double c = 0;  // threshold multiple: p1*p2 * 4 n ln n
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;
  bool percolated = false;
  std::uint32_t rounds = 0;
  std::uint32_t max_cluster = 0;
  std::uint64_t red_edges = 0, blue_edges = 0;
  double runtime_ms = 0;
};

inline double threshold_multiple(std::uint64_t n, double p1, double p2) {
  return n >= 2 ? p1 * p2 * 4.0 * static_cast<double>(n) * std::log(static_cast<double>(n))
                : 0.0;
}

inline TrialRecord run_trial(Vertex n, double p1, double p2, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const DoubleGraph g = generate_double_graph({n, p1, p2, seed});
  const JigsawResult res = run_jigsaw(g);
  const auto t1 = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.n = n;
  rec.p1 = p1;
  rec.p2 = p2;
  rec.c = threshold_multiple(n, p1, p2);
  rec.seed = seed;
  rec.percolated = res.percolated;
  rec.rounds = static_cast<std::uint32_t>(res.rounds);
  rec.max_cluster = res.final_max_cluster();
  rec.red_edges = g.edges(Colour::Red).size();
  rec.blue_edges = g.edges(Colour::Blue).size();
  rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

struct WilsonInterval {
  double lo = 0, hi = 0;
};

inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                      double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double nd = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double centre = phat + z2 / (2.0 * nd);
  const double spread = z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd));
  WilsonInterval w{std::max(0.0, (centre - spread) / denom),
                   std::min(1.0, (centre + spread) / denom)};
  if (successes == 0) w.lo = 0.0;
  if (successes == trials) w.hi = 1.0;
  return w;
}

enum class SplitRule { Symmetric, SqrtN };

struct ProbabilitySplit {
  double p1 = 0, p2 = 0;
  bool below_connectivity_floor = false;  // p2 < (ln n - ln ln n)/n
};

// Maps a threshold multiple c (p1*p2 = c/(4 n ln n)) to a probability pair.
inline ProbabilitySplit split_probabilities(std::uint64_t n, double c,
                                            SplitRule rule = SplitRule::Symmetric) {
  if (n < 2) throw ParameterError("split_probabilities: n must be at least 2");
  if (c < 0) throw ParameterError("split_probabilities: c must be non-negative");
  const double nn = static_cast<double>(n);
  const double product = c / (4.0 * nn * std::log(nn));
  ProbabilitySplit out;
  if (rule == SplitRule::Symmetric) {
    out.p1 = out.p2 = std::min(1.0, std::sqrt(product));
  } else {
    out.p1 = std::min(1.0, std::pow(nn, -0.5));
    out.p2 = std::min(1.0, product / out.p1);
  }
  out.below_connectivity_floor = out.p2 < (std::log(nn) - std::log(std::log(nn))) / nn;
  return out;
}

struct SweepConfig {
  std::uint64_t n = 0;
  std::vector<double> c_values;
  SplitRule split = SplitRule::Symmetric;
  std::uint32_t trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t workers = 1;

  void validate() const {
    if (n < 2) throw ParameterError("SweepConfig: n must be at least 2");
    if (trials < 1 && !c_values.empty())
      throw ParameterError("SweepConfig: trials must be at least 1");
  }
};

struct SweepSummary {
  double c = 0, p1 = 0, p2 = 0;
  std::uint32_t trials = 0;
  double fraction = 0;
  WilsonInterval ci;
  double mean_rounds = 0, mean_max_cluster = 0, mean_runtime_ms = 0;
  bool below_connectivity_floor = false;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  std::vector<SweepSummary> summaries;
};

// Runs trials for every c value. Records are a pure function of the config:
// per-trial seeds are derived from (master seed, c index, trial index), rows
// come out sorted by (c index, trial index) whatever the worker count, and
// runtime_ms is zeroed in the emitted records so re-runs are byte-identical
// (measured runtimes survive in the summaries).
inline SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult out;
  const std::size_t per_c = config.trials;
  out.records.resize(config.c_values.size() * per_c);

  std::vector<ProbabilitySplit> splits;
  splits.reserve(config.c_values.size());
  for (double c : config.c_values) splits.push_back(split_probabilities(config.n, c, config.split));

  parallel_for(out.records.size(), config.workers, [&](std::size_t task) {
    const std::size_t ci = task / per_c;
    const std::uint32_t ti = static_cast<std::uint32_t>(task % per_c);
    TrialRecord rec = run_trial(static_cast<Vertex>(config.n), splits[ci].p1, splits[ci].p2,
                                derive_seed(config.seed, ci, ti));
    rec.c = config.c_values[ci];
    rec.trial = ti;
    out.records[task] = rec;
  });

  for (std::size_t ci = 0; ci < config.c_values.size(); ++ci) {
    SweepSummary s;
    s.c = config.c_values[ci];
    s.p1 = splits[ci].p1;
    s.p2 = splits[ci].p2;
    s.trials = config.trials;
    s.below_connectivity_floor = splits[ci].below_connectivity_floor;
    std::uint64_t hits = 0;
    double rounds = 0, maxc = 0, ms = 0;
    for (std::size_t ti = 0; ti < per_c; ++ti) {
      const auto& rec = out.records[ci * per_c + ti];
      hits += rec.percolated;
      rounds += rec.rounds;
      maxc += rec.max_cluster;
      ms += rec.runtime_ms;
    }
    s.fraction = per_c ? static_cast<double>(hits) / per_c : 0.0;
    s.ci = wilson_interval(hits, per_c);
    s.mean_rounds = per_c ? rounds / per_c : 0.0;
    s.mean_max_cluster = per_c ? maxc / per_c : 0.0;
    s.mean_runtime_ms = per_c ? ms / per_c : 0.0;
    out.summaries.push_back(s);
  }

  for (auto& rec : out.records) rec.runtime_ms = 0.0;
  return out;
}

struct EstimateResult {
  double fraction = 0;
  WilsonInterval ci;
  std::uint32_t trials = 0;
};

inline EstimateResult estimate_percolation_probability(std::uint64_t n, double c,
                                                       std::uint32_t trials,
                                                       std::uint64_t seed,
                                                       std::uint32_t workers = 1,
                                                       SplitRule split = SplitRule::Symmetric) {
  if (trials < 1) throw ParameterError("estimate_percolation_probability: trials must be >= 1");
  SweepConfig cfg{n, {c}, split, trials, seed, workers};
  const SweepResult res = run_sweep(cfg);
  return {res.summaries[0].fraction, res.summaries[0].ci, trials};
}

// --- output formats --------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "n,p1,p2,c,trial,seed,percolated,rounds,max_cluster,red_edges,blue_edges,runtime_ms";

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace detail

inline void write_csv_row(std::ostream& os, const TrialRecord& r) {
  os << r.n << ',' << detail::format_double(r.p1) << ',' << detail::format_double(r.p2) << ','
     << detail::format_double(r.c) << ',' << r.trial << ',' << r.seed << ','
     << (r.percolated ? 1 : 0) << ',' << r.rounds << ',' << r.max_cluster << ',' << r.red_edges
     << ',' << r.blue_edges << ',' << detail::format_double(r.runtime_ms) << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) write_csv_row(os, r);
}

// JSON Lines: one object per record, field names as in the CSV schema.
inline void write_json_row(std::ostream& os, const TrialRecord& r) {
  os << "{\"n\":" << r.n << ",\"p1\":" << detail::format_double(r.p1)
     << ",\"p2\":" << detail::format_double(r.p2) << ",\"c\":" << detail::format_double(r.c)
     << ",\"trial\":" << r.trial << ",\"seed\":" << r.seed
     << ",\"percolated\":" << (r.percolated ? "true" : "false") << ",\"rounds\":" << r.rounds
     << ",\"max_cluster\":" << r.max_cluster << ",\"red_edges\":" << r.red_edges
     << ",\"blue_edges\":" << r.blue_edges
     << ",\"runtime_ms\":" << detail::format_double(r.runtime_ms) << "}\n";
}

inline void write_json(std::ostream& os, const std::vector<TrialRecord>& records) {
  for (const auto& r : records) write_json_row(os, r);
}

// --- bottleneck prediction vs simulation ------------------------------------

struct BottleneckCompareReport {
  std::uint64_t n = 0;
  double c = 0, p1 = 0, p2 = 0;
  std::uint32_t trials = 0;
  double predicted_root = 0;  // smallest solution of 2xN e^{-xN} = n^{-1/x}
  bool root_found = false;
  double median_max_cluster = 0;
  double median_ratio = 0;  // median max cluster / predicted root
  bool within_factor_two = false;
  double fraction_above_bottleneck = 0;  // trials with max cluster > ceil(2 ln n)
};

// Subcritical comparison of the observed largest cluster against the
// implicit-equation prediction. The prediction carries no error terms, so
// only a loose factor-2 agreement is asserted.
inline BottleneckCompareReport bottleneck_compare(std::uint64_t n, double c,
                                                  std::uint32_t trials, std::uint64_t seed,
                                                  std::uint32_t workers = 1) {
  if (!(c > 0 && c < 1))
    throw ParameterError("bottleneck_compare: c must lie in (0,1), the subcritical regime");
  if (trials < 1) throw ParameterError("bottleneck_compare: trials must be >= 1");

  BottleneckCompareReport rep;
  rep.n = n;
  rep.c = c;
  rep.trials = trials;
  const auto split = split_probabilities(n, c);
  rep.p1 = split.p1;
  rep.p2 = split.p2;

  const double nn = static_cast<double>(n);
  const auto root = bottleneck_root(BigFloat(nn * split.p1 * split.p2), BigFloat(nn));
  rep.root_found = root.found;
  rep.predicted_root = root.found ? static_cast<double>(root.x) : 0.0;

  std::vector<std::uint32_t> max_clusters(trials);
  parallel_for(trials, workers, [&](std::size_t ti) {
    const TrialRecord rec = run_trial(static_cast<Vertex>(n), split.p1, split.p2,
                                      derive_seed(seed, 0, ti));
    max_clusters[ti] = rec.max_cluster;
  });

  std::vector<std::uint32_t> sorted = max_clusters;
  std::sort(sorted.begin(), sorted.end());
  rep.median_max_cluster = trials % 2 == 1
                               ? sorted[trials / 2]
                               : (sorted[trials / 2 - 1] + sorted[trials / 2]) / 2.0;

  const double k0 = std::ceil(2.0 * std::log(nn));
  std::uint64_t above = 0;
  for (auto m : max_clusters) above += m > k0;
  rep.fraction_above_bottleneck = static_cast<double>(above) / trials;

  if (rep.root_found && rep.predicted_root > 0) {
    rep.median_ratio = rep.median_max_cluster / rep.predicted_root;
    rep.within_factor_two = rep.median_ratio >= 0.5 && rep.median_ratio <= 2.0;
  }
  return rep;
}

}  // namespace jigsaw

#endif
