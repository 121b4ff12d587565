#ifndef JIGSAW_CONSTRUCTION_HPP
#define JIGSAW_CONSTRUCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "jigsaw/double_graph.hpp"
#include "jigsaw/engine.hpp"
#include "jigsaw/errors.hpp"

namespace jigsaw {

// Derived quantities for the supercritical growth algorithm. `n` is kept
// real-valued so parameter studies can evaluate the formulas exactly;
// integer-valued sizes use conservative rounding (pool and cutoff down,
// thresholds up).
struct SupercriticalParams {
  double n = 0;
  double epsilon = 0;
  double p1 = 0, p2 = 0;
  double p1_stage1 = 0, p1_stage2 = 0;  // two-round red exposure, summing to p1
  double p2_stage1 = 0, p2_stage2 = 0;  // blue is revealed entirely in stage one
  double log_log_n = 0;                 // omega
  double delta = 0;                     // epsilon/20, pool margin exponent
  double event_tolerance = 0;           // epsilon/10, concentration window
  std::uint64_t bottleneck_size = 0;    // ceil(2 ln n)
  std::uint64_t target_size = 0;        // ceil(1/(omega*p1_stage1)); huge if unbounded
  std::uint64_t poisson_cutoff = 0;     // floor(n*p1_stage1/omega)
  std::uint64_t pool_size = 0;          // n - ceil(n^{1-delta})
  double np1_stage1 = 0;                // n*p1_stage1, scale of the step events
};

inline SupercriticalParams derive_params(double n, double p1, double p2, double epsilon) {
  if (!(n >= 16)) throw ParameterError("derive_params: n must be at least 16");
  // epsilon < 2 keeps the stage-one red probability positive
  if (!(epsilon > 0 && epsilon < 2)) throw ParameterError("derive_params: epsilon outside (0,2)");
  if (!(p1 >= 0 && p1 <= 1 && p2 >= 0 && p2 <= 1))
    throw ParameterError("derive_params: probabilities outside [0,1]");

  SupercriticalParams sp;
  sp.n = n;
  sp.epsilon = epsilon;
  sp.p1 = p1;
  sp.p2 = p2;
  sp.p1_stage1 = (1.0 - epsilon / 2.0) * p1;
  sp.p1_stage2 = (epsilon / 2.0) * p1;
  sp.p2_stage1 = p2;
  sp.p2_stage2 = 0.0;
  sp.log_log_n = std::log(std::log(n));
  sp.delta = epsilon / 20.0;
  sp.event_tolerance = epsilon / 10.0;
  sp.bottleneck_size = static_cast<std::uint64_t>(std::ceil(2.0 * std::log(n)));
  sp.np1_stage1 = n * sp.p1_stage1;

  const double k1_raw = sp.p1_stage1 > 0 ? 1.0 / (sp.log_log_n * sp.p1_stage1)
                                         : std::numeric_limits<double>::infinity();
  sp.target_size = k1_raw > 1e18 ? std::numeric_limits<std::uint64_t>::max()
                                 : static_cast<std::uint64_t>(std::ceil(k1_raw));
  sp.poisson_cutoff = static_cast<std::uint64_t>(std::floor(sp.np1_stage1 / sp.log_log_n));

  const double shortfall = std::ceil(std::pow(n, 1.0 - sp.delta));
  if (shortfall >= n) throw ParameterError("derive_params: pool would be empty at this n");
  sp.pool_size = static_cast<std::uint64_t>(n - shortfall);

  if (sp.target_size <= sp.bottleneck_size)
    throw ParameterError("derive_params: bottleneck size k0 not below target size k1");
  return sp;
}

struct ConstructionStep {
  std::uint32_t fresh = 0;           // |Q_t|: new red neighbours of x_t in the pool
  std::uint32_t blue_hits = 0;       // |B_t|: members of Q_t blue-adjacent to x_1..x_t
  std::uint32_t frontier_hits = 0;   // |C_t|: frontier vertices blue-adjacent to x_t
  std::uint32_t frontier_after = 0;  // |R_t|
};

struct ConstructionRoundState {
  std::uint32_t index = 0;        // round number, 1-based
  std::uint64_t pool_size = 0;    // |V_l|
  Vertex pool_max_label = 0;      // V_l = the lowest pool_size active labels, up to this one
  std::vector<Vertex> members;    // X_T in discovery order x_1, x_2, ...
  std::vector<Vertex> frontier;   // R_T, ascending
  std::vector<ConstructionStep> steps;
  bool reached_target = false;
};

enum class Instrument { Auto, On, Off };

struct ConstructionOptions {
  Instrument instrument = Instrument::Auto;
  // Auto switches the per-pair query bitmaps off above this vertex count
  // (they need C(n,2) bits per colour).
  Vertex instrument_auto_limit = 20000;
};

struct ConstructionResult {
  std::vector<ConstructionRoundState> rounds;
  bool instrumented = false;
  std::uint64_t red_queries = 0;
  std::uint64_t blue_queries = 0;
  std::uint64_t duplicate_queries = 0;  // pairs revealed more than once; must stay 0
  std::uint64_t total_steps = 0;
};

// The multi-round growth algorithm. Each round grows an ordered percolating
// set X from the lowest-labelled pool vertex: step t reveals the fresh red
// neighbours Q_t of x_t, moves those with a blue edge into {x_1..x_t} (B_t)
// and the pre-step frontier vertices with a blue edge to x_t (C_t) into X,
// and keeps the rest of Q_t in the frontier R. The round ends when the
// ordered vertices are exhausted or |X| reaches the target size; its X is
// then discarded from the pool, which keeps rounds independent. When
// instrumented, every revealed vertex pair is recorded in per-colour bitmaps
// and re-reveals are counted.
inline ConstructionResult run_construction(const DoubleGraph& g, const SupercriticalParams& sp,
                                           ConstructionOptions opts = {}) {
  const Vertex n = g.vertex_count();
  if (static_cast<double>(n) != std::floor(sp.n) && static_cast<double>(n) != std::ceil(sp.n))
    throw ParameterError("run_construction: params derived for a different n");
  const std::uint64_t pool_size = sp.pool_size;
  const std::uint64_t target = sp.target_size;

  ConstructionResult out;
  out.instrumented = opts.instrument == Instrument::On ||
                     (opts.instrument == Instrument::Auto && n <= opts.instrument_auto_limit);

  std::vector<std::uint64_t> seen_red, seen_blue;
  if (out.instrumented) {
    const std::uint64_t words = (detail::pair_count(n) + 63) / 64;
    seen_red.assign(words, 0);
    seen_blue.assign(words, 0);
  }
  auto record = [&](std::vector<std::uint64_t>& seen, Vertex u, Vertex v) {
    const std::uint64_t idx = detail::encode_pair_index(std::min(u, v), std::max(u, v), n);
    std::uint64_t& word = seen[idx >> 6];
    const std::uint64_t bit = 1ull << (idx & 63);
    if (word & bit) ++out.duplicate_queries;
    word |= bit;
  };

  // doubly linked list over labels; 0 and n+1 are sentinels
  std::vector<Vertex> next(n + 2), prev(n + 2);
  for (Vertex v = 0; v <= n; ++v) next[v] = v + 1;
  for (Vertex v = 1; v <= n + 1; ++v) prev[v] = v - 1;
  std::vector<std::uint8_t> discarded(n + 1, 0);
  std::uint64_t active_count = n;

  // pool boundary: largest label inside V_l; count_le actives <= boundary
  Vertex boundary = 0;
  std::uint64_t count_le = 0;
  while (count_le < pool_size && next[boundary] <= n) {
    boundary = next[boundary];
    ++count_le;
  }

  std::vector<std::uint32_t> x_stamp(n + 1, 0), r_stamp(n + 1, 0);
  std::vector<Vertex> frontier, fresh, blue_in, frontier_out, added;

  std::uint32_t round = 0;
  while (active_count >= pool_size) {
    ++round;
    ConstructionRoundState rs;
    rs.index = round;
    rs.pool_size = pool_size;
    rs.pool_max_label = boundary;
    frontier.clear();
    std::uint64_t frontier_live = 0;

    const Vertex x1 = next[0];
    rs.members.push_back(x1);
    x_stamp[x1] = round;

    for (std::uint64_t t = 1; t <= rs.members.size() && rs.members.size() < target; ++t) {
      const Vertex xt = rs.members[t - 1];

      fresh.clear();
      if (out.instrumented) {
        for (Vertex v = next[0]; v <= boundary; v = next[v]) {
          if (x_stamp[v] == round || r_stamp[v] == round) continue;
          record(seen_red, xt, v);
          ++out.red_queries;
          if (g.has_edge(Colour::Red, xt, v)) fresh.push_back(v);
        }
      } else {
        for (Vertex w : g.neighbours(Colour::Red, xt)) {
          if (w > boundary || discarded[w]) continue;
          if (x_stamp[w] == round || r_stamp[w] == round) continue;
          fresh.push_back(w);
        }
        out.red_queries += fresh.size();
      }

      blue_in.clear();
      for (Vertex q : fresh) {
        bool hit = false;
        if (out.instrumented) {
          for (std::uint64_t i = 0; i < t; ++i) {
            record(seen_blue, q, rs.members[i]);
            ++out.blue_queries;
            if (g.has_edge(Colour::Blue, q, rs.members[i])) hit = true;
          }
        } else {
          for (std::uint64_t i = 0; i < t && !hit; ++i)
            hit = g.has_edge(Colour::Blue, q, rs.members[i]);
        }
        if (hit) blue_in.push_back(q);
      }

      frontier_out.clear();
      for (Vertex w : frontier) {
        if (r_stamp[w] != round || x_stamp[w] == round) continue;  // stale entry
        if (out.instrumented) {
          record(seen_blue, xt, w);
          ++out.blue_queries;
        }
        if (g.has_edge(Colour::Blue, xt, w)) frontier_out.push_back(w);
      }
      std::sort(frontier_out.begin(), frontier_out.end());

      added.clear();
      std::merge(blue_in.begin(), blue_in.end(), frontier_out.begin(), frontier_out.end(),
                 std::back_inserter(added));
      for (Vertex v : added) {
        x_stamp[v] = round;
        rs.members.push_back(v);
      }
      for (Vertex q : fresh) {
        if (x_stamp[q] == round) continue;  // went straight into X
        r_stamp[q] = round;
        frontier.push_back(q);
      }
      frontier_live += fresh.size() - blue_in.size();
      frontier_live -= frontier_out.size();

      ConstructionStep step;
      step.fresh = static_cast<std::uint32_t>(fresh.size());
      step.blue_hits = static_cast<std::uint32_t>(blue_in.size());
      step.frontier_hits = static_cast<std::uint32_t>(frontier_out.size());
      if (out.instrumented) {
        std::uint64_t live = 0;
        for (Vertex w : frontier)
          if (r_stamp[w] == round && x_stamp[w] != round) ++live;
        step.frontier_after = static_cast<std::uint32_t>(live);
      } else {
        step.frontier_after = static_cast<std::uint32_t>(frontier_live);
      }
      rs.steps.push_back(step);
    }

    rs.reached_target = rs.members.size() >= target;
    for (Vertex w : frontier)
      if (r_stamp[w] == round && x_stamp[w] != round) rs.frontier.push_back(w);
    std::sort(rs.frontier.begin(), rs.frontier.end());
    out.total_steps += rs.steps.size();

    // discard X_T and restore the pool boundary invariant
    std::vector<Vertex> doomed = rs.members;
    std::sort(doomed.begin(), doomed.end(), std::greater<>());
    for (Vertex v : doomed) {
      if (v == boundary) boundary = prev[v];
      next[prev[v]] = next[v];
      prev[next[v]] = prev[v];
      discarded[v] = 1;
      --count_le;
    }
    active_count -= doomed.size();
    if (active_count < pool_size) {
      out.rounds.push_back(std::move(rs));
      break;
    }
    while (count_le < pool_size && next[boundary] <= n) {
      boundary = next[boundary];
      ++count_le;
    }
    out.rounds.push_back(std::move(rs));
  }
  return out;
}

struct EventHReport {
  std::vector<std::uint8_t> fresh_ok;         // Q_t within (1 +- eps*/2) n p1^(1)
  std::vector<std::uint8_t> blue_ok;          // B_t below (eps*/4) n p1^(1)
  std::vector<std::uint8_t> frontier_hit_ok;  // C_t below (eps*/4) n p1^(1)
  std::vector<std::uint8_t> frontier_ok;      // R_t within (1 +- eps*) t n p1^(1)
  bool holds = true;
};

inline EventHReport check_event_H(const ConstructionRoundState& round,
                                  const SupercriticalParams& sp) {
  EventHReport rep;
  const double scale = sp.np1_stage1;
  const double es = sp.event_tolerance;
  for (std::size_t t = 1; t <= round.steps.size(); ++t) {
    const auto& s = round.steps[t - 1];
    const bool q_ok = s.fresh >= (1 - es / 2) * scale && s.fresh <= (1 + es / 2) * scale;
    const bool b_ok = s.blue_hits < (es / 4) * scale;
    const bool c_ok = s.frontier_hits < (es / 4) * scale;
    const double tscale = static_cast<double>(t) * scale;
    const bool r_ok =
        s.frontier_after >= (1 - es) * tscale && s.frontier_after <= (1 + es) * tscale;
    rep.fresh_ok.push_back(q_ok);
    rep.blue_ok.push_back(b_ok);
    rep.frontier_hit_ok.push_back(c_ok);
    rep.frontier_ok.push_back(r_ok);
    rep.holds = rep.holds && q_ok && b_ok && c_ok && r_ok;
  }
  return rep;
}

struct PipelineReport {
  SupercriticalParams params;
  bool precondition_ok = true;
  bool forced = false;
  std::uint64_t rounds_run = 0;
  std::uint64_t total_steps = 0;
  bool reached_target = false;       // some round grew to k1
  std::uint32_t winning_round = 0;   // first such round that also kept its frontier
  bool frontier_condition = false;   // |R_T| >= T n p1^(1) / 2 in that round
  double event_h_fraction = 0.0;
  bool instrumented = false;
  std::uint64_t duplicate_queries = 0;
  bool whole_graph_percolated = false;
  int jigsaw_rounds = 0;
  std::uint32_t max_cluster = 0;
};

// End-to-end supercritical run: grows percolating sets on a stage-one sample
// G(n, p1^(1), p2) and reports whether some round reached the target size
// with a healthy frontier, then runs the full process on a fresh
// G(n, p1, p2) sample from the same seed lineage and reports whole-graph
// percolation.
inline PipelineReport supercritical_pipeline(Vertex n, double p1, double p2, double epsilon,
                                             std::uint64_t seed, bool force = false,
                                             ConstructionOptions opts = {}) {
  PipelineReport rep;
  const double nn = static_cast<double>(n);
  const double floor_conn = std::log(nn) / nn;
  const double threshold = (1.0 + epsilon) / (4.0 * nn * std::log(nn));
  // regime check, not an identity: allow rounding slack so a symmetric split
  // computed as sqrt(threshold) still counts as supercritical
  rep.precondition_ok =
      p1 * p2 >= threshold * (1.0 - 1e-9) && p1 >= floor_conn && p2 >= floor_conn;
  if (!rep.precondition_ok) {
    if (!force)
      throw ParameterError(
          "supercritical_pipeline: p1*p2 below (1+eps)/(4 n ln n) or p below ln n / n");
    rep.forced = true;
  }
  rep.params = derive_params(nn, p1, p2, epsilon);

  const GenParams stage1{n, rep.params.p1_stage1, rep.params.p2_stage1, derive_seed(seed, 11)};
  const DoubleGraph g1 = generate_double_graph(stage1);
  const ConstructionResult cres = run_construction(g1, rep.params, opts);

  rep.rounds_run = cres.rounds.size();
  rep.total_steps = cres.total_steps;
  rep.instrumented = cres.instrumented;
  rep.duplicate_queries = cres.duplicate_queries;

  std::uint64_t h_true = 0;
  for (const auto& round : cres.rounds) {
    if (check_event_H(round, rep.params).holds) ++h_true;
    if (round.reached_target) {
      rep.reached_target = true;
      const double need = static_cast<double>(round.steps.size()) * rep.params.np1_stage1 / 2.0;
      if (!rep.frontier_condition && static_cast<double>(round.frontier.size()) >= need) {
        rep.frontier_condition = true;
        rep.winning_round = round.index;
      }
    }
  }
  rep.event_h_fraction =
      cres.rounds.empty() ? 0.0 : static_cast<double>(h_true) / cres.rounds.size();

  const GenParams whole{n, p1, p2, derive_seed(seed, 12)};
  const JigsawResult jr = run_jigsaw(generate_double_graph(whole));
  rep.whole_graph_percolated = jr.percolated;
  rep.jigsaw_rounds = jr.rounds;
  rep.max_cluster = jr.final_max_cluster();
  return rep;
}

}  // namespace jigsaw

#endif
