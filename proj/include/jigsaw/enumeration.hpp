#ifndef JIGSAW_ENUMERATION_HPP
#define JIGSAW_ENUMERATION_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "jigsaw/absorption.hpp"
#include "jigsaw/double_graph.hpp"
#include "jigsaw/errors.hpp"
#include "jigsaw/precise.hpp"

namespace jigsaw {

// ---------------------------------------------------------------------------
// Prüfer sequences: bijection between [k]^(k-2) and labelled trees on [k].

inline std::vector<Edge> prufer_decode(std::span<const Vertex> seq, Vertex k) {
  if (k < 2) throw ParameterError("prufer_decode: k must be at least 2");
  if (seq.size() != static_cast<std::size_t>(k) - 2)
    throw ParameterError("prufer_decode: sequence length must be k-2");
  for (Vertex s : seq)
    if (s < 1 || s > k) throw ParameterError("prufer_decode: entry outside 1..k");

  std::vector<std::uint32_t> deg(k + 1, 1);
  for (Vertex s : seq) ++deg[s];
  std::vector<Edge> edges;
  edges.reserve(k - 1);
  for (Vertex s : seq) {
    Vertex leaf = 0;
    for (Vertex v = 1; v <= k; ++v)
      if (deg[v] == 1) {
        leaf = v;
        break;
      }
    edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
    deg[leaf] = 0;
    --deg[s];
  }
  Vertex a = 0, b = 0;
  for (Vertex v = 1; v <= k; ++v)
    if (deg[v] == 1) (a == 0 ? a : b) = v;
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return edges;
}

inline std::vector<Vertex> prufer_encode(std::span<const Edge> tree, Vertex k) {
  if (k < 2 || tree.size() != static_cast<std::size_t>(k) - 1)
    throw ParameterError("prufer_encode: not a tree edge set");
  std::vector<std::vector<Vertex>> adj(k + 1);
  for (const auto& e : tree) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<std::uint32_t> deg(k + 1);
  for (Vertex v = 1; v <= k; ++v) deg[v] = static_cast<std::uint32_t>(adj[v].size());
  std::vector<std::uint8_t> removed(k + 1, 0);
  std::vector<Vertex> seq;
  for (Vertex step = 0; step + 2 < k; ++step) {
    Vertex leaf = 0;
    for (Vertex v = 1; v <= k; ++v)
      if (!removed[v] && deg[v] == 1) {
        leaf = v;
        break;
      }
    Vertex parent = 0;
    for (Vertex w : adj[leaf])
      if (!removed[w]) parent = w;
    seq.push_back(parent);
    removed[leaf] = 1;
    --deg[parent];
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Closed-form bounds on the counts, evaluated in 512-bit floats (the e^582
// factor overflows doubles).

enum class BoundKind {
  Cayley,           // k^(2k-4): ordered pairs of labelled trees
  MprimeClosedForm,  // (k!)^2 2^k e^l * k e^291 / 2
  MklrClosedForm     // C(k+r,r) (k!)^2 (r!)^2 2^(k+r) e^(r+l) * k l r^3 e^582 / 2
};

inline BigFloat closed_form_bound(BoundKind which, int k, int l = 0, int r = 0) {
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  switch (which) {
    case BoundKind::Cayley:
      if (k < 1) throw ParameterError("cayley bound: k must be positive");
      return pow(BigFloat(k), 2 * k - 4);
    case BoundKind::MprimeClosedForm: {
      if (!(1 <= l && l <= k)) throw ParameterError("closed-form bound: need 1 <= l <= k");
      const BigFloat kf(factorial_int(static_cast<unsigned>(k)));
      return kf * kf * pow(BigFloat(2), k) * exp(BigFloat(l)) * BigFloat(k) *
             exp(BigFloat(291)) / 2;
    }
    case BoundKind::MklrClosedForm: {
      if (!(1 <= l && l <= k && 1 <= r && r <= k))
        throw ParameterError("closed-form bound: need 1 <= r,l <= k");
      const BigFloat kf(factorial_int(static_cast<unsigned>(k)));
      const BigFloat rf(factorial_int(static_cast<unsigned>(r)));
      return BigFloat(binomial_int(static_cast<unsigned>(k + r), static_cast<unsigned>(r))) *
             kf * kf * rf * rf * pow(BigFloat(2), k + r) * exp(BigFloat(r + l)) * BigFloat(k) *
             BigFloat(l) * pow(BigFloat(r), 3) * exp(BigFloat(582)) / 2;
    }
  }
  throw ParameterError("closed_form_bound: unknown bound");
}

// Partition-product value C(k+r,r) * M'_{k,l} * 2 r^2 l * M'_{r,r}: the count
// of (vertex split, two sub-configurations, pinned cross edges) tuples; exact
// integer.
inline BigInt mklr_partition_bound(int k, int l, int r, std::uint64_t mprime_kl,
                                   std::uint64_t mprime_rr) {
  return binomial_int(static_cast<unsigned>(k + r), static_cast<unsigned>(r)) *
         BigInt(mprime_kl) * 2 * BigInt(r) * BigInt(r) * BigInt(l) * BigInt(mprime_rr);
}

struct CountReport {
  int k = 0, l = -1, r = -1;
  std::uint64_t exact_count = 0;
  BigFloat bound;
  bool bound_satisfied = false;
};

// ---------------------------------------------------------------------------
// Bitmask machinery for exhaustive sweeps over spanning-tree pairs (k <= 8).

namespace detail {

struct MaskGraph {
  int k = 0;
  std::array<std::uint8_t, 8> red{};   // red[v] = adjacency bits of vertex v (0-based)
  std::array<std::uint8_t, 8> blue{};
};

inline std::array<std::uint8_t, 8> adjacency_masks(std::span<const Edge> edges) {
  std::array<std::uint8_t, 8> adj{};
  for (const auto& e : edges) {
    adj[e.first - 1] |= static_cast<std::uint8_t>(1u << (e.second - 1));
    adj[e.second - 1] |= static_cast<std::uint8_t>(1u << (e.first - 1));
  }
  return adj;
}

// Percolation of the induced double graph on `subset`: greedily merge any two
// clusters joined by an edge of each colour. The merge closure is confluent,
// so the final partition matches the round-synchronous process.
inline bool mask_percolates(const MaskGraph& g, std::uint8_t subset) {
  if (std::popcount(subset) <= 1) return subset != 0;
  std::array<std::uint8_t, 8> mem{}, redn{}, bluen{};
  int cnt = 0;
  for (int v = 0; v < g.k && v < 8; ++v) {
    if (!(subset & (1u << v))) continue;
    mem[cnt] = static_cast<std::uint8_t>(1u << v);
    redn[cnt] = g.red[v] & subset;
    bluen[cnt] = g.blue[v] & subset;
    ++cnt;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < cnt; ++i) {
      if (!mem[i]) continue;
      for (int j = i + 1; j < cnt; ++j) {
        if (!mem[j]) continue;
        if ((redn[i] & mem[j]) && (bluen[i] & mem[j])) {
          mem[i] |= mem[j];
          redn[i] |= redn[j];
          bluen[i] |= bluen[j];
          mem[j] = 0;
          changed = true;
        }
      }
    }
  }
  int alive = 0;
  for (int i = 0; i < cnt; ++i) alive += mem[i] != 0;
  return alive == 1;
}

struct MaskAbsorption {
  bool percolated = false;
  int steps = 0;              // last step with a non-empty merge
  std::uint8_t last_sizes = 0;  // bit (s-1) set if a cluster of size s joined at `steps`
};

inline MaskAbsorption run_mask_absorption(const MaskGraph& g, int v1,
                                          std::span<const std::uint8_t> blocks) {
  std::array<std::uint8_t, 16> pool{};
  int nblocks = static_cast<int>(blocks.size());
  for (int i = 0; i < nblocks; ++i) pool[i] = blocks[i];

  std::array<std::uint8_t, 16> order{};
  order[0] = static_cast<std::uint8_t>(v1);
  int t = 1;
  std::uint8_t prefix_red = 0, prefix_blue = 0;
  MaskAbsorption out;

  for (int i = 1; i <= t; ++i) {
    const int vi = order[i - 1];
    prefix_red |= g.red[vi];
    prefix_blue |= g.blue[vi];

    std::array<int, 16> added{};
    int na = 0;
    for (int b = 0; b < nblocks; ++b) {
      const std::uint8_t c = pool[b];
      if (!c || std::popcount(c) > t) continue;
      if (((c & g.red[vi]) && (c & prefix_blue)) || ((c & g.blue[vi]) && (c & prefix_red)))
        added[na++] = b;
    }
    // smallest contained vertex first = smallest low bit first
    std::sort(added.begin(), added.begin() + na,
              [&](int a, int b) { return (pool[a] & -pool[a]) < (pool[b] & -pool[b]); });
    std::uint8_t sizes = 0;
    for (int ai = 0; ai < na; ++ai) {
      std::uint8_t c = pool[added[ai]];
      pool[added[ai]] = 0;
      sizes |= static_cast<std::uint8_t>(1u << (std::popcount(c) - 1));
      while (c) {
        const int v = std::countr_zero(c);
        c &= static_cast<std::uint8_t>(c - 1);
        order[t++] = static_cast<std::uint8_t>(v);
      }
    }
    if (na > 0) {
      out.steps = i;
      out.last_sizes = sizes;
    }
  }
  out.percolated = t == g.k;
  return out;
}

// All absorption inputs on [k]: one entry per (start vertex, partition of the
// rest), blocks given as vertex bitmasks. Depends only on k.
struct MaskInput {
  int v1 = 0;  // 0-based
  std::vector<std::uint8_t> blocks;
};

inline const std::vector<MaskInput>& mask_inputs(int k) {
  static std::array<std::vector<MaskInput>, 9> cache;
  static std::array<bool, 9> ready{};
  auto& entry = cache[k];
  if (!ready[k]) {
    for (int v1 = 0; v1 < k; ++v1) {
      std::vector<Vertex> rest;
      for (int v = 0; v < k; ++v)
        if (v != v1) rest.push_back(static_cast<Vertex>(v));
      for_each_set_partition(rest, [&](std::vector<std::vector<Vertex>> partition) {
        MaskInput in;
        in.v1 = v1;
        for (const auto& block : partition) {
          std::uint8_t mask = 0;
          for (Vertex v : block) mask |= static_cast<std::uint8_t>(1u << v);
          in.blocks.push_back(mask);
        }
        entry.push_back(std::move(in));
      });
    }
    ready[k] = true;
  }
  return entry;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive sweep over ordered spanning-tree pairs on [k].

enum class InputScan {
  None,             // percolation counts only
  PercolatingOnly,  // absorption-input search on percolating configs
  All               // also verify that non-percolating configs admit no input
};

struct TreePairSweep {
  int k = 0;
  std::uint64_t total_pairs = 0;
  std::uint64_t percolating = 0;  // P_k, equal to M'_{k,k}
  std::uint64_t diagonal = 0;     // pairs with red tree == blue tree
  // histogram of the minimal absorption step count over inputs
  std::array<std::uint64_t, 9> min_steps_hist{};
  // M'_{k,l} for l = 1..k (cumulative in l); valid when inputs were scanned
  std::array<std::uint64_t, 9> mprime{};
  // M_{k+r-r, l, r} style counts on THIS vertex set: configs on [k] with an
  // input of exactly l steps whose final step merges a cluster of size r
  std::array<std::array<std::uint64_t, 9>, 9> exact_step_size{};
  std::uint64_t inputs_run = 0;
  std::uint64_t oracle_mismatches = 0;
  bool inputs_scanned = false;
};

inline TreePairSweep run_tree_pair_sweep(int k, InputScan scan, unsigned threads = 1) {
  if (k < 1 || k > 8) throw CapacityError("run_tree_pair_sweep: k outside 1..8");

  // all labelled trees on [k] as adjacency masks
  std::vector<std::array<std::uint8_t, 8>> trees;
  if (k == 1) {
    trees.push_back({});
  } else {
    std::uint64_t count = 1;
    for (int i = 0; i < k - 2; ++i) count *= static_cast<std::uint64_t>(k);
    trees.reserve(count);
    std::vector<Vertex> seq(k - 2, 1);
    while (true) {
      trees.push_back(detail::adjacency_masks(prufer_decode(seq, static_cast<Vertex>(k))));
      int pos = k - 3;
      while (pos >= 0 && seq[pos] == static_cast<Vertex>(k)) seq[pos--] = 1;
      if (pos < 0) break;
      ++seq[pos];
    }
  }

  const auto& inputs = scan == InputScan::None ? std::vector<detail::MaskInput>{}
                                               : detail::mask_inputs(k);
  const std::uint8_t full = static_cast<std::uint8_t>((1u << k) - 1);
  const std::size_t ntrees = trees.size();

  auto sweep_block = [&](std::size_t red_begin, std::size_t red_end, TreePairSweep& acc) {
    std::array<std::int8_t, 256> perc_cache;
    for (std::size_t ri = red_begin; ri < red_end; ++ri) {
      for (std::size_t bi = 0; bi < ntrees; ++bi) {
        detail::MaskGraph g{k, trees[ri], trees[bi]};
        ++acc.total_pairs;
        const bool perc = detail::mask_percolates(g, full);
        if (perc) ++acc.percolating;
        if (ri == bi) ++acc.diagonal;
        if (scan == InputScan::None) continue;
        if (!perc && scan != InputScan::All) continue;

        perc_cache.fill(-1);
        auto block_ok = [&](std::uint8_t mask) {
          if (std::popcount(mask) == 1) return true;
          std::int8_t& c = perc_cache[mask];
          if (c < 0) c = detail::mask_percolates(g, mask) ? 1 : 0;
          return c == 1;
        };

        int min_steps = -1;
        std::array<std::uint8_t, 9> sizes_at{};  // sizes_at[l]: OR of final-step sizes
        for (const auto& in : inputs) {
          bool valid = true;
          for (std::uint8_t b : in.blocks)
            if (!block_ok(b)) {
              valid = false;
              break;
            }
          if (!valid) continue;
          ++acc.inputs_run;
          auto r = detail::run_mask_absorption(g, in.v1, in.blocks);
          if (!r.percolated) continue;
          if (min_steps < 0 || r.steps < min_steps) min_steps = r.steps;
          sizes_at[r.steps] |= r.last_sizes;
        }
        const bool found = min_steps >= 0;
        if (found != perc) ++acc.oracle_mismatches;
        if (perc && found) {
          ++acc.min_steps_hist[min_steps];
          for (int l = 1; l <= 8; ++l) {
            std::uint8_t s = sizes_at[l];
            while (s) {
              const int r = std::countr_zero(s) + 1;
              s &= static_cast<std::uint8_t>(s - 1);
              ++acc.exact_step_size[l][r];
            }
          }
        }
      }
    }
  };

  TreePairSweep total;
  total.k = k;
  total.inputs_scanned = scan != InputScan::None;
  if (threads <= 1 || ntrees < 2) {
    sweep_block(0, ntrees, total);
  } else {
    const unsigned nw = std::min<unsigned>(threads, static_cast<unsigned>(ntrees));
    std::vector<TreePairSweep> parts(nw);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) {
      const std::size_t lo = ntrees * w / nw, hi = ntrees * (w + 1) / nw;
      pool.emplace_back([&, lo, hi, w] { sweep_block(lo, hi, parts[w]); });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : parts) {
      total.total_pairs += p.total_pairs;
      total.percolating += p.percolating;
      total.diagonal += p.diagonal;
      total.inputs_run += p.inputs_run;
      total.oracle_mismatches += p.oracle_mismatches;
      for (int i = 0; i < 9; ++i) {
        total.min_steps_hist[i] += p.min_steps_hist[i];
        for (int j = 0; j < 9; ++j) total.exact_step_size[i][j] += p.exact_step_size[i][j];
      }
    }
  }

  if (total.inputs_scanned) {
    std::uint64_t cum = 0;
    for (int l = 0; l <= 8; ++l) {
      cum += total.min_steps_hist[l];
      total.mprime[l] = cum;
    }
  }
  return total;
}

// Number of minimal percolating configurations on [k] (ordered spanning-tree
// pairs whose double graph percolates), checked against the Cayley bound
// k^(2k-4).
inline CountReport count_minimal_configs(int k, int cap = 6, unsigned threads = 1) {
  if (k < 2) throw ParameterError("count_minimal_configs: k must be at least 2");
  if (k > cap) throw CapacityError("count_minimal_configs: k exceeds cap");
  auto sweep = run_tree_pair_sweep(k, InputScan::None, threads);
  CountReport rep;
  rep.k = k;
  rep.exact_count = sweep.percolating;
  rep.bound = closed_form_bound(BoundKind::Cayley, k);
  rep.bound_satisfied = BigFloat(rep.exact_count) <= rep.bound;
  return rep;
}

// M'_{k,l}: configurations on [k] admitting an input whose absorption
// percolates in at most l steps.
inline CountReport count_Mprime(int k, int l, int cap = 5, unsigned threads = 1) {
  if (!(1 <= l && l <= k)) throw ParameterError("count_Mprime: need 1 <= l <= k");
  if (k > cap) throw CapacityError("count_Mprime: k exceeds cap");
  auto sweep = run_tree_pair_sweep(k, InputScan::PercolatingOnly, threads);
  CountReport rep;
  rep.k = k;
  rep.l = l;
  rep.exact_count = sweep.mprime[std::min(l, 8)];
  rep.bound = closed_form_bound(BoundKind::MprimeClosedForm, k, l);
  rep.bound_satisfied = BigFloat(rep.exact_count) <= rep.bound;
  return rep;
}

struct MklrReport {
  int k = 0, l = 0, r = 0;
  std::uint64_t exact_count = 0;
  BigFloat closed_form;
  bool closed_form_ok = false;
  BigInt partition_bound;  // partition product via M'_{k,l} and M'_{r,r}
  bool partition_ok = false;
};

// M_{k,l,r}: configurations on [k+r] admitting an input that percolates in
// exactly l steps while merging a cluster of size exactly r in that step.
inline MklrReport count_Mklr(int k, int l, int r, int cap = 6, unsigned threads = 1) {
  if (!(1 <= r && r <= k && 1 <= l && l <= k))
    throw ParameterError("count_Mklr: need 1 <= r,l <= k");
  if (k + r > cap) throw CapacityError("count_Mklr: k+r exceeds cap");
  auto sweep = run_tree_pair_sweep(k + r, InputScan::PercolatingOnly, threads);
  auto sweep_k = run_tree_pair_sweep(k, InputScan::PercolatingOnly, threads);
  auto sweep_r = k == r ? sweep_k : run_tree_pair_sweep(r, InputScan::PercolatingOnly, threads);

  MklrReport rep;
  rep.k = k;
  rep.l = l;
  rep.r = r;
  rep.exact_count = sweep.exact_step_size[l][r];
  rep.closed_form = closed_form_bound(BoundKind::MklrClosedForm, k, l, r);
  rep.closed_form_ok = BigFloat(rep.exact_count) <= rep.closed_form;
  rep.partition_bound = mklr_partition_bound(k, l, r, sweep_k.mprime[std::min(l, 8)],
                                             sweep_r.mprime[std::min(r, 8)]);
  rep.partition_ok = BigInt(rep.exact_count) <= rep.partition_bound;
  return rep;
}

}  // namespace jigsaw

#endif
