#ifndef JIGSAW_ABSORPTION_HPP
#define JIGSAW_ABSORPTION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "jigsaw/double_graph.hpp"
#include "jigsaw/engine.hpp"
#include "jigsaw/errors.hpp"

namespace jigsaw {

// Input of the absorption process: a start vertex and a family of disjoint
// clusters partitioning the remaining vertices. Every cluster must itself be
// a percolating set of its induced double graph.
struct AbsorptionInput {
  Vertex start = 1;
  std::vector<std::vector<Vertex>> clusters;
};

struct AbsorptionTrace {
  bool percolated = false;
  int steps = 0;  // last step with a non-empty merge; 0 if none
  std::vector<Vertex> vertex_order;
  // per executed step, the clusters merged in (possibly empty)
  std::vector<std::vector<std::vector<Vertex>>> per_step_added;
};

namespace detail {

inline bool subset_percolates(const DoubleGraph& g, const std::vector<Vertex>& vs) {
  if (vs.size() == 1) return true;
  return percolates(induced_double_graph(g, vs).graph);
}

}  // namespace detail

inline bool is_valid_input(const DoubleGraph& g, const AbsorptionInput& input) {
  const Vertex n = g.vertex_count();
  if (input.start < 1 || input.start > n) return false;
  std::vector<std::uint8_t> seen(n + 1, 0);
  seen[input.start] = 1;
  std::size_t covered = 1;
  for (const auto& cluster : input.clusters) {
    if (cluster.empty()) return false;
    for (Vertex v : cluster) {
      if (v < 1 || v > n || seen[v]) return false;
      seen[v] = 1;
    }
    covered += cluster.size();
  }
  if (covered != n) return false;
  for (const auto& cluster : input.clusters)
    if (!detail::subset_percolates(g, cluster)) return false;
  return true;
}

// The absorption process. At step i, every remaining cluster of size at most
// t(i) that touches v_i in one colour and touches some vertex of
// {v_1,...,v_i} in the other colour is merged in. Newly absorbed clusters are
// appended ordered by their smallest vertex, vertices ascending within a
// cluster, making the trace deterministic.
inline AbsorptionTrace run_absorption(const DoubleGraph& g, const AbsorptionInput& input,
                                      bool validate = true) {
  if (validate && !is_valid_input(g, input))
    throw ParameterError("run_absorption: invalid input partition");

  const Vertex n = g.vertex_count();
  struct Pool {
    std::vector<Vertex> vertices;  // sorted ascending
    bool alive = true;
  };
  std::vector<Pool> pool;
  pool.reserve(input.clusters.size());
  for (const auto& c : input.clusters) {
    Pool p;
    p.vertices = c;
    std::sort(p.vertices.begin(), p.vertices.end());
    pool.push_back(std::move(p));
  }

  AbsorptionTrace trace;
  trace.vertex_order.push_back(input.start);
  std::vector<std::uint8_t> prefix_red(n + 1, 0), prefix_blue(n + 1, 0);

  for (std::size_t i = 1; i <= trace.vertex_order.size(); ++i) {
    const Vertex vi = trace.vertex_order[i - 1];
    for (Vertex w : g.neighbours(Colour::Red, vi)) prefix_red[w] = 1;
    for (Vertex w : g.neighbours(Colour::Blue, vi)) prefix_blue[w] = 1;
    const std::size_t t_i = trace.vertex_order.size();

    std::vector<std::size_t> added;
    for (std::size_t ci = 0; ci < pool.size(); ++ci) {
      auto& c = pool[ci];
      if (!c.alive || c.vertices.size() > t_i) continue;
      bool red_to_vi = false, blue_to_vi = false, red_prefix = false, blue_prefix = false;
      for (Vertex w : c.vertices) {
        red_to_vi = red_to_vi || g.has_edge(Colour::Red, vi, w);
        blue_to_vi = blue_to_vi || g.has_edge(Colour::Blue, vi, w);
        red_prefix = red_prefix || prefix_red[w];
        blue_prefix = blue_prefix || prefix_blue[w];
      }
      if ((red_to_vi && blue_prefix) || (blue_to_vi && red_prefix)) added.push_back(ci);
    }
    std::sort(added.begin(), added.end(), [&](std::size_t a, std::size_t b) {
      return pool[a].vertices.front() < pool[b].vertices.front();
    });

    std::vector<std::vector<Vertex>> merged;
    for (std::size_t ci : added) {
      pool[ci].alive = false;
      for (Vertex w : pool[ci].vertices) trace.vertex_order.push_back(w);
      merged.push_back(pool[ci].vertices);
    }
    if (!merged.empty()) trace.steps = static_cast<int>(i);
    trace.per_step_added.push_back(std::move(merged));
  }

  trace.percolated = trace.vertex_order.size() == n;
  return trace;
}

namespace detail {

// Enumerates set partitions of `items` via restricted growth strings, in
// lexicographic RGS order.
template <typename Fn>
void for_each_set_partition(const std::vector<Vertex>& items, Fn&& fn) {
  const std::size_t m = items.size();
  if (m == 0) {
    fn(std::vector<std::vector<Vertex>>{});
    return;
  }
  std::vector<std::size_t> rgs(m, 0);
  while (true) {
    std::size_t blocks = 0;
    for (std::size_t v : rgs) blocks = std::max(blocks, v + 1);
    std::vector<std::vector<Vertex>> partition(blocks);
    for (std::size_t i = 0; i < m; ++i) partition[rgs[i]].push_back(items[i]);
    fn(std::move(partition));

    // next RGS: rightmost position that can still be incremented
    std::size_t i = m;
    while (i-- > 1) {
      std::size_t max_prefix = 0;
      for (std::size_t j = 0; j < i; ++j) max_prefix = std::max(max_prefix, rgs[j]);
      if (rgs[i] <= max_prefix) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      if (i == 1) return;
    }
    if (m == 1) return;
  }
}

}  // namespace detail

struct PercolatingInput {
  AbsorptionInput input;
  int steps = 0;
};

// Exhaustive search over start vertices and cluster partitions. Returns an
// input with minimal absorption step count, resolving ties by (start,
// partition) enumeration order, or nothing if no input percolates. Bounded
// by `cap` since the partition count grows as the Bell numbers.
inline std::optional<PercolatingInput> find_percolating_input(const DoubleGraph& g,
                                                              Vertex cap = 7) {
  const Vertex n = g.vertex_count();
  if (n > cap) throw CapacityError("find_percolating_input: n exceeds brute-force cap");

  std::unordered_map<std::uint64_t, bool> perc_memo;
  auto block_percolates = [&](const std::vector<Vertex>& block) {
    if (block.size() == 1) return true;
    std::uint64_t mask = 0;
    for (Vertex v : block) mask |= 1ull << v;
    auto it = perc_memo.find(mask);
    if (it != perc_memo.end()) return it->second;
    const bool ok = detail::subset_percolates(g, block);
    perc_memo.emplace(mask, ok);
    return ok;
  };

  std::optional<PercolatingInput> best;
  for (Vertex v1 = 1; v1 <= n; ++v1) {
    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= n; ++v)
      if (v != v1) rest.push_back(v);
    detail::for_each_set_partition(rest, [&](std::vector<std::vector<Vertex>> partition) {
      for (const auto& block : partition)
        if (!block_percolates(block)) return;
      AbsorptionInput input{v1, std::move(partition)};
      auto trace = run_absorption(g, input, /*validate=*/false);
      if (trace.percolated && (!best || trace.steps < best->steps))
        best = PercolatingInput{std::move(input), trace.steps};
    });
  }
  return best;
}

}  // namespace jigsaw

#endif
