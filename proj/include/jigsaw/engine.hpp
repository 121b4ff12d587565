#ifndef JIGSAW_ENGINE_HPP
#define JIGSAW_ENGINE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jigsaw/double_graph.hpp"

namespace jigsaw {

namespace detail {

// Union-find over original vertices. Each cluster is named by its minimum
// original vertex, which keeps traces deterministic.
struct ClusterUf {
  std::vector<Vertex> parent;
  std::vector<Vertex> min_label;
  std::vector<std::uint32_t> size;
  Vertex components;
  std::uint32_t max_size = 1;

  explicit ClusterUf(Vertex n) : parent(n + 1), min_label(n + 1), size(n + 1, 1), components(n) {
    for (Vertex v = 0; v <= n; ++v) {
      parent[v] = v;
      min_label[v] = v;
    }
  }

  Vertex find(Vertex v) {
    Vertex root = v;
    while (parent[root] != root) root = parent[root];
    while (parent[v] != root) {
      Vertex next = parent[v];
      parent[v] = root;
      v = next;
    }
    return root;
  }

  Vertex cluster_id(Vertex v) { return min_label[find(v)]; }

  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    min_label[a] = std::min(min_label[a], min_label[b]);
    max_size = std::max(max_size, size[a]);
    --components;
  }
};

inline std::uint64_t cluster_pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline void intersect_sorted(const std::vector<std::uint64_t>& a,
                             const std::vector<std::uint64_t>& b,
                             std::vector<std::uint64_t>& out) {
  out.clear();
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

// One contraction round: merge the components spanned by aux pairs, then
// remap the colour pair lists onto the new cluster ids. Pairs that became
// internal are dropped for good; they can never separate clusters again.
inline void contract_round(ClusterUf& uf, std::vector<std::uint64_t>& red,
                           std::vector<std::uint64_t>& blue, std::vector<std::uint64_t>& aux) {
  for (std::uint64_t key : aux) {
    uf.unite(static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xFFFFFFFFu));
  }
  for (auto* list : {&red, &blue}) {
    std::size_t w = 0;
    for (std::uint64_t key : *list) {
      const Vertex a = uf.cluster_id(static_cast<Vertex>(key >> 32));
      const Vertex b = uf.cluster_id(static_cast<Vertex>(key & 0xFFFFFFFFu));
      if (a != b) (*list)[w++] = cluster_pair_key(a, b);
    }
    list->resize(w);
    std::sort(list->begin(), list->end());
    list->erase(std::unique(list->begin(), list->end()), list->end());
  }
  intersect_sorted(red, blue, aux);
}

inline std::vector<std::uint64_t> edge_keys(const std::vector<Edge>& edges) {
  std::vector<std::uint64_t> keys;
  keys.reserve(edges.size());
  for (const auto& e : edges) keys.push_back(cluster_pair_key(e.first, e.second));
  return keys;
}

inline std::vector<std::vector<Vertex>> partition_from_uf(ClusterUf& uf, Vertex n) {
  std::vector<std::vector<Vertex>> by_root(n + 1);
  for (Vertex v = 1; v <= n; ++v) by_root[uf.cluster_id(v)].push_back(v);
  std::vector<std::vector<Vertex>> out;
  out.reserve(uf.components);
  for (Vertex v = 1; v <= n; ++v)
    if (!by_root[v].empty()) out.push_back(std::move(by_root[v]));
  return out;
}

}  // namespace detail

// Snapshot of the process between rounds: the cluster partition, the
// contracted colour edge sets (as cluster-id pairs) and the auxiliary edges
// present in both colours.
struct JigsawState {
  int round = 0;
  std::vector<std::vector<Vertex>> partition;  // ordered by cluster id = min vertex
  std::vector<Edge> red_cluster_edges;
  std::vector<Edge> blue_cluster_edges;
  std::vector<Edge> aux_edges;
};

inline JigsawState initial_jigsaw_state(const DoubleGraph& g) {
  JigsawState s;
  s.partition.reserve(g.vertex_count());
  for (Vertex v = 1; v <= g.vertex_count(); ++v) s.partition.push_back({v});
  s.red_cluster_edges = g.edges(Colour::Red);
  s.blue_cluster_edges = g.edges(Colour::Blue);
  std::set_intersection(s.red_cluster_edges.begin(), s.red_cluster_edges.end(),
                        s.blue_cluster_edges.begin(), s.blue_cluster_edges.end(),
                        std::back_inserter(s.aux_edges));
  return s;
}

// Runs one round of the process on an explicit state. Requires a non-empty
// auxiliary edge set.
inline JigsawState jigsaw_step(const JigsawState& state) {
  if (state.aux_edges.empty())
    throw std::logic_error("jigsaw_step: auxiliary graph has no edges");
  Vertex n = 0;
  for (const auto& cluster : state.partition)
    for (Vertex v : cluster) n = std::max(n, v);

  detail::ClusterUf uf(n);
  for (const auto& cluster : state.partition)
    for (Vertex v : cluster) uf.unite(cluster.front(), v);

  auto red = detail::edge_keys(state.red_cluster_edges);
  auto blue = detail::edge_keys(state.blue_cluster_edges);
  auto aux = detail::edge_keys(state.aux_edges);
  detail::contract_round(uf, red, blue, aux);

  JigsawState next;
  next.round = state.round + 1;
  next.partition = detail::partition_from_uf(uf, n);
  auto to_edges = [](const std::vector<std::uint64_t>& keys) {
    std::vector<Edge> out;
    out.reserve(keys.size());
    for (std::uint64_t key : keys)
      out.emplace_back(static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xFFFFFFFFu));
    return out;
  };
  next.red_cluster_edges = to_edges(red);
  next.blue_cluster_edges = to_edges(blue);
  next.aux_edges = to_edges(aux);
  return next;
}

struct JigsawResult {
  bool percolated = false;
  int rounds = 0;
  std::vector<std::vector<Vertex>> final_partition;
  // per round, after merging
  std::vector<std::uint32_t> max_cluster_trace;
  std::vector<std::uint32_t> cluster_count_trace;
  // per round, whether every cluster entering the round touched an aux edge
  std::vector<std::uint8_t> aux_covering_trace;

  std::uint32_t final_max_cluster() const {
    return max_cluster_trace.empty() ? 1 : max_cluster_trace.back();
  }
};

// Iterates rounds until the auxiliary graph is empty. Terminates in at most
// n-1 rounds since the cluster count strictly decreases while aux edges
// remain.
inline JigsawResult run_jigsaw(const DoubleGraph& g) {
  const Vertex n = g.vertex_count();
  detail::ClusterUf uf(n);
  auto red = detail::edge_keys(g.edges(Colour::Red));
  auto blue = detail::edge_keys(g.edges(Colour::Blue));
  std::vector<std::uint64_t> aux;
  detail::intersect_sorted(red, blue, aux);

  JigsawResult result;
  std::vector<std::uint64_t> endpoints;
  while (!aux.empty()) {
    ++result.rounds;
    const Vertex before = uf.components;
    endpoints.clear();
    for (std::uint64_t key : aux) {
      endpoints.push_back(key >> 32);
      endpoints.push_back(key & 0xFFFFFFFFu);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
    const bool covering = endpoints.size() == before;

    detail::contract_round(uf, red, blue, aux);
    result.max_cluster_trace.push_back(uf.max_size);
    result.cluster_count_trace.push_back(uf.components);
    result.aux_covering_trace.push_back(covering ? 1 : 0);
  }
  result.percolated = uf.components == 1;
  result.final_partition = detail::partition_from_uf(uf, n);
  return result;
}

inline bool percolates(const DoubleGraph& g) { return run_jigsaw(g).percolated; }

}  // namespace jigsaw

#endif
