#ifndef JIGSAW_DOUBLE_GRAPH_HPP
#define JIGSAW_DOUBLE_GRAPH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jigsaw/errors.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // normalized so first < second

enum class Colour : int { Red = 0, Blue = 1 };

struct GenParams {
  Vertex n = 0;
  double p1 = 0.0;  // red edge probability
  double p2 = 0.0;  // blue edge probability
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw ParameterError("GenParams: n must be at least 1");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw ParameterError("GenParams: p1 outside [0,1]");
    if (!(p2 >= 0.0 && p2 <= 1.0)) throw ParameterError("GenParams: p2 outside [0,1]");
  }
};

namespace detail {

// Lexicographic index of 0-based pairs (i,j), i<j: row i starts at
// i*n - i*(i+1)/2.
inline std::uint64_t pair_row_offset(std::uint64_t i, std::uint64_t n) {
  return i * n - i * (i + 1) / 2;
}

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

inline Edge decode_pair_index(std::uint64_t idx, Vertex n) {
  const double nn = static_cast<double>(n);
  double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(idx);
  if (disc < 0) disc = 0;
  std::uint64_t i = static_cast<std::uint64_t>(((2.0 * nn - 1.0) - std::sqrt(disc)) / 2.0);
  if (i >= n - 1) i = n - 2;
  while (i > 0 && pair_row_offset(i, n) > idx) --i;
  while (pair_row_offset(i + 1, n) <= idx) ++i;
  const std::uint64_t j = i + 1 + (idx - pair_row_offset(i, n));
  return {static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1)};
}

inline std::uint64_t encode_pair_index(Vertex u, Vertex v, Vertex n) {
  const std::uint64_t i = u - 1, j = v - 1;
  return pair_row_offset(i, n) + (j - i - 1);
}

// Samples each of the C(n,2) vertex pairs independently with probability p,
// skipping over non-edges with geometric jumps so the cost is O(p*n^2)
// rather than O(n^2). Output is in lexicographic order.
inline std::vector<Edge> sample_pairs(Vertex n, double p, CounterRng rng) {
  std::vector<Edge> out;
  if (n < 2 || p <= 0.0) return out;
  const std::uint64_t total = pair_count(n);
  if (p >= 1.0) {
    out.reserve(total);
    for (Vertex u = 1; u < n; ++u)
      for (Vertex v = u + 1; v <= n; ++v) out.emplace_back(u, v);
    return out;
  }
  const double mean = p * static_cast<double>(total);
  out.reserve(static_cast<std::size_t>(mean + 6.0 * std::sqrt(mean + 1.0) + 16.0));
  const double log_q = std::log1p(-p);  // < 0
  std::uint64_t pos = 0;                // number of pairs consumed so far
  while (true) {
    const double g = std::floor(std::log(rng.next_unit()) / log_q);
    if (g >= static_cast<double>(total)) break;
    const std::uint64_t gap = static_cast<std::uint64_t>(g) + 1;
    if (total - pos < gap) break;
    pos += gap;
    out.push_back(decode_pair_index(pos - 1, n));
  }
  return out;
}

}  // namespace detail

// A double graph: two colour-indexed edge sets on a common vertex set
// {1,...,n}. Immutable after construction; per-vertex adjacency is indexed
// once so concurrent readers are safe.
class DoubleGraph {
public:
  DoubleGraph(Vertex n, std::vector<Edge> red, std::vector<Edge> blue) : n_(n) {
    if (n < 1) throw ParameterError("DoubleGraph: n must be at least 1");
    edges_[0] = std::move(red);
    edges_[1] = std::move(blue);
    for (auto& es : edges_) {
      for (auto& e : es) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 1 || e.second > n_)
          throw ParameterError("DoubleGraph: edge endpoint outside 1..n");
        if (e.first == e.second) throw ParameterError("DoubleGraph: self-loop");
      }
      std::sort(es.begin(), es.end());
      es.erase(std::unique(es.begin(), es.end()), es.end());
    }
    build_adjacency();
  }

  Vertex vertex_count() const { return n_; }

  const std::vector<Edge>& edges(Colour c) const { return edges_[static_cast<int>(c)]; }

  std::span<const Vertex> neighbours(Colour c, Vertex v) const {
    const auto& off = adj_offset_[static_cast<int>(c)];
    const auto& adj = adj_[static_cast<int>(c)];
    return {adj.data() + off[v], adj.data() + off[v + 1]};
  }

  std::size_t degree(Colour c, Vertex v) const { return neighbours(c, v).size(); }

  bool has_edge(Colour c, Vertex u, Vertex v) const {
    if (u == v) return false;
    if (degree(c, u) > degree(c, v)) std::swap(u, v);
    auto nb = neighbours(c, u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

private:
  void build_adjacency() {
    for (int c = 0; c < 2; ++c) {
      auto& off = adj_offset_[c];
      auto& adj = adj_[c];
      off.assign(n_ + 2, 0);
      for (const auto& e : edges_[c]) {
        ++off[e.first + 1];
        ++off[e.second + 1];
      }
      for (Vertex v = 1; v <= n_; ++v) off[v + 1] += off[v];
      adj.resize(edges_[c].size() * 2);
      std::vector<std::uint32_t> cursor(off.begin(), off.end());
      for (const auto& e : edges_[c]) {
        adj[cursor[e.first]++] = e.second;
        adj[cursor[e.second]++] = e.first;
      }
      for (Vertex v = 1; v <= n_; ++v)
        std::sort(adj.begin() + off[v], adj.begin() + off[v + 1]);
    }
  }

  Vertex n_;
  std::array<std::vector<Edge>, 2> edges_;
  std::array<std::vector<std::uint32_t>, 2> adj_offset_;
  std::array<std::vector<Vertex>, 2> adj_;
};

// Seeded G(n,p1,p2). The red and blue samplings come from independent
// seed-derived streams, so the output is a pure function of the params and
// changing p2 never perturbs the red edge set.
inline DoubleGraph generate_double_graph(const GenParams& params) {
  params.validate();
  auto red = detail::sample_pairs(params.n, params.p1, CounterRng(params.seed, 1));
  auto blue = detail::sample_pairs(params.n, params.p2, CounterRng(params.seed, 2));
  return DoubleGraph(params.n, std::move(red), std::move(blue));
}

struct InducedGraph {
  DoubleGraph graph;
  // new label i (1-based) corresponds to original vertex original_label[i-1]
  std::vector<Vertex> original_label;
};

// Induced double graph on a vertex subset, relabelled 1..|u|.
inline InducedGraph induced_double_graph(const DoubleGraph& g, std::span<const Vertex> u) {
  std::vector<Vertex> keep(u.begin(), u.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw ParameterError("induced_double_graph: empty vertex set");
  if (keep.front() < 1 || keep.back() > g.vertex_count())
    throw ParameterError("induced_double_graph: vertex outside 1..n");

  std::vector<Vertex> new_label(g.vertex_count() + 1, 0);
  for (std::size_t i = 0; i < keep.size(); ++i) new_label[keep[i]] = static_cast<Vertex>(i + 1);

  // walk adjacency of the kept vertices: O(sum of their degrees), not O(m)
  std::array<std::vector<Edge>, 2> sub;
  for (int c = 0; c < 2; ++c) {
    for (Vertex v : keep)
      for (Vertex w : g.neighbours(static_cast<Colour>(c), v))
        if (w > v && new_label[w] != 0) sub[c].emplace_back(new_label[v], new_label[w]);
  }
  return {DoubleGraph(static_cast<Vertex>(keep.size()), std::move(sub[0]), std::move(sub[1])),
          std::move(keep)};
}

// Colourwise union of edge sets on the same vertex set.
inline DoubleGraph union_double_graph(const DoubleGraph& a, const DoubleGraph& b) {
  if (a.vertex_count() != b.vertex_count())
    throw ParameterError("union_double_graph: vertex counts differ");
  std::array<std::vector<Edge>, 2> merged;
  for (int c = 0; c < 2; ++c) {
    const auto& ea = a.edges(static_cast<Colour>(c));
    const auto& eb = b.edges(static_cast<Colour>(c));
    merged[c].reserve(ea.size() + eb.size());
    std::merge(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(merged[c]));
    merged[c].erase(std::unique(merged[c].begin(), merged[c].end()), merged[c].end());
  }
  return DoubleGraph(a.vertex_count(), std::move(merged[0]), std::move(merged[1]));
}

// Text format: header "n m1 m2", then m1 red lines "u v", then m2 blue lines.
inline void write_double_graph(std::ostream& os, const DoubleGraph& g) {
  os << g.vertex_count() << ' ' << g.edges(Colour::Red).size() << ' '
     << g.edges(Colour::Blue).size() << '\n';
  for (const auto& e : g.edges(Colour::Red)) os << e.first << ' ' << e.second << '\n';
  for (const auto& e : g.edges(Colour::Blue)) os << e.first << ' ' << e.second << '\n';
}

inline DoubleGraph read_double_graph(std::istream& is) {
  std::uint64_t n = 0, m1 = 0, m2 = 0;
  if (!(is >> n >> m1 >> m2)) throw ParameterError("double graph input: bad header");
  if (n < 1 || n > 0xFFFFFFFFull) throw ParameterError("double graph input: bad n");
  std::array<std::vector<Edge>, 2> es;
  es[0].reserve(m1);
  es[1].reserve(m2);
  for (int c = 0; c < 2; ++c) {
    const std::uint64_t m = c == 0 ? m1 : m2;
    for (std::uint64_t i = 0; i < m; ++i) {
      std::uint64_t u = 0, v = 0;
      if (!(is >> u >> v)) throw ParameterError("double graph input: truncated edge list");
      if (u < 1 || v < 1 || u > n || v > n)
        throw ParameterError("double graph input: endpoint outside 1..n");
      es[c].emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return DoubleGraph(static_cast<Vertex>(n), std::move(es[0]), std::move(es[1]));
}

}  // namespace jigsaw

#endif
