#include <catch2/catch_amalgamated.hpp>

#include "jigsaw/absorption.hpp"
#include "jigsaw/rng.hpp"

using namespace jigsaw;

TEST_CASE("single vertex percolates with zero steps") {
  const DoubleGraph g(1, {}, {});
  const auto trace = run_absorption(g, {1, {}});
  REQUIRE(trace.percolated);
  REQUIRE(trace.steps == 0);
  REQUIRE(trace.vertex_order == std::vector<Vertex>{1});
}

TEST_CASE("doubled edge absorbs the other vertex at step one") {
  const DoubleGraph g(2, {{1, 2}}, {{1, 2}});
  const auto trace = run_absorption(g, {1, {{2}}});
  REQUIRE(trace.percolated);
  REQUIRE(trace.steps == 1);
  REQUIRE(trace.vertex_order == std::vector<Vertex>{1, 2});
  REQUIRE(trace.per_step_added[0] == std::vector<std::vector<Vertex>>{{2}});
}

TEST_CASE("three-vertex path/star hand trace") {
  const DoubleGraph g(3, {{1, 2}, {2, 3}}, {{1, 2}, {1, 3}});
  const auto trace = run_absorption(g, {1, {{2}, {3}}});
  REQUIRE(trace.percolated);
  REQUIRE(trace.steps == 2);
  REQUIRE(trace.vertex_order == std::vector<Vertex>{1, 2, 3});
  REQUIRE(trace.per_step_added[0] == std::vector<std::vector<Vertex>>{{2}});
  REQUIRE(trace.per_step_added[1] == std::vector<std::vector<Vertex>>{{3}});
}

TEST_CASE("input validation") {
  const DoubleGraph g(3, {{1, 2}, {2, 3}}, {{1, 2}, {1, 3}});

  // singletons always valid
  REQUIRE(is_valid_input(g, {1, {{2}, {3}}}));
  // overlap
  REQUIRE_FALSE(is_valid_input(g, {1, {{2, 3}, {3}}}));
  // not covering
  REQUIRE_FALSE(is_valid_input(g, {1, {{2}}}));
  // contains the start vertex
  REQUIRE_FALSE(is_valid_input(g, {1, {{1}, {2}, {3}}}));
  // a 2-vertex cluster with a red edge only is not a percolating set
  REQUIRE_FALSE(is_valid_input(g, {1, {{2, 3}}}));
  REQUIRE_THROWS_AS(run_absorption(g, {1, {{2, 3}}}), ParameterError);

  // with a doubled internal edge the pair cluster becomes valid
  const DoubleGraph h(3, {{1, 2}, {2, 3}}, {{1, 2}, {2, 3}});
  REQUIRE(is_valid_input(h, {1, {{2, 3}}}));
}

TEST_CASE("size discipline: no cluster larger than the current set joins") {
  // cluster {2,3} is doubly connected to vertex 1 but has size 2 > t(1) = 1
  const DoubleGraph g(3, {{1, 2}, {2, 3}}, {{1, 2}, {2, 3}});
  const auto trace = run_absorption(g, {1, {{2, 3}}});
  REQUIRE_FALSE(trace.percolated);
  REQUIRE(trace.steps == 0);
  REQUIRE(trace.vertex_order == std::vector<Vertex>{1});
}

TEST_CASE("exhaustive input search on the path/star pair") {
  const DoubleGraph g(3, {{1, 2}, {2, 3}}, {{1, 2}, {1, 3}});
  const auto found = find_percolating_input(g);
  REQUIRE(found.has_value());
  REQUIRE(found->steps <= 2);
  REQUIRE(run_absorption(g, found->input).percolated);
}

TEST_CASE("non-percolating graphs admit no input") {
  const DoubleGraph g(3, {{1, 2}}, {{2, 3}});  // disjoint colours
  REQUIRE_FALSE(percolates(g));
  REQUIRE_FALSE(find_percolating_input(g).has_value());
}

TEST_CASE("single vertex input search") {
  const DoubleGraph g(1, {}, {});
  const auto found = find_percolating_input(g);
  REQUIRE(found.has_value());
  REQUIRE(found->input.start == 1);
  REQUIRE(found->input.clusters.empty());
  REQUIRE(found->steps == 0);
}

TEST_CASE("capacity cap is enforced") {
  const DoubleGraph g(8, {}, {});
  REQUIRE_THROWS_AS(find_percolating_input(g, 7), CapacityError);
}

TEST_CASE("absorption traces are sound on random graphs") {
  CounterRng rng(121212);
  int percolated_runs = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Vertex n = 2 + static_cast<Vertex>(rng.next_u64() % 5);
    std::vector<Edge> red, blue;
    for (Vertex u = 1; u < n; ++u)
      for (Vertex v = u + 1; v <= n; ++v) {
        if (rng.next_unit() < 0.5) red.emplace_back(u, v);
        if (rng.next_unit() < 0.5) blue.emplace_back(u, v);
      }
    const DoubleGraph g(n, red, blue);
    const auto found = find_percolating_input(g);
    // existence is equivalent to percolation of the whole graph
    REQUIRE(found.has_value() == percolates(g));
    if (!found) continue;
    ++percolated_runs;
    const auto trace = run_absorption(g, found->input);
    REQUIRE(trace.percolated);
    REQUIRE(trace.steps <= static_cast<int>(n) - 1);
    // size discipline along the trace
    std::size_t size_before = 1;
    for (std::size_t i = 0; i < trace.per_step_added.size(); ++i) {
      for (const auto& c : trace.per_step_added[i]) REQUIRE(c.size() <= size_before);
      for (const auto& c : trace.per_step_added[i]) size_before += c.size();
    }
  }
  REQUIRE(percolated_runs > 20);
}
