#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "jigsaw/double_graph.hpp"

using namespace jigsaw;

TEST_CASE("probability-1 and probability-0 edges") {
  const auto full = generate_double_graph({3, 1.0, 1.0, 123});
  REQUIRE(full.edges(Colour::Red).size() == 3);
  REQUIRE(full.edges(Colour::Blue).size() == 3);

  const auto half = generate_double_graph({10, 0.0, 0.5, 5});
  REQUIRE(half.edges(Colour::Red).empty());
}

TEST_CASE("parameter validation") {
  REQUIRE_THROWS_AS(generate_double_graph({0, 0.5, 0.5, 1}), ParameterError);
  REQUIRE_THROWS_AS(generate_double_graph({10, 1.5, 0.5, 1}), ParameterError);
  REQUIRE_THROWS_AS(generate_double_graph({10, 0.5, -0.1, 1}), ParameterError);
  REQUIRE_THROWS_AS(DoubleGraph(3, {{1, 1}}, {}), ParameterError);
  REQUIRE_THROWS_AS(DoubleGraph(3, {{1, 4}}, {}), ParameterError);
}

TEST_CASE("generation is deterministic and colour streams are independent") {
  const auto a = generate_double_graph({200, 0.05, 0.08, 777});
  const auto b = generate_double_graph({200, 0.05, 0.08, 777});
  REQUIRE(a.edges(Colour::Red) == b.edges(Colour::Red));
  REQUIRE(a.edges(Colour::Blue) == b.edges(Colour::Blue));

  // changing p2 must not perturb the red sampling
  const auto c = generate_double_graph({200, 0.05, 0.9, 777});
  REQUIRE(a.edges(Colour::Red) == c.edges(Colour::Red));
  REQUIRE(a.edges(Colour::Blue) != c.edges(Colour::Blue));
}

TEST_CASE("red edge count mean matches the binomial within 5 sigma") {
  const std::uint64_t pairs = 1000ull * 999 / 2;
  const double p = 0.01;
  double total = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s)
    total += generate_double_graph({1000, p, p, derive_seed(4242, s)}).edges(Colour::Red).size();
  const double mean = total / seeds;
  const double expect = pairs * p;  // 4995
  const double sigma_mean = std::sqrt(pairs * p * (1 - p) / seeds);
  REQUIRE(std::abs(mean - expect) <= 5.0 * sigma_mean);
}

TEST_CASE("edge count distribution passes a chi-square fit") {
  // |red| ~ Bi(C(100,2), 0.1): 20 equiprobable bins over 1000 seeded trials,
  // significance 0.001 (chi2 crit at 19 df = 43.82)
  const Vertex n = 100;
  const double p = 0.1;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  // exact binomial CDF in doubles is fine at this scale
  std::vector<double> cdf(pairs + 1);
  {
    std::vector<double> logpmf(pairs + 1);
    double lg = 0;  // log C(pairs, k)
    for (std::uint64_t k = 0; k <= pairs; ++k) {
      if (k > 0) lg += std::log(static_cast<double>(pairs - k + 1)) - std::log(static_cast<double>(k));
      logpmf[k] = lg + k * std::log(p) + (pairs - k) * std::log1p(-p);
    }
    double acc = 0;
    for (std::uint64_t k = 0; k <= pairs; ++k) {
      acc += std::exp(logpmf[k]);
      cdf[k] = acc;
    }
  }
  const int bins = 20;
  std::vector<std::uint64_t> edges(bins - 1);  // bin b covers counts <= edges[b]
  for (int b = 0; b < bins - 1; ++b) {
    const double target = static_cast<double>(b + 1) / bins;
    edges[b] = static_cast<std::uint64_t>(
        std::lower_bound(cdf.begin(), cdf.end(), target) - cdf.begin());
  }
  std::vector<double> expected(bins);
  double prev = 0;
  for (int b = 0; b < bins; ++b) {
    const double hi = b + 1 < bins ? cdf[edges[b]] : 1.0;
    expected[b] = (hi - prev) * 1000;
    prev = hi;
  }

  std::vector<int> observed(bins, 0);
  for (int t = 0; t < 1000; ++t) {
    const auto g = generate_double_graph({n, p, 0.0, derive_seed(31337, t)});
    const std::uint64_t m = g.edges(Colour::Red).size();
    int b = 0;
    while (b < bins - 1 && m > edges[b]) ++b;
    ++observed[b];
  }
  double chi2 = 0;
  for (int b = 0; b < bins; ++b)
    chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
  REQUIRE(chi2 < 43.82);  // chi2_{0.999, 19}
}

TEST_CASE("induced subgraph") {
  const DoubleGraph g(4, {{1, 2}, {2, 3}, {3, 4}}, {{1, 2}, {1, 3}, {1, 4}});

  SECTION("full vertex set is the identity") {
    const std::vector<Vertex> all{1, 2, 3, 4};
    const auto ind = induced_double_graph(g, all);
    REQUIRE(ind.graph.edges(Colour::Red) == g.edges(Colour::Red));
    REQUIRE(ind.graph.edges(Colour::Blue) == g.edges(Colour::Blue));
    REQUIRE(ind.original_label == all);
  }
  SECTION("single vertex has no edges") {
    const std::vector<Vertex> one{3};
    const auto ind = induced_double_graph(g, one);
    REQUIRE(ind.graph.vertex_count() == 1);
    REQUIRE(ind.graph.edges(Colour::Red).empty());
    REQUIRE(ind.graph.edges(Colour::Blue).empty());
  }
  SECTION("edges are intersected with the subset") {
    const std::vector<Vertex> u{1, 2, 3};
    const auto ind = induced_double_graph(g, u);
    REQUIRE(ind.graph.edges(Colour::Red) == std::vector<Edge>{{1, 2}, {2, 3}});
    REQUIRE(ind.graph.edges(Colour::Blue) == std::vector<Edge>{{1, 2}, {1, 3}});
  }
  SECTION("out-of-range subset is rejected") {
    const std::vector<Vertex> bad{1, 5};
    REQUIRE_THROWS_AS(induced_double_graph(g, bad), ParameterError);
  }
}

TEST_CASE("union of double graphs") {
  const DoubleGraph g(3, {{1, 2}}, {{2, 3}});
  const DoubleGraph empty(3, {}, {});
  const DoubleGraph other(4, {}, {});

  const auto u1 = union_double_graph(g, empty);
  REQUIRE(u1.edges(Colour::Red) == g.edges(Colour::Red));
  REQUIRE(u1.edges(Colour::Blue) == g.edges(Colour::Blue));

  const auto u2 = union_double_graph(g, g);
  REQUIRE(u2.edges(Colour::Red) == g.edges(Colour::Red));
  REQUIRE(u2.edges(Colour::Blue) == g.edges(Colour::Blue));

  REQUIRE_THROWS_AS(union_double_graph(g, other), ParameterError);
}

TEST_CASE("union inclusion frequency matches 1-(1-p)^2 within 5 sigma") {
  const Vertex n = 500;
  const double p = 0.01;
  const int samples = 200;
  const double q = 1.0 - (1.0 - p) * (1.0 - p);  // 0.0199
  std::uint64_t included = 0;
  for (int s = 0; s < samples; ++s) {
    const auto a = generate_double_graph({n, p, 0.0, derive_seed(555, 2 * s)});
    const auto b = generate_double_graph({n, p, 0.0, derive_seed(555, 2 * s + 1)});
    included += union_double_graph(a, b).edges(Colour::Red).size();
  }
  const double slots = static_cast<double>(samples) * n * (n - 1) / 2;
  const double sigma = std::sqrt(slots * q * (1 - q));
  REQUIRE(std::abs(included - slots * q) <= 5.0 * sigma);
}

TEST_CASE("induced plus complement never invents edges") {
  const auto g = generate_double_graph({30, 0.2, 0.2, 99});
  std::vector<Vertex> inside, outside;
  for (Vertex v = 1; v <= 30; ++v) (v % 3 ? inside : outside).push_back(v);
  const auto in_part = induced_double_graph(g, inside);
  for (int c = 0; c < 2; ++c)
    for (const auto& e : in_part.graph.edges(static_cast<Colour>(c)))
      REQUIRE(g.has_edge(static_cast<Colour>(c), in_part.original_label[e.first - 1],
                         in_part.original_label[e.second - 1]));
}

TEST_CASE("pair index encode/decode round trip") {
  // exhaustive at small n
  for (Vertex n : {2u, 3u, 7u, 12u}) {
    std::uint64_t idx = 0;
    for (Vertex u = 1; u < n; ++u)
      for (Vertex v = u + 1; v <= n; ++v, ++idx) {
        REQUIRE(detail::encode_pair_index(u, v, n) == idx);
        REQUIRE(detail::decode_pair_index(idx, n) == Edge{u, v});
      }
    REQUIRE(idx == detail::pair_count(n));
  }
  // sampled at large n
  const Vertex n = 100000;
  CounterRng rng(8);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t idx = rng.next_u64() % detail::pair_count(n);
    const Edge e = detail::decode_pair_index(idx, n);
    REQUIRE(e.first < e.second);
    REQUIRE(e.second <= n);
    REQUIRE(detail::encode_pair_index(e.first, e.second, n) == idx);
  }
}

TEST_CASE("text format round trip") {
  const auto g = generate_double_graph({40, 0.1, 0.15, 2024});
  std::stringstream ss;
  write_double_graph(ss, g);
  const auto h = read_double_graph(ss);
  REQUIRE(h.vertex_count() == g.vertex_count());
  REQUIRE(h.edges(Colour::Red) == g.edges(Colour::Red));
  REQUIRE(h.edges(Colour::Blue) == g.edges(Colour::Blue));

  std::stringstream bad("3 1 0\n1 9\n");
  REQUIRE_THROWS_AS(read_double_graph(bad), ParameterError);
  std::stringstream truncated("3 2 0\n1 2\n");
  REQUIRE_THROWS_AS(read_double_graph(truncated), ParameterError);
}
