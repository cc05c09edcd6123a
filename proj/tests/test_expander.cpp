#include <doctest.h>

#include "sizeramsey/error.hpp"
#include "sizeramsey/expander.hpp"
#include "sizeramsey/rng.hpp"
#include "oracles.hpp"

using namespace sizeramsey;

namespace {

Graph complete(std::size_t n, Vertex base = 0, std::size_t id_bound = 0) {
  std::vector<VertexPair> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.emplace_back(base + a, base + b);
  return Graph::from_edges(id_bound ? id_bound : n, e);
}

Graph path(std::size_t n) {
  std::vector<VertexPair> e;
  for (Vertex a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return Graph::from_edges(n, e);
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VertexPair> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (bernoulli(rng, p)) e.emplace_back(a, b);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("expander parameters") {
  ExpanderParams p{10.0, 2.0, 0.1, 8.0};
  CHECK(p.rounds() == 4);
  CHECK(p.delta_step() == doctest::Approx(1.0));
  CHECK(p.gamma() == doctest::Approx(8.0 / (2 * 8.0 * 4)));
  CHECK(p.target(4) == doctest::Approx(6.0));
  ExpanderParams q{1.0, 2.0, 0.1, 8.0};
  CHECK_THROWS_AS(q.validate(), Error);
  auto r = ExpanderParams::from_json(p.to_json());
  CHECK(r.c1 == p.c1);
  CHECK(r.beta == p.beta);
}

TEST_CASE("min-degree core") {
  CHECK(min_degree_core(complete(5), 4).edge_count() == 10);
  std::vector<VertexPair> star;
  for (Vertex i = 1; i < 10; ++i) star.emplace_back(0, i);
  CHECK(min_degree_core(Graph::from_edges(10, star), 2).vertex_count() == 0);
  std::vector<VertexPair> bowtie{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}};
  CHECK(min_degree_core(Graph::from_edges(5, bowtie), 2).vertex_count() == 5);

  for (std::uint64_t s = 1; s <= 20; ++s) {
    auto g = random_graph(60, 0.08, s);
    auto a = min_degree_core(g, 3);
    CHECK(a == min_degree_core(g, 3, s * 77));
    CHECK(min_degree_core(a, 3) == a);
    for (Vertex v : a.vertices()) CHECK(a.degree(v) >= 3);
  }
}

TEST_CASE("exhaustive expansion check agrees with the subset oracle") {
  auto k6 = verify_expansion(complete(6), 1.0);
  CHECK(k6.status == Status::VerifiedExact);
  auto p10 = verify_expansion(path(10), 0.5);
  CHECK(p10.status == Status::Violated);
  CHECK(p10.witness["ratio"].get<double>() < 0.5);
  auto empty = verify_expansion(Graph::from_edges(5, std::vector<VertexPair>{}), 0.01);
  CHECK(empty.status == Status::Violated);

  for (std::uint64_t s = 1; s <= 30; ++s) {
    const std::size_t n = 4 + s % 11;
    auto g = random_graph(n, 0.3, s);
    const double truth = oracle::min_expansion(g);
    for (double gamma : {0.2, 0.5, 1.0, 1.5}) {
      ExpansionBudget b;
      b.jobs = 1 + s % 3;
      auto c = verify_expansion(g, gamma, b);
      CHECK((c.status == Status::Violated) == (truth < gamma));
      CHECK(c.budget["worst_ratio"].get<double>() == doctest::Approx(truth));
    }
  }
}

TEST_CASE("sampled expansion check finds bottlenecks") {
  // two K12 joined by a single edge: half the graph has one outside neighbour
  std::vector<VertexPair> e;
  for (Vertex a = 0; a < 12; ++a)
    for (Vertex b = a + 1; b < 12; ++b) {
      e.emplace_back(a, b);
      e.emplace_back(a + 12, b + 12);
    }
  e.emplace_back(0, 12);
  auto g = Graph::from_edges(24, e);
  ExpansionBudget b;
  b.exact_cap = 10;
  b.samples = 2000;
  auto c = verify_expansion(g, 0.5, b);
  CHECK(c.status == Status::Violated);
  auto ok = verify_expansion(complete(30), 1.0, b);
  CHECK(ok.status == Status::VerifiedSampled);
}

TEST_CASE("extract expander on two dense blocks") {
  std::vector<VertexPair> e;
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = a + 1; b < 6; ++b) {
      e.emplace_back(a, b);
      e.emplace_back(a + 6, b + 6);
    }
  e.emplace_back(0, 6);
  auto g = Graph::from_edges(12, e);
  ExpanderParams p{2.45, 1.5, 0.2, 6.0};
  auto r = extract_expander(g, p);
  CHECK(r.density >= (p.c1 + p.c2) / 2);
  CHECK(r.graph.vertex_count() >= 6);
  // one block survives whole
  bool block = true;
  const Vertex base = r.graph.contains(0) ? 0 : 6;
  for (Vertex v = base; v < base + 6; ++v) block &= r.graph.contains(v);
  CHECK(block);
  CHECK(r.large_enough);

  CHECK_THROWS_AS(extract_expander(path(10), p), Error);
  ExpanderParams tight{2.45, 1.5, 0.2, 4.0};
  CHECK_THROWS_AS(extract_expander(g, tight), Error);
}

TEST_CASE("extract expander on a random regular-ish graph") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto g = drop_isolated(random_graph(200, 0.06, s));
    ExpanderParams p{g.density() * 0.95, 1.5, 0.05, static_cast<double>(g.max_degree())};
    auto r = extract_expander(g, p);
    CHECK(r.density >= (p.c1 + p.c2) / 2);
    for (Vertex v : r.graph.vertices()) CHECK(g.contains(v));
    CHECK(r.trace.size() == r.iterations + 1);
  }
}
