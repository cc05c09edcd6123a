#include <doctest.h>

#include <set>

#include "sizeramsey/error.hpp"
#include "sizeramsey/hypergen.hpp"
#include "sizeramsey/rng.hpp"
#include "oracles.hpp"

using namespace sizeramsey;

namespace {

HostParams small_params() {
  HostParams p;
  p.N = 60;
  p.C = 1.5;
  p.s = 3;
  p.g = 4;
  p.alpha = p.default_alpha();
  return p;
}

}  // namespace

TEST_CASE("sampling enforces degree and girth") {
  auto p = small_params();
  auto host = sample_host_hypergraph(p, 1);
  CHECK(host.h.max_degree() <= 36);
  CHECK(berge_girth(host.h, 4) == std::nullopt);
  CHECK(oracle::berge_girth(host.h, 4) == std::nullopt);
  CHECK(verify_p2(host.h, p).status == Status::VerifiedExact);
  CHECK(verify_p3(host.h, p).status == Status::VerifiedExact);
  auto again = sample_host_hypergraph(p, 1);
  CHECK(again.h == host.h);
  CHECK(again.draw_index == host.draw_index);
}

TEST_CASE("cleanup keeps a subset of the drawn edges") {
  Rng rng(3);
  std::vector<std::vector<Vertex>> drawn;
  for (int i = 0; i < 40; ++i) {
    std::set<Vertex> e;
    while (e.size() < 3) e.insert(static_cast<Vertex>(uniform_below(rng, 12)));
    drawn.emplace_back(e.begin(), e.end());
  }
  auto host = clean_hypergraph(12, 3, drawn, 3, 100.0);
  for (std::size_t i = 0; i < host.h.edge_count(); ++i) {
    auto e = host.h.edge(static_cast<HyperedgeId>(i));
    CHECK(std::vector<Vertex>(e.begin(), e.end()) == drawn[host.draw_index[i]]);
  }
  CHECK(std::is_sorted(host.draw_index.begin(), host.draw_index.end()));
  CHECK(oracle::berge_girth(host.h, 3) == std::nullopt);
  // the largest-id edge of every removed cycle goes, so the first draw always survives
  CHECK(host.draw_index.front() == 0);
}

TEST_CASE("empty sample") {
  HostParams p = small_params();
  p.N = 0;
  auto host = sample_host_hypergraph(p, 1);
  CHECK(host.h.edge_count() == 0);
}

TEST_CASE("P1 boundaries") {
  HostParams p = small_params();
  p.N = 10;
  p.C = 1.0;  // window [5, 10]
  std::vector<std::vector<Vertex>> ten, four;
  for (Vertex i = 0; i < 10; ++i) ten.push_back({i, (i + 1) % 10, (i + 3) % 10});
  for (Vertex i = 0; i < 4; ++i) four.push_back({i, i + 4, 9});
  CHECK(verify_p1(Hypergraph(10, 3, ten), p).status == Status::VerifiedExact);
  auto r = verify_p1(Hypergraph(10, 3, four), p);
  CHECK(r.status == Status::Violated);
  CHECK(r.witness["edges"] == 4);
}

TEST_CASE("P2 and P3 violations carry witnesses") {
  HostParams p = small_params();
  p.C = 0.25;
  p.s = 3;  // bound 8Cs = 6
  std::vector<std::vector<Vertex>> star;
  for (Vertex i = 0; i < 7; ++i) star.push_back({0, 2 * i + 1, 2 * i + 2});
  auto r2 = verify_p2(Hypergraph(20, 3, star), p);
  CHECK(r2.status == Status::Violated);
  CHECK(r2.witness["vertex"] == 0);

  Hypergraph pair(6, 3, {{0, 1, 2}, {0, 1, 3}});
  auto r3 = verify_p3(pair, p);
  CHECK(r3.status == Status::Violated);
  CHECK(r3.witness["length"] == 2);
}

TEST_CASE("P4 on hand-built intersection graphs") {
  HostParams p = small_params();
  p.N = 20;
  p.alpha = 0.5;  // sizes < 10
  Hypergraph edgeless(20, 3, {{0, 1, 2}, {3, 4, 5}});
  CHECK(verify_p4(edgeless, p).status == Status::VerifiedExact);

  Hypergraph k4(20, 3, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}});
  auto r = verify_p4(k4, p);
  CHECK(r.status == Status::Violated);
  CHECK(r.witness["hyperedges"].size() == 4);
  CHECK(sunflower_free_edges(k4, std::vector<HyperedgeId>{0, 1, 2, 3}) == 6);

  Hypergraph same(20, 3, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {0, 7, 8}});
  CHECK(verify_p4(same, p).status == Status::VerifiedExact);
  CHECK(sunflower_free_edges(same, std::vector<HyperedgeId>{0, 1, 2, 3}) == 3);
}

TEST_CASE("P4 and P5 agree with brute force on tiny hypergraphs") {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 9 + trial % 6;
    const std::size_t m = 3 + trial % 6;
    std::set<std::vector<Vertex>> edges;
    while (edges.size() < m) {
      std::set<Vertex> e;
      while (e.size() < 3) e.insert(static_cast<Vertex>(uniform_below(rng, n)));
      edges.emplace(e.begin(), e.end());
    }
    Hypergraph h(n, 3, {edges.begin(), edges.end()});
    HostParams p;
    p.N = n;
    p.s = 3;
    p.C = 1.0;
    p.g = 2;
    p.alpha = 9.0 / static_cast<double>(n);  // sizes below 9
    VerifyBudget b;
    b.p4_exact_cap = 8;
    b.p5_exact_cap = 9;
    b.p5_exact_nodes = 50'000'000;
    auto r4 = verify_p4(h, p, b);
    CHECK(r4.status != Status::VerifiedSampled);
    CHECK((r4.status == Status::VerifiedExact) == oracle::p4_holds(h, 9));
    auto r5 = verify_p5(h, p, b);
    CHECK(r5.status != Status::VerifiedSampled);
    CHECK((r5.status == Status::VerifiedExact) == oracle::p5_holds(h, 9));
  }
}

TEST_CASE("P5 on a linear hypergraph") {
  HostParams p = small_params();
  p.alpha = 1.0 / 60.0;  // |A| <= 1
  Hypergraph h(60, 3, {{0, 1, 2}, {2, 3, 4}});
  CHECK(verify_p5(h, p).status == Status::VerifiedExact);
  p.alpha = 0.5;
  auto r = verify_p5(h, p);
  CHECK(r.status != Status::Violated);
}

TEST_CASE("retry loop") {
  HostParams p;
  p.N = 2000;
  p.C = 1.0;
  p.s = 3;
  p.g = 3;
  p.alpha = 0.0;
  auto a = sample_until_verified(p, 10, 42);
  auto b = sample_until_verified(p, 10, 42);
  CHECK(a.report.accepted());
  CHECK(a.host.h == b.host.h);

  HostParams bad;
  bad.N = 6;
  bad.s = 3;
  bad.C = 10.0;  // CN/2 = 30 > C(6,3) = 20
  bad.g = 2;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(sample_until_verified(bad, 3, 1), Error);
}

TEST_CASE("params json round trip and asymptotic formulas") {
  auto p = small_params();
  auto q = HostParams::from_json(p.to_json());
  CHECK(q.N == p.N);
  CHECK(q.alpha == doctest::Approx(p.alpha));
  CHECK(p.default_alpha() == doctest::Approx(1e-6 / (1.5 * 1.5 * 1.5) / 6561.0));
  CHECK(p.asymptotic_g() > 1e10L);
}
