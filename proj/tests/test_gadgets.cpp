#include <doctest.h>

#include <random>

#include "sizeramsey/error.hpp"
#include "sizeramsey/gadgets.hpp"
#include "sizeramsey/rng.hpp"
#include "oracles.hpp"

using namespace sizeramsey;

namespace {

EdgeColoring mono(const Graph& g, std::size_t k = 1) {
  EdgeColoring c(g, k);
  for (auto [u, v] : g.edges()) c.set(u, v, 0);
  return c;
}

EdgeColoring random_coloring(const Graph& g, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  EdgeColoring c(g, k);
  for (auto [u, v] : g.edges()) c.set(u, v, static_cast<Color>(uniform_below(rng, k)));
  return c;
}

void check_cycle(const Gadget& g, const EdgeColoring& col, const GadgetCycle& c) {
  require_cycle(g.graph, c.vertices);
  for (std::size_t i = 0; i < c.length(); ++i) {
    CHECK(col.color(c.vertices[i], c.vertices[(i + 1) % c.length()]) == c.color);
  }
  if (g.mode != Mode::NonInduced) {
    CHECK(is_induced_cycle(g.graph, c.vertices));
    CHECK(c.anchor_distance == 2);
  } else {
    CHECK(c.length() % 2 == 1);
    CHECK(c.anchor_distance == (c.length() - 1) / 2);
  }
  CHECK(c.short_arc().front() == c.long_arc().front());
  CHECK(c.short_arc().back() == c.long_arc().back());
  CHECK(c.short_arc().size() + c.long_arc().size() == c.length() + 2);
}

}  // namespace

TEST_CASE("complete gadget sizes") {
  CHECK(complete_gadget(1).graph.edge_count() == 3);
  auto k5 = complete_gadget(2);
  CHECK(k5.s() == 5);
  CHECK(k5.graph.edge_count() == 10);
  CHECK(complete_gadget(3).graph.edge_count() == 36);
  CHECK_THROWS_AS(complete_gadget(20), Error);
}

TEST_CASE("incidence gadgets are regular, bipartite, C4-free with girth 6") {
  for (auto [q, nv, ne] : std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{
           {2, 14, 21}, {3, 26, 52}, {4, 42, 105}, {5, 62, 186}, {8, 146, 657}, {9, 182, 910}}) {
    auto g = incidence_gadget(q);
    CHECK(g.mode == Mode::EvenInduced);
    CHECK(g.graph.vertex_count() == nv);
    CHECK(g.graph.edge_count() == ne);
    CHECK(is_bipartite(g.graph));
    CHECK(graph_girth(g.graph, 10) == 6u);
    for (Vertex v = 0; v < nv; ++v) CHECK(g.graph.degree(v) == q + 1);
  }
  CHECK(oracle::girth(incidence_gadget(2).graph) == 6u);
  CHECK_THROWS_AS(incidence_gadget(6), Error);
}

TEST_CASE("triangle-free gadgets") {
  auto c5 = trianglefree_gadget("c5", 0);
  CHECK(c5.graph.edge_count() == 5);
  auto p = parse_gadget("trianglefree:petersen", 0);
  CHECK(p.graph.vertex_count() == 10);
  CHECK(p.graph.edge_count() == 15);
  CHECK(graph_girth(p.graph, 10) == 5u);
  auto r = parse_gadget("trianglefree:random,n=40,p=0.15", 7);
  CHECK(r.graph.vertex_count() == 40);
  CHECK_FALSE(has_triangle(r.graph));
  for (const auto& cyc : oracle::all_cycles(r.graph, 3)) CHECK(cyc.size() != 3);
  CHECK(r.graph == parse_gadget("trianglefree:random,n=40,p=0.15", 7).graph);
  CHECK_THROWS_AS(parse_gadget("trianglefree:random,n=40", 7), Error);
  CHECK_THROWS_AS(parse_gadget("hexagon:q=2", 7), Error);
}

TEST_CASE("odd cycle finder") {
  auto k3 = complete_gadget(1);
  auto c = find_mono_odd_cycle(k3, mono(k3.graph));
  REQUIRE(c);
  CHECK(c->length() == 3);
  CHECK(c->anchor_distance == 1);

  auto k5 = complete_gadget(2);
  EdgeColoring split(k5.graph, 2);
  for (auto [u, v] : k5.graph.edges()) {
    const bool outer = (v - u) == 1 || (v - u) == 4;
    split.set(u, v, outer ? 0 : 1);
  }
  c = find_mono_odd_cycle(k5, split);
  REQUIRE(c);
  CHECK(c->length() == 5);
  check_cycle(k5, split, *c);

  // star at 0 in colour 0, the rest (K4 on 1..4) in colour 1
  EdgeColoring star(k5.graph, 2);
  for (auto [u, v] : k5.graph.edges()) star.set(u, v, u == 0 ? 0 : 1);
  c = find_mono_odd_cycle(k5, star);
  REQUIRE(c);
  CHECK(c->color == 1);
  check_cycle(k5, star, *c);
}

TEST_CASE("C6 finder") {
  auto h = incidence_gadget(2);
  auto c = find_mono_c6(h, mono(h.graph));
  REQUIRE(c);
  check_cycle(h, mono(h.graph), *c);

  EdgeColoring forest(h.graph, 21);
  Color next = 0;
  for (auto [u, v] : h.graph.edges()) forest.set(u, v, next++);
  CHECK_FALSE(find_mono_c6(h, forest));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto col = random_coloring(h.graph, 2, seed);
    auto got = find_mono_c6(h, col);
    CHECK(got.has_value() == oracle::has_target_cycle(h, col));
    if (got) check_cycle(h, col, *got);
  }
}

TEST_CASE("C5 finder") {
  auto c5 = trianglefree_gadget("c5", 0);
  auto c = find_mono_c5(c5, mono(c5.graph));
  REQUIRE(c);
  CHECK(c->length() == 5);

  auto p = trianglefree_gadget("petersen", 0);
  c = find_mono_c5(p, mono(p.graph));
  REQUIRE(c);
  check_cycle(p, mono(p.graph), *c);

  std::vector<VertexPair> c6e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  Gadget bip{Graph::from_edges(6, c6e), Mode::OddInduced, "c6"};
  CHECK_FALSE(find_mono_c5(bip, mono(bip.graph)));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto col = random_coloring(p.graph, 2, seed);
    auto got = find_mono_c5(p, col);
    CHECK(got.has_value() == oracle::has_target_cycle(p, col));
    if (got) check_cycle(p, col, *got);
  }
  auto r = parse_gadget("trianglefree:random,n=40,p=0.15", 7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto col = random_coloring(r.graph, 2, seed);
    if (auto got = find_mono_c5(r, col)) check_cycle(r, col, *got);
  }
}

TEST_CASE("finders agree with enumeration on every 2-colouring of small gadgets") {
  std::vector<Gadget> small{complete_gadget(2), trianglefree_gadget("c5", 0)};
  std::vector<VertexPair> pe = trianglefree_gadget("petersen", 0).graph.edges();
  pe.resize(12);
  small.push_back({Graph::from_edges(10, pe), Mode::OddInduced, "petersen-3"});
  for (const auto& g : small) {
    const auto edges = g.graph.edges();
    for (std::uint64_t mask = 0; mask < (1ULL << edges.size()); ++mask) {
      EdgeColoring col(g.graph, 2);
      for (std::size_t i = 0; i < edges.size(); ++i)
        col.set(edges[i].first, edges[i].second, static_cast<Color>((mask >> i) & 1));
      auto got = find_gadget_cycle(g, col);
      CHECK(got.has_value() == oracle::has_target_cycle(g, col));
      if (got) check_cycle(g, col, *got);
    }
  }
}

TEST_CASE("exhaustive Ramsey verification") {
  CHECK(verify_gadget_ramsey(complete_gadget(1), 1));
  CHECK(verify_gadget_ramsey(trianglefree_gadget("c5", 0), 1));
  CHECK(verify_gadget_ramsey(incidence_gadget(2), 1));
  CHECK(verify_gadget_ramsey(complete_gadget(2), 2));
  CHECK_FALSE(verify_gadget_ramsey(trianglefree_gadget("c5", 0), 2));
  GadgetLimits tight;
  tight.max_colorings = 1000;
  CHECK_THROWS_AS(verify_gadget_ramsey(incidence_gadget(2), 2, tight), Error);
}

TEST_CASE("anchor choice is the least pair and arcs split the cycle") {
  auto gc = anchor_cycle({4, 9, 2, 7, 1, 3}, 0, 2);
  CHECK(gc.anchor() == VertexPair{1, 2});
  CHECK(gc.short_arc() == Path{1, 7, 2});
  CHECK(gc.long_arc() == Path{1, 3, 4, 9, 2});
}
