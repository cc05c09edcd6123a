#include <doctest.h>

#include <numeric>

#include "sizeramsey/cycleclose.hpp"
#include "sizeramsey/error.hpp"
#include "helpers.hpp"

using namespace sizeramsey;

namespace {

EdgeColoring mono(const Graph& g) {
  EdgeColoring c(g, 1);
  for (auto [u, v] : g.edges()) c.set(u, v, 0);
  return c;
}

}  // namespace

TEST_CASE("lift arithmetic") {
  CHECK(lift_split(2, 3, 8, 21) == std::optional<std::size_t>(5));
  CHECK(lift_split(2, 4, 5, 16) == std::optional<std::size_t>(3));
  CHECK(lift_split(2, 4, 5, 15) == std::nullopt);
  CHECK(lift_split(2, 3, 8, 15) == std::nullopt);
  CHECK(lift_split(2, 3, 8, 25) == std::nullopt);
  // every length in the window splits in odd mode; every even one in even mode
  for (std::size_t n = 20; n <= 200; ++n) {
    auto [lo, hi] = lift_window(2, 3, n);
    for (std::size_t ell = lo; ell <= hi; ++ell) {
      auto x = lift_split(2, 3, ell, n);
      REQUIRE(x);
      CHECK(*x * 3 + (ell - *x) * 2 == n);
    }
    if (n % 2 == 0) {
      auto [elo, ehi] = lift_window(2, 4, n);
      for (std::size_t ell = elo; ell <= ehi; ++ell) CHECK(lift_split(2, 4, ell, n));
    }
  }
}

TEST_CASE("lift in odd mode: 5 long and 3 short arcs") {
  auto r = testing::gadget_ring(8, 5, 2, Mode::OddInduced);
  auto lift = lift_cycle(r.aux, testing::ring_q(8), 21);
  CHECK(lift.length == 21);
  CHECK(std::count(lift.longs.begin(), lift.longs.end(), 1) == 5);
  // long arcs go to the smallest aux indices
  for (std::size_t i = 0; i < 8; ++i) CHECK(lift.longs[i] == (r.aux.index(Vertex(i), Vertex((i + 1) % 8)) < 5));
  auto col = mono(r.host);
  auto rep = verify_final(r.host, col, lift.cycle, 21, Mode::OddInduced);
  CHECK(rep.passed());
  CHECK(rep.induced == std::optional<bool>(true));
}

TEST_CASE("lift in even mode") {
  auto r = testing::gadget_ring(5, 6, 2, Mode::EvenInduced);
  auto lift = lift_cycle(r.aux, testing::ring_q(5), 16);
  CHECK(std::count(lift.longs.begin(), lift.longs.end(), 1) == 3);
  auto col = mono(r.host);
  CHECK(verify_final(r.host, col, lift.cycle, 16, Mode::EvenInduced).passed());
  CHECK_THROWS_AS(lift_cycle(r.aux, testing::ring_q(5), 15), Error);
}

TEST_CASE("final verification negative controls") {
  auto base = testing::gadget_ring(8, 5, 2, Mode::OddInduced);
  auto lift = lift_cycle(base.aux, testing::ring_q(8), 21);
  const Vertex a = lift.cycle[0], b = lift.cycle[5];
  auto chorded = testing::gadget_ring(8, 5, 2, Mode::OddInduced, {std::minmax(a, b)});
  auto col = mono(chorded.host);
  auto rep = verify_final(chorded.host, col, lift.cycle, 21, Mode::OddInduced, 2);
  CHECK_FALSE(rep.passed());
  CHECK(rep.induced == std::optional<bool>(false));
  CHECK(rep.witness["chord"] == nlohmann::json{std::min(a, b), std::max(a, b)});
  CHECK(verify_final(chorded.host, col, lift.cycle, 21, Mode::NonInduced).passed());

  EdgeColoring two(base.host, 2);
  for (auto [u, v] : base.host.edges()) two.set(u, v, 0);
  two.set(lift.cycle[3], lift.cycle[4], 1);
  auto rc = verify_final(base.host, two, lift.cycle, 21, Mode::OddInduced);
  CHECK_FALSE(rc.monochromatic);
  CHECK(rc.witness.contains("off_color_edge"));

  auto col0 = mono(base.host);
  CHECK_FALSE(verify_final(base.host, col0, lift.cycle, 22, Mode::OddInduced).exact_length);
  Cycle broken = lift.cycle;
  std::swap(broken[1], broken[2]);
  CHECK_FALSE(verify_final(base.host, col0, broken, 21, Mode::OddInduced).is_cycle);
}

TEST_CASE("neighbourhood of S in the intersection graph") {
  Hypergraph h(9, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}});
  IntersectionGraph ig(h);
  std::vector<HyperedgeId> s{0};
  CHECK(n_i_of_s(ig, s) == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
  std::vector<HyperedgeId> none;
  CHECK(n_i_of_s(ig, none).empty());
}

TEST_CASE("balls meet in the middle of a path") {
  std::vector<VertexPair> e;
  for (Vertex i = 0; i + 1 < 9; ++i) e.push_back({i, i + 1});
  auto g = Graph::from_edges(9, e);
  std::vector<Vertex> r1{0}, r2{8}, none;
  auto cs = expand_balls(g, r1, r2, none, 10);
  CHECK(cs.meet == 4);
  CHECK(cs.steps == 4);
  CHECK(cs.arm(0) == Path{4, 3, 2, 1, 0});
  CHECK(cs.arm(1) == Path{4, 5, 6, 7, 8});
  std::vector<Vertex> mid{4};
  CHECK_THROWS_AS(expand_balls(g, r1, r2, mid, 10), Error);
  std::vector<Vertex> both{0, 8};
  CHECK(expand_balls(g, both, r2, none, 10).steps == 0);
}

TEST_CASE("assembling a cycle through trees and arms") {
  // sixteen triples in a ring; aux vertices are the even joints
  std::vector<std::vector<Vertex>> edges;
  std::vector<std::pair<HyperedgeId, VertexPair>> anchors;
  for (Vertex i = 0; i < 16; ++i) {
    edges.push_back({2 * i, 2 * i + 1, (2 * i + 2) % 32});
    std::sort(edges.back().begin(), edges.back().end());
    anchors.push_back({i, {2 * i, (2 * i + 2) % 32}});
  }
  Hypergraph h(32, 3, edges);
  auto aux = testing::triple_aux(32, h, anchors);
  TreeState ts;
  ts.spine = {0, 2, 4};
  ts.root = 2;
  ts.tree_edges[0] = {{30, 0}};
  ts.tree_edges[1] = {{6, 4}};
  RSets r;
  r.r[0] = {30};
  r.r[1] = {6};
  std::vector<VertexPair> rest;
  for (Vertex v = 6; v < 30; v += 2) rest.push_back({v, v + 2});
  std::vector<Vertex> present;
  for (Vertex v = 6; v <= 30; v += 2) present.push_back(v);
  auto gred = Graph::from_edges(32, rest, present);
  std::vector<Vertex> none;
  auto cs = expand_balls(gred, r.r[0], r.r[1], none, 20);
  CHECK(cs.meet == 18);
  auto ac = assemble_cycle(aux, h, ts, r, cs, 10, 20);
  CHECK(ac.q.size() == 16);
  CHECK(ac.q.front() == 30);
  CHECK(ac.certificate.good);
  CHECK_FALSE(ac.fallback_cover);
  CHECK_THROWS_AS(assemble_cycle(aux, h, ts, r, cs, 17, 20), Error);
  auto sh = spine_hyperedges(aux, ts, r);
  CHECK(sh == std::vector<HyperedgeId>{0, 1});
}
