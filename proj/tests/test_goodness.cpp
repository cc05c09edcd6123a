#include <doctest.h>

#include <functional>

#include "sizeramsey/error.hpp"
#include "sizeramsey/goodness.hpp"
#include "sizeramsey/rng.hpp"
#include "helpers.hpp"

using namespace sizeramsey;

namespace {

// e0 = {0,1,2}, e1 = {2,3,4}, f = {1,3,5}: a Berge 3-cycle through f
struct Triangle {
  Hypergraph h{8, 3, {{0, 1, 2}, {2, 3, 4}, {1, 3, 5}, {4, 6, 7}}};
  AuxGraph aux = testing::triple_aux(8, h, {{0, {0, 2}}, {1, {2, 4}}, {3, {4, 6}}});
};

Path random_walk(const AuxGraph& aux, Rng& rng, std::size_t len) {
  auto [a, b] = aux.endpoints(uniform_below(rng, aux.edge_count()));
  Path p{a, b};
  while (p.size() - 1 < len) {
    std::vector<Vertex> next;
    for (Vertex w : aux.graph().neighbors(p.back()))
      if (std::find(p.begin(), p.end(), w) == p.end()) next.push_back(w);
    if (next.empty()) break;
    p.push_back(next[uniform_below(rng, next.size())]);
  }
  return p;
}

}  // namespace

TEST_CASE("hand-built good and bad paths") {
  Triangle t;
  CHECK(is_good_path(t.aux, t.h, std::vector<Vertex>{0, 2}).good);
  auto bad = is_good_path(t.aux, t.h, std::vector<Vertex>{0, 2, 4});
  CHECK_FALSE(bad.good);
  CHECK(bad.witness["hyperedge"] == 2);
  CHECK(ruin_witness(t.aux, t.h, std::vector<Vertex>{0, 2}, 4) == 2u);
  CHECK(ruin_witness(t.aux, t.h, std::vector<Vertex>{2, 4}, 6) == std::nullopt);
  CHECK_THROWS_AS(is_good_path(t.aux, t.h, std::vector<Vertex>{0, 4}), Error);
}

TEST_CASE("two-edge path with no third hyperedge is good") {
  Hypergraph h(8, 3, {{0, 1, 2}, {2, 3, 4}});
  auto aux = testing::triple_aux(8, h, {{0, {0, 2}}, {1, {2, 4}}});
  CHECK(is_good_path(aux, h, std::vector<Vertex>{0, 2, 4}).good);
  CHECK(is_good_path(aux, h, std::vector<Vertex>{4, 2, 0}).good);
}

TEST_CASE("incremental checker matches the direct check") {
  auto s = testing::random_setup(500, 2.0, 2, 3);
  PathChecker chk(s->aux, *s->h);
  Rng rng(4);
  std::size_t bad = 0;
  for (int t = 0; t < 400; ++t) {
    Path p = random_walk(s->aux, rng, 1 + uniform_below(rng, 12));
    chk.clear();
    chk.start(p[0]);
    for (std::size_t i = 1; i < p.size(); ++i) {
      chk.push(p[i]);
      Path prefix(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      auto direct = is_good_path(s->aux, *s->h, prefix);
      CHECK(chk.good() == direct.good);
      Path rev(prefix.rbegin(), prefix.rend());
      CHECK(is_good_path(s->aux, *s->h, rev).good == direct.good);
      if (!direct.good) {
        ++bad;
        Path before(prefix.begin(), prefix.end() - 1);
        if (is_good_path(s->aux, *s->h, before).good) {
          auto w = ruin_witness(s->aux, *s->h, before, prefix.back());
          REQUIRE(w);
          // witness meets h(vu) and some earlier path hyperedge
          auto hvu = s->aux.h(before.back(), prefix.back());
          auto ig = IntersectionGraph(*s->h);
          CHECK(ig.label(*w, hvu).has_value());
          bool meets_earlier = false;
          for (std::size_t j = 0; j + 1 < before.size(); ++j)
            meets_earlier |= ig.label(*w, s->aux.h(before[j], before[j + 1])).has_value();
          CHECK(meets_earlier);
        }
        break;
      } else if (i + 1 < p.size()) {
        CHECK(ruin_witness(s->aux, *s->h, prefix, p[i + 1]).has_value() ==
              !is_good_path(s->aux, *s->h, Path(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i) + 2)).good);
      }
    }
    // popping restores the empty state exactly
    chk.clear();
    CHECK(chk.good());
  }
  CHECK(bad > 0);
}

TEST_CASE("good trees agree with checking every root path") {
  auto s = testing::random_setup(400, 2.0, 2, 5);
  Rng rng(6);
  for (int t = 0; t < 60; ++t) {
    // BFS tree of random small size around a random vertex
    auto [root, other] = s->aux.endpoints(uniform_below(rng, s->aux.edge_count()));
    (void)other;
    RootedTree tree;
    tree.root = root;
    tree.members = {root};
    std::size_t cap = 2 + uniform_below(rng, 10);
    for (std::size_t i = 0; i < tree.members.size() && tree.members.size() < cap; ++i) {
      for (Vertex w : s->aux.graph().neighbors(tree.members[i])) {
        if (std::find(tree.members.begin(), tree.members.end(), w) != tree.members.end()) continue;
        tree.members.push_back(w);
        tree.parent.emplace_back(w, tree.members[i]);
        if (tree.members.size() >= cap) break;
      }
    }
    auto cert = is_good_tree(s->aux, *s->h, tree);
    // oracle: all paths a -> root -> b with a, b in different branches
    std::map<Vertex, Vertex> par(tree.parent.begin(), tree.parent.end());
    auto arm = [&](Vertex a) {
      Path p{a};
      while (p.back() != root) p.push_back(par[p.back()]);
      return p;
    };
    bool all_good = true;
    for (Vertex a : tree.members)
      for (Vertex b : tree.members) {
        Path pa = arm(a), pb = arm(b);
        if (pa.size() >= 2 && pb.size() >= 2 && pa[pa.size() - 2] == pb[pb.size() - 2]) continue;
        Path full = pa;
        for (std::size_t i = pb.size() - 1; i-- > 0;) full.push_back(pb[i]);
        if (full.size() >= 2 && !is_good_path(s->aux, *s->h, full).good) all_good = false;
      }
    CHECK(cert.good == all_good);
  }
}

TEST_CASE("tree validation") {
  Triangle t;
  RootedTree bad_tree{2, {2, 0, 4}, {{0, 2}, {4, 0}}};
  CHECK_THROWS_AS(is_good_tree(t.aux, t.h, bad_tree), Error);
  RootedTree single{2, {2}, {}};
  CHECK(is_good_tree(t.aux, t.h, single).good);
  RootedTree cherry{2, {2, 0, 4}, {{0, 2}, {4, 2}}};
  auto c = is_good_tree(t.aux, t.h, cherry);
  CHECK_FALSE(c.good);
}

TEST_CASE("good cycles need full pair coverage") {
  // six triples in a ring; the aux cycle runs through the joints
  Hypergraph h(12, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}, {8, 9, 10}, {10, 11, 0}});
  std::vector<std::pair<HyperedgeId, VertexPair>> anchors;
  for (HyperedgeId i = 0; i < 6; ++i) anchors.push_back({i, {2 * i, (2 * i + 2) % 12}});
  auto aux = testing::triple_aux(12, h, anchors);
  std::vector<Vertex> q{0, 2, 4, 6, 8, 10};
  std::vector<CoverArc> full;
  for (std::size_t i = 0; i < 6; ++i) full.push_back({i, 4});
  CHECK(is_good_cycle(aux, h, q, full).good);
  std::vector<CoverArc> threes;
  for (std::size_t i = 0; i < 6; ++i) threes.push_back({i, 3});
  auto c = is_good_cycle(aux, h, q, threes);
  CHECK_FALSE(c.good);
  CHECK(c.witness.contains("uncovered_pair"));
  std::vector<CoverArc> five{{1, 5}};
  auto d = is_good_cycle(aux, h, q, five);
  CHECK_FALSE(d.good);
  CHECK(d.witness.contains("bad_member"));
  std::vector<CoverArc> wrong{{0, 6}};
  CHECK_THROWS_AS(is_good_cycle(aux, h, q, wrong), Error);
}

TEST_CASE("short paths are good above the girth, and the probe detects an injected cycle") {
  auto s = testing::random_setup(3000, 1.0, 4, 7);
  auto rep = short_paths_are_good_probe(s->aux, *s->h, 4, 1000, 1);
  CHECK(rep.checked == 1000);
  CHECK(rep.bad.empty());
  CHECK(short_paths_are_good_probe(s->aux, *s->h, 4, 0, 1).checked == 0);

  Triangle t;
  auto neg = short_paths_are_good_probe(t.aux, t.h, 3, 200, 1);
  CHECK_FALSE(neg.bad.empty());
}
