#include <doctest.h>

#include <fstream>

#include "sizeramsey/colorers.hpp"
#include "sizeramsey/error.hpp"
#include "sizeramsey/gadgets.hpp"

using namespace sizeramsey;

TEST_CASE("colorer descriptors") {
  CHECK(ColorerSpec::parse("uniform-random").kind == "uniform-random");
  CHECK(ColorerSpec::parse("proper-greedy-avoid:bound=5").bound == 5);
  CHECK(ColorerSpec::parse("proper-greedy-avoid").to_string() == "proper-greedy-avoid:bound=6");
  CHECK(ColorerSpec::parse("from-file:/tmp/x.json").path == "/tmp/x.json");
  CHECK_THROWS_AS(ColorerSpec::parse("rainbow"), Error);
  CHECK_THROWS_AS(ColorerSpec::parse("from-file"), Error);
  CHECK_THROWS_AS(ColorerSpec::parse("proper-greedy-avoid:bound=2"), Error);
}

TEST_CASE("one colour means colour 0 everywhere") {
  auto g = complete_gadget(2).graph;
  for (auto d : {"uniform-random", "proper-greedy-avoid", "bipartition-stripe"}) {
    auto c = run_colorer(d, g, 1, 5);
    CHECK(c.complete());
    CHECK(c.class_sizes() == std::vector<std::size_t>{10});
  }
}

TEST_CASE("colorers are reproducible and total") {
  auto g = incidence_gadget(2).graph;
  for (auto d : {"uniform-random", "proper-greedy-avoid", "bipartition-stripe"}) {
    auto a = run_colorer(d, g, 3, 11);
    auto b = run_colorer(d, g, 3, 11);
    CHECK(a.complete());
    CHECK(a.to_json() == b.to_json());
  }
}

TEST_CASE("bipartition stripe leaves a bipartite cross class") {
  auto g = complete_gadget(3).graph;  // K9
  auto c = bipartition_stripe_coloring(g, 2, 3);
  CHECK(c.complete());
  // colour 1 holds exactly the cross edges of a two-class split, so it is bipartite
  auto cls = c.color_class(1);
  CHECK(is_bipartite(cls));
}

TEST_CASE("greedy avoid beats the finders on small gadgets") {
  auto tri = complete_gadget(1);
  auto c = greedy_avoid_coloring(tri.graph, 2, 1, 3);
  CHECK(find_mono_odd_cycle(tri, c) == std::nullopt);
  auto c5 = trianglefree_gadget("c5", 0);
  auto d = greedy_avoid_coloring(c5.graph, 2, 1, 5);
  CHECK(find_mono_c5(c5, d) == std::nullopt);
  // K5 cannot be covered by two bipartite graphs, so some class keeps an odd cycle
  auto k5 = complete_gadget(2);
  auto e = greedy_avoid_coloring(k5.graph, 2, 4, 5);
  CHECK(find_mono_odd_cycle(k5, e).has_value());
}

TEST_CASE("file colouring must be total") {
  auto g = trianglefree_gadget("c5", 0).graph;
  auto c = uniform_random_coloring(g, 2, 3);
  auto j = c.to_json();
  CHECK(load_coloring(g, j).to_json() == j);
  const std::string path = "colorer_test_tmp.json";
  std::ofstream(path) << j.dump();
  CHECK(run_colorer("from-file:" + path, g, 2, 0).to_json() == j);
  CHECK_THROWS_AS(run_colorer("from-file:" + path, g, 3, 0), Error);
  j["edges"].erase(j["edges"].begin());
  try {
    load_coloring(g, j);
    FAIL("missing edge accepted");
  } catch (const Error& err) {
    CHECK(err.details().contains("edge"));
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(run_colorer("from-file:/nonexistent/x.json", g, 2, 0), Error);
}
