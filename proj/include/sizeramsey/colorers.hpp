#pragma once

#include <string>

#include "sizeramsey/hostbuild.hpp"

namespace sizeramsey {

/// Built-in adversaries. Descriptors:
///   uniform-random
///   proper-greedy-avoid[:bound=B]   per gadget copy, each edge takes the colour
///                                   closing the fewest monochromatic cycles of
///                                   length <= B (default 6)
///   bipartition-stripe              random vertex classes 0..k-1; an edge's
///                                   colour is its class pair's index mod k
///   from-file:PATH                  JSON as written by EdgeColoring::to_json
struct ColorerSpec {
  std::string kind;
  std::size_t bound = 6;
  std::string path;
  static ColorerSpec parse(std::string_view descriptor);
  std::string to_string() const;
};

EdgeColoring uniform_random_coloring(const Graph& g, std::size_t k, std::uint64_t seed);
/// `blocks` lists vertex sets whose induced edges are coloured together; edges
/// outside every block are coloured as one extra block.
EdgeColoring greedy_avoid_coloring(const Graph& g, std::size_t k, std::uint64_t seed, std::size_t bound,
                                   const std::vector<std::vector<Vertex>>& blocks = {});
EdgeColoring bipartition_stripe_coloring(const Graph& g, std::size_t k, std::uint64_t seed);
/// Loads a colouring and checks it is total on g.
EdgeColoring load_coloring(const Graph& g, const nlohmann::json& j);

/// Runs the adversary named by `descriptor` on g. With a host graph the greedy
/// colorer works per gadget copy.
EdgeColoring run_colorer(std::string_view descriptor, const Graph& g, std::size_t k, std::uint64_t seed,
                         const HostGraph* host = nullptr);

}  // namespace sizeramsey
