#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sizeramsey/coloring.hpp"
#include "sizeramsey/graph.hpp"

namespace sizeramsey {

enum class Mode { EvenInduced, OddInduced, NonInduced };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

struct Gadget {
  Graph graph;
  Mode mode = Mode::NonInduced;
  std::string descriptor;
  std::size_t s() const noexcept { return graph.vertex_count(); }
};

/// Monochromatic cycle found in a gadget. The cycle is rotated so that the
/// anchor pair sits at positions 0 and `anchor_distance`.
struct GadgetCycle {
  Cycle vertices;
  Color color = kNoColor;
  std::size_t anchor_distance = 0;

  std::size_t length() const noexcept { return vertices.size(); }
  VertexPair anchor() const { return {vertices.front(), vertices[anchor_distance]}; }
  /// Anchor-to-anchor arcs along the cycle, both starting at the first anchor.
  Path short_arc() const;
  Path long_arc() const;
};

struct GadgetLimits {
  std::size_t max_vertices = 4096;
  std::uint64_t max_colorings = 1ULL << 22;
  std::size_t c5_floor = 6;  // below this |U| the C5 finder switches to exhaustive search
};

Gadget complete_gadget(std::size_t k, const GadgetLimits& limits = {});
Gadget incidence_gadget(std::size_t q, const GadgetLimits& limits = {});
/// `spec` is one of "c5", "petersen", "random,n=..,p=..".
Gadget trianglefree_gadget(std::string_view spec, std::uint64_t seed, const GadgetLimits& limits = {});

/// Parses "complete:k=2", "incidence:q=3", "trianglefree:petersen", ...
Gadget parse_gadget(std::string_view descriptor, std::uint64_t seed, const GadgetLimits& limits = {});

/// Orients `cycle` so the lexicographically least pair at cycle distance `d`
/// becomes (front, [d]).
GadgetCycle anchor_cycle(Cycle cycle, Color color, std::size_t d);

std::optional<GadgetCycle> find_mono_odd_cycle(const Gadget& g, const EdgeColoring& coloring);
std::optional<GadgetCycle> find_mono_c6(const Gadget& g, const EdgeColoring& coloring);
std::optional<GadgetCycle> find_mono_c5(const Gadget& g, const EdgeColoring& coloring,
                                        const GadgetLimits& limits = {});
/// Dispatches on the gadget mode.
std::optional<GadgetCycle> find_gadget_cycle(const Gadget& g, const EdgeColoring& coloring,
                                             const GadgetLimits& limits = {});

/// Exhaustive check that every k-colouring yields a cycle from the finder.
bool verify_gadget_ramsey(const Gadget& g, std::size_t k, const GadgetLimits& limits = {});

}  // namespace sizeramsey
