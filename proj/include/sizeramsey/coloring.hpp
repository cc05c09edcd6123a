#pragma once

#include <cstdint>
#include <vector>

#include "sizeramsey/graph.hpp"

namespace sizeramsey {

using Color = std::uint8_t;
inline constexpr Color kNoColor = 0xff;
inline constexpr std::size_t kMaxColors = 254;

/// Colour per edge of a fixed graph, stored per adjacency slot (both
/// directions). The graph must outlive the colouring.
class EdgeColoring {
 public:
  EdgeColoring() = default;
  EdgeColoring(const Graph& g, std::size_t k);

  const Graph& graph() const noexcept { return *g_; }
  std::size_t colors() const noexcept { return k_; }

  Color color(Vertex u, Vertex v) const;
  Color at_slot(std::size_t slot) const noexcept { return slots_[slot]; }
  void set(Vertex u, Vertex v, Color c);

  /// True when every edge carries a colour in [0, k).
  bool complete() const noexcept;
  std::vector<std::size_t> class_sizes() const;
  Graph color_class(Color c) const;

  nlohmann::json to_json() const;
  static EdgeColoring from_json(const Graph& g, const nlohmann::json& j);

 private:
  const Graph* g_ = nullptr;
  std::size_t k_ = 0;
  std::vector<Color> slots_;
};

}  // namespace sizeramsey
