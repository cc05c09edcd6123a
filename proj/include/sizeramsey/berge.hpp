#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sizeramsey/graph.hpp"

namespace sizeramsey {

/// Reusable search for short Berge cycles through a fixed hyperedge.
///
/// Runs a multi-source BFS in the vertex/edge incidence graph, seeded at the
/// vertices of the chosen edge and labelled by seed. Two differently labelled
/// trees touching give a Berge cycle through that edge.
class BergeSearch {
 public:
  explicit BergeSearch(const Hypergraph& h);

  /// Shortest Berge cycle of length <= max_len that uses `b` and otherwise only
  /// edges e with e < below and (allowed empty or allowed[e] != 0).
  std::optional<BergeCycle> through(HyperedgeId b, std::size_t max_len, std::span<const std::uint8_t> allowed,
                                    HyperedgeId below);

 private:
  const Hypergraph* h_;
  std::vector<std::int32_t> dist_;
  std::vector<std::uint32_t> label_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace sizeramsey
