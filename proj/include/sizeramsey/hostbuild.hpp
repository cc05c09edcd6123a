#pragma once

#include <functional>
#include <map>
#include <memory>

#include "sizeramsey/coloring.hpp"
#include "sizeramsey/gadgets.hpp"
#include "sizeramsey/graph.hpp"

namespace sizeramsey {

/// Γ: a copy of the gadget placed on every hyperedge.
struct HostGraph {
  std::shared_ptr<const Hypergraph> hyper;
  Gadget gadget;
  Graph graph;
  std::vector<Vertex> placement;  // placement[h * s + i] = host vertex of gadget vertex i in copy h

  std::size_t s() const noexcept { return gadget.s(); }
  std::span<const Vertex> copy(HyperedgeId h) const { return {placement.data() + h * s(), s()}; }
  /// Colouring of the gadget copy on `h`, read off the host colouring.
  EdgeColoring copy_coloring(HyperedgeId h, const EdgeColoring& host_coloring) const;

  nlohmann::json to_json() const;
};

HostGraph build_host(std::shared_ptr<const Hypergraph> h, Gadget gadget, std::uint64_t seed);

struct AuxEdge {
  HyperedgeId hid = kNoHyperedge;
  Color color = kNoColor;
  std::size_t anchor_distance = 0;
  std::uint32_t offset = 0;  // cycle in host ids inside AuxGraph's pool
  std::uint32_t length = 0;
};

/// G: one edge per usable gadget copy, joining the anchor pair of its
/// monochromatic cycle.
class AuxGraph {
 public:
  AuxGraph() = default;

  const Graph& graph() const noexcept { return graph_; }
  Mode mode() const noexcept { return mode_; }
  std::size_t cycle_length() const noexcept { return L_; }
  std::size_t colors() const noexcept { return k_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const AuxEdge& record(std::size_t idx) const { return edges_[idx]; }
  /// Index of the record for edge uv; throws if uv is not an aux edge.
  std::size_t index(Vertex u, Vertex v) const;
  std::optional<std::size_t> find(Vertex u, Vertex v) const;
  HyperedgeId h(Vertex u, Vertex v) const { return edges_[index(u, v)].hid; }
  Color color(Vertex u, Vertex v) const { return edges_[index(u, v)].color; }
  VertexPair endpoints(std::size_t idx) const;

  Cycle cycle(std::size_t idx) const;
  /// Arc from `from` to the other endpoint; `from` must be an endpoint.
  Path short_path(std::size_t idx, Vertex from) const;
  Path long_path(std::size_t idx, Vertex from) const;
  std::size_t short_length() const;
  std::size_t long_length() const;

  /// Record index of each hyperedge, or npos when it produced no aux edge.
  std::optional<std::size_t> by_hyperedge(HyperedgeId h) const;

  const nlohmann::json& stats() const noexcept { return stats_; }
  nlohmann::json to_json() const;

  /// Builds from explicit records; each record's cycle lives in `pool` with
  /// the anchor pair at offsets 0 and anchor_distance. Records must have
  /// distinct hyperedge ids and distinct anchor pairs.
  static AuxGraph assemble(std::size_t id_bound, Mode mode, std::size_t L, std::size_t k, std::vector<AuxEdge> records,
                           std::vector<Vertex> pool, nlohmann::json stats = nlohmann::json::object());
  static AuxGraph from_json(const nlohmann::json& j, std::size_t id_bound);

 private:
  Graph graph_;
  Mode mode_ = Mode::EvenInduced;
  std::size_t L_ = 0;
  std::size_t k_ = 0;
  std::vector<AuxEdge> edges_;  // ascending hid
  std::vector<Vertex> pool_;
  std::vector<std::uint32_t> slot_edge_;
  std::vector<std::uint32_t> by_hid_;
  nlohmann::json stats_;
};

AuxGraph build_auxiliary(const HostGraph& host, const EdgeColoring& coloring, std::size_t jobs = 1,
                         const GadgetLimits& limits = {});

/// Checks the per-edge invariants against Γ; returns a description of the
/// first failure.
std::optional<std::string> validate_auxiliary(const AuxGraph& aux, const HostGraph& host, const EdgeColoring& coloring);

struct ColorClass {
  Color color = kNoColor;
  Graph graph;  // spanning subgraph of G on the colour's edges
};

ColorClass densest_color_subgraph(const AuxGraph& aux);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace sizeramsey
