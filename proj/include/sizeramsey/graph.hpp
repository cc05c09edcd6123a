#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sizeramsey {

using Vertex = std::uint32_t;
using HyperedgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr HyperedgeId kNoHyperedge = std::numeric_limits<HyperedgeId>::max();

using VertexPair = std::pair<Vertex, Vertex>;

/// Ordered vertex sequence. For a cycle the closing edge (back to front) is implicit.
using Path = std::vector<Vertex>;
using Cycle = std::vector<Vertex>;

/// Simple undirected graph in compressed adjacency form.
///
/// Vertex identifiers live in [0, id_bound()). A graph can be a subgraph of a
/// larger one while keeping the parent's identifiers: vertices outside the
/// subgraph are marked absent and have no neighbours.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate edges are merged; self-loops and
  /// out-of-range endpoints throw.
  static Graph from_edges(std::size_t id_bound, std::span<const VertexPair> edges);
  static Graph from_edges(std::size_t id_bound, std::span<const VertexPair> edges,
                          std::span<const Vertex> present);

  std::size_t id_bound() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Number of present vertices.
  std::size_t vertex_count() const noexcept { return present_count_; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  bool contains(Vertex v) const noexcept {
    return v < id_bound() && (present_.empty() || present_[v] != 0);
  }
  std::vector<Vertex> vertices() const;

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;

  bool has_edge(Vertex u, Vertex v) const noexcept { return slot(u, v).has_value(); }
  /// Position of v inside the adjacency storage of u, if uv is an edge.
  std::optional<std::size_t> slot(Vertex u, Vertex v) const noexcept;
  std::size_t slot_begin(Vertex u) const noexcept { return offsets_[u]; }
  std::size_t slot_count() const noexcept { return adjacency_.size(); }

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<VertexPair> edges() const;

  /// Subgraph induced on `keep`, same identifier space.
  Graph induced(std::span<const Vertex> keep) const;

  double density() const noexcept {
    return present_count_ == 0 ? 0.0 : static_cast<double>(edge_count()) / static_cast<double>(present_count_);
  }

  friend bool operator==(const Graph& a, const Graph& b) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<std::uint8_t> present_;  // empty means every id is present
  std::size_t present_count_ = 0;
};

/// s-uniform hypergraph; each edge is a sorted vertex array, identified by its
/// index. Keeps a vertex -> incident-edge index.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Validates uniformity, ranges and absence of duplicate edges. Each input
  /// edge is sorted on entry.
  Hypergraph(std::size_t vertex_count, std::size_t uniformity, std::vector<std::vector<Vertex>> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t uniformity() const noexcept { return uniformity_; }
  std::size_t edge_count() const noexcept { return uniformity_ == 0 ? 0 : flat_.size() / uniformity_; }

  std::span<const Vertex> edge(HyperedgeId h) const noexcept {
    return {flat_.data() + static_cast<std::size_t>(h) * uniformity_, uniformity_};
  }
  std::span<const HyperedgeId> incident(Vertex v) const noexcept {
    return {incidence_.data() + inc_offsets_[v], incidence_.data() + inc_offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return inc_offsets_[v + 1] - inc_offsets_[v]; }
  std::size_t max_degree() const noexcept;
  bool edge_contains(HyperedgeId h, Vertex v) const noexcept;

  std::vector<std::vector<Vertex>> edge_list() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.uniformity_ == b.uniformity_ && a.flat_ == b.flat_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::size_t uniformity_ = 0;
  std::vector<Vertex> flat_;
  std::vector<std::size_t> inc_offsets_{0};
  std::vector<HyperedgeId> incidence_;
};

/// Edge of the intersection graph: hyperedges a < b sharing host vertex `label`.
struct LabeledEdge {
  HyperedgeId a = 0;
  HyperedgeId b = 0;
  Vertex label = 0;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Intersection graph of a linear hypergraph. Adjacency is answered from the
/// hypergraph's incidence index, so nothing quadratic is materialised unless
/// `labeled_edges()` is called.
class IntersectionGraph {
 public:
  explicit IntersectionGraph(const Hypergraph& h) : h_(&h) {}

  const Hypergraph& hypergraph() const noexcept { return *h_; }
  std::size_t vertex_count() const noexcept { return h_->edge_count(); }

  /// (neighbour, label) pairs in ascending neighbour order.
  std::vector<std::pair<HyperedgeId, Vertex>> neighbors(HyperedgeId a) const;
  /// Shared vertex of a and b, if they intersect.
  std::optional<Vertex> label(HyperedgeId a, HyperedgeId b) const;
  std::vector<LabeledEdge> labeled_edges() const;
  std::size_t edge_count() const;

 private:
  const Hypergraph* h_;
};

/// Alternating vertex / hyperedge sequence; vertex[i] lies in edge[i-1] and edge[i].
struct BergeCycle {
  std::vector<Vertex> vertices;
  std::vector<HyperedgeId> edges;
  std::size_t length() const noexcept { return edges.size(); }
};

// ---- structural queries ----------------------------------------------------

/// Shortest cycle length if it is at most `cap`.
std::optional<std::size_t> graph_girth(const Graph& g, std::size_t cap);

/// Throws Error{NotACycle} if `c` is not a cycle of g.
void require_cycle(const Graph& g, std::span<const Vertex> c);
void require_path(const Graph& g, std::span<const Vertex> p);

/// True iff g has no chord between non-consecutive vertices of c.
bool is_induced_cycle(const Graph& g, std::span<const Vertex> c);
/// First chord (in cycle order) or nothing.
std::optional<VertexPair> find_chord(const Graph& g, std::span<const Vertex> c);

/// Shortest Berge cycle of length <= cap, with witness.
std::optional<BergeCycle> shortest_berge_cycle(const Hypergraph& h, std::size_t cap);
std::optional<std::size_t> berge_girth(const Hypergraph& h, std::size_t cap);

/// Throws Error{NotLinear} naming an offending pair.
IntersectionGraph build_intersection_graph(const Hypergraph& h);

/// A cycle whose edges all carry one label, if any.
std::optional<std::vector<LabeledEdge>> find_sunflower_cycle(std::span<const LabeledEdge> edges);
inline bool has_sunflower_cycle(std::span<const LabeledEdge> edges) {
  return find_sunflower_cycle(edges).has_value();
}

bool is_bipartite(const Graph& g);
bool has_triangle(const Graph& g);

// ---- serialisation ---------------------------------------------------------

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);
/// DOT export; `highlight` edges are drawn bold red.
std::string to_dot(const Graph& g, std::span<const VertexPair> highlight = {});

}  // namespace sizeramsey
