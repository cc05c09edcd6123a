#pragma once

#include <array>
#include <string_view>
#include <unordered_map>

#include "sizeramsey/goodness.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/hostbuild.hpp"

namespace sizeramsey {

/// Thresholds of the two search stages. The asymptotic constants (growth 10^4,
/// caps proportional to alpha N) are replaced by these desk-sized values.
struct SearchProfile {
  std::size_t path_target = 8;  // DFS stops once |P| reaches this many vertices
  std::size_t dfs_s1_cap = 0;   // 0 means no cap
  std::size_t dfs_s2_cap = 0;
  std::size_t growth = 2;       // leaf-set factor f
  double expansion = 5.0;       // step-1 threshold is expansion * f * |X_b|
  std::size_t tree_target = 64;  // stop when |T| reaches this
  std::size_t tree_s1_cap = 0;
  std::size_t tree_s2_cap = 0;
  std::size_t path_floor = 3;   // |P| may not drop below this
  std::size_t max_rounds = 1'000'000;
  bool debug_invariants = false;

  nlohmann::json to_json() const;
  static SearchProfile from_json(const nlohmann::json& j);
};

/// Records claim checks made at round boundaries when instrumentation is on.
struct InvariantReport {
  bool enabled = false;
  std::size_t checks = 0;
  nlohmann::json violations = nlohmann::json::array();

  void expect(bool ok, std::string_view claim, nlohmann::json details = {});
  bool clean() const noexcept { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Subgraph F of the intersection graph, with incremental sunflower-cycle
/// detection through one union-find per label.
class AuxForest {
 public:
  explicit AuxForest(const Hypergraph& h);

  bool contains(HyperedgeId a) const { return a < member_.size() && member_[a]; }
  /// Returns false if `a` was already present.
  bool add_vertex(HyperedgeId a);
  /// Adds the labelled edge {a, b}; returns true if it closes a sunflower cycle.
  bool add_edge(HyperedgeId a, HyperedgeId b);

  std::size_t vertex_count() const noexcept { return vertices_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<LabeledEdge>& edges() const noexcept { return edges_; }
  std::vector<HyperedgeId> vertices() const;
  std::size_t sunflower_events() const noexcept { return sunflower_events_; }
  std::size_t unlabeled_events() const noexcept { return unlabeled_events_; }

 private:
  HyperedgeId find(Vertex label, HyperedgeId a);

  IntersectionGraph ig_;
  std::vector<std::uint8_t> member_;
  std::size_t vertices_ = 0;
  std::vector<LabeledEdge> edges_;
  std::unordered_map<Vertex, std::unordered_map<HyperedgeId, HyperedgeId>> dsu_;
  std::size_t sunflower_events_ = 0;
  std::size_t unlabeled_events_ = 0;
};

struct DfsResult {
  Path path;
  std::size_t rounds = 0;
  nlohmann::json stats;
  InvariantReport invariants;
};

/// Modified DFS on gprime for a good path of profile.path_target vertices.
/// Throws StageFailure (with the final state) when U empties or a cap trips.
DfsResult find_good_path(const Graph& gprime, const AuxGraph& aux, const Hypergraph& h, const SearchProfile& p);

struct TreeLayer {
  int side = 0;
  std::vector<Vertex> vertices;
};

/// T = T1 + P + T2 rooted at a middle vertex of P.
struct TreeState {
  Path spine;  // P; spine.front() carries T1, spine.back() carries T2
  Vertex root = kNoVertex;
  std::array<std::vector<std::pair<Vertex, Vertex>>, 2> tree_edges;  // (child, parent) in T1, T2
  std::array<std::vector<Vertex>, 2> leaves;
  std::vector<TreeLayer> layers;  // growth rounds of the final build, oldest first
  std::size_t rounds = 0;
  nlohmann::json stats;
  nlohmann::json series = nlohmann::json::array();
  InvariantReport invariants;

  std::size_t size() const;
  /// Vertices of T_side including its spine endpoint.
  std::vector<Vertex> tree_vertices(int side) const;
  RootedTree as_rooted_tree() const;
  /// Vertices from v up to the root, v first.
  Path path_to_root(Vertex v) const;
  nlohmann::json to_json() const;
};

/// Alternating tree growth from the ends of a good path. Throws StageFailure
/// with the final state when a cap or the path floor trips.
TreeState grow_trees(const Graph& gprime, const AuxGraph& aux, const Hypergraph& h, Path path,
                     const SearchProfile& p);

struct RSets {
  std::array<std::vector<Vertex>, 2> r;
  std::size_t rounds_back = 0;
  bool widened = false;
  nlohmann::json to_json() const;
};

/// Vertices added to each tree in its own last `rounds_back` growth rounds. If a
/// tree keeps more than `budget` vertices outside its R set, the window widens.
RSets compute_r_sets(const TreeState& ts, std::size_t rounds_back, std::size_t budget = SIZE_MAX);

}  // namespace sizeramsey
