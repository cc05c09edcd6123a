#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sizeramsey/graph.hpp"
#include "sizeramsey/hostbuild.hpp"

namespace sizeramsey {

/// Incremental goodness of a path in G under push/pop at one end.
///
/// Tracks, per host vertex, how many path hyperedges contain it and, per
/// hyperedge, how many vertices of the union it contains. The path is good
/// iff no vertex is shared beyond the joints of consecutive hyperedges and
/// no outside hyperedge meets the union twice.
class PathChecker {
 public:
  PathChecker(const AuxGraph& aux, const Hypergraph& h);

  /// Starts a new path at v. The checker must be empty.
  void start(Vertex v);
  /// Extends the path at its end by the aux edge (end, u).
  void push(Vertex u);
  /// Removes the last vertex (or the start vertex if it is alone).
  void pop();
  void clear();

  bool good() const noexcept { return violations_ == 0 && outside_over_ == 0; }
  const Path& path() const noexcept { return path_; }
  const std::vector<HyperedgeId>& hyperedges() const noexcept { return hyper_; }
  bool contains(Vertex v) const;

  /// For a bad path whose prefix without the last vertex was good: the least
  /// outside hyperedge meeting the union twice, and the earliest path edge
  /// index (into hyperedges()) it meets besides the last one.
  struct Ruin {
    HyperedgeId witness = kNoHyperedge;
    std::size_t edge_index = 0;
  };
  std::optional<Ruin> last_ruin() const;

 private:
  struct Frame {
    std::vector<HyperedgeId> newly_over;
  };
  void bump_violation(Vertex x, int cnt_delta, int allowed_delta);

  const AuxGraph* aux_;
  const Hypergraph* h_;
  Path path_;
  std::vector<HyperedgeId> hyper_;
  std::vector<std::uint32_t> cnt_;
  std::vector<std::uint8_t> allowed_;
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint8_t> in_path_;
  std::vector<std::uint8_t> on_path_;
  std::vector<Frame> frames_;
  std::size_t violations_ = 0;
  std::size_t outside_over_ = 0;
};

enum class CertKind { Path, Tree, Cycle };

/// Arc of a cycle: `length` consecutive edges starting at position `start`.
struct CoverArc {
  std::size_t start = 0;
  std::size_t length = 0;
};

struct GoodCertificate {
  CertKind kind = CertKind::Path;
  std::vector<Vertex> vertices;
  std::vector<CoverArc> cover;
  bool good = false;
  nlohmann::json witness;
  nlohmann::json to_json() const;
};

/// Rooted tree in G: parent[v] for every member, kNoVertex at the root.
struct RootedTree {
  Vertex root = kNoVertex;
  std::vector<Vertex> members;
  std::vector<std::pair<Vertex, Vertex>> parent;  // (child, parent)
};

GoodCertificate is_good_path(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> p);
/// Ruining hyperedge for p + (end, u), or nothing when p + (end, u) is good.
std::optional<HyperedgeId> ruin_witness(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> p,
                                        Vertex u);
GoodCertificate is_good_tree(const AuxGraph& aux, const Hypergraph& h, const RootedTree& t);
GoodCertificate is_good_cycle(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> q,
                              std::span<const CoverArc> cover);

struct ProbeReport {
  std::size_t trials = 0;
  std::size_t checked = 0;
  std::vector<Path> bad;
  nlohmann::json to_json() const;
};

/// Random self-avoiding aux paths with at most g - 1 edges, each checked for
/// goodness. When H has Berge girth > g every such path is good.
ProbeReport short_paths_are_good_probe(const AuxGraph& aux, const Hypergraph& h, std::size_t g, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace sizeramsey
