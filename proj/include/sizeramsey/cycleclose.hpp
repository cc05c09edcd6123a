#pragma once

#include <array>

#include "sizeramsey/coloring.hpp"
#include "sizeramsey/goodness.hpp"
#include "sizeramsey/hostbuild.hpp"
#include "sizeramsey/search.hpp"

namespace sizeramsey {

/// Vertices of all hyperedges within intersection-graph distance 2 of S.
std::vector<Vertex> n_i_of_s(const IntersectionGraph& ig, std::span<const HyperedgeId> s);

/// Hyperedges h(e) for the tree edges of T with both ends outside R1 and R2.
std::vector<HyperedgeId> spine_hyperedges(const AuxGraph& aux, const TreeState& ts, const RSets& r);

struct BallSide {
  std::unordered_map<Vertex, Vertex> parent;  // seeds map to kNoVertex
  std::vector<std::size_t> layer_sizes;
  std::size_t size() const noexcept { return parent.size(); }
  bool contains(Vertex v) const { return parent.count(v) != 0; }
};

struct CloseState {
  std::array<BallSide, 2> balls;
  Vertex meet = kNoVertex;
  std::size_t steps = 0;  // rounds; each round grows both balls by one layer
  /// Meeting vertex back to a seed of ball `side`, meeting vertex first.
  Path arm(int side) const;
  nlohmann::json to_json() const;
};

/// Grows BFS balls from R1 and R2 in gred, one whole layer per side in turn,
/// never entering `avoid`, until they meet. A ball stops growing once it
/// holds more than half of gred. Throws StageFailure after `max_steps` layers
/// per side or when both balls are stuck.
CloseState expand_balls(const Graph& gred, std::span<const Vertex> r1, std::span<const Vertex> r2,
                        std::span<const Vertex> avoid, std::size_t max_steps);

struct AssembledCycle {
  Cycle q;  // q[0] is the R1 seed of the arm, then up T1, along P, down T2, back along the arms
  std::vector<CoverArc> cover;
  std::array<CoverArc, 3> windows;  // P1, P2, P3
  bool fallback_cover = false;
  GoodCertificate certificate;
  nlohmann::json to_json() const;
};

/// Closes the cycle through the tree and the two arms and certifies it as a
/// good cycle. The three windows are tried first; if they do not certify, the
/// cover of maximal good arcs is used. Throws StageFailure if the length lies
/// outside [min_len, max_len] or the cycle is not simple.
AssembledCycle assemble_cycle(const AuxGraph& aux, const Hypergraph& h, const TreeState& ts, const RSets& r,
                              const CloseState& cs, std::size_t min_len, std::size_t max_len);

/// Cover of Q by maximal good arcs starting at every position.
std::vector<CoverArc> maximal_good_arcs(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> q);

/// Number of long arcs x with x * long + (len - x) * short = n, if one exists.
std::optional<std::size_t> lift_split(std::size_t short_len, std::size_t long_len, std::size_t len, std::size_t n);
/// Cycle-length window [lo, hi] in G for a target n in Γ.
std::pair<std::size_t, std::size_t> lift_window(std::size_t short_len, std::size_t long_len, std::size_t n);

struct LiftResult {
  Cycle cycle;                      // Q' in Γ
  std::vector<std::uint8_t> longs;  // per edge of Q: 1 if its long arc was used
  Color color = kNoColor;
  std::size_t length = 0;
  nlohmann::json to_json() const;
};

/// Replaces each edge of Q by the short or long arc of its gadget cycle so the
/// total length is n. Long arcs go to the smallest aux edge indices.
LiftResult lift_cycle(const AuxGraph& aux, std::span<const Vertex> q, std::size_t n);

struct FinalReport {
  bool is_cycle = false;
  bool exact_length = false;
  bool monochromatic = false;
  std::optional<bool> induced;  // unset in non-induced mode
  nlohmann::json witness = nlohmann::json::object();
  bool passed() const { return is_cycle && exact_length && monochromatic && induced.value_or(true); }
  nlohmann::json to_json() const;
};

/// Rechecks Q' against Γ alone: a cycle of length n in one colour, and in the
/// induced modes free of chords (every vertex pair is scanned).
FinalReport verify_final(const Graph& host, const EdgeColoring& coloring, std::span<const Vertex> q, std::size_t n,
                         Mode mode, std::size_t jobs = 1);

}  // namespace sizeramsey
