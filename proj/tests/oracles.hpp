#pragma once

// Brute-force reference implementations, used only by tests on small inputs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include <limits>

#include "sizeramsey/coloring.hpp"
#include "sizeramsey/gadgets.hpp"
#include "sizeramsey/graph.hpp"

namespace oracle {

using sizeramsey::BergeCycle;
using sizeramsey::Graph;
using sizeramsey::Hypergraph;
using sizeramsey::HyperedgeId;
using sizeramsey::Vertex;

/// Shortest cycle via DFS over all simple paths starting at their minimum vertex.
inline std::optional<std::size_t> girth(const Graph& g) {
  std::optional<std::size_t> best;
  const std::size_t n = g.id_bound();
  std::vector<char> used(n, 0);
  std::function<void(Vertex, Vertex, std::size_t)> dfs = [&](Vertex start, Vertex cur, std::size_t len) {
    for (Vertex w : g.neighbors(cur)) {
      if (w == start && len >= 3) {
        if (!best || len < *best) best = len;
      }
      if (w <= start || used[w]) continue;
      used[w] = 1;
      dfs(start, w, len + 1);
      used[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    used[s] = 1;
    dfs(s, s, 1);
    used[s] = 0;
  }
  return best;
}

inline bool is_berge_cycle(const Hypergraph& h, const BergeCycle& c) {
  const std::size_t t = c.edges.size();
  if (t < 2 || c.vertices.size() != t) return false;
  std::set<Vertex> vs(c.vertices.begin(), c.vertices.end());
  std::set<HyperedgeId> es(c.edges.begin(), c.edges.end());
  if (vs.size() != t || es.size() != t) return false;
  for (std::size_t i = 0; i < t; ++i) {
    // vertex i lies in edge i-1 (cyclically) and edge i
    const HyperedgeId prev = c.edges[(i + t - 1) % t];
    if (!h.edge_contains(prev, c.vertices[i]) || !h.edge_contains(c.edges[i], c.vertices[i])) return false;
  }
  return true;
}

/// Shortest Berge cycle length by exhaustive search over alternating sequences.
inline std::optional<std::size_t> berge_girth(const Hypergraph& h, std::size_t max_len = SIZE_MAX) {
  std::optional<std::size_t> best;
  const std::size_t m = h.edge_count();
  std::vector<char> edge_used(m, 0);
  std::vector<char> vert_used(h.vertex_count(), 0);
  // start at edge e0 (minimum in the cycle) entering through vertex v0
  std::function<void(HyperedgeId, Vertex, HyperedgeId, std::size_t)> dfs =
      [&](HyperedgeId first, Vertex v0, HyperedgeId cur, std::size_t len) {
        if (h.edge_contains(cur, v0)) {
          if (!best || len < *best) best = len;
          return;
        }
        if (len >= max_len || (best && len + 1 >= *best)) return;
        for (Vertex x : h.edge(cur)) {
          if (vert_used[x]) continue;
          for (HyperedgeId f = first + 1; f < m; ++f) {
            if (edge_used[f] || !h.edge_contains(f, x)) continue;
            edge_used[f] = 1;
            vert_used[x] = 1;
            dfs(first, v0, f, len + 1);
            vert_used[x] = 0;
            edge_used[f] = 0;
          }
        }
      };
  for (HyperedgeId e0 = 0; e0 < m; ++e0) {
    edge_used[e0] = 1;
    for (Vertex v0 : h.edge(e0)) {
      // v0 is the vertex shared by the closing edge and e0; walk out of e0 via another vertex
      vert_used[v0] = 1;
      for (Vertex x : h.edge(e0)) {
        if (x == v0) continue;
        for (HyperedgeId f = e0 + 1; f < m; ++f) {
          if (!h.edge_contains(f, x)) continue;
          edge_used[f] = 1;
          vert_used[x] = 1;
          dfs(e0, v0, f, 2);
          vert_used[x] = 0;
          edge_used[f] = 0;
        }
      }
      vert_used[v0] = 0;
    }
    edge_used[e0] = 0;
  }
  return best;
}

}  // namespace oracle

namespace oracle {

/// Every simple cycle as a vertex list (each cycle once, starting at its minimum).
inline std::vector<std::vector<Vertex>> all_cycles(const Graph& g, std::size_t max_len) {
  std::vector<std::vector<Vertex>> out;
  const std::size_t n = g.id_bound();
  std::vector<char> used(n, 0);
  std::vector<Vertex> path;
  std::function<void(Vertex)> dfs = [&](Vertex cur) {
    for (Vertex w : g.neighbors(cur)) {
      if (w == path.front() && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (w <= path.front() || used[w] || path.size() >= max_len) continue;
      used[w] = 1;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    used[s] = 1;
    dfs(s);
    used[s] = 0;
  }
  return out;
}

inline bool has_chord(const Graph& g, const std::vector<Vertex>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 2; j < c.size(); ++j) {
      if (i == 0 && j + 1 == c.size()) continue;
      if (g.has_edge(c[i], c[j])) return true;
    }
  return false;
}

}  // namespace oracle

namespace oracle {

/// Max edges of a subgraph of I[W] without a sunflower cycle: a spanning
/// forest of each label class, computed by union-find over labelled edges.
inline std::size_t max_sunflower_free(const Hypergraph& h, const std::vector<HyperedgeId>& w) {
  std::size_t total = 0;
  for (Vertex x = 0; x < h.vertex_count(); ++x) {
    std::vector<std::size_t> parent(w.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (!h.edge_contains(w[i], x) || !h.edge_contains(w[j], x)) continue;
        auto a = find(i), b = find(j);
        if (a != b) {
          parent[a] = b;
          ++total;
        }
      }
  }
  return total;
}

/// P4 over every subset of hyperedges with fewer than `limit` members.
inline bool p4_holds(const Hypergraph& h, std::size_t limit) {
  const std::size_t m = h.edge_count();
  for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
    std::vector<HyperedgeId> w;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) w.push_back(static_cast<HyperedgeId>(i));
    if (w.size() >= limit) continue;
    if (3 * max_sunflower_free(h, w) > 4 * w.size()) return false;
  }
  return true;
}

/// P5 over every vertex set of size <= limit.
inline bool p5_holds(const Hypergraph& h, std::size_t limit) {
  const std::size_t n = h.vertex_count();
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > limit) continue;
    std::size_t count = 0;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      std::size_t in = 0;
      for (Vertex x : h.edge(static_cast<HyperedgeId>(e))) in += mask >> x & 1;
      count += in >= 2;
    }
    if (count > 2 * static_cast<std::size_t>(__builtin_popcountll(mask))) return false;
  }
  return true;
}

/// min over nonempty U with |U| <= v/2 of |N(U)| / |U|, over all vertex sets.
inline double min_expansion(const Graph& g) {
  auto verts = g.vertices();
  const std::size_t n = verts.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<char> in(g.id_bound(), 0), out(g.id_bound(), 0);
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) {
        in[verts[i]] = 1;
        ++size;
      }
    if (size > n / 2) continue;
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (in[verts[i]])
        for (Vertex w : g.neighbors(verts[i]))
          if (!in[w] && !out[w]) {
            out[w] = 1;
            ++b;
          }
    best = std::min(best, static_cast<double>(b) / static_cast<double>(size));
  }
  return best;
}

/// Presence of a monochromatic cycle of the gadget's target kind, by enumeration.
inline bool has_target_cycle(const sizeramsey::Gadget& g, const sizeramsey::EdgeColoring& col) {
  using sizeramsey::Mode;
  for (std::size_t c = 0; c < col.colors(); ++c) {
    auto cls = col.color_class(static_cast<sizeramsey::Color>(c));
    for (const auto& cyc : all_cycles(cls, cls.id_bound())) {
      switch (g.mode) {
        case Mode::NonInduced:
          if (cyc.size() % 2 == 1) return true;
          break;
        case Mode::EvenInduced:
          if (cyc.size() == 6 && !has_chord(g.graph, cyc)) return true;
          break;
        case Mode::OddInduced:
          if (cyc.size() == 5 && !has_chord(g.graph, cyc)) return true;
          break;
      }
    }
  }
  return false;
}

}  // namespace oracle
