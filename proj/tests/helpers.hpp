#pragma once

#include <memory>
#include <numeric>

#include "sizeramsey/goodness.hpp"
#include "sizeramsey/hostbuild.hpp"
#include "sizeramsey/hypergen.hpp"

namespace testing {

using namespace sizeramsey;

/// Non-induced aux graph over triples: record i joins anchors[i] inside edges[i],
/// its "cycle" being the triangle on that hyperedge.
inline AuxGraph triple_aux(std::size_t n, const Hypergraph& h, const std::vector<std::pair<HyperedgeId, VertexPair>>& anchors) {
  std::vector<AuxEdge> recs;
  std::vector<Vertex> pool;
  for (auto [hid, uv] : anchors) {
    AuxEdge r;
    r.hid = hid;
    r.color = 0;
    r.anchor_distance = 1;
    r.offset = static_cast<std::uint32_t>(pool.size());
    r.length = 3;
    pool.push_back(uv.first);
    pool.push_back(uv.second);
    for (Vertex x : h.edge(hid))
      if (x != uv.first && x != uv.second) pool.push_back(x);
    recs.push_back(r);
  }
  return AuxGraph::assemble(n, Mode::NonInduced, 3, 1, recs, pool);
}

struct RandomSetup {
  std::shared_ptr<Hypergraph> h;
  HostGraph host;
  std::unique_ptr<EdgeColoring> coloring;
  AuxGraph aux;
};

/// Random linear 3-uniform hypergraph with a K3 on every edge, coloured with one colour.
inline std::unique_ptr<RandomSetup> random_setup(std::size_t N, double C, std::size_t g, std::uint64_t seed) {
  HostParams p;
  p.N = N;
  p.C = C;
  p.s = 3;
  p.g = g;
  p.alpha = 0;
  auto out = std::make_unique<RandomSetup>();
  out->h = std::make_shared<Hypergraph>(sample_host_hypergraph(p, seed).h);
  out->host = build_host(out->h, complete_gadget(1), seed + 1);
  out->coloring = std::make_unique<EdgeColoring>(out->host.graph, 1);
  for (auto [u, v] : out->host.graph.edges()) out->coloring->set(u, v, 0);
  out->aux = build_auxiliary(out->host, *out->coloring);
  return out;
}

// ell hyperedges of size L in a ring; hyperedge i holds anchors i and i+1 at
// cycle distance d on its gadget cycle, the rest are private vertices.
struct GadgetRing {
  std::size_t n = 0;
  Hypergraph h;
  AuxGraph aux;
  Graph host;
  std::vector<VertexPair> host_edges;
};

inline GadgetRing gadget_ring(std::size_t ell, std::size_t L, std::size_t d, Mode mode, std::vector<VertexPair> extra = {}) {
  GadgetRing r;
  r.n = ell + ell * (L - 2);
  std::vector<std::vector<Vertex>> edges;
  std::vector<AuxEdge> recs;
  std::vector<Vertex> pool;
  Vertex next = static_cast<Vertex>(ell);
  for (std::size_t i = 0; i < ell; ++i) {
    const Vertex a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % ell);
    std::vector<Vertex> priv;
    for (std::size_t j = 0; j + 2 < L; ++j) priv.push_back(next++);
    std::vector<Vertex> cyc{a};
    cyc.insert(cyc.end(), priv.begin(), priv.begin() + static_cast<std::ptrdiff_t>(d - 1));
    cyc.push_back(b);
    cyc.insert(cyc.end(), priv.begin() + static_cast<std::ptrdiff_t>(d - 1), priv.end());
    AuxEdge rec;
    rec.hid = static_cast<HyperedgeId>(i);
    rec.color = 0;
    rec.anchor_distance = d;
    rec.offset = static_cast<std::uint32_t>(pool.size());
    rec.length = static_cast<std::uint32_t>(L);
    pool.insert(pool.end(), cyc.begin(), cyc.end());
    recs.push_back(rec);
    for (std::size_t j = 0; j < L; ++j) r.host_edges.push_back(std::minmax(cyc[j], cyc[(j + 1) % L]));
    std::vector<Vertex> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    edges.push_back(sorted);
  }
  r.host_edges.insert(r.host_edges.end(), extra.begin(), extra.end());
  r.h = Hypergraph(r.n, L, edges);
  r.aux = AuxGraph::assemble(r.n, mode, L, 1, recs, pool);
  r.host = Graph::from_edges(r.n, r.host_edges);
  return r;
}

inline Cycle ring_q(std::size_t ell) {
  Cycle q(ell);
  std::iota(q.begin(), q.end(), Vertex{0});
  return q;
}

}  // namespace testing
