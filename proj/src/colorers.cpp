#include "sizeramsey/colorers.hpp"

#include <algorithm>
#include <fstream>

#include "sizeramsey/error.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

ColorerSpec ColorerSpec::parse(std::string_view d) {
  ColorerSpec s;
  const auto colon = d.find(':');
  s.kind = std::string(d.substr(0, colon));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : d.substr(colon + 1);
  if (s.kind == "uniform-random" || s.kind == "bipartition-stripe") {
    if (!rest.empty()) throw Error(ErrorKind::InvalidArgument, "colorer takes no options", {{"descriptor", d}});
  } else if (s.kind == "proper-greedy-avoid") {
    if (!rest.empty()) {
      if (!rest.starts_with("bound=")) throw Error(ErrorKind::InvalidArgument, "bad colorer option", {{"descriptor", d}});
      try {
        s.bound = std::stoul(std::string(rest.substr(6)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad colorer bound", {{"descriptor", d}});
      }
      if (s.bound < 3) throw Error(ErrorKind::InvalidArgument, "colorer bound must be >= 3", {{"descriptor", d}});
    }
  } else if (s.kind == "from-file") {
    if (rest.empty()) throw Error(ErrorKind::InvalidArgument, "from-file needs a path", {{"descriptor", d}});
    s.path = std::string(rest);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown colorer", {{"descriptor", d}});
  }
  return s;
}

std::string ColorerSpec::to_string() const {
  if (kind == "proper-greedy-avoid") return kind + ":bound=" + std::to_string(bound);
  if (kind == "from-file") return kind + ":" + path;
  return kind;
}

EdgeColoring uniform_random_coloring(const Graph& g, std::size_t k, std::uint64_t seed) {
  EdgeColoring c(g, k);
  Rng rng(seed);
  for (auto [u, v] : g.edges()) c.set(u, v, static_cast<Color>(uniform_below(rng, k)));
  return c;
}

namespace {

// Number of colour-c paths from u to v with 1..max_len edges, over the edges
// coloured so far (adjacency lists per colour).
std::size_t count_paths(const std::vector<std::vector<std::vector<Vertex>>>& adj, std::size_t local_u,
                        std::size_t local_v, Color c, std::size_t max_len) {
  std::size_t count = 0;
  std::vector<std::size_t> stack{local_u};
  std::vector<std::uint8_t> on(adj.size(), 0);
  on[local_u] = 1;
  auto rec = [&](auto&& self, std::size_t x) -> void {
    for (Vertex y : adj[x][c]) {
      if (y == local_v) {
        ++count;
        continue;
      }
      if (on[y] || stack.size() >= max_len) continue;
      on[y] = 1;
      stack.push_back(y);
      self(self, y);
      stack.pop_back();
      on[y] = 0;
    }
  };
  rec(rec, local_u);
  return count;
}

void color_block(const Graph& g, EdgeColoring& c, std::size_t k, Rng& rng, std::size_t bound,
                 const std::vector<VertexPair>& block_edges) {
  std::vector<Vertex> verts;
  for (auto [u, v] : block_edges) {
    verts.push_back(u);
    verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto local = [&](Vertex x) { return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), x) - verts.begin()); };
  std::vector<std::vector<std::vector<Vertex>>> adj(verts.size(), std::vector<std::vector<Vertex>>(k));
  std::vector<VertexPair> order = block_edges;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  for (auto [u, v] : order) {
    const std::size_t a = local(u), b = local(v);
    Color best = 0;
    std::pair<std::size_t, std::size_t> best_key{SIZE_MAX, SIZE_MAX};
    for (Color col = 0; col < k; ++col) {
      // a new edge closes one cycle per existing u-v path of length 2..bound-1
      const std::pair<std::size_t, std::size_t> key{count_paths(adj, a, b, col, bound - 1),
                                                    adj[a][col].size() + adj[b][col].size()};
      if (key < best_key) {
        best_key = key;
        best = col;
      }
    }
    c.set(u, v, best);
    adj[a][best].push_back(static_cast<Vertex>(b));
    adj[b][best].push_back(static_cast<Vertex>(a));
  }
  (void)g;
}

}  // namespace

EdgeColoring greedy_avoid_coloring(const Graph& g, std::size_t k, std::uint64_t seed, std::size_t bound,
                                   const std::vector<std::vector<Vertex>>& blocks) {
  EdgeColoring c(g, k);
  Rng rng(seed);
  for (const auto& block : blocks) {
    std::vector<Vertex> sorted = block;
    std::sort(sorted.begin(), sorted.end());
    std::vector<VertexPair> e;
    for (Vertex u : sorted)
      for (Vertex v : g.neighbors(u))
        if (u < v && std::binary_search(sorted.begin(), sorted.end(), v) && c.color(u, v) == kNoColor)
          e.emplace_back(u, v);
    color_block(g, c, k, rng, bound, e);
  }
  std::vector<VertexPair> rest;
  for (auto [u, v] : g.edges())
    if (c.color(u, v) == kNoColor) rest.emplace_back(u, v);
  if (!rest.empty()) color_block(g, c, k, rng, bound, rest);
  return c;
}

EdgeColoring bipartition_stripe_coloring(const Graph& g, std::size_t k, std::uint64_t seed) {
  EdgeColoring c(g, k);
  Rng rng(seed);
  std::vector<std::size_t> cls(g.id_bound());
  for (auto& x : cls) x = uniform_below(rng, k);
  for (auto [u, v] : g.edges()) {
    const std::size_t a = std::min(cls[u], cls[v]), b = std::max(cls[u], cls[v]);
    const std::size_t pair_index = a * k - a * (a - 1) / 2 + (b - a);  // pairs (a, b) with a <= b in order
    c.set(u, v, static_cast<Color>(pair_index % k));
  }
  return c;
}

EdgeColoring load_coloring(const Graph& g, const nlohmann::json& j) {
  EdgeColoring c;
  try {
    c = EdgeColoring::from_json(g, j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "malformed colouring", {{"reason", e.what()}});
  }
  for (auto [u, v] : g.edges())
    if (c.color(u, v) == kNoColor) {
      throw Error(ErrorKind::InvalidArgument, "colouring misses an edge", {{"edge", {u, v}}});
    }
  return c;
}

EdgeColoring run_colorer(std::string_view descriptor, const Graph& g, std::size_t k, std::uint64_t seed,
                         const HostGraph* host) {
  const auto spec = ColorerSpec::parse(descriptor);
  if (spec.kind == "from-file") {
    std::ifstream in(spec.path);
    if (!in) throw Error(ErrorKind::Io, "cannot open colouring file", {{"path", spec.path}});
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::InvalidArgument, "malformed colouring", {{"path", spec.path}, {"reason", e.what()}});
    }
    auto c = load_coloring(g, j);
    if (c.colors() != k) throw Error(ErrorKind::InvalidArgument, "colouring has the wrong k", {{"k", c.colors()}});
    return c;
  }
  if (spec.kind == "uniform-random") return uniform_random_coloring(g, k, seed);
  if (spec.kind == "bipartition-stripe") return bipartition_stripe_coloring(g, k, seed);
  std::vector<std::vector<Vertex>> blocks;
  if (host) {
    for (std::size_t e = 0; e < host->hyper->edge_count(); ++e) {
      auto cp = host->copy(static_cast<HyperedgeId>(e));
      blocks.emplace_back(cp.begin(), cp.end());
    }
  }
  return greedy_avoid_coloring(g, k, seed, spec.bound, blocks);
}

}  // namespace sizeramsey
