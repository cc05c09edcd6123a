#include "sizeramsey/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "sizeramsey/berge.hpp"
#include "sizeramsey/error.hpp"

namespace sizeramsey {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::NotLinear: return "not_linear";
    case ErrorKind::BudgetExceeded: return "budget_exceeded";
    case ErrorKind::NotACycle: return "not_a_cycle";
    case ErrorKind::NotAPath: return "not_a_path";
    case ErrorKind::NotATree: return "not_a_tree";
    case ErrorKind::NoSolution: return "no_solution";
    case ErrorKind::StageFailure: return "stage_failure";
    case ErrorKind::RetriesExhausted: return "retries_exhausted";
    case ErrorKind::VerificationFailed: return "verification_failed";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

// ---- Graph -----------------------------------------------------------------

Graph Graph::from_edges(std::size_t id_bound, std::span<const VertexPair> edges) {
  return from_edges(id_bound, edges, {});
}

Graph Graph::from_edges(std::size_t id_bound, std::span<const VertexPair> edges,
                        std::span<const Vertex> present) {
  Graph g;
  std::vector<std::size_t> deg(id_bound, 0);
  for (auto [u, v] : edges) {
    if (u >= id_bound || v >= id_bound) {
      throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range", {{"edge", {u, v}}});
    }
    if (u == v) throw Error(ErrorKind::InvalidArgument, "self-loop", {{"vertex", u}});
    ++deg[u];
    ++deg[v];
  }
  if (!present.empty()) {
    g.present_.assign(id_bound, 0);
    for (Vertex v : present) {
      if (v >= id_bound) throw Error(ErrorKind::InvalidArgument, "present vertex out of range", {{"vertex", v}});
      g.present_[v] = 1;
    }
    for (auto [u, v] : edges) {
      if (!g.present_[u] || !g.present_[v]) {
        throw Error(ErrorKind::InvalidArgument, "edge touches an absent vertex", {{"edge", {u, v}}});
      }
    }
  }
  std::vector<std::size_t> offsets(id_bound + 1, 0);
  for (std::size_t v = 0; v < id_bound; ++v) offsets[v + 1] = offsets[v] + deg[v];
  std::vector<Vertex> adj(offsets.back());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (auto [u, v] : edges) {
    adj[fill[u]++] = v;
    adj[fill[v]++] = u;
  }
  // sort + dedup each list, then compact
  g.offsets_.assign(id_bound + 1, 0);
  std::size_t out = 0;
  for (std::size_t v = 0; v < id_bound; ++v) {
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    auto uend = std::unique(first, last);
    g.offsets_[v] = out;
    for (auto it = first; it != uend; ++it) adj[out++] = *it;
  }
  g.offsets_[id_bound] = out;
  adj.resize(out);
  g.adjacency_ = std::move(adj);
  g.present_count_ = present.empty() ? id_bound
                                     : static_cast<std::size_t>(std::count(g.present_.begin(), g.present_.end(), 1));
  return g;
}

std::vector<Vertex> Graph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(present_count_);
  for (std::size_t v = 0; v < id_bound(); ++v) {
    if (contains(static_cast<Vertex>(v))) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < id_bound(); ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

std::optional<std::size_t> Graph::slot(Vertex u, Vertex v) const noexcept {
  if (u >= id_bound() || v >= id_bound()) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < id_bound(); ++u) {
    for (Vertex v : neighbors(static_cast<Vertex>(u))) {
      if (u < v) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<std::uint8_t> mark(id_bound(), 0);
  for (Vertex v : keep) {
    if (v >= id_bound()) throw Error(ErrorKind::InvalidArgument, "vertex out of range", {{"vertex", v}});
    mark[v] = 1;
  }
  std::vector<VertexPair> e;
  for (Vertex u : keep) {
    for (Vertex v : neighbors(u)) {
      if (u < v && mark[v]) e.emplace_back(u, v);
    }
  }
  std::vector<Vertex> present(keep.begin(), keep.end());
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  if (present.empty()) {
    // an empty vertex set still needs a non-empty marker array
    Graph g = from_edges(id_bound(), e);
    g.present_.assign(id_bound(), 0);
    g.present_count_ = 0;
    return g;
  }
  return from_edges(id_bound(), e, present);
}

// ---- Hypergraph ------------------------------------------------------------

Hypergraph::Hypergraph(std::size_t vertex_count, std::size_t uniformity, std::vector<std::vector<Vertex>> edges)
    : vertex_count_(vertex_count), uniformity_(uniformity) {
  if (uniformity == 0) throw Error(ErrorKind::InvalidArgument, "uniformity must be positive");
  flat_.reserve(edges.size() * uniformity);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& e = edges[i];
    if (e.size() != uniformity) {
      throw Error(ErrorKind::InvalidArgument, "edge has wrong size", {{"edge", i}, {"size", e.size()}});
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw Error(ErrorKind::InvalidArgument, "edge repeats a vertex", {{"edge", i}});
    }
    if (e.back() >= vertex_count) {
      throw Error(ErrorKind::InvalidArgument, "edge vertex out of range", {{"edge", i}});
    }
    flat_.insert(flat_.end(), e.begin(), e.end());
  }
  {
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (edges[order[i]] == edges[order[i - 1]]) {
        throw Error(ErrorKind::InvalidArgument, "duplicate edge",
                    {{"edges", {std::min(order[i], order[i - 1]), std::max(order[i], order[i - 1])}}});
      }
    }
  }
  inc_offsets_.assign(vertex_count + 1, 0);
  for (Vertex v : flat_) ++inc_offsets_[v + 1];
  for (std::size_t v = 0; v < vertex_count; ++v) inc_offsets_[v + 1] += inc_offsets_[v];
  incidence_.resize(flat_.size());
  std::vector<std::size_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
  const std::size_t m = edge_count();
  for (std::size_t h = 0; h < m; ++h) {
    for (Vertex v : edge(static_cast<HyperedgeId>(h))) incidence_[fill[v]++] = static_cast<HyperedgeId>(h);
  }
}

std::size_t Hypergraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

bool Hypergraph::edge_contains(HyperedgeId h, Vertex v) const noexcept {
  auto e = edge(h);
  return std::binary_search(e.begin(), e.end(), v);
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(edge_count());
  for (std::size_t h = 0; h < edge_count(); ++h) {
    auto e = edge(static_cast<HyperedgeId>(h));
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

// ---- IntersectionGraph -----------------------------------------------------

std::vector<std::pair<HyperedgeId, Vertex>> IntersectionGraph::neighbors(HyperedgeId a) const {
  std::vector<std::pair<HyperedgeId, Vertex>> out;
  for (Vertex v : h_->edge(a)) {
    for (HyperedgeId b : h_->incident(v)) {
      if (b != a) out.emplace_back(b, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Vertex> IntersectionGraph::label(HyperedgeId a, HyperedgeId b) const {
  auto ea = h_->edge(a);
  auto eb = h_->edge(b);
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i] == eb[j]) return ea[i];
    if (ea[i] < eb[j]) ++i; else ++j;
  }
  return std::nullopt;
}

std::vector<LabeledEdge> IntersectionGraph::labeled_edges() const {
  std::vector<LabeledEdge> out;
  for (std::size_t v = 0; v < h_->vertex_count(); ++v) {
    auto inc = h_->incident(static_cast<Vertex>(v));
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) out.push_back({inc[i], inc[j], static_cast<Vertex>(v)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t IntersectionGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < h_->vertex_count(); ++v) {
    const std::size_t d = h_->degree(static_cast<Vertex>(v));
    total += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return total;
}

IntersectionGraph build_intersection_graph(const Hypergraph& h) {
  const std::size_t m = h.edge_count();
  std::vector<std::uint32_t> seen(m, kNoHyperedge);
  for (std::size_t a = 0; a < m; ++a) {
    for (Vertex v : h.edge(static_cast<HyperedgeId>(a))) {
      for (HyperedgeId b : h.incident(v)) {
        if (b <= a) continue;
        if (seen[b] == a) {
          throw Error(ErrorKind::NotLinear, "hyperedges share more than one vertex",
                      {{"pair", {a, b}}});
        }
        seen[b] = static_cast<std::uint32_t>(a);
      }
    }
  }
  return IntersectionGraph(h);
}

// ---- cycles ----------------------------------------------------------------

std::optional<std::size_t> graph_girth(const Graph& g, std::size_t cap) {
  if (cap < 3) throw Error(ErrorKind::InvalidArgument, "girth cap must be at least 3");
  const std::size_t n = g.id_bound();
  std::size_t best = cap + 1;
  std::vector<std::int64_t> dist(n, -1);
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<Vertex> touched;
  std::deque<Vertex> queue;
  for (std::size_t root = 0; root < n; ++root) {
    if (g.degree(static_cast<Vertex>(root)) < 2) continue;
    for (Vertex t : touched) dist[t] = -1;
    touched.clear();
    queue.clear();
    dist[root] = 0;
    touched.push_back(static_cast<Vertex>(root));
    queue.push_back(static_cast<Vertex>(root));
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      if (2 * static_cast<std::size_t>(dist[u]) + 1 >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          touched.push_back(w);
          queue.push_back(w);
        } else if (parent[u] != w) {
          best = std::min(best, static_cast<std::size_t>(dist[u] + dist[w] + 1));
        }
      }
    }
  }
  if (best <= cap) return best;
  return std::nullopt;
}

void require_path(const Graph& g, std::span<const Vertex> p) {
  if (p.empty()) throw Error(ErrorKind::NotAPath, "empty path");
  std::vector<Vertex> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::NotAPath, "path repeats a vertex");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!g.contains(p[i])) throw Error(ErrorKind::NotAPath, "vertex not in graph", {{"vertex", p[i]}});
    if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1])) {
      throw Error(ErrorKind::NotAPath, "consecutive vertices not adjacent", {{"pair", {p[i], p[i + 1]}}});
    }
  }
}

void require_cycle(const Graph& g, std::span<const Vertex> c) {
  if (c.size() < 3) throw Error(ErrorKind::NotACycle, "a cycle needs at least 3 vertices");
  try {
    require_path(g, c);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotACycle, e.what(), e.details());
  }
  if (!g.has_edge(c.back(), c.front())) {
    throw Error(ErrorKind::NotACycle, "closing edge missing", {{"pair", {c.back(), c.front()}}});
  }
}

std::optional<VertexPair> find_chord(const Graph& g, std::span<const Vertex> c) {
  std::unordered_map<Vertex, std::size_t> pos;
  pos.reserve(c.size() * 2);
  for (std::size_t i = 0; i < c.size(); ++i) pos.emplace(c[i], i);
  const std::size_t len = c.size();
  for (std::size_t i = 0; i < len; ++i) {
    for (Vertex w : g.neighbors(c[i])) {
      auto it = pos.find(w);
      if (it == pos.end()) continue;
      const std::size_t j = it->second;
      if (j <= i) continue;
      const bool consecutive = (j == i + 1) || (i == 0 && j == len - 1);
      if (!consecutive) return VertexPair{c[i], w};
    }
  }
  return std::nullopt;
}

bool is_induced_cycle(const Graph& g, std::span<const Vertex> c) {
  require_cycle(g, c);
  return !find_chord(g, c).has_value();
}

std::optional<BergeCycle> shortest_berge_cycle(const Hypergraph& h, std::size_t cap) {
  if (cap < 2) throw Error(ErrorKind::InvalidArgument, "Berge girth cap must be at least 2");
  BergeSearch search(h);
  std::optional<BergeCycle> best;
  std::size_t limit = cap;
  for (std::size_t b = 0; b < h.edge_count(); ++b) {
    auto c = search.through(static_cast<HyperedgeId>(b), limit, {}, kNoHyperedge);
    if (c && (!best || c->length() < best->length())) {
      best = std::move(c);
      if (best->length() == 2) break;
      limit = best->length() - 1;
    }
  }
  return best;
}

std::optional<std::size_t> berge_girth(const Hypergraph& h, std::size_t cap) {
  auto c = shortest_berge_cycle(h, cap);
  if (!c) return std::nullopt;
  return c->length();
}

// ---- sunflower cycles ------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

}  // namespace

std::optional<std::vector<LabeledEdge>> find_sunflower_cycle(std::span<const LabeledEdge> edges) {
  std::vector<LabeledEdge> sorted(edges.begin(), edges.end());
  for (auto& e : sorted) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const LabeledEdge& x, const LabeledEdge& y) { return x.label < y.label; });
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].label == sorted[i].label) ++j;
    UnionFind uf;
    std::unordered_map<HyperedgeId, std::size_t> index;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> forest;  // (neighbour, edge position)
    auto idx = [&](HyperedgeId x) {
      auto [it, fresh] = index.emplace(x, 0);
      if (fresh) {
        it->second = uf.add();
        forest.emplace_back();
      }
      return it->second;
    };
    for (std::size_t k = i; k < j; ++k) {
      const auto& e = sorted[k];
      if (e.a == e.b) continue;
      std::size_t a = idx(e.a), b = idx(e.b);
      std::size_t ra = uf.find(a), rb = uf.find(b);
      if (ra != rb) {
        uf.parent[ra] = rb;
        forest[a].emplace_back(b, k);
        forest[b].emplace_back(a, k);
        continue;
      }
      // a and b already connected: recover the forest path a -> b
      std::vector<std::pair<std::size_t, std::size_t>> via(forest.size(), {SIZE_MAX, SIZE_MAX});
      std::deque<std::size_t> q{a};
      via[a] = {a, SIZE_MAX};
      while (!q.empty()) {
        std::size_t x = q.front();
        q.pop_front();
        if (x == b) break;
        for (auto [y, pos] : forest[x]) {
          if (via[y].first == SIZE_MAX) {
            via[y] = {x, pos};
            q.push_back(y);
          }
        }
      }
      std::vector<LabeledEdge> cycle{e};
      for (std::size_t x = b; x != a; x = via[x].first) cycle.push_back(sorted[via[x].second]);
      return cycle;
    }
    i = j;
  }
  return std::nullopt;
}

// ---- small predicates ------------------------------------------------------

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.id_bound(), -1);
  std::deque<Vertex> q;
  for (std::size_t r = 0; r < g.id_bound(); ++r) {
    if (side[r] >= 0 || g.degree(static_cast<Vertex>(r)) == 0) continue;
    side[r] = 0;
    q.push_back(static_cast<Vertex>(r));
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop_front();
      for (Vertex w : g.neighbors(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          q.push_back(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool has_triangle(const Graph& g) {
  for (std::size_t u = 0; u < g.id_bound(); ++u) {
    auto nu = g.neighbors(static_cast<Vertex>(u));
    for (Vertex v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      std::size_t i = 0, j = 0;
      while (i < nu.size() && j < nv.size()) {
        if (nu[i] == nv[j]) {
          if (nu[i] > v) return true;
          ++i;
          ++j;
        } else if (nu[i] < nv[j]) {
          ++i;
        } else {
          ++j;
        }
      }
    }
  }
  return false;
}

// ---- serialisation ---------------------------------------------------------

nlohmann::json to_json(const Graph& g) {
  nlohmann::json j;
  j["vertex_count"] = g.id_bound();
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (g.vertex_count() != g.id_bound()) j["vertices"] = g.vertices();
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  const auto n = j.at("vertex_count").get<std::size_t>();
  std::vector<VertexPair> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  if (j.contains("vertices")) {
    auto present = j.at("vertices").get<std::vector<Vertex>>();
    return Graph::from_edges(n, edges, present);
  }
  return Graph::from_edges(n, edges);
}

nlohmann::json to_json(const Hypergraph& h) {
  return {{"vertex_count", h.vertex_count()}, {"uniformity", h.uniformity()}, {"edges", h.edge_list()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  return Hypergraph(j.at("vertex_count").get<std::size_t>(), j.at("uniformity").get<std::size_t>(),
                    j.at("edges").get<std::vector<std::vector<Vertex>>>());
}

std::string to_dot(const Graph& g, std::span<const VertexPair> highlight) {
  std::vector<VertexPair> hl;
  for (auto [u, v] : highlight) hl.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(hl.begin(), hl.end());
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v : g.vertices()) {
    if (g.degree(v) == 0) out << "  " << v << ";\n";
  }
  for (auto e : g.edges()) {
    out << "  " << e.first << " -- " << e.second;
    if (std::binary_search(hl.begin(), hl.end(), e)) out << " [color=red, penwidth=3]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sizeramsey
