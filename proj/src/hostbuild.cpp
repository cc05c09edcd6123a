#include "sizeramsey/hostbuild.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "sizeramsey/error.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---- host graph ------------------------------------------------------------

HostGraph build_host(std::shared_ptr<const Hypergraph> h, Gadget gadget, std::uint64_t seed) {
  const std::size_t s = gadget.s();
  if (gadget.graph.id_bound() != s) throw Error(ErrorKind::InvalidArgument, "gadget ids must be dense");
  if (h->uniformity() != s) {
    throw Error(ErrorKind::InvalidArgument, "gadget size does not match uniformity",
                {{"s", s}, {"uniformity", h->uniformity()}});
  }
  Rng rng(seed);
  HostGraph out;
  out.placement.reserve(h->edge_count() * s);
  const auto gedges = gadget.graph.edges();
  std::vector<VertexPair> edges;
  edges.reserve(h->edge_count() * gedges.size());
  std::vector<Vertex> perm;
  for (std::size_t e = 0; e < h->edge_count(); ++e) {
    auto verts = h->edge(static_cast<HyperedgeId>(e));
    perm.assign(verts.begin(), verts.end());
    for (std::size_t i = s; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    out.placement.insert(out.placement.end(), perm.begin(), perm.end());
    for (auto [a, b] : gedges) edges.emplace_back(perm[a], perm[b]);
  }
  out.graph = Graph::from_edges(h->vertex_count(), edges);
  out.hyper = std::move(h);
  out.gadget = std::move(gadget);
  return out;
}

EdgeColoring HostGraph::copy_coloring(HyperedgeId h, const EdgeColoring& host_coloring) const {
  EdgeColoring c(gadget.graph, host_coloring.colors());
  auto map = copy(h);
  for (auto [a, b] : gadget.graph.edges()) c.set(a, b, host_coloring.color(map[a], map[b]));
  return c;
}

nlohmann::json HostGraph::to_json() const {
  nlohmann::json placements = nlohmann::json::array();
  for (std::size_t e = 0; e < hyper->edge_count(); ++e) {
    auto c = copy(static_cast<HyperedgeId>(e));
    placements.push_back(std::vector<Vertex>(c.begin(), c.end()));
  }
  return {{"gadget", gadget.descriptor},
          {"mode", std::string(to_string(gadget.mode))},
          {"hypergraph", sizeramsey::to_json(*hyper)},
          {"placements", std::move(placements)},
          {"vertex_count", graph.id_bound()},
          {"edge_count", graph.edge_count()}};
}

// ---- auxiliary graph -------------------------------------------------------

std::optional<std::size_t> AuxGraph::find(Vertex u, Vertex v) const {
  auto s = graph_.slot(u, v);
  if (!s) return std::nullopt;
  return slot_edge_[*s];
}

std::size_t AuxGraph::index(Vertex u, Vertex v) const {
  auto i = find(u, v);
  if (!i) throw Error(ErrorKind::InvalidArgument, "not an auxiliary edge", {{"edge", {u, v}}});
  return *i;
}

VertexPair AuxGraph::endpoints(std::size_t idx) const {
  const auto& r = edges_[idx];
  return {pool_[r.offset], pool_[r.offset + r.anchor_distance]};
}

Cycle AuxGraph::cycle(std::size_t idx) const {
  const auto& r = edges_[idx];
  return Cycle(pool_.begin() + r.offset, pool_.begin() + r.offset + r.length);
}

Path AuxGraph::short_path(std::size_t idx, Vertex from) const {
  const auto& r = edges_[idx];
  Path p(pool_.begin() + r.offset, pool_.begin() + r.offset + r.anchor_distance + 1);
  if (from == p.back()) std::reverse(p.begin(), p.end());
  else if (from != p.front()) throw Error(ErrorKind::InvalidArgument, "not an endpoint", {{"vertex", from}});
  return p;
}

Path AuxGraph::long_path(std::size_t idx, Vertex from) const {
  const auto& r = edges_[idx];
  Path p{pool_[r.offset]};
  for (std::size_t i = r.length - 1; i >= r.anchor_distance; --i) p.push_back(pool_[r.offset + i]);
  if (from == p.back()) std::reverse(p.begin(), p.end());
  else if (from != p.front()) throw Error(ErrorKind::InvalidArgument, "not an endpoint", {{"vertex", from}});
  return p;
}

std::size_t AuxGraph::short_length() const {
  switch (mode_) {
    case Mode::EvenInduced:
    case Mode::OddInduced: return 2;
    case Mode::NonInduced: return (L_ - 1) / 2;
  }
  return 0;
}

std::size_t AuxGraph::long_length() const { return L_ - short_length(); }

std::optional<std::size_t> AuxGraph::by_hyperedge(HyperedgeId h) const {
  if (h >= by_hid_.size() || by_hid_[h] == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  return by_hid_[h];
}

nlohmann::json AuxGraph::to_json() const {
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = endpoints(i);
    records.push_back({{"h", edges_[i].hid},
                       {"edge", {u, v}},
                       {"color", edges_[i].color},
                       {"cycle", cycle(i)},
                       {"anchor_distance", edges_[i].anchor_distance}});
  }
  return {{"mode", std::string(to_string(mode_))}, {"L", L_}, {"k", k_}, {"stats", stats_}, {"edges", records}};
}

AuxGraph build_auxiliary(const HostGraph& host, const EdgeColoring& coloring, std::size_t jobs,
                         const GadgetLimits& limits) {
  if (&coloring.graph() != &host.graph && !(coloring.graph() == host.graph)) {
    throw Error(ErrorKind::InvalidArgument, "colouring is not over the host graph");
  }
  if (!coloring.complete()) throw Error(ErrorKind::InvalidArgument, "colouring leaves host edges uncoloured");
  const std::size_t m = host.hyper->edge_count();
  std::vector<std::optional<GadgetCycle>> found(m);
  parallel_for(m, jobs, [&](std::size_t e) {
    auto local = host.copy_coloring(static_cast<HyperedgeId>(e), coloring);
    found[e] = find_gadget_cycle(host.gadget, local, limits);
  });

  std::size_t L = 0;
  std::map<std::size_t, std::size_t> lengths;
  std::size_t missing = 0;
  for (const auto& f : found) {
    if (f) ++lengths[f->length()];
    else ++missing;
  }
  switch (host.gadget.mode) {
    case Mode::EvenInduced: L = 6; break;
    case Mode::OddInduced: L = 5; break;
    case Mode::NonInduced: {
      std::size_t best = 0;
      for (auto [len, cnt] : lengths) {
        if (cnt > best) {
          best = cnt;
          L = len;
        }
      }
      break;
    }
  }
  std::vector<AuxEdge> records;
  std::vector<Vertex> pool;
  std::vector<std::size_t> per_color(coloring.colors(), 0);
  std::size_t dropped = 0;
  for (std::size_t e = 0; e < m; ++e) {
    const auto& f = found[e];
    if (!f) continue;
    if (f->length() != L) {
      ++dropped;
      continue;
    }
    auto map = host.copy(static_cast<HyperedgeId>(e));
    AuxEdge r;
    r.hid = static_cast<HyperedgeId>(e);
    r.color = f->color;
    r.anchor_distance = f->anchor_distance;
    r.offset = static_cast<std::uint32_t>(pool.size());
    r.length = static_cast<std::uint32_t>(f->length());
    for (Vertex x : f->vertices) pool.push_back(map[x]);
    records.push_back(r);
    ++per_color[r.color];
  }
  if (records.empty()) {
    throw Error(ErrorKind::StageFailure, "no gadget copy produced a monochromatic cycle",
                {{"hyperedges", m}, {"missing", missing}});
  }
  nlohmann::json hist = nlohmann::json::object();
  for (auto [len, cnt] : lengths) hist[std::to_string(len)] = cnt;
  nlohmann::json stats{{"copies", m},
                       {"without_cycle", missing},
                       {"dropped_other_length", dropped},
                       {"aux_edges", records.size()},
                       {"length_histogram", hist},
                       {"per_color", per_color}};
  return AuxGraph::assemble(host.graph.id_bound(), host.gadget.mode, L, coloring.colors(), std::move(records),
                            std::move(pool), std::move(stats));
}

AuxGraph AuxGraph::assemble(std::size_t id_bound, Mode mode, std::size_t L, std::size_t k, std::vector<AuxEdge> records,
                            std::vector<Vertex> pool, nlohmann::json stats) {
  AuxGraph aux;
  aux.mode_ = mode;
  aux.L_ = L;
  aux.k_ = k;
  aux.pool_ = std::move(pool);
  aux.stats_ = std::move(stats);
  std::sort(records.begin(), records.end(), [](const AuxEdge& a, const AuxEdge& b) { return a.hid < b.hid; });
  std::vector<VertexPair> gedges;
  HyperedgeId max_hid = 0;
  for (const auto& r : records) {
    if (r.offset + r.length > aux.pool_.size() || r.anchor_distance == 0 || r.anchor_distance >= r.length) {
      throw Error(ErrorKind::InvalidArgument, "malformed auxiliary record", {{"h", r.hid}});
    }
    if (r.color >= k) throw Error(ErrorKind::InvalidArgument, "record colour out of range", {{"h", r.hid}});
    gedges.emplace_back(aux.pool_[r.offset], aux.pool_[r.offset + r.anchor_distance]);
    max_hid = std::max(max_hid, r.hid);
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].hid == records[i - 1].hid) {
      throw Error(ErrorKind::InvalidArgument, "two auxiliary edges share a hyperedge", {{"h", records[i].hid}});
    }
  }
  aux.edges_ = std::move(records);
  aux.graph_ = Graph::from_edges(id_bound, gedges);
  if (aux.graph_.edge_count() != aux.edges_.size()) {
    throw Error(ErrorKind::StageFailure, "two auxiliary records share an anchor pair");
  }
  aux.slot_edge_.assign(aux.graph_.slot_count(), 0);
  for (std::size_t i = 0; i < aux.edges_.size(); ++i) {
    auto [u, v] = gedges[i];
    aux.slot_edge_[*aux.graph_.slot(u, v)] = static_cast<std::uint32_t>(i);
    aux.slot_edge_[*aux.graph_.slot(v, u)] = static_cast<std::uint32_t>(i);
  }
  aux.by_hid_.assign(aux.edges_.empty() ? 0 : max_hid + 1, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < aux.edges_.size(); ++i) aux.by_hid_[aux.edges_[i].hid] = static_cast<std::uint32_t>(i);
  return aux;
}

AuxGraph AuxGraph::from_json(const nlohmann::json& j, std::size_t id_bound) {
  std::vector<AuxEdge> records;
  std::vector<Vertex> pool;
  for (const auto& e : j.at("edges")) {
    AuxEdge r;
    r.hid = e.at("h").get<HyperedgeId>();
    r.color = e.at("color").get<Color>();
    r.anchor_distance = e.at("anchor_distance").get<std::size_t>();
    auto cyc = e.at("cycle").get<std::vector<Vertex>>();
    r.offset = static_cast<std::uint32_t>(pool.size());
    r.length = static_cast<std::uint32_t>(cyc.size());
    pool.insert(pool.end(), cyc.begin(), cyc.end());
    records.push_back(r);
  }
  return assemble(id_bound, mode_from_string(j.at("mode").get<std::string>()), j.at("L").get<std::size_t>(),
                  j.at("k").get<std::size_t>(), std::move(records), std::move(pool),
                  j.value("stats", nlohmann::json::object()));
}

std::optional<std::string> validate_auxiliary(const AuxGraph& aux, const HostGraph& host,
                                              const EdgeColoring& coloring) {
  std::vector<char> seen(host.hyper->edge_count(), 0);
  for (std::size_t i = 0; i < aux.edge_count(); ++i) {
    const auto& r = aux.record(i);
    const std::string tag = "aux edge " + std::to_string(i) + ": ";
    if (seen[r.hid]) return tag + "hyperedge used twice";
    seen[r.hid] = 1;
    auto [u, v] = aux.endpoints(i);
    if (!host.hyper->edge_contains(r.hid, u) || !host.hyper->edge_contains(r.hid, v)) {
      return tag + "endpoint outside its hyperedge";
    }
    Cycle c = aux.cycle(i);
    if (c.size() != aux.cycle_length()) return tag + "cycle length differs from L";
    for (Vertex x : c)
      if (!host.hyper->edge_contains(r.hid, x)) return tag + "cycle leaves its hyperedge";
    try {
      require_cycle(host.graph, c);
    } catch (const Error& e) {
      return tag + e.what();
    }
    for (std::size_t j = 0; j < c.size(); ++j)
      if (coloring.color(c[j], c[(j + 1) % c.size()]) != r.color) return tag + "cycle not monochromatic";
    if (aux.mode() != Mode::NonInduced) {
      // inside the copy, Γ restricted to h(e) is exactly the placed gadget
      auto copy = host.copy(r.hid);
      std::vector<Vertex> keep(copy.begin(), copy.end());
      if (!is_induced_cycle(host.graph.induced(keep), c)) return tag + "cycle not induced in its copy";
    }
    auto sp = aux.short_path(i, u);
    auto lp = aux.long_path(i, u);
    if (sp.size() - 1 != aux.short_length() || lp.size() - 1 != aux.long_length()) return tag + "arc lengths";
    if (sp.back() != v || lp.back() != v) return tag + "arcs do not join the anchors";
  }
  return std::nullopt;
}

ColorClass densest_color_subgraph(const AuxGraph& aux) {
  if (aux.edge_count() == 0) throw Error(ErrorKind::InvalidArgument, "auxiliary graph has no edges");
  std::vector<std::size_t> count(aux.colors(), 0);
  for (std::size_t i = 0; i < aux.edge_count(); ++i) ++count[aux.record(i).color];
  const auto c = static_cast<Color>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<VertexPair> e;
  for (std::size_t i = 0; i < aux.edge_count(); ++i)
    if (aux.record(i).color == c) e.push_back(aux.endpoints(i));
  return {c, Graph::from_edges(aux.graph().id_bound(), e)};
}

}  // namespace sizeramsey
