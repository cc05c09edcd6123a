#include "sizeramsey/coloring.hpp"

#include <algorithm>

#include "sizeramsey/error.hpp"

namespace sizeramsey {

EdgeColoring::EdgeColoring(const Graph& g, std::size_t k) : g_(&g), k_(k), slots_(g.slot_count(), kNoColor) {
  if (k == 0 || k > kMaxColors) throw Error(ErrorKind::InvalidArgument, "colour count out of range", {{"k", k}});
}

Color EdgeColoring::color(Vertex u, Vertex v) const {
  auto s = g_->slot(u, v);
  if (!s) throw Error(ErrorKind::InvalidArgument, "not an edge", {{"edge", {u, v}}});
  return slots_[*s];
}

void EdgeColoring::set(Vertex u, Vertex v, Color c) {
  if (c >= k_) throw Error(ErrorKind::InvalidArgument, "colour out of range", {{"color", c}, {"k", k_}});
  auto a = g_->slot(u, v);
  if (!a) throw Error(ErrorKind::InvalidArgument, "not an edge", {{"edge", {u, v}}});
  slots_[*a] = c;
  slots_[*g_->slot(v, u)] = c;
}

bool EdgeColoring::complete() const noexcept {
  return std::all_of(slots_.begin(), slots_.end(), [&](Color c) { return c < k_; });
}

std::vector<std::size_t> EdgeColoring::class_sizes() const {
  std::vector<std::size_t> out(k_, 0);
  for (Color c : slots_) {
    if (c < k_) ++out[c];
  }
  for (auto& x : out) x /= 2;
  return out;
}

Graph EdgeColoring::color_class(Color c) const {
  std::vector<VertexPair> e;
  for (Vertex u = 0; u < g_->id_bound(); ++u) {
    const std::size_t base = g_->slot_begin(u);
    auto nb = g_->neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (u < nb[i] && slots_[base + i] == c) e.emplace_back(u, nb[i]);
    }
  }
  if (g_->vertex_count() == g_->id_bound()) return Graph::from_edges(g_->id_bound(), e);
  auto present = g_->vertices();
  return Graph::from_edges(g_->id_bound(), e, present);
}

nlohmann::json EdgeColoring::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g_->edges()) edges.push_back({u, v, color(u, v)});
  return {{"k", k_}, {"edges", std::move(edges)}};
}

EdgeColoring EdgeColoring::from_json(const Graph& g, const nlohmann::json& j) {
  EdgeColoring c(g, j.at("k").get<std::size_t>());
  for (const auto& e : j.at("edges")) c.set(e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), e.at(2).get<Color>());
  return c;
}

}  // namespace sizeramsey
