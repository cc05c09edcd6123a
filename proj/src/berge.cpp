#include "sizeramsey/berge.hpp"

#include <algorithm>
#include <deque>

namespace sizeramsey {

BergeSearch::BergeSearch(const Hypergraph& h)
    : h_(&h),
      dist_(h.vertex_count() + h.edge_count(), -1),
      label_(h.vertex_count() + h.edge_count(), 0),
      parent_(h.vertex_count() + h.edge_count(), 0) {}

std::optional<BergeCycle> BergeSearch::through(HyperedgeId b, std::size_t max_len,
                                               std::span<const std::uint8_t> allowed, HyperedgeId below) {
  if (max_len < 2) return std::nullopt;
  const auto nv = static_cast<std::uint32_t>(h_->vertex_count());
  auto usable = [&](HyperedgeId e) {
    return e != b && e < below && (allowed.empty() || allowed[e] != 0);
  };
  for (auto t : touched_) dist_[t] = -1;
  touched_.clear();

  std::deque<std::uint32_t> queue;
  for (Vertex x : h_->edge(b)) {
    dist_[x] = 0;
    label_[x] = x;
    parent_[x] = x;
    touched_.push_back(x);
    queue.push_back(x);
  }
  const std::int32_t depth_limit = static_cast<std::int32_t>(max_len) - 1;
  std::int32_t best = 2 * depth_limit + 1;  // incidence length must stay <= 2 * depth_limit
  std::uint32_t best_u = 0, best_w = 0;
  bool found = false;

  auto relax = [&](std::uint32_t u, std::uint32_t w) {
    if (dist_[w] < 0) {
      dist_[w] = dist_[u] + 1;
      label_[w] = label_[u];
      parent_[w] = u;
      touched_.push_back(w);
      if (dist_[w] < depth_limit) queue.push_back(w);
    } else if (label_[w] != label_[u]) {
      const std::int32_t len = dist_[u] + dist_[w] + 1;
      if (len < best) {
        best = len;
        best_u = u;
        best_w = w;
        found = true;
      }
    }
  };

  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    if (2 * dist_[u] + 1 >= best) break;
    if (u < nv) {
      for (HyperedgeId e : h_->incident(u)) {
        if (usable(e)) relax(u, nv + e);
      }
    } else {
      for (Vertex y : h_->edge(u - nv)) {
        if (y != parent_[u]) relax(u, y);
      }
    }
  }
  if (!found) return std::nullopt;

  auto chain = [&](std::uint32_t node) {
    std::vector<std::uint32_t> out{node};
    while (dist_[node] > 0) {
      node = parent_[node];
      out.push_back(node);
    }
    std::reverse(out.begin(), out.end());
    return out;
  };
  std::vector<std::uint32_t> walk = chain(best_u);
  std::vector<std::uint32_t> tail = chain(best_w);
  walk.insert(walk.end(), tail.rbegin(), tail.rend());

  BergeCycle c;
  for (std::uint32_t node : walk) {
    if (node < nv) c.vertices.push_back(node);
    else c.edges.push_back(node - nv);
  }
  c.edges.push_back(b);
  return c;
}

}  // namespace sizeramsey
