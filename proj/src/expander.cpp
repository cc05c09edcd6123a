#include "sizeramsey/expander.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>

#include "sizeramsey/error.hpp"
#include "sizeramsey/hostbuild.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

std::size_t ExpanderParams::rounds() const {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(std::log2(1.0 / beta) - 1e-12)));
}

void ExpanderParams::validate() const {
  if (!(c1 > c2) || !(c2 > 1.0) || !(beta > 0.0 && beta < 1.0) || !(Delta > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "expander parameters need c1 > c2 > 1, 0 < beta < 1, Delta > 0",
                to_json());
  }
}

nlohmann::json ExpanderParams::to_json() const {
  return {{"c1", c1}, {"c2", c2}, {"beta", beta}, {"Delta", Delta}, {"delta_step", delta_step()}, {"gamma", gamma()}};
}

ExpanderParams ExpanderParams::from_json(const nlohmann::json& j) {
  ExpanderParams p;
  p.c1 = j.value("c1", p.c1);
  p.c2 = j.value("c2", p.c2);
  p.beta = j.value("beta", p.beta);
  p.Delta = j.value("Delta", p.Delta);
  p.validate();
  return p;
}

nlohmann::json ExpanderResult::to_json() const {
  return {{"vertices", graph.vertex_count()}, {"edges", graph.edge_count()}, {"iterations", iterations},
          {"density", density}, {"gamma", gamma}, {"large_enough", large_enough},
          {"reached_last_round", reached_last_round}, {"trace", trace}};
}

Graph drop_isolated(const Graph& g) {
  std::vector<Vertex> keep;
  for (Vertex v : g.vertices())
    if (g.degree(v) > 0) keep.push_back(v);
  return g.induced(keep);
}

Graph min_degree_core(const Graph& g, double delta, std::uint64_t seed) {
  std::vector<Vertex> order = g.vertices();
  if (seed != 0) {
    Rng rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  }
  std::vector<std::size_t> deg(g.id_bound(), 0);
  std::vector<char> alive(g.id_bound(), 0);
  for (Vertex v : order) {
    deg[v] = g.degree(v);
    alive[v] = 1;
  }
  std::vector<Vertex> stack;
  for (Vertex v : order)
    if (static_cast<double>(deg[v]) < delta) {
      alive[v] = 0;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!alive[w]) continue;
      if (static_cast<double>(--deg[w]) < delta) {
        alive[w] = 0;
        stack.push_back(w);
      }
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v : g.vertices())
    if (alive[v]) keep.push_back(v);
  return g.induced(keep);
}

namespace {

struct DenseSet {
  std::vector<Vertex> vertices;
  double density = 0.0;
};

/// Min-degree peeling of h; among the suffixes with size in [lo, hi] and
/// density >= bar, the densest (larger on ties).
std::optional<DenseSet> dense_window(const Graph& h, double lo, double hi, double bar) {
  std::vector<std::size_t> deg(h.id_bound(), 0);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v : h.vertices()) {
    deg[v] = h.degree(v);
    queue.emplace(deg[v], v);
  }
  std::vector<char> alive(h.id_bound(), 0);
  for (Vertex v : h.vertices()) alive[v] = 1;
  std::size_t size = h.vertex_count();
  std::size_t edges = h.edge_count();
  std::vector<Vertex> removed;
  std::optional<std::size_t> best_removed;
  double best = -1.0;
  while (size > 0) {
    const double sz = static_cast<double>(size);
    if (sz >= lo && sz <= hi) {
      const double d = static_cast<double>(edges) / sz;
      if (d >= bar && d > best) {
        best = d;
        best_removed = removed.size();
      }
    }
    auto [dv, v] = *queue.begin();
    queue.erase(queue.begin());
    alive[v] = 0;
    removed.push_back(v);
    --size;
    edges -= dv;
    for (Vertex w : h.neighbors(v)) {
      if (!alive[w]) continue;
      queue.erase({deg[w], w});
      queue.emplace(--deg[w], w);
    }
  }
  if (!best_removed) return std::nullopt;
  std::vector<char> gone(h.id_bound(), 0);
  for (std::size_t i = 0; i < *best_removed; ++i) gone[removed[i]] = 1;
  DenseSet out;
  out.density = best;
  for (Vertex v : h.vertices())
    if (!gone[v]) out.vertices.push_back(v);
  return out;
}

}  // namespace

ExpanderResult extract_expander(const Graph& g, const ExpanderParams& p) {
  p.validate();
  const double n = static_cast<double>(g.vertex_count());
  if (g.vertex_count() == 0 || g.density() < p.c1) {
    throw Error(ErrorKind::InvalidArgument, "graph is sparser than c1",
                {{"density", g.density()}, {"c1", p.c1}, {"vertices", g.vertex_count()}});
  }
  if (static_cast<double>(g.max_degree()) > p.Delta) {
    throw Error(ErrorKind::InvalidArgument, "maximum degree exceeds Delta",
                {{"max_degree", g.max_degree()}, {"Delta", p.Delta}});
  }
  ExpanderResult r;
  r.gamma = p.gamma();
  Graph current = g;
  for (std::size_t i = 0;; ++i) {
    Graph core = min_degree_core(current, p.target(i));
    nlohmann::json step{{"round", i}, {"target", p.target(i)}, {"core_vertices", core.vertex_count()},
                        {"core_density", core.density()}};
    r.iterations = i;
    if (i >= p.rounds()) {
      // the halving ran out of rounds, so the input had a dense small set
      r.reached_last_round = true;
      r.trace.push_back(step);
      current = std::move(core);
      break;
    }
    auto w = dense_window(core, p.beta * n, static_cast<double>(core.vertex_count()) / 2.0, p.target(i + 1));
    if (!w) {
      r.trace.push_back(step);
      current = std::move(core);
      break;
    }
    step["dense_set"] = w->vertices.size();
    step["dense_set_density"] = w->density;
    r.trace.push_back(step);
    current = core.induced(w->vertices);
  }
  r.density = current.density();
  r.large_enough = static_cast<double>(current.vertex_count()) >= p.beta * n;
  if (r.density < (p.c1 + p.c2) / 2.0) {
    throw Error(ErrorKind::VerificationFailed, "expander density fell below (c1 + c2) / 2", r.to_json());
  }
  r.graph = std::move(current);
  return r;
}

namespace {

struct Worst {
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<Vertex> set;
  std::size_t boundary = 0;
};

std::size_t boundary_size(const Graph& g, const std::vector<Vertex>& u, std::vector<std::uint32_t>& mark,
                          std::uint32_t stamp) {
  for (Vertex v : u) mark[v] = stamp;
  std::size_t count = 0;
  for (Vertex v : u)
    for (Vertex w : g.neighbors(v))
      if (mark[w] != stamp && mark[w] != stamp + 1) {
        mark[w] = stamp + 1;
        ++count;
      }
  return count;
}

}  // namespace

PropertyCheck verify_expansion(const Graph& g, double gamma, const ExpansionBudget& budget) {
  PropertyCheck c;
  const auto verts = g.vertices();
  const std::size_t n = verts.size();
  const std::size_t half = n / 2;
  c.budget = {{"exact_cap", budget.exact_cap}, {"samples", budget.samples}, {"gamma", gamma}};
  if (half == 0) {
    c.status = Status::VerifiedExact;
    return c;
  }
  Worst worst;
  auto offer = [&](double ratio, std::vector<Vertex> set, std::size_t b) {
    if (ratio < worst.ratio || (ratio == worst.ratio && set < worst.set)) {
      worst.ratio = ratio;
      worst.set = std::move(set);
      worst.boundary = b;
    }
  };
  if (n <= budget.exact_cap && n < 32) {
    std::vector<std::uint32_t> adj(n, 0);
    std::vector<Vertex> pos(g.id_bound(), 0);
    for (std::size_t i = 0; i < n; ++i) pos[verts[i]] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < n; ++i)
      for (Vertex w : g.neighbors(verts[i])) adj[i] |= 1u << pos[w];
    // split on the top bits so chunks can run in parallel
    const std::size_t top = std::min<std::size_t>(n, 6);
    const std::size_t low = n - top;
    std::mutex mu;
    parallel_for(std::size_t{1} << top, budget.jobs, [&](std::size_t hi) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t best_mask = 0;
      for (std::uint64_t lo = 0; lo < (std::uint64_t{1} << low); ++lo) {
        const std::uint32_t mask = static_cast<std::uint32_t>((hi << low) | lo);
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size == 0 || size > half) continue;
        std::uint32_t nb = 0;
        for (std::uint32_t m = mask; m; m &= m - 1) nb |= adj[std::countr_zero(m)];
        const double ratio = static_cast<double>(std::popcount(nb & ~mask)) / static_cast<double>(size);
        if (ratio < best) {
          best = ratio;
          best_mask = mask;
        }
      }
      if (best_mask == 0) return;
      std::vector<Vertex> set;
      for (std::size_t i = 0; i < n; ++i)
        if (best_mask >> i & 1u) set.push_back(verts[i]);
      std::uint32_t nb = 0;
      for (std::uint32_t m = best_mask; m; m &= m - 1) nb |= adj[std::countr_zero(m)];
      std::lock_guard lock(mu);
      offer(best, std::move(set), static_cast<std::size_t>(std::popcount(nb & ~best_mask)));
    });
    c.status = worst.ratio < gamma ? Status::Violated : Status::VerifiedExact;
  } else {
    // every sample draws from its own stream, so the result does not depend on jobs
    std::mutex mu;
    parallel_for(budget.samples, budget.jobs, [&](std::size_t t) {
      Rng rng(derive_seed(budget.seed, "expansion-sample#" + std::to_string(t)));
      std::vector<Vertex> u;
      const std::size_t size = 1 + uniform_below(rng, half);
      if (t % 2 == 0) {
        // uniform random subset of random size
        u = verts;
        for (std::size_t i = 0; i < size; ++i) std::swap(u[i], u[i + uniform_below(rng, n - i)]);
        u.resize(size);
      } else {
        // BFS ball truncated at a random size; balls are the natural bottlenecks
        const Vertex root = verts[uniform_below(rng, n)];
        std::vector<char> seen(g.id_bound(), 0);
        u.push_back(root);
        seen[root] = 1;
        for (std::size_t i = 0; i < u.size() && u.size() < size; ++i)
          for (Vertex w : g.neighbors(u[i]))
            if (!seen[w] && u.size() < size) {
              seen[w] = 1;
              u.push_back(w);
            }
      }
      std::sort(u.begin(), u.end());
      std::vector<std::uint32_t> mark(g.id_bound(), 0);
      const std::size_t b = boundary_size(g, u, mark, 1);
      const double ratio = static_cast<double>(b) / static_cast<double>(u.size());
      std::lock_guard lock(mu);
      offer(ratio, std::move(u), b);
    });
    c.status = worst.ratio < gamma ? Status::Violated : Status::VerifiedSampled;
  }
  if (c.status == Status::Violated) {
    c.witness = {{"subset", worst.set}, {"boundary", worst.boundary}, {"ratio", worst.ratio}};
  }
  c.budget["worst_ratio"] = worst.ratio;
  return c;
}

}  // namespace sizeramsey
