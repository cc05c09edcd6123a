#include "sizeramsey/gadgets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <functional>
#include <map>

#include "sizeramsey/error.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::EvenInduced: return "even";
    case Mode::OddInduced: return "odd";
    case Mode::NonInduced: return "non-induced";
  }
  return "?";
}

Mode mode_from_string(std::string_view s) {
  if (s == "even" || s == "even_induced") return Mode::EvenInduced;
  if (s == "odd" || s == "odd_induced") return Mode::OddInduced;
  if (s == "non-induced" || s == "non_induced") return Mode::NonInduced;
  throw Error(ErrorKind::InvalidArgument, "unknown mode", {{"mode", std::string(s)}});
}

Path GadgetCycle::short_arc() const {
  return Path(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(anchor_distance) + 1);
}

Path GadgetCycle::long_arc() const {
  Path p{vertices.front()};
  for (std::size_t i = vertices.size() - 1; i >= anchor_distance; --i) p.push_back(vertices[i]);
  return p;
}

GadgetCycle anchor_cycle(Cycle cycle, Color color, std::size_t d) {
  const std::size_t len = cycle.size();
  if (d == 0 || 2 * d > len) throw Error(ErrorKind::InvalidArgument, "bad anchor distance", {{"d", d}});
  VertexPair best{kNoVertex, kNoVertex};
  for (std::size_t i = 0; i < len; ++i) {
    Vertex a = cycle[i], b = cycle[(i + d) % len];
    VertexPair p{std::min(a, b), std::max(a, b)};
    best = std::min(best, p);
  }
  auto it = std::find(cycle.begin(), cycle.end(), best.first);
  std::rotate(cycle.begin(), it, cycle.end());
  if (cycle[d] != best.second) std::reverse(cycle.begin() + 1, cycle.end());
  return GadgetCycle{std::move(cycle), color, d};
}

// ---- constructions ---------------------------------------------------------

Gadget complete_gadget(std::size_t k, const GadgetLimits& limits) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (k >= 40 || (std::size_t{1} << k) + 1 > limits.max_vertices) {
    throw Error(ErrorKind::BudgetExceeded, "complete gadget too large", {{"k", k}, {"max_vertices", limits.max_vertices}});
  }
  const std::size_t n = (std::size_t{1} << k) + 1;
  std::vector<VertexPair> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return {Graph::from_edges(n, e), Mode::NonInduced, "complete:k=" + std::to_string(k)};
}

namespace {

/// Arithmetic of GF(p^m), elements encoded as base-p digit strings.
struct FiniteField {
  std::size_t q = 0;
  std::vector<std::vector<std::uint32_t>> add, mul;

  explicit FiniteField(std::size_t order) : q(order) {
    std::size_t p = 0;
    for (std::size_t d = 2; d <= order; ++d) {
      if (order % d == 0) {
        p = d;
        break;
      }
    }
    std::size_t m = 0, rest = order;
    while (p && rest % p == 0) {
      rest /= p;
      ++m;
    }
    if (order < 2 || rest != 1) throw Error(ErrorKind::InvalidArgument, "q is not a prime power", {{"q", order}});

    auto digits = [&](std::size_t x) {
      std::vector<std::size_t> d(m, 0);
      for (std::size_t i = 0; i < m; ++i, x /= p) d[i] = x % p;
      return d;
    };
    auto encode = [&](const std::vector<std::size_t>& d) {
      std::size_t x = 0;
      for (std::size_t i = m; i-- > 0;) x = x * p + d[i];
      return x;
    };
    add.assign(q, std::vector<std::uint32_t>(q));
    for (std::size_t a = 0; a < q; ++a) {
      auto da = digits(a);
      for (std::size_t b = 0; b < q; ++b) {
        auto db = digits(b);
        for (std::size_t i = 0; i < m; ++i) db[i] = (da[i] + db[i]) % p;
        add[a][b] = static_cast<std::uint32_t>(encode(db));
      }
    }
    // try monic modulus polynomials x^m + f(x) until the product has no zero divisors
    for (std::size_t f = 0; f < q; ++f) {
      auto low = digits(f);
      auto product = [&](std::size_t a, std::size_t b) {
        auto da = digits(a), db = digits(b);
        std::vector<std::size_t> r(2 * m, 0);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p;
        for (std::size_t deg = 2 * m; deg-- > m;) {
          const std::size_t c = r[deg];
          if (!c) continue;
          r[deg] = 0;
          for (std::size_t i = 0; i < m; ++i) r[deg - m + i] = (r[deg - m + i] + (p - c) * low[i]) % p;
        }
        r.resize(m);
        return encode(r);
      };
      mul.assign(q, std::vector<std::uint32_t>(q));
      bool field = true;
      for (std::size_t a = 0; a < q && field; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
          mul[a][b] = static_cast<std::uint32_t>(product(a, b));
          if (a && b && mul[a][b] == 0) {
            field = false;
            break;
          }
        }
      }
      if (field) return;
    }
    throw Error(ErrorKind::InvalidArgument, "no irreducible modulus found", {{"q", order}});
  }
};

}  // namespace

Gadget incidence_gadget(std::size_t q, const GadgetLimits& limits) {
  if (q < 2 || 2 * (q * q + q + 1) > limits.max_vertices) {
    throw Error(q < 2 ? ErrorKind::InvalidArgument : ErrorKind::BudgetExceeded, "incidence gadget size", {{"q", q}});
  }
  FiniteField f(q);
  std::vector<std::array<std::uint32_t, 3>> pts;
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t z = 0; z < q; ++z) pts.push_back({1, y, z});
  for (std::uint32_t z = 0; z < q; ++z) pts.push_back({0, 1, z});
  pts.push_back({0, 0, 1});
  const std::size_t np = pts.size();
  std::vector<VertexPair> e;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      const auto& a = pts[i];
      const auto& b = pts[j];
      auto dot = f.add[f.add[f.mul[a[0]][b[0]]][f.mul[a[1]][b[1]]]][f.mul[a[2]][b[2]]];
      if (dot == 0) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(np + j));
    }
  }
  return {Graph::from_edges(2 * np, e), Mode::EvenInduced, "incidence:q=" + std::to_string(q)};
}

namespace {

std::map<std::string, std::string, std::less<>> parse_kv(std::string_view s) {
  std::map<std::string, std::string, std::less<>> out;
  while (!s.empty()) {
    auto comma = s.find(',');
    auto item = s.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.emplace(std::string(item), "");
    } else {
      out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    }
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::size_t to_size(const std::string& s, std::string_view what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "expected an integer", {{"field", std::string(what)}, {"value", s}});
  }
  return v;
}

double to_double(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidArgument, "expected a number", {{"field", std::string(what)}, {"value", s}});
}

Graph petersen() {
  std::vector<VertexPair> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::from_edges(10, e);
}

Graph random_trianglefree(std::size_t n, double p, std::uint64_t seed, const GadgetLimits& limits) {
  constexpr int kRetries = 16;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Rng rng(derive_seed(seed, "trianglefree#" + std::to_string(attempt)));
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::size_t sampled = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (bernoulli(rng, p)) {
          adj[u][v] = adj[v][u] = 1;
          ++sampled;
        }
    std::size_t removed = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!adj[u][v]) continue;
        for (std::size_t w = v + 1; w < n && adj[u][v]; ++w) {
          if (!adj[u][w] || !adj[v][w]) continue;
          std::array<std::pair<std::size_t, std::size_t>, 3> tri{{{u, v}, {u, w}, {v, w}}};
          auto [a, b] = tri[uniform_below(rng, 3)];
          adj[a][b] = adj[b][a] = 0;
          ++removed;
        }
      }
    std::vector<VertexPair> e;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (adj[u][v]) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (!e.empty() && 2 * e.size() >= sampled) {
      auto g = Graph::from_edges(n, e);
      if (!is_bipartite(g)) return g;
    }
  }
  (void)limits;
  throw Error(ErrorKind::RetriesExhausted, "random triangle-free gadget kept too few edges",
              {{"n", n}, {"p", p}, {"retries", kRetries}});
}

}  // namespace

Gadget trianglefree_gadget(std::string_view spec, std::uint64_t seed, const GadgetLimits& limits) {
  auto kv = parse_kv(spec);
  Graph g;
  if (kv.contains("c5")) {
    std::vector<VertexPair> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    g = Graph::from_edges(5, e);
  } else if (kv.contains("petersen")) {
    g = petersen();
  } else if (kv.contains("random")) {
    if (!kv.contains("n") || !kv.contains("p")) {
      throw Error(ErrorKind::InvalidArgument, "random gadget needs n and p", {{"spec", std::string(spec)}});
    }
    const std::size_t n = to_size(kv.find("n")->second, "n");
    const double p = to_double(kv.find("p")->second, "p");
    if (n < 5 || n > limits.max_vertices || !(p > 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "random gadget parameters out of range", {{"n", n}, {"p", p}});
    }
    g = random_trianglefree(n, p, seed, limits);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown triangle-free gadget", {{"spec", std::string(spec)}});
  }
  if (has_triangle(g)) throw Error(ErrorKind::StageFailure, "gadget contains a triangle");
  return {std::move(g), Mode::OddInduced, "trianglefree:" + std::string(spec)};
}

Gadget parse_gadget(std::string_view descriptor, std::uint64_t seed, const GadgetLimits& limits) {
  auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "gadget descriptor needs family:args", {{"descriptor", std::string(descriptor)}});
  }
  auto family = descriptor.substr(0, colon);
  auto rest = descriptor.substr(colon + 1);
  if (family == "trianglefree") return trianglefree_gadget(rest, seed, limits);
  auto kv = parse_kv(rest);
  if (family == "complete" && kv.contains("k")) return complete_gadget(to_size(kv.find("k")->second, "k"), limits);
  if (family == "incidence" && kv.contains("q")) return incidence_gadget(to_size(kv.find("q")->second, "q"), limits);
  throw Error(ErrorKind::InvalidArgument, "unknown gadget descriptor", {{"descriptor", std::string(descriptor)}});
}

// ---- finders ---------------------------------------------------------------

namespace {

std::optional<Cycle> odd_cycle_in(const Graph& g) {
  const std::size_t n = g.id_bound();
  std::vector<int> depth(n, -1);
  std::vector<Vertex> parent(n, kNoVertex);
  for (Vertex r = 0; r < n; ++r) {
    if (depth[r] >= 0 || g.degree(r) == 0) continue;
    depth[r] = 0;
    std::deque<Vertex> q{r};
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop_front();
      for (Vertex w : g.neighbors(u)) {
        if (depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          q.push_back(w);
        } else if ((depth[w] - depth[u]) % 2 == 0) {
          // same layer parity: walk both up to their common ancestor
          Path left{u}, right{w};
          Vertex a = u, b = w;
          while (a != b) {
            if (depth[a] >= depth[b]) {
              a = parent[a];
              left.push_back(a);
            } else {
              b = parent[b];
              right.push_back(b);
            }
          }
          right.pop_back();
          Cycle c(left.rbegin(), left.rend());
          c.insert(c.end(), right.begin(), right.end());
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

/// Cycles of exactly `len` vertices, searched from each start vertex through larger ids.
std::optional<Cycle> cycle_of_length(const Graph& g, std::size_t len) {
  const std::size_t n = g.id_bound();
  std::vector<char> used(n, 0);
  Cycle path;
  std::function<bool(Vertex)> dfs = [&](Vertex cur) -> bool {
    if (path.size() == len) return g.has_edge(cur, path.front());
    for (Vertex w : g.neighbors(cur)) {
      if (w <= path.front() || used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      if (dfs(w)) return true;
      path.pop_back();
      used[w] = 0;
    }
    return false;
  };
  for (Vertex s = 0; s < n; ++s) {
    if (g.degree(s) < 2) continue;
    path.assign(1, s);
    used[s] = 1;
    if (dfs(s)) return path;
    used[s] = 0;
  }
  return std::nullopt;
}

void require_mode(const Gadget& g, Mode m) {
  if (g.mode != m) {
    throw Error(ErrorKind::InvalidArgument, "finder does not match gadget mode",
                {{"expected", std::string(to_string(m))}, {"got", std::string(to_string(g.mode))}});
  }
}

}  // namespace

std::optional<GadgetCycle> find_mono_odd_cycle(const Gadget& g, const EdgeColoring& coloring) {
  require_mode(g, Mode::NonInduced);
  for (std::size_t c = 0; c < coloring.colors(); ++c) {
    auto cls = coloring.color_class(static_cast<Color>(c));
    if (auto cyc = odd_cycle_in(cls)) {
      const std::size_t d = (cyc->size() - 1) / 2;
      return anchor_cycle(std::move(*cyc), static_cast<Color>(c), d);
    }
  }
  return std::nullopt;
}

std::optional<GadgetCycle> find_mono_c6(const Gadget& g, const EdgeColoring& coloring) {
  require_mode(g, Mode::EvenInduced);
  auto sizes = coloring.class_sizes();
  std::vector<std::size_t> order(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  for (std::size_t c : order) {
    if (sizes[c] < 6) continue;
    auto cls = coloring.color_class(static_cast<Color>(c));
    if (auto cyc = cycle_of_length(cls, 6); cyc && is_induced_cycle(g.graph, *cyc)) {
      return anchor_cycle(std::move(*cyc), static_cast<Color>(c), 2);
    }
  }
  return std::nullopt;
}

std::optional<GadgetCycle> find_mono_c5(const Gadget& g, const EdgeColoring& coloring, const GadgetLimits& limits) {
  require_mode(g, Mode::OddInduced);
  const Graph& f = g.graph;
  const std::size_t n = f.id_bound();
  std::vector<char> in_u(n, 0);
  std::size_t u_size = 0;
  for (Vertex v : f.vertices()) {
    in_u[v] = 1;
    ++u_size;
  }
  while (u_size >= std::max<std::size_t>(limits.c5_floor, 5)) {
    std::vector<std::size_t> count(coloring.colors(), 0);
    for (Vertex u = 0; u < n; ++u) {
      if (!in_u[u]) continue;
      for (Vertex w : f.neighbors(u))
        if (u < w && in_u[w]) ++count[coloring.color(u, w)];
    }
    const auto best = static_cast<Color>(std::max_element(count.begin(), count.end()) - count.begin());
    if (count[best] == 0) break;
    const double threshold = static_cast<double>(count[best]) / static_cast<double>(u_size);

    // F'' = colour `best` inside U; prune to F' with minimum degree >= threshold
    std::vector<char> in_w = in_u;
    std::vector<std::size_t> deg(n, 0);
    auto mono = [&](Vertex a, Vertex b) { return coloring.color(a, b) == best; };
    for (Vertex u = 0; u < n; ++u) {
      if (!in_w[u]) continue;
      for (Vertex w : f.neighbors(u))
        if (in_w[w] && mono(u, w)) ++deg[u];
    }
    std::deque<Vertex> low;
    for (Vertex u = 0; u < n; ++u)
      if (in_w[u] && static_cast<double>(deg[u]) < threshold) low.push_back(u);
    while (!low.empty()) {
      Vertex u = low.front();
      low.pop_front();
      if (!in_w[u]) continue;
      in_w[u] = 0;
      for (Vertex w : f.neighbors(u)) {
        if (in_w[w] && mono(u, w)) {
          --deg[w];
          if (static_cast<double>(deg[w]) < threshold) low.push_back(w);
        }
      }
    }
    Vertex v = kNoVertex;
    for (Vertex u = 0; u < n; ++u)
      if (in_w[u] && (v == kNoVertex || deg[u] > deg[v])) v = u;
    if (v == kNoVertex) break;

    std::vector<char> in_a(n, 0), in_b(n, 0);
    for (Vertex a : f.neighbors(v))
      if (in_w[a] && mono(v, a)) in_a[a] = 1;
    std::size_t b_size = 0;
    for (Vertex a = 0; a < n; ++a) {
      if (!in_a[a]) continue;
      for (Vertex b : f.neighbors(a))
        if (in_w[b] && b != v && mono(a, b) && !in_b[b]) {
          in_b[b] = 1;
          ++b_size;
        }
    }
    for (Vertex x = 0; x < n; ++x) {
      if (!in_b[x]) continue;
      for (Vertex y : f.neighbors(x)) {
        if (y <= x || !in_b[y] || !mono(x, y)) continue;
        Vertex xp = kNoVertex, yp = kNoVertex;
        for (Vertex a : f.neighbors(x))
          if (in_a[a] && mono(x, a)) {
            xp = a;
            break;
          }
        for (Vertex a : f.neighbors(y))
          if (in_a[a] && mono(y, a) && a != xp) {
            yp = a;
            break;
          }
        if (xp == kNoVertex || yp == kNoVertex) continue;
        Cycle c{v, xp, x, y, yp};
        return anchor_cycle(std::move(c), best, 2);
      }
    }
    in_u = std::move(in_b);
    u_size = b_size;
  }
  // exhaustive fallback over the whole gadget
  for (std::size_t c = 0; c < coloring.colors(); ++c) {
    auto cls = coloring.color_class(static_cast<Color>(c));
    if (auto cyc = cycle_of_length(cls, 5); cyc && is_induced_cycle(f, *cyc)) {
      return anchor_cycle(std::move(*cyc), static_cast<Color>(c), 2);
    }
  }
  return std::nullopt;
}

std::optional<GadgetCycle> find_gadget_cycle(const Gadget& g, const EdgeColoring& coloring,
                                             const GadgetLimits& limits) {
  switch (g.mode) {
    case Mode::EvenInduced: return find_mono_c6(g, coloring);
    case Mode::OddInduced: return find_mono_c5(g, coloring, limits);
    case Mode::NonInduced: return find_mono_odd_cycle(g, coloring);
  }
  return std::nullopt;
}

bool verify_gadget_ramsey(const Gadget& g, std::size_t k, const GadgetLimits& limits) {
  const auto edges = g.graph.edges();
  long double total = 1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    total *= static_cast<long double>(k);
    if (total > static_cast<long double>(limits.max_colorings)) {
      throw Error(ErrorKind::BudgetExceeded, "too many colourings to enumerate",
                  {{"k", k}, {"edges", edges.size()}, {"max_colorings", limits.max_colorings}});
    }
  }
  EdgeColoring col(g.graph, k);
  std::vector<std::size_t> digit(edges.size(), 0);
  for (auto [u, v] : edges) col.set(u, v, 0);
  while (true) {
    if (!find_gadget_cycle(g, col, limits)) return false;
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == k) {
      digit[i] = 0;
      col.set(edges[i].first, edges[i].second, 0);
      ++i;
    }
    if (i == digit.size()) return true;
    col.set(edges[i].first, edges[i].second, static_cast<Color>(digit[i]));
  }
}

}  // namespace sizeramsey
