#include "sizeramsey/hypergen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "sizeramsey/berge.hpp"
#include "sizeramsey/error.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

// ---- parameters ------------------------------------------------------------

double HostParams::default_alpha() const {
  return 1e-6 / (C * C * C) / std::pow(static_cast<double>(s), 8.0);
}

long double HostParams::asymptotic_g() const { return std::pow(static_cast<long double>(C) * s, 20.0L); }

long double HostParams::asymptotic_N() const {
  return 1e100L * k * k * std::pow(static_cast<long double>(C), 6.0L) * std::pow(static_cast<long double>(s), 14.0L) * n;
}

std::uint64_t HostParams::edge_target() const {
  return static_cast<std::uint64_t>(std::ceil(C * static_cast<double>(N) - 1e-9));
}

nlohmann::json HostParams::to_json() const {
  return {{"N", N}, {"C", C}, {"s", s}, {"g", g}, {"alpha", alpha}, {"k", k}, {"n", n},
          {"mode", std::string(to_string(mode))}};
}

HostParams HostParams::from_json(const nlohmann::json& j) {
  HostParams p;
  p.N = j.at("N").get<std::uint64_t>();
  p.C = j.at("C").get<double>();
  p.s = j.at("s").get<std::size_t>();
  p.g = j.at("g").get<std::size_t>();
  p.k = j.value("k", std::size_t{2});
  p.n = j.value("n", std::size_t{0});
  if (j.contains("mode")) p.mode = mode_from_string(j.at("mode").get<std::string>());
  p.alpha = j.contains("alpha") ? j.at("alpha").get<double>() : p.default_alpha();
  p.validate();
  return p;
}

void HostParams::validate() const {
  if (s < 2) throw Error(ErrorKind::InvalidArgument, "uniformity s must be at least 2", {{"s", s}});
  if (!(C > 0)) throw Error(ErrorKind::InvalidArgument, "C must be positive", {{"C", C}});
  if (g < 2) throw Error(ErrorKind::InvalidArgument, "girth bound g must be at least 2", {{"g", g}});
  if (!(alpha >= 0)) throw Error(ErrorKind::InvalidArgument, "alpha must be non-negative", {{"alpha", alpha}});
  if (N > 0 && N < s) throw Error(ErrorKind::InvalidArgument, "N smaller than s", {{"N", N}, {"s", s}});
  if (N > (1ULL << 31)) throw Error(ErrorKind::BudgetExceeded, "N too large", {{"N", N}});
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::VerifiedExact: return "verified_exact";
    case Status::VerifiedSampled: return "verified_sampled";
    case Status::Violated: return "violated";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

nlohmann::json PropertyCheck::to_json() const {
  nlohmann::json j{{"status", std::string(sizeramsey::to_string(status))}, {"budget", budget}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

bool VerificationReport::accepted() const {
  for (const char* key : {"P1", "P2", "P3"}) {
    auto it = properties.find(key);
    if (it == properties.end() || it->second.status != Status::VerifiedExact) return false;
  }
  for (const char* key : {"P4", "P5"}) {
    auto it = properties.find(key);
    if (it != properties.end() && it->second.status == Status::Violated) return false;
  }
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : properties) j[k] = v.to_json();
  j["accepted"] = accepted();
  return j;
}

// ---- sampling and cleanup --------------------------------------------------

namespace {

/// Floyd's algorithm for a uniform s-subset of [0, N).
std::vector<Vertex> random_subset(Rng& rng, std::uint64_t N, std::size_t s) {
  std::vector<Vertex> out;
  out.reserve(s);
  for (std::uint64_t j = N - s; j < N; ++j) {
    auto t = static_cast<Vertex>(uniform_below(rng, j + 1));
    if (std::find(out.begin(), out.end(), t) != out.end()) t = static_cast<Vertex>(j);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HostHypergraph clean_hypergraph(std::size_t N, std::size_t s, std::vector<std::vector<Vertex>> drawn, std::size_t g,
                                double max_degree) {
  nlohmann::json log;
  log["drawn"] = drawn.size();
  for (auto& e : drawn) std::sort(e.begin(), e.end());

  // dedup, keeping the earliest draw
  std::vector<std::uint64_t> order(drawn.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return drawn[a] < drawn[b]; });
  std::vector<char> keep(drawn.size(), 1);
  std::size_t dups = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (drawn[order[i]] == drawn[order[i - 1]]) {
      keep[order[i]] = 0;
      ++dups;
    }
  }
  log["removed_duplicates"] = dups;
  std::vector<std::uint64_t> index;
  std::vector<std::vector<Vertex>> unique;
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    if (keep[i]) {
      index.push_back(i);
      unique.push_back(std::move(drawn[i]));
    }
  }
  Hypergraph all(N, s, std::move(unique));
  const std::size_t m = all.edge_count();
  std::vector<std::uint8_t> alive(m, 1);

  nlohmann::json by_len = nlohmann::json::object();
  BergeSearch search(all);
  for (std::size_t len = 2; len <= g; ++len) {
    std::size_t removed = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (!alive[b]) continue;
      auto hb = static_cast<HyperedgeId>(b);
      if (search.through(hb, len, alive, hb)) {
        alive[b] = 0;
        ++removed;
      }
    }
    by_len[std::to_string(len)] = removed;
  }
  log["removed_berge_cycles"] = by_len;

  std::vector<std::size_t> deg(N, 0);
  for (std::size_t b = 0; b < m; ++b)
    if (alive[b])
      for (Vertex v : all.edge(static_cast<HyperedgeId>(b))) ++deg[v];
  std::size_t removed_deg = 0, heavy = 0;
  for (std::size_t v = 0; v < N; ++v) heavy += static_cast<double>(deg[v]) > max_degree;
  for (std::size_t b = 0; b < m; ++b) {
    if (!alive[b]) continue;
    for (Vertex v : all.edge(static_cast<HyperedgeId>(b))) {
      if (static_cast<double>(deg[v]) > max_degree) {
        alive[b] = 0;
        ++removed_deg;
        break;
      }
    }
  }
  log["heavy_vertices"] = heavy;
  log["removed_high_degree"] = removed_deg;

  HostHypergraph out;
  std::vector<std::vector<Vertex>> kept;
  for (std::size_t b = 0; b < m; ++b) {
    if (!alive[b]) continue;
    auto e = all.edge(static_cast<HyperedgeId>(b));
    kept.emplace_back(e.begin(), e.end());
    out.draw_index.push_back(index[b]);
  }
  log["kept"] = kept.size();
  out.h = Hypergraph(N, s, std::move(kept));
  out.log = std::move(log);
  return out;
}

HostHypergraph sample_host_hypergraph(const HostParams& p, std::uint64_t seed) {
  p.validate();
  Rng rng(seed);
  const std::uint64_t m = p.N == 0 ? 0 : p.edge_target();
  if (m > 50'000'000ULL) throw Error(ErrorKind::BudgetExceeded, "too many hyperedges", {{"m", m}});
  std::vector<std::vector<Vertex>> drawn;
  drawn.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) drawn.push_back(random_subset(rng, p.N, p.s));
  return clean_hypergraph(p.N, p.s, std::move(drawn), p.g, p.max_degree_bound());
}

// ---- verification ----------------------------------------------------------

PropertyCheck verify_p1(const Hypergraph& h, const HostParams& p) {
  const double lo = p.C * static_cast<double>(p.N) / 2.0, hi = p.C * static_cast<double>(p.N);
  const auto e = static_cast<double>(h.edge_count());
  PropertyCheck r;
  r.budget = {{"edges", h.edge_count()}, {"low", lo}, {"high", hi}};
  if (e >= lo - 1e-9 && e <= hi + 1e-9) {
    r.status = Status::VerifiedExact;
  } else {
    r.status = Status::Violated;
    r.witness = {{"edges", h.edge_count()}};
  }
  return r;
}

PropertyCheck verify_p2(const Hypergraph& h, const HostParams& p) {
  PropertyCheck r;
  const double bound = p.max_degree_bound();
  r.budget = {{"max_degree", h.max_degree()}, {"bound", bound}};
  r.status = Status::VerifiedExact;
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (static_cast<double>(h.degree(static_cast<Vertex>(v))) > bound) {
      auto inc = h.incident(static_cast<Vertex>(v));
      r.status = Status::Violated;
      r.witness = {{"vertex", v}, {"degree", inc.size()}, {"edges", std::vector<HyperedgeId>(inc.begin(), inc.end())}};
      break;
    }
  }
  return r;
}

PropertyCheck verify_p3(const Hypergraph& h, const HostParams& p) {
  PropertyCheck r;
  r.budget = {{"g", p.g}};
  if (auto c = shortest_berge_cycle(h, p.g)) {
    r.status = Status::Violated;
    r.witness = {{"length", c->length()}, {"vertices", c->vertices}, {"edges", c->edges}};
  } else {
    r.status = Status::VerifiedExact;
  }
  return r;
}

std::size_t sunflower_free_edges(const Hypergraph& h, std::span<const HyperedgeId> w) {
  std::unordered_map<Vertex, std::size_t> cover;
  std::size_t total = 0;
  for (HyperedgeId e : w)
    for (Vertex x : h.edge(e))
      if (cover[x]++ > 0) ++total;
  return total;
}

namespace {

/// Enumerates each connected vertex set of size <= cap exactly once (ESU).
/// Returns false when the node budget runs out first.
bool for_each_connected_set(std::size_t n, std::size_t cap, std::uint64_t budget,
                            const std::function<std::vector<std::uint32_t>(std::uint32_t)>& neighbors,
                            const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
  std::uint64_t used = 0;
  std::vector<std::uint32_t> sub;
  std::unordered_set<std::uint32_t> in_sub, near_sub;
  bool stop = false;
  std::function<void(std::vector<std::uint32_t>, std::uint32_t)> extend = [&](std::vector<std::uint32_t> ext,
                                                                               std::uint32_t root) {
    if (stop) return;
    if (++used > budget) {
      stop = true;
      return;
    }
    if (!visit(sub)) {
      stop = true;
      return;
    }
    if (sub.size() == cap) return;
    while (!ext.empty() && !stop) {
      const std::uint32_t w = ext.back();
      ext.pop_back();
      std::vector<std::uint32_t> next = ext;
      auto nw = neighbors(w);
      std::vector<std::uint32_t> added;
      for (std::uint32_t u : nw) {
        if (u > root && !in_sub.count(u) && !near_sub.count(u)) next.push_back(u);
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      sub.push_back(w);
      in_sub.insert(w);
      for (std::uint32_t u : nw)
        if (near_sub.insert(u).second) added.push_back(u);
      extend(std::move(next), root);
      for (std::uint32_t u : added) near_sub.erase(u);
      in_sub.erase(w);
      sub.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < n && !stop; ++v) {
    sub.assign(1, v);
    in_sub = {v};
    auto nv = neighbors(v);
    near_sub = std::unordered_set<std::uint32_t>(nv.begin(), nv.end());
    near_sub.insert(v);
    std::vector<std::uint32_t> ext;
    for (std::uint32_t u : nv)
      if (u > v) ext.push_back(u);
    extend(std::move(ext), v);
  }
  return used <= budget;
}

std::size_t strict_below(double x) {
  // largest integer v with v < x
  if (x <= 0) return 0;
  double f = std::ceil(x) - 1.0;
  return static_cast<std::size_t>(std::max(0.0, f));
}

}  // namespace

PropertyCheck verify_p4(const Hypergraph& h, const HostParams& p, const VerifyBudget& b) {
  PropertyCheck r;
  const std::size_t max_size = std::min<std::size_t>(strict_below(p.alpha_n()), h.edge_count());
  r.budget = {{"max_size", max_size}};
  if (max_size < 2) {
    r.status = Status::VerifiedExact;
    r.budget["note"] = "no subgraph below alpha N can have edges";
    return r;
  }
  auto ig_neighbors = [&](std::uint32_t a) {
    std::vector<std::uint32_t> out;
    for (Vertex x : h.edge(a))
      for (HyperedgeId f : h.incident(x))
        if (f != a) out.push_back(f);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto dense = [](std::size_t e, std::size_t v) { return 3 * e > 4 * v; };

  const std::size_t cap = std::min(b.p4_exact_cap, max_size);
  std::size_t checked = 0;
  bool complete = for_each_connected_set(
      h.edge_count(), cap, b.p4_exact_nodes, ig_neighbors, [&](const std::vector<std::uint32_t>& w) {
        ++checked;
        const std::size_t e = sunflower_free_edges(h, w);
        if (dense(e, w.size())) {
          r.status = Status::Violated;
          r.witness = {{"hyperedges", w}, {"sunflower_free_edges", e}};
          return false;
        }
        return true;
      });
  r.budget["exact_cap"] = cap;
  r.budget["exact_sets"] = checked;
  r.budget["exact_complete"] = complete;
  if (r.status == Status::Violated) return r;
  if (complete && cap == max_size) {
    r.status = Status::VerifiedExact;
    return r;
  }

  // greedy growth from random seeds, always adding the edge sharing most covered vertices
  Rng rng(derive_seed(b.seed, "p4"));
  const std::size_t grow_to = std::min<std::size_t>(max_size, 64);
  for (std::size_t t = 0; t < b.p4_samples && h.edge_count() > 0; ++t) {
    std::vector<std::uint32_t> w{static_cast<std::uint32_t>(uniform_below(rng, h.edge_count()))};
    std::unordered_map<Vertex, std::size_t> cover;
    std::unordered_map<std::uint32_t, std::size_t> gain;
    std::unordered_set<std::uint32_t> in_w{w[0]};
    std::size_t e = 0;
    auto add = [&](std::uint32_t a) {
      for (Vertex x : h.edge(a)) {
        if (cover[x]++ > 0) {
          ++e;
          continue;
        }
        for (HyperedgeId f : h.incident(x))
          if (!in_w.count(f)) ++gain[f];
      }
      gain.erase(a);
    };
    add(w[0]);
    while (w.size() < grow_to && !gain.empty()) {
      auto best = std::max_element(gain.begin(), gain.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first > y.first;
      });
      const std::uint32_t a = best->first;
      w.push_back(a);
      in_w.insert(a);
      add(a);
      if (dense(e, w.size())) {
        r.status = Status::Violated;
        r.witness = {{"hyperedges", w}, {"sunflower_free_edges", e}};
        return r;
      }
    }
  }
  r.budget["samples"] = b.p4_samples;
  r.budget["sample_size"] = grow_to;
  r.status = Status::VerifiedSampled;
  return r;
}

PropertyCheck verify_p5(const Hypergraph& h, const HostParams& p, const VerifyBudget& b) {
  PropertyCheck r;
  const auto max_size = std::min<std::size_t>(
      static_cast<std::size_t>(std::floor(std::max(0.0, p.alpha_n()) + 1e-9)), h.vertex_count());
  r.budget = {{"max_size", max_size}};
  auto count_double_hits = [&](const std::vector<std::uint32_t>& a) {
    std::unordered_map<HyperedgeId, std::size_t> hits;
    std::size_t count = 0;
    for (Vertex x : a)
      for (HyperedgeId e : h.incident(x))
        if (++hits[e] == 2) ++count;
    return count;
  };
  if (max_size < 2) {
    r.status = Status::VerifiedExact;
    r.budget["note"] = "single vertices meet no edge twice";
    return r;
  }
  bool linear = true;
  try {
    build_intersection_graph(h);
  } catch (const Error&) {
    linear = false;
  }
  // in a linear hypergraph each pair of A lies in at most one edge, and C(a,2) <= 2a for a <= 5
  const std::size_t analytic = linear ? std::min<std::size_t>(5, max_size) : 1;
  r.budget["linear"] = linear;
  r.budget["analytic_upto"] = analytic;

  auto shadow = [&](std::uint32_t x) {
    std::vector<std::uint32_t> out;
    for (HyperedgeId e : h.incident(x))
      for (Vertex y : h.edge(e))
        if (y != x) out.push_back(y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  const std::size_t cap = std::min(b.p5_exact_cap, max_size);
  std::size_t checked = 0;
  bool complete = true;
  if (cap > analytic) {
    complete = for_each_connected_set(h.vertex_count(), cap, b.p5_exact_nodes, shadow,
                                      [&](const std::vector<std::uint32_t>& a) {
                                        ++checked;
                                        const std::size_t c = count_double_hits(a);
                                        if (c > 2 * a.size()) {
                                          r.status = Status::Violated;
                                          r.witness = {{"vertices", a}, {"edges_met_twice", c}};
                                          return false;
                                        }
                                        return true;
                                      });
  }
  r.budget["exact_cap"] = std::max(cap, analytic);
  r.budget["exact_sets"] = checked;
  r.budget["exact_complete"] = complete;
  if (r.status == Status::Violated) return r;
  if (complete && std::max(cap, analytic) >= max_size) {
    r.status = Status::VerifiedExact;
    return r;
  }

  // greedy adversary: grow A from a random edge, adding the vertex completing most edges
  Rng rng(derive_seed(b.seed, "p5"));
  const std::size_t grow_to = std::min<std::size_t>(max_size, 64);
  for (std::size_t t = 0; t < b.p5_samples && h.edge_count() > 0; ++t) {
    auto e0 = h.edge(static_cast<HyperedgeId>(uniform_below(rng, h.edge_count())));
    std::vector<std::uint32_t> a{e0[0], e0[1]};
    std::unordered_set<std::uint32_t> in_a(a.begin(), a.end());
    while (a.size() < grow_to) {
      std::unordered_map<HyperedgeId, std::size_t> hits;
      for (Vertex x : a)
        for (HyperedgeId e : h.incident(x)) ++hits[e];
      std::unordered_map<Vertex, std::size_t> gain;
      for (auto [e, c] : hits)
        if (c == 1)
          for (Vertex y : h.edge(e))
            if (!in_a.count(y)) ++gain[y];
      if (gain.empty()) break;
      auto best = std::max_element(gain.begin(), gain.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first > y.first;
      });
      a.push_back(best->first);
      in_a.insert(best->first);
      const std::size_t c = count_double_hits(a);
      if (c > 2 * a.size()) {
        r.status = Status::Violated;
        r.witness = {{"vertices", a}, {"edges_met_twice", c}};
        return r;
      }
    }
  }
  r.budget["samples"] = b.p5_samples;
  r.budget["sample_size"] = grow_to;
  r.status = Status::VerifiedSampled;
  return r;
}

VerificationReport verify_all(const Hypergraph& h, const HostParams& p, const VerifyBudget& b) {
  VerificationReport rep;
  rep.properties["P1"] = verify_p1(h, p);
  rep.properties["P2"] = verify_p2(h, p);
  rep.properties["P3"] = verify_p3(h, p);
  rep.properties["P4"] = verify_p4(h, p, b);
  rep.properties["P5"] = verify_p5(h, p, b);
  return rep;
}

VerifiedHost sample_until_verified(const HostParams& p, std::size_t max_retries, std::uint64_t seed,
                                   const VerifyBudget& b) {
  if (max_retries < 1) throw Error(ErrorKind::InvalidArgument, "max_retries must be at least 1");
  VerificationReport last;
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    const std::uint64_t s = derive_seed(seed, "hypergraph#" + std::to_string(attempt));
    auto host = sample_host_hypergraph(p, s);
    VerifyBudget vb = b;
    vb.seed = s;
    last = verify_all(host.h, p, vb);
    if (last.accepted()) return {std::move(host), std::move(last), attempt + 1};
  }
  throw Error(ErrorKind::RetriesExhausted, "no sampled hypergraph passed verification",
              {{"attempts", max_retries}, {"last_report", last.to_json()}});
}

}  // namespace sizeramsey
