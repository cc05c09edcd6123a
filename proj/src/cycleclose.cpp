#include "sizeramsey/cycleclose.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <unordered_set>

#include "sizeramsey/error.hpp"

namespace sizeramsey {

std::vector<Vertex> n_i_of_s(const IntersectionGraph& ig, std::span<const HyperedgeId> s) {
  const Hypergraph& h = ig.hypergraph();
  std::unordered_map<HyperedgeId, int> dist;
  std::vector<HyperedgeId> frontier;
  for (HyperedgeId a : s)
    if (dist.emplace(a, 0).second) frontier.push_back(a);
  for (int d = 1; d <= 2; ++d) {
    std::vector<HyperedgeId> next;
    for (HyperedgeId a : frontier)
      for (auto [b, label] : ig.neighbors(a))
        if (dist.emplace(b, d).second) next.push_back(b);
    frontier = std::move(next);
  }
  std::vector<Vertex> out;
  for (auto [a, d] : dist)
    for (Vertex v : h.edge(a)) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<HyperedgeId> spine_hyperedges(const AuxGraph& aux, const TreeState& ts, const RSets& r) {
  std::unordered_set<Vertex> in_r(r.r[0].begin(), r.r[0].end());
  in_r.insert(r.r[1].begin(), r.r[1].end());
  std::vector<HyperedgeId> out;
  for (std::size_t i = 0; i + 1 < ts.spine.size(); ++i) out.push_back(aux.h(ts.spine[i], ts.spine[i + 1]));
  for (const auto& side : ts.tree_edges)
    for (auto [c, p] : side)
      if (!in_r.count(c) && !in_r.count(p)) out.push_back(aux.h(c, p));
  std::sort(out.begin(), out.end());
  return out;
}

Path CloseState::arm(int side) const {
  const auto& par = balls[static_cast<std::size_t>(side)].parent;
  Path p{meet};
  for (auto it = par.find(meet); it != par.end() && it->second != kNoVertex; it = par.find(p.back()))
    p.push_back(it->second);
  return p;
}

nlohmann::json CloseState::to_json() const {
  return {{"meet", meet},
          {"steps", steps},
          {"layers", {balls[0].layer_sizes, balls[1].layer_sizes}},
          {"arms", {arm(0), arm(1)}}};
}

CloseState expand_balls(const Graph& gred, std::span<const Vertex> r1, std::span<const Vertex> r2,
                        std::span<const Vertex> avoid, std::size_t max_steps) {
  if (r1.empty() || r2.empty()) throw Error(ErrorKind::InvalidArgument, "ball seeds must be nonempty");
  CloseState cs;
  std::vector<std::uint8_t> blocked(gred.id_bound(), 0);
  for (Vertex v : avoid)
    if (v < blocked.size()) blocked[v] = 1;
  std::array<std::vector<Vertex>, 2> frontier;
  const std::array<std::span<const Vertex>, 2> seeds{r1, r2};
  for (std::size_t t = 0; t < 2; ++t) {
    for (Vertex v : seeds[t])
      if (cs.balls[t].parent.emplace(v, kNoVertex).second) frontier[t].push_back(v);
    std::sort(frontier[t].begin(), frontier[t].end());
    cs.balls[t].layer_sizes.push_back(frontier[t].size());
  }
  auto first_common = [&](const std::vector<Vertex>& layer, std::size_t other) {
    Vertex best = kNoVertex;
    for (Vertex v : layer)
      if (cs.balls[other].contains(v)) best = std::min(best, v);
    return best;
  };
  if (Vertex m = first_common(frontier[0], 1); m != kNoVertex) {
    cs.meet = m;
    return cs;
  }
  const double half = static_cast<double>(gred.vertex_count()) / 2.0;
  std::array<std::size_t, 2> grown{0, 0};
  while (true) {
    bool any = false;
    ++cs.steps;
    for (std::size_t t = 0; t < 2; ++t) {
      if (static_cast<double>(cs.balls[t].size()) > half || grown[t] >= max_steps || frontier[t].empty()) continue;
      std::vector<Vertex> next;
      for (Vertex v : frontier[t])
        for (Vertex w : gred.neighbors(v)) {
          if (blocked[w] || cs.balls[t].contains(w)) continue;
          cs.balls[t].parent.emplace(w, v);
          next.push_back(w);
        }
      std::sort(next.begin(), next.end());
      ++grown[t];
      cs.balls[t].layer_sizes.push_back(next.size());
      frontier[t] = std::move(next);
      any = true;
      if (Vertex m = first_common(frontier[t], 1 - t); m != kNoVertex) {
        cs.meet = m;
        return cs;
      }
    }
    if (!any) {
      throw Error(ErrorKind::StageFailure, "balls did not meet",
                  {{"layers", {cs.balls[0].layer_sizes, cs.balls[1].layer_sizes}},
                   {"sizes", {cs.balls[0].size(), cs.balls[1].size()}},
                   {"max_steps", max_steps}});
    }
  }
}

// ---- assembly --------------------------------------------------------------

nlohmann::json AssembledCycle::to_json() const {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& a : cover) c.push_back({a.start, a.length});
  nlohmann::json w = nlohmann::json::array();
  for (const auto& a : windows) w.push_back({a.start, a.length});
  return {{"q", q}, {"length", q.size()}, {"cover", c}, {"windows", w}, {"fallback_cover", fallback_cover},
          {"good", certificate.good}};
}

std::vector<CoverArc> maximal_good_arcs(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> q) {
  const std::size_t len = q.size();
  std::vector<CoverArc> out;
  std::size_t prev_end = 0;
  bool have_prev = false;
  for (std::size_t s = 0; s < len; ++s) {
    PathChecker chk(aux, h);
    chk.start(q[s]);
    std::size_t l = 0;
    while (l + 1 < len) {
      chk.push(q[(s + l + 1) % len]);
      if (!chk.good()) break;
      ++l;
    }
    if (l == 0) continue;
    // drop arcs contained in the previous one
    const std::size_t end = s + l;
    if (have_prev && end <= prev_end) continue;
    out.push_back({s, l});
    prev_end = end;
    have_prev = true;
  }
  return out;
}

AssembledCycle assemble_cycle(const AuxGraph& aux, const Hypergraph& h, const TreeState& ts, const RSets& r,
                              const CloseState& cs, std::size_t min_len, std::size_t max_len) {
  const Path arm0 = cs.arm(0), arm1 = cs.arm(1);
  const Vertex r1 = arm0.back(), r2 = arm1.back();
  // r1 up to the spine end of T1, along the spine, down to r2
  Path up1 = ts.path_to_root(r1);
  Path up2 = ts.path_to_root(r2);
  auto spine_pos = [&](Vertex v) {
    return static_cast<std::size_t>(std::find(ts.spine.begin(), ts.spine.end(), v) - ts.spine.begin());
  };
  Path tree_path;
  for (Vertex v : up1) {
    if (v == ts.spine.front()) break;
    tree_path.push_back(v);
  }
  for (Vertex v : ts.spine) tree_path.push_back(v);
  Path down2;
  for (Vertex v : up2) {
    if (v == ts.spine.back()) break;
    down2.push_back(v);
  }
  tree_path.insert(tree_path.end(), down2.rbegin(), down2.rend());
  if (up1.empty() || spine_pos(up1.back()) >= ts.spine.size() || tree_path.front() != r1 || tree_path.back() != r2) {
    throw Error(ErrorKind::StageFailure, "arms do not end in the two trees", {{"r1", r1}, {"r2", r2}});
  }
  Cycle q = tree_path;
  for (std::size_t i = arm1.size() - 1; i-- > 0;) q.push_back(arm1[i]);  // back towards the meeting vertex
  for (std::size_t i = 1; i + 1 < arm0.size(); ++i) q.push_back(arm0[i]);
  if (q.size() > 1 && q.back() == q.front()) q.pop_back();

  std::unordered_set<Vertex> seen;
  for (Vertex v : q)
    if (!seen.insert(v).second) throw Error(ErrorKind::StageFailure, "closed walk is not simple", {{"vertex", v}});
  require_cycle(aux.graph(), q);
  if (q.size() < min_len || q.size() > max_len) {
    throw Error(ErrorKind::StageFailure, "cycle length outside the window",
                {{"length", q.size()}, {"min", min_len}, {"max", max_len}, {"tree_path", tree_path.size()},
                 {"arms", {arm0.size() - 1, arm1.size() - 1}}});
  }

  AssembledCycle out;
  out.q = q;
  const std::size_t len = q.size();
  std::unordered_set<Vertex> in_r1(r.r[0].begin(), r.r[0].end()), in_r2(r.r[1].begin(), r.r[1].end());
  // c: first tree-path index past the R1 prefix; b: first index of the R2 suffix
  std::size_t c = 0;
  while (c < tree_path.size() && in_r1.count(tree_path[c])) ++c;
  std::size_t b = tree_path.size();
  while (b > 0 && in_r2.count(tree_path[b - 1])) --b;
  const std::size_t x = static_cast<std::size_t>(std::find(q.begin(), q.end(), cs.meet) - q.begin());
  auto arc = [&](std::size_t from, std::size_t to) {  // from .. to in cycle order, in edges
    const std::size_t l = (to + len - from) % len;
    return CoverArc{from % len, std::clamp<std::size_t>(l, 1, len - 1)};
  };
  // each window is widened by one edge so the boundary edges pair with both sides
  const std::size_t last_r1 = c == 0 ? 0 : c - 1;
  out.windows[0] = arc(x, std::min(b, tree_path.size() - 1));           // X1 and T minus R2
  out.windows[1] = arc(last_r1, x);                                     // T minus R1 and X2
  out.windows[2] = arc(b == 0 ? len - 1 : b - 1, std::min(c, len - 1));  // X1 and X2
  out.cover.assign(out.windows.begin(), out.windows.end());
  out.certificate = is_good_cycle(aux, h, q, out.cover);
  if (!out.certificate.good) {
    auto cover = maximal_good_arcs(aux, h, q);
    if (!cover.empty()) {
      auto cert = is_good_cycle(aux, h, q, cover);
      out.fallback_cover = true;
      out.cover = std::move(cover);
      out.certificate = std::move(cert);
    }
  }
  return out;
}

// ---- lift ------------------------------------------------------------------

std::optional<std::size_t> lift_split(std::size_t short_len, std::size_t long_len, std::size_t len, std::size_t n) {
  if (len == 0 || long_len <= short_len) return std::nullopt;
  const std::size_t base = len * short_len;
  if (n < base) return std::nullopt;
  const std::size_t extra = n - base;
  const std::size_t step = long_len - short_len;
  if (extra % step != 0 || extra / step > len) return std::nullopt;
  return extra / step;
}

std::pair<std::size_t, std::size_t> lift_window(std::size_t short_len, std::size_t long_len, std::size_t n) {
  // len * short <= n <= len * long
  return {(n + long_len - 1) / long_len, n / short_len};
}

nlohmann::json LiftResult::to_json() const {
  return {{"cycle", cycle}, {"longs", longs}, {"color", color}, {"length", length}};
}

LiftResult lift_cycle(const AuxGraph& aux, std::span<const Vertex> q, std::size_t n) {
  require_cycle(aux.graph(), q);
  const std::size_t len = q.size();
  auto x = lift_split(aux.short_length(), aux.long_length(), len, n);
  if (!x) {
    throw Error(ErrorKind::InvalidArgument, "no split of the target length over the cycle",
                {{"length", len}, {"n", n}, {"short", aux.short_length()}, {"long", aux.long_length()}});
  }
  LiftResult out;
  std::vector<std::size_t> idx(len);
  for (std::size_t i = 0; i < len; ++i) idx[i] = aux.index(q[i], q[(i + 1) % len]);
  out.color = aux.record(idx[0]).color;
  for (std::size_t i = 0; i < len; ++i)
    if (aux.record(idx[i]).color != out.color) {
      throw Error(ErrorKind::InvalidArgument, "cycle is not monochromatic in G", {{"position", i}});
    }
  std::vector<std::size_t> order(len);
  for (std::size_t i = 0; i < len; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return idx[a] < idx[b]; });
  out.longs.assign(len, 0);
  for (std::size_t k = 0; k < *x; ++k) out.longs[order[k]] = 1;
  std::unordered_map<Vertex, std::size_t> owner;
  for (std::size_t i = 0; i < len; ++i) {
    Path arc = out.longs[i] ? aux.long_path(idx[i], q[i]) : aux.short_path(idx[i], q[i]);
    for (std::size_t j = 0; j + 1 < arc.size(); ++j) {
      auto [it, fresh] = owner.emplace(arc[j], i);
      if (!fresh) {
        throw Error(ErrorKind::VerificationFailed, "lifted walk repeats a vertex",
                    {{"vertex", arc[j]},
                     {"aux_edges", {aux.endpoints(idx[it->second]), aux.endpoints(idx[i])}}});
      }
      out.cycle.push_back(arc[j]);
    }
  }
  out.length = out.cycle.size();
  if (out.length != n) throw Error(ErrorKind::VerificationFailed, "lifted length differs from target");
  return out;
}

// ---- final check -----------------------------------------------------------

nlohmann::json FinalReport::to_json() const {
  nlohmann::json j{{"is_cycle", is_cycle}, {"exact_length", exact_length}, {"monochromatic", monochromatic},
                   {"passed", passed()}, {"witness", witness}};
  j["induced"] = induced ? nlohmann::json(*induced) : nlohmann::json(nullptr);
  return j;
}

FinalReport verify_final(const Graph& host, const EdgeColoring& coloring, std::span<const Vertex> q, std::size_t n,
                         Mode mode, std::size_t jobs) {
  FinalReport rep;
  const std::size_t len = q.size();
  rep.exact_length = len == n;
  if (!rep.exact_length) rep.witness["length"] = len;
  std::set<Vertex> distinct(q.begin(), q.end());
  rep.is_cycle = len >= 3 && distinct.size() == len;
  for (std::size_t i = 0; rep.is_cycle && i < len; ++i) {
    const Vertex a = q[i], b = q[(i + 1) % len];
    if (!host.contains(a) || !host.contains(b) || !host.has_edge(a, b)) {
      rep.is_cycle = false;
      rep.witness["missing_edge"] = {a, b};
    }
  }
  if (!rep.is_cycle) {
    rep.monochromatic = false;
    if (mode != Mode::NonInduced) rep.induced = false;
    return rep;
  }
  rep.monochromatic = true;
  const Color c = coloring.color(q[0], q[1]);
  for (std::size_t i = 0; i < len; ++i)
    if (coloring.color(q[i], q[(i + 1) % len]) != c || c == kNoColor) {
      rep.monochromatic = false;
      rep.witness["off_color_edge"] = {q[i], q[(i + 1) % len]};
      break;
    }
  if (mode == Mode::NonInduced) return rep;
  std::mutex mu;
  std::optional<VertexPair> chord;
  parallel_for(len, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 2; j < len; ++j) {
      if (i == 0 && j == len - 1) continue;
      if (host.has_edge(q[i], q[j])) {
        std::lock_guard lock(mu);
        VertexPair p{q[i], q[j]};
        if (!chord || p < *chord) chord = p;
      }
    }
  });
  rep.induced = !chord;
  if (chord) rep.witness["chord"] = {chord->first, chord->second};
  return rep;
}

}  // namespace sizeramsey
