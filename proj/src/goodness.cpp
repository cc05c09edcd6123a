#include "sizeramsey/goodness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "sizeramsey/error.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

// ---- incremental checker ---------------------------------------------------

PathChecker::PathChecker(const AuxGraph& aux, const Hypergraph& h)
    : aux_(&aux),
      h_(&h),
      cnt_(h.vertex_count(), 0),
      allowed_(h.vertex_count(), 1),
      hits_(h.edge_count(), 0),
      in_path_(h.edge_count(), 0),
      on_path_(h.vertex_count(), 0) {}

void PathChecker::bump_violation(Vertex x, int cnt_delta, int allowed_delta) {
  auto excess = [&] { return cnt_[x] > allowed_[x] ? cnt_[x] - allowed_[x] : 0u; };
  const auto before = excess();
  cnt_[x] = static_cast<std::uint32_t>(static_cast<int>(cnt_[x]) + cnt_delta);
  allowed_[x] = static_cast<std::uint8_t>(allowed_[x] + allowed_delta);
  violations_ = violations_ - before + excess();
}

bool PathChecker::contains(Vertex v) const { return v < on_path_.size() && on_path_[v]; }

void PathChecker::start(Vertex v) {
  if (!path_.empty()) throw Error(ErrorKind::InvalidArgument, "checker already holds a path");
  path_.push_back(v);
  on_path_[v] = 1;
}

void PathChecker::push(Vertex u) {
  if (path_.empty()) throw Error(ErrorKind::InvalidArgument, "push on an empty path");
  if (on_path_[u]) throw Error(ErrorKind::NotAPath, "vertex already on the path", {{"vertex", u}});
  const Vertex v = path_.back();
  const HyperedgeId hid = aux_->record(aux_->index(v, u)).hid;
  Frame frame;
  if (path_.size() >= 2) bump_violation(v, 0, +1);
  in_path_[hid] = 1;
  if (hits_[hid] >= 2) --outside_over_;
  for (Vertex x : h_->edge(hid)) {
    bump_violation(x, +1, 0);
    if (cnt_[x] != 1) continue;
    for (HyperedgeId f : h_->incident(x)) {
      if (++hits_[f] == 2 && !in_path_[f]) {
        ++outside_over_;
        frame.newly_over.push_back(f);
      }
    }
  }
  path_.push_back(u);
  on_path_[u] = 1;
  hyper_.push_back(hid);
  frames_.push_back(std::move(frame));
}

void PathChecker::pop() {
  if (path_.empty()) throw Error(ErrorKind::InvalidArgument, "pop on an empty path");
  if (hyper_.empty()) {
    on_path_[path_.back()] = 0;
    path_.pop_back();
    return;
  }
  const HyperedgeId hid = hyper_.back();
  for (Vertex x : h_->edge(hid)) {
    if (cnt_[x] == 1) {
      for (HyperedgeId f : h_->incident(x)) {
        if (hits_[f]-- == 2 && !in_path_[f]) --outside_over_;
      }
    }
    bump_violation(x, -1, 0);
  }
  in_path_[hid] = 0;
  if (hits_[hid] >= 2) ++outside_over_;
  if (path_.size() >= 3) bump_violation(path_[path_.size() - 2], 0, -1);
  on_path_[path_.back()] = 0;
  path_.pop_back();
  hyper_.pop_back();
  frames_.pop_back();
}

void PathChecker::clear() {
  while (!path_.empty()) pop();
}

std::optional<PathChecker::Ruin> PathChecker::last_ruin() const {
  if (frames_.empty() || frames_.back().newly_over.empty()) return std::nullopt;
  const auto& over = frames_.back().newly_over;
  const HyperedgeId w = *std::min_element(over.begin(), over.end());
  const HyperedgeId last = hyper_.back();
  std::size_t best = hyper_.size() - 1;
  for (Vertex x : h_->edge(w)) {
    if (cnt_[x] == 0 || h_->edge_contains(last, x)) continue;
    for (std::size_t i = 0; i + 1 < hyper_.size(); ++i) {
      if (h_->edge_contains(hyper_[i], x)) {
        best = std::min(best, i);
        break;
      }
    }
  }
  if (best == hyper_.size() - 1) {
    // w meets the last hyperedge at the joint; report the edge before it
    best = hyper_.size() >= 2 ? hyper_.size() - 2 : 0;
  }
  return Ruin{w, best};
}

// ---- static checks ---------------------------------------------------------

namespace {

std::string_view kind_name(CertKind k) {
  switch (k) {
    case CertKind::Path: return "path";
    case CertKind::Tree: return "tree";
    case CertKind::Cycle: return "cycle";
  }
  return "?";
}

std::vector<HyperedgeId> path_hyperedges(const AuxGraph& aux, std::span<const Vertex> p) {
  std::vector<HyperedgeId> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    auto idx = aux.find(p[i], p[i + 1]);
    if (!idx) throw Error(ErrorKind::NotAPath, "consecutive vertices not joined in G", {{"pair", {p[i], p[i + 1]}}});
    out.push_back(aux.record(*idx).hid);
  }
  return out;
}

/// Direct evaluation of both goodness conditions; witness JSON or null.
nlohmann::json path_violation(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> p) {
  auto hs = path_hyperedges(aux, p);
  std::map<Vertex, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (Vertex x : h.edge(hs[i])) where[x].push_back(i);
  for (const auto& [x, list] : where) {
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        const std::size_t i = list[a], j = list[b];
        if (j != i + 1 || x != p[i + 1]) {
          return {{"condition", 1}, {"hyperedges", {hs[i], hs[j]}}, {"edges", {i, j}}, {"vertex", x}};
        }
      }
  }
  std::map<HyperedgeId, std::vector<Vertex>> meets;
  for (const auto& [x, list] : where)
    for (HyperedgeId f : h.incident(x))
      if (std::find(hs.begin(), hs.end(), f) == hs.end()) meets[f].push_back(x);
  for (const auto& [f, xs] : meets) {
    if (xs.size() < 2) continue;
    return {{"condition", 2},
            {"hyperedge", f},
            {"vertices", {xs[0], xs[1]}},
            {"edges", {where[xs[0]].front(), where[xs[1]].front()}}};
  }
  return nullptr;
}

}  // namespace

nlohmann::json GoodCertificate::to_json() const {
  nlohmann::json j{{"kind", std::string(kind_name(kind))}, {"vertices", vertices}, {"good", good}};
  if (!cover.empty()) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& a : cover) c.push_back({a.start, a.length});
    j["cover"] = std::move(c);
  }
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

GoodCertificate is_good_path(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> p) {
  require_path(aux.graph(), p);
  GoodCertificate c;
  c.kind = CertKind::Path;
  c.vertices.assign(p.begin(), p.end());
  c.witness = path_violation(aux, h, p);
  c.good = c.witness.is_null();
  return c;
}

std::optional<HyperedgeId> ruin_witness(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> p,
                                        Vertex u) {
  require_path(aux.graph(), p);
  if (std::find(p.begin(), p.end(), u) != p.end() || !aux.graph().has_edge(p.back(), u)) {
    throw Error(ErrorKind::InvalidArgument, "u must be a new neighbour of the path end", {{"vertex", u}});
  }
  if (!path_violation(aux, h, p).is_null()) throw Error(ErrorKind::InvalidArgument, "path is not good");
  PathChecker chk(aux, h);
  chk.start(p.front());
  for (std::size_t i = 1; i < p.size(); ++i) chk.push(p[i]);
  chk.push(u);
  if (chk.good()) return std::nullopt;
  auto r = chk.last_ruin();
  if (!r) return std::nullopt;
  return r->witness;
}

GoodCertificate is_good_tree(const AuxGraph& aux, const Hypergraph& h, const RootedTree& t) {
  std::unordered_map<Vertex, Vertex> parent;
  std::unordered_map<Vertex, std::vector<Vertex>> children;
  for (auto [child, par] : t.parent) {
    if (!parent.emplace(child, par).second) throw Error(ErrorKind::NotATree, "vertex has two parents");
    children[par].push_back(child);
  }
  for (Vertex v : t.members) {
    if (v == t.root) continue;
    if (!parent.count(v)) throw Error(ErrorKind::NotATree, "member without parent", {{"vertex", v}});
    if (!aux.graph().has_edge(v, parent[v])) throw Error(ErrorKind::NotATree, "tree edge missing in G");
    std::size_t steps = 0;
    for (Vertex x = v; x != t.root; x = parent.at(x)) {
      if (++steps > t.members.size()) throw Error(ErrorKind::NotATree, "parent pointers contain a cycle");
      if (!parent.count(x)) throw Error(ErrorKind::NotATree, "vertex does not reach the root", {{"vertex", x}});
    }
  }
  for (auto& [p, ch] : children) std::sort(ch.begin(), ch.end());

  GoodCertificate c;
  c.kind = CertKind::Tree;
  c.vertices = t.members;
  PathChecker chk(aux, h);
  std::optional<Path> bad;
  std::function<void(Vertex, Vertex)> descend = [&](Vertex x, Vertex skip) {
    if (bad) return;
    auto it = children.find(x);
    if (it == children.end()) return;
    for (Vertex y : it->second) {
      if (y == skip) continue;
      chk.push(y);
      if (!chk.good()) {
        bad = chk.path();
      } else {
        descend(y, kNoVertex);
      }
      chk.pop();
      if (bad) return;
    }
  };
  std::vector<Vertex> order = t.members;
  std::sort(order.begin(), order.end());
  for (Vertex a : order) {
    Path arm{a};
    while (arm.back() != t.root) arm.push_back(parent.at(arm.back()));
    chk.clear();
    chk.start(arm.front());
    for (std::size_t i = 1; i < arm.size() && !bad; ++i) {
      chk.push(arm[i]);
      if (!chk.good()) bad = chk.path();
    }
    if (bad) break;
    const Vertex skip = arm.size() >= 2 ? arm[arm.size() - 2] : kNoVertex;
    descend(t.root, skip);
    if (bad) break;
  }
  c.good = !bad;
  if (bad) c.witness = {{"path", *bad}, {"violation", path_violation(aux, h, *bad)}};
  return c;
}

GoodCertificate is_good_cycle(const AuxGraph& aux, const Hypergraph& h, std::span<const Vertex> q,
                              std::span<const CoverArc> cover) {
  require_cycle(aux.graph(), q);
  const std::size_t len = q.size();
  GoodCertificate c;
  c.kind = CertKind::Cycle;
  c.vertices.assign(q.begin(), q.end());
  c.cover.assign(cover.begin(), cover.end());
  std::vector<char> covered(len * len, 0);
  for (std::size_t a = 0; a < cover.size(); ++a) {
    const auto& arc = cover[a];
    if (arc.length == 0 || arc.length >= len || arc.start >= len) {
      throw Error(ErrorKind::InvalidArgument, "cover member is not a subpath of the cycle",
                  {{"member", a}, {"start", arc.start}, {"length", arc.length}});
    }
    Path p;
    for (std::size_t i = 0; i <= arc.length; ++i) p.push_back(q[(arc.start + i) % len]);
    if (auto w = path_violation(aux, h, p); !w.is_null()) {
      c.good = false;
      c.witness = {{"bad_member", a}, {"violation", w}};
      return c;
    }
    for (std::size_t i = 0; i < arc.length; ++i)
      for (std::size_t j = 0; j < arc.length; ++j)
        covered[((arc.start + i) % len) * len + (arc.start + j) % len] = 1;
  }
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j)
      if (!covered[i * len + j]) {
        c.good = false;
        c.witness = {{"uncovered_pair", {i, j}}};
        return c;
      }
  c.good = true;
  return c;
}

nlohmann::json ProbeReport::to_json() const {
  return {{"trials", trials}, {"checked", checked}, {"bad", bad}};
}

ProbeReport short_paths_are_good_probe(const AuxGraph& aux, const Hypergraph& h, std::size_t g, std::size_t trials,
                                       std::uint64_t seed) {
  ProbeReport rep;
  rep.trials = trials;
  if (trials == 0 || aux.edge_count() == 0 || g < 2) return rep;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    // a bad path on g vertices would close a Berge cycle of length g
    const std::size_t target = 1 + uniform_below(rng, g - 1);
    auto [a, b] = aux.endpoints(uniform_below(rng, aux.edge_count()));
    Path p{a, b};
    while (p.size() - 1 < target) {
      std::vector<Vertex> next;
      for (Vertex w : aux.graph().neighbors(p.back()))
        if (std::find(p.begin(), p.end(), w) == p.end()) next.push_back(w);
      if (next.empty()) break;
      p.push_back(next[uniform_below(rng, next.size())]);
    }
    ++rep.checked;
    if (!path_violation(aux, h, p).is_null()) rep.bad.push_back(p);
  }
  return rep;
}

}  // namespace sizeramsey
