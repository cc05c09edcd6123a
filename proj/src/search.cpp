#include "sizeramsey/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "sizeramsey/error.hpp"

namespace sizeramsey {

// ---- profile and reports ---------------------------------------------------

nlohmann::json SearchProfile::to_json() const {
  return {{"path_target", path_target}, {"dfs_s1_cap", dfs_s1_cap},   {"dfs_s2_cap", dfs_s2_cap},
          {"growth", growth},           {"expansion", expansion},     {"tree_target", tree_target},
          {"tree_s1_cap", tree_s1_cap}, {"tree_s2_cap", tree_s2_cap}, {"path_floor", path_floor},
          {"max_rounds", max_rounds},   {"debug_invariants", debug_invariants}};
}

SearchProfile SearchProfile::from_json(const nlohmann::json& j) {
  SearchProfile p;
  p.path_target = j.value("path_target", p.path_target);
  p.dfs_s1_cap = j.value("dfs_s1_cap", p.dfs_s1_cap);
  p.dfs_s2_cap = j.value("dfs_s2_cap", p.dfs_s2_cap);
  p.growth = j.value("growth", p.growth);
  p.expansion = j.value("expansion", p.expansion);
  p.tree_target = j.value("tree_target", p.tree_target);
  p.tree_s1_cap = j.value("tree_s1_cap", p.tree_s1_cap);
  p.tree_s2_cap = j.value("tree_s2_cap", p.tree_s2_cap);
  p.path_floor = j.value("path_floor", p.path_floor);
  p.max_rounds = j.value("max_rounds", p.max_rounds);
  p.debug_invariants = j.value("debug_invariants", p.debug_invariants);
  if (p.growth < 1 || p.expansion < 1.0 || p.path_target < 2) {
    throw Error(ErrorKind::InvalidArgument, "search profile needs growth >= 1, expansion >= 1, path_target >= 2",
                p.to_json());
  }
  return p;
}

void InvariantReport::expect(bool ok, std::string_view claim, nlohmann::json details) {
  if (!enabled) return;
  ++checks;
  if (!ok && violations.size() < 64) {
    violations.push_back({{"claim", std::string(claim)}, {"details", std::move(details)}});
  }
}

nlohmann::json InvariantReport::to_json() const {
  return {{"enabled", enabled}, {"checks", checks}, {"violations", violations}};
}

// ---- F ---------------------------------------------------------------------

AuxForest::AuxForest(const Hypergraph& h) : ig_(h), member_(h.edge_count(), 0) {}

bool AuxForest::add_vertex(HyperedgeId a) {
  if (member_[a]) return false;
  member_[a] = 1;
  ++vertices_;
  return true;
}

HyperedgeId AuxForest::find(Vertex label, HyperedgeId a) {
  auto& d = dsu_[label];
  HyperedgeId r = a;
  for (auto it = d.find(r); it != d.end() && it->second != r; it = d.find(r)) r = it->second;
  for (auto it = d.find(a); it != d.end() && it->second != r; it = d.find(a)) {
    const HyperedgeId next = it->second;
    it->second = r;
    a = next;
  }
  return r;
}

bool AuxForest::add_edge(HyperedgeId a, HyperedgeId b) {
  add_vertex(a);
  add_vertex(b);
  auto label = ig_.label(a, b);
  if (!label) {
    ++unlabeled_events_;
    return false;
  }
  edges_.push_back({std::min(a, b), std::max(a, b), *label});
  const HyperedgeId ra = find(*label, a), rb = find(*label, b);
  if (ra == rb) {
    ++sunflower_events_;
    return true;
  }
  dsu_[*label][ra] = rb;
  return false;
}

std::vector<HyperedgeId> AuxForest::vertices() const {
  std::vector<HyperedgeId> out;
  for (HyperedgeId a = 0; a < member_.size(); ++a)
    if (member_[a]) out.push_back(a);
  return out;
}

namespace {

enum Place : std::uint8_t { kOutside, kU, kP, kS1, kS2, kTree };

std::vector<std::uint8_t> initial_places(const Graph& gprime) {
  std::vector<std::uint8_t> place(gprime.id_bound(), kOutside);
  for (Vertex v : gprime.vertices()) place[v] = kU;
  return place;
}

std::size_t count_place(const std::vector<std::uint8_t>& place, Place which) {
  return static_cast<std::size_t>(std::count(place.begin(), place.end(), static_cast<std::uint8_t>(which)));
}

/// Hyperedges in V(F) have both aux endpoints outside U.
void check_f_out_of_u(InvariantReport& inv, const AuxForest& f, const AuxGraph& aux,
                      const std::vector<std::uint8_t>& place) {
  for (HyperedgeId a : f.vertices()) {
    auto idx = aux.by_hyperedge(a);
    if (!idx) continue;
    auto [x, y] = aux.endpoints(*idx);
    const bool in_u = (x < place.size() && place[x] == kU) || (y < place.size() && place[y] == kU);
    if (in_u) {
      inv.expect(false, "f-outside-u", {{"hyperedge", a}});
      return;
    }
  }
  inv.expect(true, "f-outside-u");
}

void check_sunflower(InvariantReport& inv, const AuxForest& f) {
  auto cyc = find_sunflower_cycle(f.edges());
  nlohmann::json d;
  if (cyc) d = {{"label", cyc->front().label}, {"length", cyc->size()}};
  inv.expect(!cyc, "f-sunflower-free", d);
}

}  // namespace

// ---- modified DFS ----------------------------------------------------------

DfsResult find_good_path(const Graph& gprime, const AuxGraph& aux, const Hypergraph& h, const SearchProfile& p) {
  DfsResult res;
  res.invariants.enabled = p.debug_invariants;
  auto& inv = res.invariants;
  const auto order = gprime.vertices();
  auto place = initial_places(gprime);
  std::size_t cursor = 0, u_count = order.size(), s1 = 0, s2 = 0;
  std::size_t dead_ends = 0, extensions = 0, ruins = 0;
  PathChecker chk(aux, h);
  AuxForest f(h);

  auto state = [&] {
    return nlohmann::json{{"P", chk.path().size()}, {"S1", s1},         {"S2", s2},
                          {"U", u_count},           {"F_vertices", f.vertex_count()}, {"F_edges", f.edge_count()},
                          {"rounds", res.rounds},   {"dead_ends", dead_ends},         {"extensions", extensions},
                          {"ruins", ruins},         {"sunflower_events", f.sunflower_events()}};
  };
  auto fail = [&](std::string why) {
    auto d = state();
    d["reason"] = why;
    d["invariants"] = inv.to_json();
    throw Error(ErrorKind::StageFailure, "good path search failed: " + why, d);
  };

  while (chk.path().size() < p.path_target) {
    if (p.dfs_s1_cap && s1 >= p.dfs_s1_cap) fail("S1 cap");
    if (p.dfs_s2_cap && s2 >= p.dfs_s2_cap) fail("S2 cap");
    if (u_count == 0 && chk.path().empty()) fail("U exhausted");
    if (++res.rounds > p.max_rounds) fail("round limit");

    if (chk.path().empty()) {
      while (place[order[cursor]] != kU) ++cursor;
      place[order[cursor]] = kP;
      --u_count;
      chk.start(order[cursor]);
    }
    const Vertex v = chk.path().back();
    Vertex u = kNoVertex;
    for (Vertex w : gprime.neighbors(v))
      if (place[w] == kU) {
        u = w;
        break;
      }
    if (u == kNoVertex) {
      chk.pop();
      place[v] = kS1;
      ++s1;
      ++dead_ends;
    } else {
      place[u] = kP;
      --u_count;
      chk.push(u);
      const HyperedgeId h1 = aux.h(v, u);
      if (chk.good()) {
        f.add_vertex(h1);
        ++extensions;
      } else {
        ++ruins;
        auto r = chk.last_ruin();
        if (!r || chk.hyperedges().size() < 2) fail("bad extension without a ruining hyperedge");
        const HyperedgeId h_prev = chk.hyperedges()[chk.hyperedges().size() - 2];
        const HyperedgeId h_e = chk.hyperedges()[r->edge_index];
        if (!f.contains(r->witness)) {
          f.add_vertex(r->witness);
          f.add_edge(r->witness, h_e);
        }
        f.add_vertex(h1);
        f.add_edge(h1, r->witness);
        f.add_edge(h1, h_prev);
        if (auto idx = aux.by_hyperedge(r->witness)) {
          auto [x, y] = aux.endpoints(*idx);
          for (Vertex z : {x, y})
            if (z < place.size() && place[z] == kU) {
              place[z] = kS2;
              --u_count;
              ++s2;
            }
        }
        chk.pop();
        place[u] = kS2;
        ++s2;
      }
    }

    if (inv.enabled) {
      inv.expect(chk.good() && (chk.path().size() < 2 || is_good_path(aux, h, chk.path()).good), "good-path",
                 {{"round", res.rounds}});
      check_f_out_of_u(inv, f, aux, place);
      bool s1_ok = true;
      for (Vertex x : order)
        if (place[x] == kS1)
          for (Vertex w : gprime.neighbors(x)) s1_ok &= place[w] != kU;
      inv.expect(s1_ok, "s1-no-u-neighbour", {{"round", res.rounds}});
      const double vf = static_cast<double>(f.vertex_count());
      const double lp = static_cast<double>(chk.path().size());
      inv.expect(vf >= static_cast<double>(s2) / 3.0 && vf <= lp + static_cast<double>(s1 + 2 * s2), "f-size", state());
      inv.expect(static_cast<double>(f.edge_count()) >= 1.5 * (vf - lp - static_cast<double>(s1)), "f-density",
                 state());
      check_sunflower(inv, f);
    }
  }
  res.path = chk.path();
  res.stats = state();
  return res;
}

// ---- tree growth -----------------------------------------------------------

std::size_t TreeState::size() const { return spine.size() + tree_edges[0].size() + tree_edges[1].size(); }

std::vector<Vertex> TreeState::tree_vertices(int side) const {
  std::vector<Vertex> out{side == 0 ? spine.front() : spine.back()};
  for (auto [c, par] : tree_edges[side]) out.push_back(c);
  return out;
}

RootedTree TreeState::as_rooted_tree() const {
  RootedTree t;
  t.root = root;
  const auto r = static_cast<std::size_t>(std::find(spine.begin(), spine.end(), root) - spine.begin());
  for (std::size_t i = 0; i < spine.size(); ++i) {
    t.members.push_back(spine[i]);
    if (i < r) t.parent.emplace_back(spine[i], spine[i + 1]);
    if (i > r) t.parent.emplace_back(spine[i], spine[i - 1]);
  }
  for (int s = 0; s < 2; ++s)
    for (auto e : tree_edges[s]) {
      t.members.push_back(e.first);
      t.parent.push_back(e);
    }
  return t;
}

Path TreeState::path_to_root(Vertex v) const {
  std::unordered_map<Vertex, Vertex> parent;
  for (auto [c, par] : as_rooted_tree().parent) parent.emplace(c, par);
  Path out{v};
  while (out.back() != root) {
    auto it = parent.find(out.back());
    if (it == parent.end()) throw Error(ErrorKind::InvalidArgument, "vertex is not in the tree", {{"vertex", v}});
    out.push_back(it->second);
  }
  return out;
}

nlohmann::json TreeState::to_json() const {
  nlohmann::json layers_j = nlohmann::json::array();
  for (const auto& l : layers) layers_j.push_back({{"side", l.side}, {"vertices", l.vertices}});
  return {{"spine", spine},   {"root", root},   {"tree_edges", tree_edges}, {"leaves", leaves},
          {"layers", layers_j}, {"rounds", rounds}, {"stats", stats},       {"invariants", invariants.to_json()}};
}

namespace {

class TreeGrower {
 public:
  TreeGrower(const Graph& gprime, const AuxGraph& aux, const Hypergraph& h, Path path, const SearchProfile& p)
      : g_(gprime), aux_(aux), h_(h), p_(p), place_(initial_places(gprime)), f_(h),
        parent_(gprime.id_bound(), kNoVertex), children_(gprime.id_bound()) {
    if (path.size() < 3) throw Error(ErrorKind::InvalidArgument, "tree growth needs a path of 3 or more vertices");
    spine_.assign(path.begin(), path.end());
    root_ = path[path.size() / 2];
    for (Vertex v : path) {
      if (!gprime.contains(v)) throw Error(ErrorKind::InvalidArgument, "path leaves G'", {{"vertex", v}});
      place_[v] = kP;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) f_.add_vertex(aux.h(path[i], path[i + 1]));
    f_initial_ = f_.vertex_count();
    u_count_ = count_place(place_, kU);
    reset_spine_parents();
    reset_trees();
    st_.invariants.enabled = p.debug_invariants;
  }

  TreeState run() {
    auto& inv = st_.invariants;
    while (true) {
      if (size() >= p_.tree_target) break;
      if (p_.tree_s1_cap && s1_ >= p_.tree_s1_cap) fail("S1 cap");
      if (p_.tree_s2_cap && s2_ >= p_.tree_s2_cap) fail("S2 cap");
      if (spine_.size() < p_.path_floor) fail("path floor");
      if (++st_.rounds > p_.max_rounds) fail("round limit");
      round();
      st_.series.push_back({{"round", st_.rounds}, {"P", spine_.size()}, {"T", size()}, {"X1", leaves_[0].size()},
                            {"X2", leaves_[1].size()}, {"S1", s1_}, {"S2", s2_}, {"F", f_.vertex_count()}});
      if (inv.enabled) check_invariants();
    }
    return finish();
  }

 private:
  int small_side() const { return leaves_[0].size() <= leaves_[1].size() ? 0 : 1; }
  Vertex end_of(int side) const { return side == 0 ? spine_.front() : spine_.back(); }
  std::size_t size() const { return spine_.size() + members_[0].size() + members_[1].size(); }

  void reset_spine_parents() {
    auto r = static_cast<std::size_t>(std::find(spine_.begin(), spine_.end(), root_) - spine_.begin());
    for (std::size_t i = 0; i < spine_.size(); ++i)
      parent_[spine_[i]] = i < r ? spine_[i + 1] : i > r ? spine_[i - 1] : kNoVertex;
  }

  void reset_trees() {
    for (int s = 0; s < 2; ++s) {
      for (Vertex x : members_[s]) children_[x].clear();
      children_[end_of(s)].clear();
      members_[s].clear();
      leaves_[s] = {end_of(s)};
    }
    st_.layers.clear();
  }

  [[noreturn]] void fail(const std::string& why) {
    auto d = state();
    d["reason"] = why;
    d["invariants"] = st_.invariants.to_json();
    throw Error(ErrorKind::StageFailure, "tree growth failed: " + why, d);
  }

  nlohmann::json state() const {
    return {{"P", spine_.size()},   {"T", size()},
            {"X1", leaves_[0].size()}, {"X2", leaves_[1].size()},
            {"S1", s1_},            {"S2", s2_},
            {"U", u_count_},        {"F_vertices", f_.vertex_count()},
            {"F_edges", f_.edge_count()}, {"rounds", st_.rounds},
            {"no_expansion_rounds", step1_}, {"growth_rounds", step4_},
            {"bad_tree_rounds", step5_}, {"sunflower_events", f_.sunflower_events()}};
  }

  /// Pushes the walk from the root into the spine half and tree on `side`,
  /// depth first, stopping at the first bad path. Returns its last vertex.
  std::optional<Vertex> explore_side(PathChecker& chk, int side) {
    // spine segment from the root towards this side's end
    auto r = static_cast<std::size_t>(std::find(spine_.begin(), spine_.end(), root_) - spine_.begin());
    std::vector<Vertex> seg;
    if (side == 0)
      for (std::size_t i = r; i-- > 0;) seg.push_back(spine_[i]);
    else
      for (std::size_t i = r + 1; i < spine_.size(); ++i) seg.push_back(spine_[i]);
    const std::size_t base = chk.path().size();
    for (Vertex x : seg) {
      chk.push(x);
      if (!chk.good()) return x;
    }
    // the tree on that side, with push/pop
    std::vector<std::pair<Vertex, std::size_t>> stack{{end_of(side), 0}};
    while (!stack.empty()) {
      auto& [x, next] = stack.back();
      if (next < children_[x].size()) {
        const Vertex c = children_[x][next++];
        chk.push(c);
        if (!chk.good()) return c;
        stack.emplace_back(c, 0);
      } else {
        stack.pop_back();
        if (!stack.empty()) chk.pop();
      }
    }
    while (chk.path().size() > base) chk.pop();
    return std::nullopt;
  }

  struct Ruin {
    HyperedgeId witness;
    HyperedgeId edge_h;
  };

  /// Nothing when T + v'v is good; otherwise the ruining hyperedge and the
  /// tree edge it meets on a path through the root and v'.
  std::optional<Ruin> extension_ruin(Vertex v, Vertex vp, int side) {
    PathChecker chk(aux_, h_);
    chk.start(v);
    for (Vertex x = vp; x != kNoVertex; x = parent_[x]) chk.push(x);
    std::optional<Vertex> bad_end;
    if (!chk.good()) bad_end = root_;
    else bad_end = explore_side(chk, 1 - side);
    if (!bad_end) return std::nullopt;
    // rebuild as (bad end .. root .. v') + v so the ruin is reported at v
    const Path& walk = chk.path();
    PathChecker back(aux_, h_);
    back.start(walk.back());
    for (std::size_t i = walk.size() - 1; i-- > 0;) back.push(walk[i]);
    auto r = back.last_ruin();
    if (back.good() || !r) fail("inconsistent goodness check on a tree extension");
    return Ruin{r->witness, back.hyperedges()[r->edge_index]};
  }

  void round() {
    const int a = small_side();
    const int b = 1 - a;
    const std::size_t xb = leaves_[b].size();
    // neighbours of X_a in U, each with its smallest attachment
    std::vector<Vertex> xs = leaves_[a];
    std::sort(xs.begin(), xs.end());
    std::unordered_map<Vertex, Vertex> attach;
    for (Vertex x : xs)
      for (Vertex w : g_.neighbors(x))
        if (place_[w] == kU) attach.try_emplace(w, x);
    const auto threshold = static_cast<std::size_t>(
        std::ceil(p_.expansion * static_cast<double>(p_.growth) * static_cast<double>(xb)));
    if (attach.size() <= threshold) {
      no_expansion(a);
      return;
    }
    std::vector<Vertex> cand;
    for (auto [w, x] : attach) cand.push_back(w);
    std::sort(cand.begin(), cand.end());
    cand.resize(threshold);
    std::unordered_map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < cand.size(); ++i) pos[cand[i]] = i;
    std::vector<char> removed(cand.size(), 0);
    std::vector<std::size_t> good, bad;
    std::vector<Ruin> ruin(cand.size(), Ruin{kNoHyperedge, kNoHyperedge});
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (removed[i]) continue;
      auto r = extension_ruin(cand[i], attach[cand[i]], a);
      if (!r) {
        good.push_back(i);
        continue;
      }
      ruin[i] = *r;
      bad.push_back(i);
      if (auto idx = aux_.by_hyperedge(r->witness)) {
        auto [x, y] = aux_.endpoints(*idx);
        for (Vertex z : {x, y})
          if (auto it = pos.find(z); it != pos.end() && it->second > i) removed[it->second] = 1;
      }
    }
    const std::size_t need = p_.growth * xb;
    if (good.size() >= need) {
      ++step4_;
      TreeLayer layer{a, {}};
      for (std::size_t k = 0; k < need; ++k) {
        const Vertex v = cand[good[k]];
        const Vertex vp = attach[v];
        parent_[v] = vp;
        children_[vp].push_back(v);
        members_[a].push_back(v);
        place_[v] = kTree;
        --u_count_;
        layer.vertices.push_back(v);
      }
      leaves_[a] = layer.vertices;
      st_.layers.push_back(std::move(layer));
      return;
    }
    bad_tree(cand, attach, bad, ruin, need);
  }

  void no_expansion(int a) {
    ++step1_;
    const Vertex va = end_of(a);
    if (va == root_ || spine_.size() <= 2) fail("path floor");
    // V(T1 u T2) - v_b goes to S1; the leaves of the failing side join S
    for (Vertex x : leaves_[a]) s_set_.push_back(x);
    for (int s = 0; s < 2; ++s)
      for (Vertex x : members_[s]) {
        place_[x] = kS1;
        parent_[x] = kNoVertex;
        ++s1_;
      }
    place_[va] = kS1;
    ++s1_;
    reset_trees();
    if (a == 0) spine_.pop_front();
    else spine_.pop_back();
    parent_[va] = kNoVertex;
    leaves_[0] = {spine_.front()};
    leaves_[1] = {spine_.back()};
    if (end_of(a) == root_) fail("path floor");
  }

  void bad_tree(const std::vector<Vertex>& cand, std::unordered_map<Vertex, Vertex>& attach,
                const std::vector<std::size_t>& bad, const std::vector<Ruin>& ruin, std::size_t need) {
    ++step5_;
    // the attached trees move to S2, their edges' hyperedges enter F
    for (int s = 0; s < 2; ++s)
      for (Vertex x : members_[s]) {
        f_.add_vertex(aux_.h(x, parent_[x]));
        place_[x] = kS2;
        ++s2_;
        ++tree_edge_vertices_;
      }
    const std::size_t take = std::min(need, bad.size());
    for (std::size_t k = 0; k < take; ++k) {
      const std::size_t i = bad[k];
      const Vertex v = cand[i];
      const Vertex vp = attach[v];
      const Vertex vpp = parent_[vp];
      if (place_[v] == kU) {
        place_[v] = kS2;
        --u_count_;
        ++s2_;
      }
      const HyperedgeId hv = aux_.h(v, vp);
      f_.add_vertex(hv);
      const bool fresh = !f_.contains(ruin[i].witness);
      if (fresh) f_.add_vertex(ruin[i].witness);
      if (auto idx = aux_.by_hyperedge(ruin[i].witness)) {
        auto [x, y] = aux_.endpoints(*idx);
        for (Vertex z : {x, y})
          if (z < place_.size() && place_[z] == kU) {
            place_[z] = kS2;
            --u_count_;
            ++s2_;
          }
      }
      if (vpp != kNoVertex) f_.add_edge(hv, aux_.h(vp, vpp));
      f_.add_edge(hv, ruin[i].witness);
      if (fresh) f_.add_edge(ruin[i].witness, ruin[i].edge_h);
    }
    for (int s = 0; s < 2; ++s)
      for (Vertex x : members_[s]) parent_[x] = kNoVertex;
    reset_trees();
  }

  void check_invariants() {
    auto& inv = st_.invariants;
    auto snapshot = finish_state();
    inv.expect(is_good_tree(aux_, h_, snapshot.as_rooted_tree()).good, "good-tree", {{"round", st_.rounds}});
    check_f_out_of_u(inv, f_, aux_, place_);
    // S barely expands into U: |N_U(S)| <= expansion * growth^2 * |S|
    std::unordered_map<Vertex, char> nb;
    for (Vertex x : s_set_)
      for (Vertex w : g_.neighbors(x))
        if (place_[w] == kU) nb.emplace(w, 1);
    inv.expect(static_cast<double>(nb.size()) <=
                   p_.expansion * static_cast<double>(p_.growth * p_.growth) * static_cast<double>(s_set_.size()),
               "s-expansion", {{"neighbourhood", nb.size()}, {"S", s_set_.size()}});
    const double vf = static_cast<double>(f_.vertex_count());
    const double n0 = static_cast<double>(f_initial_);
    inv.expect(vf >= static_cast<double>(s2_) / 4.0 && vf <= n0 + 2.0 * static_cast<double>(s2_), "f-size", state());
    // every bad-tree candidate brings one or two F vertices with two or three edges
    inv.expect(static_cast<double>(f_.edge_count()) >=
                   1.5 * (vf - n0 - static_cast<double>(tree_edge_vertices_)) - 1e-9,
               "f-density", state());
    check_sunflower(inv, f_);
    const std::size_t x0 = leaves_[0].size(), x1 = leaves_[1].size();
    inv.expect(x0 == x1 || x0 == p_.growth * x1 || x1 == p_.growth * x0, "leaf-ratio",
               {{"X1", x0}, {"X2", x1}});
    inv.expect(spine_.size() >= p_.path_floor, "path-floor", {{"P", spine_.size()}});
  }

  TreeState finish_state() const {
    TreeState t;
    t.spine.assign(spine_.begin(), spine_.end());
    t.root = root_;
    for (int s = 0; s < 2; ++s) {
      for (Vertex x : members_[s]) t.tree_edges[s].emplace_back(x, parent_[x]);
      t.leaves[s] = leaves_[s];
    }
    return t;
  }

  TreeState finish() {
    TreeState t = finish_state();
    t.layers = st_.layers;
    t.rounds = st_.rounds;
    t.series = st_.series;
    t.stats = state();
    t.stats["F_initial"] = f_initial_;
    t.stats["tree_edge_vertices"] = tree_edge_vertices_;
    t.invariants = st_.invariants;
    return t;
  }

  const Graph& g_;
  const AuxGraph& aux_;
  const Hypergraph& h_;
  const SearchProfile& p_;
  std::vector<std::uint8_t> place_;
  AuxForest f_;
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::deque<Vertex> spine_;
  Vertex root_ = kNoVertex;
  std::array<std::vector<Vertex>, 2> members_;  // tree vertices off the spine
  std::array<std::vector<Vertex>, 2> leaves_;
  std::vector<Vertex> s_set_;
  std::size_t u_count_ = 0, s1_ = 0, s2_ = 0;
  std::size_t f_initial_ = 0, tree_edge_vertices_ = 0;
  std::size_t step1_ = 0, step4_ = 0, step5_ = 0;
  TreeState st_;
};

}  // namespace

TreeState grow_trees(const Graph& gprime, const AuxGraph& aux, const Hypergraph& h, Path path,
                     const SearchProfile& p) {
  if (!is_good_path(aux, h, path).good) throw Error(ErrorKind::InvalidArgument, "tree growth needs a good path");
  TreeGrower grower(gprime, aux, h, std::move(path), p);
  return grower.run();
}

nlohmann::json RSets::to_json() const {
  return {{"R1", r[0]}, {"R2", r[1]}, {"rounds_back", rounds_back}, {"widened", widened}};
}

RSets compute_r_sets(const TreeState& ts, std::size_t rounds_back, std::size_t budget) {
  RSets out;
  std::array<std::vector<const TreeLayer*>, 2> per_side;
  for (const auto& l : ts.layers) per_side[static_cast<std::size_t>(l.side)].push_back(&l);
  const std::size_t most = std::max(per_side[0].size(), per_side[1].size());
  // R_t holds the last `back` layers grown on side t
  auto build = [&](std::size_t back) {
    for (std::size_t s = 0; s < 2; ++s) {
      out.r[s].clear();
      const auto& layers = per_side[s];
      for (std::size_t i = layers.size() > back ? layers.size() - back : 0; i < layers.size(); ++i)
        out.r[s].insert(out.r[s].end(), layers[i]->vertices.begin(), layers[i]->vertices.end());
    }
  };
  std::size_t back = rounds_back;
  build(back);
  auto over = [&] {
    for (int s = 0; s < 2; ++s)
      if (ts.tree_vertices(s).size() - out.r[static_cast<std::size_t>(s)].size() > budget) return true;
    return false;
  };
  while (over() && back < most) {
    build(++back);
    out.widened = true;
  }
  for (auto& r : out.r) std::sort(r.begin(), r.end());
  out.rounds_back = back;
  return out;
}

}  // namespace sizeramsey
