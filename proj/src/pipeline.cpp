#include "sizeramsey/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <functional>
#include <sstream>

#include "sizeramsey/error.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

// ---- profiles --------------------------------------------------------------

nlohmann::json CloseProfile::to_json() const {
  return {{"rounds_back", rounds_back}, {"spine_budget", spine_budget}, {"max_steps", max_steps},
          {"step_increment", step_increment}, {"retries", retries}};
}

CloseProfile CloseProfile::from_json(const nlohmann::json& j) {
  CloseProfile p;
  p.rounds_back = j.value("rounds_back", p.rounds_back);
  p.spine_budget = j.value("spine_budget", p.spine_budget);
  p.max_steps = j.value("max_steps", p.max_steps);
  p.step_increment = j.value("step_increment", p.step_increment);
  p.retries = j.value("retries", p.retries);
  if (p.max_steps == 0) throw Error(ErrorKind::InvalidArgument, "close.max_steps must be positive");
  return p;
}

nlohmann::json RunProfile::to_json() const {
  nlohmann::json j{{"mode", std::string(to_string(mode))},
                   {"k", k},
                   {"n", n},
                   {"gadget", gadget},
                   {"N", N},
                   {"C", C},
                   {"g", g},
                   {"host_retries", host_retries},
                   {"verify",
                    {{"p4_exact_cap", verify.p4_exact_cap},
                     {"p4_exact_nodes", verify.p4_exact_nodes},
                     {"p4_samples", verify.p4_samples},
                     {"p5_exact_cap", verify.p5_exact_cap},
                     {"p5_exact_nodes", verify.p5_exact_nodes},
                     {"p5_samples", verify.p5_samples}}},
                   {"auto_expander", auto_expander},
                   {"expander", expander.to_json()},
                   {"gamma_retries", gamma_retries},
                   {"expansion_check", {{"exact_cap", expansion_check.exact_cap}, {"samples", expansion_check.samples}}},
                   {"auto_path", auto_path},
                   {"search", search.to_json()},
                   {"close", close.to_json()},
                   {"colorer", colorer},
                   {"seed", seed}};
  j["alpha"] = alpha ? nlohmann::json(*alpha) : nlohmann::json(nullptr);
  return j;
}

RunProfile RunProfile::from_json(const nlohmann::json& j) {
  RunProfile p;
  try {
    if (j.contains("mode")) p.mode = mode_from_string(j.at("mode").get<std::string>());
    p.k = j.value("k", p.k);
    p.n = j.value("n", p.n);
    p.gadget = j.value("gadget", p.gadget);
    p.N = j.value("N", p.N);
    p.C = j.value("C", p.C);
    p.g = j.value("g", p.g);
    if (j.contains("alpha") && !j.at("alpha").is_null()) p.alpha = j.at("alpha").get<double>();
    p.host_retries = j.value("host_retries", p.host_retries);
    if (j.contains("verify")) {
      const auto& v = j.at("verify");
      p.verify.p4_exact_cap = v.value("p4_exact_cap", p.verify.p4_exact_cap);
      p.verify.p4_exact_nodes = v.value("p4_exact_nodes", p.verify.p4_exact_nodes);
      p.verify.p4_samples = v.value("p4_samples", p.verify.p4_samples);
      p.verify.p5_exact_cap = v.value("p5_exact_cap", p.verify.p5_exact_cap);
      p.verify.p5_exact_nodes = v.value("p5_exact_nodes", p.verify.p5_exact_nodes);
      p.verify.p5_samples = v.value("p5_samples", p.verify.p5_samples);
    }
    p.auto_expander = j.value("auto_expander", p.auto_expander);
    if (j.contains("expander")) p.expander = ExpanderParams::from_json(j.at("expander"));
    p.gamma_retries = j.value("gamma_retries", p.gamma_retries);
    if (j.contains("expansion_check")) {
      p.expansion_check.exact_cap = j.at("expansion_check").value("exact_cap", p.expansion_check.exact_cap);
      p.expansion_check.samples = j.at("expansion_check").value("samples", p.expansion_check.samples);
    }
    if (j.contains("search")) {
      p.search = SearchProfile::from_json(j.at("search"));
      p.auto_path = !j.at("search").contains("path_target");
    }
    p.auto_path = j.value("auto_path", p.auto_path);
    if (j.contains("close")) p.close = CloseProfile::from_json(j.at("close"));
    p.colorer = j.value("colorer", p.colorer);
    p.seed = j.value("seed", p.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "malformed profile", {{"reason", e.what()}});
  }
  p.validate();
  return p;
}

void RunProfile::validate() const {
  if (k < 1 || k > kMaxColors) throw Error(ErrorKind::InvalidArgument, "k out of range", {{"k", k}});
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "n must be at least 3", {{"n", n}});
  if (mode == Mode::EvenInduced && n % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "even-induced mode needs an even n", {{"n", n}});
  }
  if (N == 0) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  if (host_retries < 1) throw Error(ErrorKind::InvalidArgument, "host_retries must be at least 1");
  ColorerSpec::parse(colorer);
  search.to_json();
}

// ---- certificates ----------------------------------------------------------

nlohmann::json Certificate::to_json() const {
  return {{"mode", std::string(to_string(mode))}, {"n", n},          {"color", color},
          {"cycle", cycle},                        {"aux_cycle", aux_cycle}, {"longs", longs},
          {"report", report.to_json()}};
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  Certificate c;
  try {
    c.mode = mode_from_string(j.at("mode").get<std::string>());
    c.n = j.at("n").get<std::size_t>();
    c.color = j.at("color").get<Color>();
    c.cycle = j.at("cycle").get<Cycle>();
    c.aux_cycle = j.value("aux_cycle", Cycle{});
    c.longs = j.value("longs", std::vector<std::uint8_t>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "malformed certificate", {{"reason", e.what()}});
  }
  return c;
}

FinalReport verify_certificate(const Certificate& c, const Graph& host, const EdgeColoring& coloring,
                               std::size_t jobs) {
  return verify_final(host, coloring, c.cycle, c.n, c.mode, jobs);
}

std::string certificate_dot(const Certificate& c, const Graph& host) {
  std::vector<Vertex> keep;
  for (Vertex v : c.cycle) {
    if (!host.contains(v)) continue;
    keep.push_back(v);
    for (Vertex w : host.neighbors(v)) keep.push_back(w);
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  // only edges with an end on Q'
  std::vector<VertexPair> e;
  std::vector<std::uint8_t> on(host.id_bound(), 0);
  for (Vertex v : c.cycle)
    if (v < on.size()) on[v] = 1;
  for (Vertex v : keep)
    for (Vertex w : host.neighbors(v))
      if (v < w && (on[v] || on[w])) e.emplace_back(v, w);
  auto local = Graph::from_edges(host.id_bound(), e, keep);
  std::vector<VertexPair> hl;
  for (std::size_t i = 0; i < c.cycle.size(); ++i) hl.push_back(std::minmax(c.cycle[i], c.cycle[(i + 1) % c.cycle.size()]));
  return to_dot(local, hl);
}

HostParams host_params(const RunProfile& p, const Gadget& gadget) {
  HostParams h;
  h.N = p.N;
  h.C = p.C;
  h.s = gadget.s();
  h.g = p.g;
  h.k = p.k;
  h.n = p.n;
  h.mode = p.mode;
  h.alpha = p.alpha ? *p.alpha : h.default_alpha();
  h.validate();
  return h;
}

// ---- driver ----------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct StageFailed {
  int code;
};

class Recorder {
 public:
  explicit Recorder(RunResult& out) : out_(out) {
    out_.record["stages"] = nlohmann::json::array();
    out_.timestamps = {{"started", utc_now()}, {"stage_ms", nlohmann::json::object()}};
  }

  // Runs one stage; `fn` returns the stage metadata. Errors are recorded and
  // turned into StageFailed.
  void stage(const std::string& name, const std::function<nlohmann::json()>& fn) {
    const auto t0 = Clock::now();
    nlohmann::json entry{{"name", name}};
    int code = kExitOk;
    try {
      entry["metadata"] = fn();
      entry["status"] = "ok";
    } catch (const Error& e) {
      entry["status"] = "failed";
      entry["error"] = e.to_json();
      code = e.kind() == ErrorKind::VerificationFailed ? kExitVerification : kExitStage;
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = {{"kind", "internal"}, {"message", e.what()}};
      code = kExitStage;
    }
    const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    out_.timestamps["stage_ms"][name] = ms;
    out_.record["stages"].push_back(std::move(entry));
    if (code != kExitOk) throw StageFailed{code};
  }

 private:
  RunResult& out_;
};

struct Window {
  std::size_t lo = 0, hi = 0;
};

}  // namespace

RunResult run_pipeline(const RunProfile& profile) {
  RunResult out;
  out.record = {{"profile", profile.to_json()}};
  Recorder rec(out);
  const auto t_start = Clock::now();
  auto finish = [&](int code, const std::string& status) {
    out.exit_code = code;
    out.record["status"] = status;
    out.record["exit_code"] = code;
    out.timestamps["finished"] = utc_now();
    out.timestamps["total_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t_start).count();
    return std::move(out);
  };
  try {
    profile.validate();
  } catch (const Error& e) {
    out.record["error"] = e.to_json();
    return finish(kExitParameter, "parameter_error");
  }

  const std::uint64_t seed = profile.seed;
  SearchProfile search = profile.search;
  Gadget gadget;
  HostParams hp;
  try {
    gadget = parse_gadget(profile.gadget, derive_seed(seed, "gadget"));
    if (gadget.mode != profile.mode) {
      throw Error(ErrorKind::InvalidArgument, "gadget does not serve the requested mode",
                  {{"gadget", profile.gadget}, {"gadget_mode", std::string(to_string(gadget.mode))}});
    }
    hp = host_params(profile, gadget);
  } catch (const Error& e) {
    out.record["error"] = e.to_json();
    return finish(kExitParameter, "parameter_error");
  }

  VerifiedHost vh;
  AuxGraph aux;
  ColorClass red;
  ExpanderResult expander;
  Graph gprime;
  DfsResult dfs;
  TreeState trees;
  Window window;
  std::optional<IntersectionGraph> ig;
  std::shared_ptr<Hypergraph> hyper;
  AssembledCycle assembled;
  LiftResult lift;
  nlohmann::json invariants = nlohmann::json::object();

  try {
    rec.stage("sample_until_verified", [&] {
      VerifyBudget vb = profile.verify;
      vh = sample_until_verified(hp, profile.host_retries, derive_seed(seed, "hypergraph"), vb);
      hyper = std::make_shared<Hypergraph>(vh.host.h);
      out.hypergraph = hyper;
      return nlohmann::json{{"params", hp.to_json()},
                            {"attempts", vh.attempts},
                            {"edges", hyper->edge_count()},
                            {"max_degree", hyper->max_degree()},
                            {"cleanup", vh.host.log},
                            {"report", vh.report.to_json()}};
    });
    rec.stage("build_host", [&] {
      out.host = std::make_shared<HostGraph>(build_host(hyper, gadget, derive_seed(seed, "placement")));
      return nlohmann::json{{"gadget", gadget.descriptor},
                            {"s", gadget.s()},
                            {"gadget_edges", gadget.graph.edge_count()},
                            {"vertices", out.host->graph.id_bound()},
                            {"edges", out.host->graph.edge_count()}};
    });
    rec.stage("colorer", [&] {
      out.coloring = std::make_shared<EdgeColoring>(
          run_colorer(profile.colorer, out.host->graph, profile.k, derive_seed(seed, "colorer"), out.host.get()));
      return nlohmann::json{{"colorer", profile.colorer}, {"class_sizes", out.coloring->class_sizes()}};
    });
    rec.stage("build_auxiliary", [&] {
      aux = build_auxiliary(*out.host, *out.coloring, profile.jobs);
      if (aux.edge_count() == 0) throw Error(ErrorKind::StageFailure, "no gadget copy produced an auxiliary edge");
      window = {};
      std::tie(window.lo, window.hi) = lift_window(aux.short_length(), aux.long_length(), profile.n);
      if (window.lo > window.hi || window.lo < 3) {
        throw Error(ErrorKind::StageFailure, "no auxiliary cycle length lifts to n",
                    {{"n", profile.n}, {"short", aux.short_length()}, {"long", aux.long_length()}});
      }
      return nlohmann::json{{"edges", aux.edge_count()},
                            {"L", aux.cycle_length()},
                            {"short", aux.short_length()},
                            {"long", aux.long_length()},
                            {"window", {window.lo, window.hi}},
                            {"stats", aux.stats()}};
    });
    rec.stage("densest_color_subgraph", [&] {
      red = densest_color_subgraph(aux);
      red.graph = drop_isolated(red.graph);
      return nlohmann::json{{"color", red.color},
                            {"vertices", red.graph.vertex_count()},
                            {"edges", red.graph.edge_count()},
                            {"density", red.graph.density()},
                            {"max_degree", red.graph.max_degree()}};
    });
    rec.stage("extract_expander", [&] {
      ExpanderParams ep = profile.expander;
      if (profile.auto_expander) {
        ep.c1 = red.graph.density();
        if (ep.c1 <= 1.0) {
          throw Error(ErrorKind::StageFailure, "densest colour class is too sparse for expander extraction",
                      {{"density", ep.c1}});
        }
        ep.c2 = (ep.c1 + 1.0) / 2.0;
        ep.Delta = std::max(1.0, static_cast<double>(red.graph.max_degree()));
        ep.validate();
      }
      expander = extract_expander(red.graph, ep);
      // the expansion claim is checked, and gamma lowered until it holds
      double gamma = ep.gamma();
      nlohmann::json checks = nlohmann::json::array();
      bool held = false;
      for (std::size_t attempt = 0; attempt <= profile.gamma_retries; ++attempt) {
        ExpansionBudget eb = profile.expansion_check;
        eb.jobs = profile.jobs;
        eb.seed = derive_seed(seed, "expansion#" + std::to_string(attempt));
        auto check = verify_expansion(expander.graph, gamma, eb);
        checks.push_back({{"gamma", gamma}, {"check", check.to_json()}});
        if (check.status != Status::Violated) {
          held = true;
          break;
        }
        gamma /= 2.0;
      }
      return nlohmann::json{{"params", ep.to_json()},
                            {"result", expander.to_json()},
                            {"expansion_checks", checks},
                            {"effective_gamma", held ? nlohmann::json(gamma) : nlohmann::json(nullptr)}};
    });
    rec.stage("min_degree_core", [&] {
      const double d = 2.0 * expander.graph.density();
      gprime = min_degree_core(expander.graph, d / 2.0, derive_seed(seed, "core"));
      if (gprime.vertex_count() == 0) throw Error(ErrorKind::StageFailure, "empty minimum-degree core", {{"delta", d / 2}});
      return nlohmann::json{{"delta", d / 2.0}, {"vertices", gprime.vertex_count()}, {"edges", gprime.edge_count()}};
    });
    if (profile.auto_path) {
      // the trees and the two arms add the rest of the length
      search.path_target = std::max<std::size_t>(3, (window.lo + 1) / 2);
      search.path_floor = 3;
    }
    search.debug_invariants = profile.search.debug_invariants;
    out.record["effective_search"] = search.to_json();
    rec.stage("find_good_path", [&] {
      try {
        dfs = find_good_path(gprime, aux, *hyper, search);
      } catch (const Error& e) {
        if (e.details().contains("invariants")) invariants["dfs"] = e.details()["invariants"];
        throw;
      }
      invariants["dfs"] = dfs.invariants.to_json();
      return nlohmann::json{{"path", dfs.path}, {"rounds", dfs.rounds}, {"stats", dfs.stats}};
    });
    rec.stage("grow_trees", [&] {
      try {
        trees = grow_trees(gprime, aux, *hyper, dfs.path, search);
      } catch (const Error& e) {
        if (e.details().contains("invariants")) invariants["trees"] = e.details()["invariants"];
        throw;
      }
      invariants["trees"] = trees.invariants.to_json();
      return nlohmann::json{{"spine", trees.spine},
                            {"root", trees.root},
                            {"size", trees.size()},
                            {"leaves", {trees.leaves[0].size(), trees.leaves[1].size()}},
                            {"rounds", trees.rounds},
                            {"stats", trees.stats},
                            {"series", trees.series}};
    });
    ig.emplace(*hyper);
    std::size_t rounds_back = profile.close.rounds_back;
    std::size_t max_steps = profile.close.max_steps;
    for (std::size_t attempt = 0;; ++attempt) {
      const std::string suffix = attempt == 0 ? "" : "#" + std::to_string(attempt);
      try {
        RSets r;
        std::vector<Vertex> nis;
        CloseState cs;
        rec.stage("compute_r_sets" + suffix, [&] {
          const std::size_t budget = profile.close.spine_budget == 0 ? SIZE_MAX : profile.close.spine_budget;
          r = compute_r_sets(trees, rounds_back, budget);
          if (r.r[0].empty() || r.r[1].empty()) {
            throw Error(ErrorKind::StageFailure, "a tree has no R set", {{"r_sets", r.to_json()}});
          }
          return r.to_json();
        });
        rec.stage("n_i_of_s" + suffix, [&] {
          auto s = spine_hyperedges(aux, trees, r);
          nis = n_i_of_s(*ig, s);
          return nlohmann::json{{"S", s.size()}, {"NIS", nis.size()}};
        });
        rec.stage("expand_balls" + suffix, [&] {
          cs = expand_balls(expander.graph, r.r[0], r.r[1], nis, max_steps);
          return cs.to_json();
        });
        rec.stage("assemble_cycle" + suffix, [&] {
          assembled = assemble_cycle(aux, *hyper, trees, r, cs, window.lo, window.hi);
          auto meta = assembled.to_json();
          meta["slack"] = {{"below", assembled.q.size() - window.lo}, {"above", window.hi - assembled.q.size()}};
          // the ball window stays within the short-path bound
          const auto& p3 = assembled.windows[2];
          meta["p3_bound"] = {{"length", p3.length}, {"bound", 2 * max_steps + 2 * r.rounds_back + 2}};
          std::vector<Vertex> arc;
          for (std::size_t i = 0; i <= p3.length; ++i) arc.push_back(assembled.q[(p3.start + i) % assembled.q.size()]);
          meta["p3_good"] = is_good_path(aux, *hyper, arc).good;
          return meta;
        });
        break;
      } catch (const StageFailed& f) {
        if (f.code != kExitStage || attempt >= profile.close.retries) throw;
        rounds_back += 1;
        max_steps += profile.close.step_increment;
      }
    }
    rec.stage("is_good_cycle", [&] {
      if (!assembled.certificate.good) {
        throw Error(ErrorKind::StageFailure, "closed cycle is not good", {{"witness", assembled.certificate.witness}});
      }
      return nlohmann::json{{"good", true}, {"cover_size", assembled.cover.size()}, {"fallback", assembled.fallback_cover}};
    });
    rec.stage("lift_cycle", [&] {
      lift = lift_cycle(aux, assembled.q, profile.n);
      return nlohmann::json{{"length", lift.length},
                            {"color", lift.color},
                            {"long_arcs", std::count(lift.longs.begin(), lift.longs.end(), 1)}};
    });
    rec.stage("verify_final", [&] {
      auto rep = verify_final(out.host->graph, *out.coloring, lift.cycle, profile.n, profile.mode, profile.jobs);
      Certificate c;
      c.mode = profile.mode;
      c.n = profile.n;
      c.color = lift.color;
      c.cycle = lift.cycle;
      c.aux_cycle = assembled.q;
      c.longs = lift.longs;
      c.report = rep;
      out.certificate = c;
      if (!rep.passed()) throw Error(ErrorKind::VerificationFailed, "final check failed", rep.to_json());
      return rep.to_json();
    });
  } catch (const StageFailed& f) {
    out.record["invariants"] = invariants;
    return finish(f.code, f.code == kExitVerification ? "verification_failure" : "stage_failure");
  }
  out.record["invariants"] = invariants;
  out.record["certificate"] = out.certificate->to_json();
  return finish(kExitOk, "ok");
}

}  // namespace sizeramsey
