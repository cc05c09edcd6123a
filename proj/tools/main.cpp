#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "sizeramsey/error.hpp"
#include "sizeramsey/pipeline.hpp"
#include "sizeramsey/rng.hpp"

using namespace sizeramsey;
namespace fs = std::filesystem;

namespace {

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::Io, "cannot open file", {{"path", p.string()}});
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "malformed JSON", {{"path", p.string()}, {"reason", e.what()}});
  }
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::Io, "cannot write file", {{"path", p.string()}});
  out << text;
}

void write_json(const fs::path& p, const nlohmann::json& j) { write_text(p, j.dump(1) + "\n"); }

struct Overrides {
  std::string profile;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::size_t> k, n, jobs;
  bool debug = false;
  std::string out = "out";

  void attach(CLI::App* app) {
    app->add_option("--profile", profile, "Run profile (JSON)");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--mode", mode, "even, odd or non-induced")->check(CLI::IsMember({"even", "odd", "non-induced"}));
    app->add_option("--k", k, "Number of colours");
    app->add_option("--n", n, "Target cycle length");
    app->add_option("--out", out, "Output directory");
    app->add_flag("--debug-invariants", debug, "Check search claims at every round");
    app->add_option("--jobs", jobs, "Worker threads");
  }

  RunProfile resolve() const {
    nlohmann::json j = profile.empty() ? nlohmann::json::object() : read_json(profile);
    if (seed) j["seed"] = *seed;
    if (mode) j["mode"] = *mode;
    if (k) j["k"] = *k;
    if (n) j["n"] = *n;
    if (debug) j["search"]["debug_invariants"] = true;
    auto p = RunProfile::from_json(j);
    if (jobs) p.jobs = std::max<std::size_t>(1, *jobs);
    return p;
  }
};

int report_error(const Error& e) {
  std::cerr << e.to_json().dump(1) << "\n";
  switch (e.kind()) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Io: return kExitParameter;
    case ErrorKind::VerificationFailed: return kExitVerification;
    default: return kExitStage;
  }
}

int cmd_gen_host(const Overrides& o) {
  auto p = o.resolve();
  auto gadget = parse_gadget(p.gadget, derive_seed(p.seed, "gadget"));
  auto hp = host_params(p, gadget);
  auto vh = sample_until_verified(hp, p.host_retries, derive_seed(p.seed, "hypergraph"), p.verify);
  auto h = std::make_shared<Hypergraph>(vh.host.h);
  auto host = build_host(h, gadget, derive_seed(p.seed, "placement"));
  const fs::path dir(o.out);
  write_json(dir / "host.json", host.to_json());
  write_json(dir / "gamma.json", to_json(host.graph));
  write_json(dir / "hypergraph_report.json", {{"attempts", vh.attempts}, {"report", vh.report.to_json()}});
  std::cout << "host: " << h->edge_count() << " hyperedges, " << host.graph.edge_count() << " edges -> " << dir.string()
            << "\n";
  return kExitOk;
}

int cmd_color(const Overrides& o, const std::string& gamma_path, const std::string& colorer) {
  auto p = o.resolve();
  auto g = graph_from_json(read_json(gamma_path));
  const std::string desc = colorer.empty() ? p.colorer : colorer;
  auto c = run_colorer(desc, g, p.k, derive_seed(p.seed, "colorer"));
  write_json(fs::path(o.out) / "coloring.json", c.to_json());
  std::cout << "coloring: " << desc << ", class sizes " << nlohmann::json(c.class_sizes()).dump() << "\n";
  return kExitOk;
}

int cmd_run(const Overrides& o, bool dot) {
  auto p = o.resolve();
  auto r = run_pipeline(p);
  const fs::path dir(o.out);
  write_json(dir / "run.json", {{"record", r.record}, {"timestamps", r.timestamps}});
  if (r.host) {
    write_json(dir / "gamma.json", to_json(r.host->graph));
    write_json(dir / "host.json", r.host->to_json());
  }
  if (r.coloring) write_json(dir / "coloring.json", r.coloring->to_json());
  if (r.certificate) {
    write_json(dir / "certificate.json", r.certificate->to_json());
    if (dot && r.host) write_text(dir / "certificate.dot", certificate_dot(*r.certificate, r.host->graph));
  }
  std::cout << "status: " << r.record.value("status", "?") << " (exit " << r.exit_code << ")\n";
  for (const auto& s : r.record["stages"])
    if (r.exit_code != kExitOk && s["status"] == "failed") std::cout << "failed stage: " << s["name"].get<std::string>() << ": "
                                           << s["error"]["message"].get<std::string>() << "\n";
  if (r.record.contains("error")) std::cout << r.record["error"].dump() << "\n";
  return r.exit_code;
}

int cmd_verify(const std::string& cert_path, std::string gamma_path, std::string coloring_path, std::size_t jobs) {
  const fs::path base = fs::path(cert_path).parent_path();
  if (gamma_path.empty()) gamma_path = (base / "gamma.json").string();
  if (coloring_path.empty()) coloring_path = (base / "coloring.json").string();
  auto cert = Certificate::from_json(read_json(cert_path));
  auto g = graph_from_json(read_json(gamma_path));
  auto col = load_coloring(g, read_json(coloring_path));
  auto rep = verify_certificate(cert, g, col, jobs);
  std::cout << rep.to_json().dump(1) << "\n";
  return rep.passed() ? kExitOk : kExitVerification;
}

int cmd_stats(const std::string& run_path) {
  auto j = read_json(run_path);
  const auto& rec = j.contains("record") ? j["record"] : j;
  std::cout << "status: " << rec.value("status", "?") << "\n";
  for (const auto& s : rec["stages"]) {
    std::cout << "  " << s["name"].get<std::string>() << ": " << s["status"].get<std::string>();
    if (j.contains("timestamps") && j["timestamps"]["stage_ms"].contains(s["name"].get<std::string>()))
      std::cout << " (" << j["timestamps"]["stage_ms"][s["name"].get<std::string>()].get<double>() << " ms)";
    std::cout << "\n";
  }
  for (const auto& s : rec["stages"])
    if (s["name"] == "grow_trees" && s.contains("metadata")) std::cout << "tree series: " << s["metadata"]["series"].dump() << "\n";
  if (rec.contains("invariants")) std::cout << "invariants: " << rec["invariants"].dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic induced cycles in sparse hosts"};
  app.require_subcommand(1);

  Overrides gen_o, color_o, run_o;
  auto* gen = app.add_subcommand("gen-host", "Sample a verified hypergraph and build the host graph");
  gen_o.attach(gen);

  auto* color = app.add_subcommand("color", "Colour a host graph with a built-in adversary");
  color_o.attach(color);
  std::string gamma_in, colorer;
  color->add_option("--gamma", gamma_in, "Host graph JSON")->required();
  color->add_option("--colorer", colorer, "Colorer descriptor");

  auto* run = app.add_subcommand("run", "Run the whole pipeline");
  run_o.attach(run);
  bool dot = false;
  run->add_flag("--dot", dot, "Write certificate.dot");

  auto* verify = app.add_subcommand("verify", "Recheck a certificate against the host graph");
  std::string cert, gamma_v, coloring_v;
  std::size_t vjobs = 1;
  verify->add_option("certificate", cert, "certificate.json")->required();
  verify->add_option("--gamma", gamma_v, "Host graph JSON (default: next to the certificate)");
  verify->add_option("--coloring", coloring_v, "Colouring JSON (default: next to the certificate)");
  verify->add_option("--jobs", vjobs, "Worker threads");

  auto* stats = app.add_subcommand("stats", "Summarise a run record");
  std::string run_path;
  stats->add_option("run", run_path, "run.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParameter;
  }
  try {
    if (*gen) return cmd_gen_host(gen_o);
    if (*color) return cmd_color(color_o, gamma_in, colorer);
    if (*run) return cmd_run(run_o, dot);
    if (*verify) return cmd_verify(cert, gamma_v, coloring_v, vjobs);
    if (*stats) return cmd_stats(run_path);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitStage;
  }
  return kExitParameter;
}
