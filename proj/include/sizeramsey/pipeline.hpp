#pragma once

#include <memory>
#include <optional>
#include <string>

#include "sizeramsey/colorers.hpp"
#include "sizeramsey/cycleclose.hpp"
#include "sizeramsey/expander.hpp"
#include "sizeramsey/hypergen.hpp"
#include "sizeramsey/search.hpp"

namespace sizeramsey {

struct CloseProfile {
  std::size_t rounds_back = 1;      // tree rounds whose vertices form R1, R2
  std::size_t spine_budget = 0;     // widen R while |T_t - R_t| exceeds this; 0 disables
  std::size_t max_steps = 8;        // ball layers per side
  std::size_t step_increment = 4;   // added to max_steps on each retry
  std::size_t retries = 3;          // extra attempts after a ball or window failure

  nlohmann::json to_json() const;
  static CloseProfile from_json(const nlohmann::json& j);
};

/// Everything a run depends on. Two runs with equal profiles produce equal
/// records (timestamps aside).
struct RunProfile {
  Mode mode = Mode::EvenInduced;
  std::size_t k = 2;
  std::size_t n = 24;
  std::string gadget = "incidence:q=2";
  std::uint64_t N = 5000;
  double C = 3.0;
  std::size_t g = 8;
  std::optional<double> alpha;  // unset: the asymptotic default for (C, s)
  std::size_t host_retries = 10;
  VerifyBudget verify;
  bool auto_expander = true;    // c1 = density of G_red, c2 = (c1 + 1) / 2, Delta = max degree
  ExpanderParams expander;
  std::size_t gamma_retries = 3;
  ExpansionBudget expansion_check;
  bool auto_path = true;        // path_target and path_floor from the lift window
  SearchProfile search;
  CloseProfile close;
  std::string colorer = "uniform-random";
  std::uint64_t seed = 1;
  std::size_t jobs = 1;

  nlohmann::json to_json() const;
  /// Missing fields keep their defaults. Throws InvalidArgument on bad values.
  static RunProfile from_json(const nlohmann::json& j);
  void validate() const;
};

/// Exit codes shared by the CLI and the run record.
enum ExitCode : int { kExitOk = 0, kExitParameter = 2, kExitStage = 3, kExitVerification = 4 };

struct Certificate {
  Mode mode = Mode::EvenInduced;
  std::size_t n = 0;
  Color color = kNoColor;
  Cycle cycle;      // Q' in Γ
  Cycle aux_cycle;  // Q in G
  std::vector<std::uint8_t> longs;
  FinalReport report;

  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json record;      // deterministic
  nlohmann::json timestamps;  // wall-clock, kept apart from the record
  std::shared_ptr<const Hypergraph> hypergraph;
  std::shared_ptr<HostGraph> host;
  std::shared_ptr<EdgeColoring> coloring;
  std::optional<Certificate> certificate;
};

/// Runs every stage in order and never throws for stage-level failures; the
/// exit code and the record carry the diagnosis.
RunResult run_pipeline(const RunProfile& profile);

/// Host parameters implied by a profile and its gadget.
HostParams host_params(const RunProfile& p, const Gadget& gadget);

/// Rechecks a certificate against Γ and a colouring only.
FinalReport verify_certificate(const Certificate& c, const Graph& host, const EdgeColoring& coloring,
                               std::size_t jobs = 1);

/// DOT of Γ around Q': every edge touching Q', with Q' drawn bold red.
std::string certificate_dot(const Certificate& c, const Graph& host);

}  // namespace sizeramsey
