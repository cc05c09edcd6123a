#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "sizeramsey/gadgets.hpp"
#include "sizeramsey/graph.hpp"

namespace sizeramsey {

struct HostParams {
  std::uint64_t N = 0;
  double C = 1.0;
  std::size_t s = 4;
  std::size_t g = 4;
  double alpha = 0.0;
  std::size_t k = 2;
  std::size_t n = 0;
  Mode mode = Mode::EvenInduced;

  double default_alpha() const;
  /// Asymptotic formulas for g and N; these overflow anything storable, so they are
  /// returned as long double and only used for reporting.
  long double asymptotic_g() const;
  long double asymptotic_N() const;

  std::uint64_t edge_target() const;  // ceil(C N)
  double max_degree_bound() const { return 8.0 * C * static_cast<double>(s); }
  double alpha_n() const { return alpha * static_cast<double>(N); }

  nlohmann::json to_json() const;
  /// Missing alpha falls back to default_alpha().
  static HostParams from_json(const nlohmann::json& j);
  void validate() const;
};

enum class Status { VerifiedExact, VerifiedSampled, Violated, Skipped };
std::string_view to_string(Status s);

struct PropertyCheck {
  Status status = Status::Skipped;
  nlohmann::json witness;  // set when violated
  nlohmann::json budget = nlohmann::json::object();
  nlohmann::json to_json() const;
};

struct VerificationReport {
  std::map<std::string, PropertyCheck> properties;  // "P1".."P5"
  bool accepted() const;  // P1..P3 exact, P4 and P5 not violated
  nlohmann::json to_json() const;
};

struct HostHypergraph {
  Hypergraph h;
  std::vector<std::uint64_t> draw_index;  // original draw position of each kept edge
  nlohmann::json log;                      // removal counts
};

struct VerifyBudget {
  std::size_t p4_exact_cap = 8;
  std::uint64_t p4_exact_nodes = 2'000'000;
  std::size_t p4_samples = 2000;
  std::size_t p5_exact_cap = 3;
  std::uint64_t p5_exact_nodes = 2'000'000;
  std::size_t p5_samples = 2000;
  std::uint64_t seed = 0;
};

HostHypergraph sample_host_hypergraph(const HostParams& p, std::uint64_t seed);

/// Removes short Berge cycles (shortest first, dropping the largest-id edge of
/// each) and then every edge at a vertex of degree above `max_degree`.
HostHypergraph clean_hypergraph(std::size_t N, std::size_t s, std::vector<std::vector<Vertex>> drawn, std::size_t g,
                                double max_degree);

PropertyCheck verify_p1(const Hypergraph& h, const HostParams& p);
PropertyCheck verify_p2(const Hypergraph& h, const HostParams& p);
PropertyCheck verify_p3(const Hypergraph& h, const HostParams& p);
PropertyCheck verify_p4(const Hypergraph& h, const HostParams& p, const VerifyBudget& b = {});
PropertyCheck verify_p5(const Hypergraph& h, const HostParams& p, const VerifyBudget& b = {});
VerificationReport verify_all(const Hypergraph& h, const HostParams& p, const VerifyBudget& b = {});

struct VerifiedHost {
  HostHypergraph host;
  VerificationReport report;
  std::size_t attempts = 0;
};

VerifiedHost sample_until_verified(const HostParams& p, std::size_t max_retries, std::uint64_t seed,
                                   const VerifyBudget& b = {});

/// Largest sunflower-free edge count inside the intersection graph on W:
/// sum over host vertices x of max(0, |W_x| - 1).
std::size_t sunflower_free_edges(const Hypergraph& h, std::span<const HyperedgeId> w);

}  // namespace sizeramsey
