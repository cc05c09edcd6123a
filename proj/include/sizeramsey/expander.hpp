#pragma once

#include <cstdint>

#include "sizeramsey/graph.hpp"
#include "sizeramsey/hypergen.hpp"

namespace sizeramsey {

struct ExpanderParams {
  double c1 = 4.0;
  double c2 = 2.0;
  double beta = 0.05;
  double Delta = 16.0;

  std::size_t rounds() const;  // ceil(log2(1/beta))
  double delta_step() const { return (c1 - c2) / (2.0 * static_cast<double>(rounds())); }
  double gamma() const { return delta_step() / Delta; }
  /// Density bar d_i = c1 - i * delta_step.
  double target(std::size_t i) const { return c1 - static_cast<double>(i) * delta_step(); }

  void validate() const;
  nlohmann::json to_json() const;
  static ExpanderParams from_json(const nlohmann::json& j);
};

struct ExpanderResult {
  Graph graph;  // induced subgraph of the input, same identifier space
  std::size_t iterations = 0;
  double density = 0.0;
  double gamma = 0.0;
  bool large_enough = false;      // at least beta * v(input) vertices
  bool reached_last_round = false;  // local sparsity of the input failed
  nlohmann::json trace = nlohmann::json::array();
  nlohmann::json to_json() const;
};

/// Densest expanding piece, following the iterative halving argument: peel to
/// the d_i-core, look for a half-size set W spanning d_{i+1}|W| edges, recurse
/// into W if one exists. Throws InvalidArgument when the input is sparser than
/// c1 or has a vertex of degree above Delta.
ExpanderResult extract_expander(const Graph& g, const ExpanderParams& p);

/// Maximal induced subgraph with minimum degree >= delta. `seed` shuffles the
/// deletion order; the result does not depend on it.
Graph min_degree_core(const Graph& g, double delta, std::uint64_t seed = 0);

/// Induced subgraph on vertices of positive degree.
Graph drop_isolated(const Graph& g);

struct ExpansionBudget {
  std::size_t exact_cap = 20;  // exhaustive over all subsets up to this many vertices
  std::size_t samples = 4000;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
};

/// Checks |N(U)| >= gamma |U| for all |U| <= v/2, where N(U) is the outer
/// neighbourhood. The witness is the worst subset found.
PropertyCheck verify_expansion(const Graph& g, double gamma, const ExpansionBudget& budget = {});

}  // namespace sizeramsey
