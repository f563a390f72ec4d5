#pragma once

// Ergodic optimization for locally constant data: maximum mean cycle for the
// base map, maximum ratio cycle for the suspension flow, and a brute-force
// periodic-orbit oracle.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergopt/potentials.hpp"
#include "ergopt/sft.hpp"

namespace ergopt {

struct Edge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
  double ratio_weight = 1.0;  // roof weight, used by max_ratio_cycle only
};

/// Directed graph with one or two real weights per edge. `labels[v]` is the
/// original symbol emitted when a cycle passes through v.
struct WeightedGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<Symbol> labels;

  /// Identity labels.
  static WeightedGraph with_vertices(int count);
  void add_edge(int from, int to, double weight, double ratio_weight = 1.0) {
    edges.push_back({from, to, weight, ratio_weight});
  }
};

struct MaximizationResult {
  double value = 0.0;
  PeriodicCertificate certificate;  // over the original symbols
  std::vector<int> cycle;           // vertex cycle, when a graph solver produced it
  double residual = 0.0;
  std::string method;
};

struct SolverOptions {
  double tolerance = 1e-9;   // residual gate
  double tie_tolerance = 1e-11;
  int max_bisection_steps = 200;
};

/// Karp's algorithm on every nontrivial strongly connected component.
/// Co-optimal cycles are broken towards the lexicographically least
/// canonical word among the candidates. Throws EmptyGraph.
MaximizationResult max_mean_cycle(const WeightedGraph& g, const SolverOptions& opts = {});

/// Maximum of (sum weight)/(sum ratio_weight) over cycles, by bisection on
/// lambda with max_mean_cycle(weight - lambda * ratio_weight) as sign oracle.
/// Throws NonPositiveRoof.
MaximizationResult max_ratio_cycle(const WeightedGraph& g, const SolverOptions& opts = {});

/// Vertices are the admissible (D-1)-blocks (1-blocks when D = 1), edges
/// the admissible D-blocks (2-blocks when D = 1), D the largest depth. Edge
/// weights read the first potential, ratio weights the second (if given).
struct BlockGraph {
  BlockRefinement refinement;
  WeightedGraph graph;
};
BlockGraph build_block_graph(const OneSidedPotential& weight, const OneSidedPotential* ratio_weight = nullptr);

/// M(psi, sigma) with a maximizing periodic orbit.
MaximizationResult maximize_map(const OneSidedPotential& psi, const SolverOptions& opts = {});

struct FlowResult {
  MaximizationResult result;      // value = max of int phi / int r
  OneSidedPotential reduced;      // phi - value * r
  double reduced_maximum = 0.0;   // maximize_map(reduced).value, ~ 0
};

/// M(Phi) for the suspension flow, through the induced potential phi and
/// the roof r. Throws NonPositiveRoof, and SolverError if the zero-maximum
/// check on phi - M r misses the tolerance.
FlowResult maximize_flow(const OneSidedPotential& phi, const OneSidedPotential& roof,
                         const SolverOptions& opts = {});

/// psi - M(psi, sigma).
OneSidedPotential normalize_pi0(const OneSidedPotential& psi, const SolverOptions& opts = {});

/// Objective over periodic orbits: the orbit's score is
/// numerator / denominator (sums over one period).
struct CycleObjective {
  std::function<double(const PeriodicCertificate&)> numerator;
  std::function<double(const PeriodicCertificate&)> denominator;  // empty: period
  std::string name;
};

CycleObjective mean_objective(const OneSidedPotential& psi);
CycleObjective mean_objective(const TwoSidedPotential& phi);
CycleObjective ratio_objective(const OneSidedPotential& phi, const OneSidedPotential& roof);

struct BruteForceOptions {
  double budget = 5e6;  // maximum number of orbits to visit
  double tie_tolerance = 1e-12;
};

/// Estimated number of primitive orbits of period <= p_max.
double orbit_count_estimate(const TransitionStructure& ts, int p_max);

/// Best score over primitive orbits of period <= p_max. Orbit scores are
/// evaluated by an OpenMP kernel; the reduction runs in enumeration order so
/// the result is schedule independent. Throws BudgetExceeded.
MaximizationResult brute_force_periodic(const TransitionStructure& ts, const CycleObjective& objective,
                                        int p_max, const BruteForceOptions& opts = {});

/// Serial reference for brute_force_periodic.
MaximizationResult brute_force_periodic_serial(const TransitionStructure& ts, const CycleObjective& objective,
                                               int p_max, const BruteForceOptions& opts = {});

}  // namespace ergopt
