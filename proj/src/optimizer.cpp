#include "ergopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "ergopt/error.hpp"
#include "ergopt/parallel.hpp"

namespace ergopt {

WeightedGraph WeightedGraph::with_vertices(int count) {
  WeightedGraph g;
  g.vertex_count = count;
  g.labels.resize(static_cast<std::size_t>(count));
  std::iota(g.labels.begin(), g.labels.end(), 0);
  return g;
}

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

// Tarjan's algorithm, iterative.
std::vector<int> strongly_connected_components(const WeightedGraph& g, int& component_count) {
  const int n = g.vertex_count;
  std::vector<std::vector<int>> out(n);
  for (const Edge& e : g.edges) out[e.from].push_back(e.to);
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0;
  component_count = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < out[v].size()) {
        int w = out[v][next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = component_count;
        } while (w != v);
        ++component_count;
      }
      int finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  return comp;
}

struct CycleCandidate {
  std::vector<int> edges;  // edge indices into the component's edge list
  double mean = 0.0;
  Word word;               // canonical projected word
  std::vector<int> vertices;
};

struct Component {
  std::vector<int> vertices;  // global ids
  std::vector<Edge> edges;    // local endpoints
};

double cycle_mean(const Component& c, const std::vector<int>& edge_ids) {
  double sum = 0.0;
  for (int id : edge_ids) sum += c.edges[id].weight;
  return sum / static_cast<double>(edge_ids.size());
}

CycleCandidate make_candidate(const Component& c, const WeightedGraph& g, std::vector<int> edge_ids) {
  CycleCandidate cand;
  cand.mean = cycle_mean(c, edge_ids);
  Word labels;
  for (int id : edge_ids) labels.push_back(g.labels[c.vertices[c.edges[id].from]]);
  // rotate the cycle so that its projected word is the canonical rotation
  std::size_t best_shift = 0;
  Word best = labels;
  Word rotated(labels.size());
  for (std::size_t s = 1; s < labels.size(); ++s) {
    std::rotate_copy(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(s), labels.end(), rotated.begin());
    if (rotated < best) {
      best = rotated;
      best_shift = s;
    }
  }
  std::rotate(edge_ids.begin(), edge_ids.begin() + static_cast<std::ptrdiff_t>(best_shift), edge_ids.end());
  cand.word = std::move(best);
  for (int id : edge_ids) cand.vertices.push_back(c.vertices[c.edges[id].from]);
  cand.edges = std::move(edge_ids);
  return cand;
}

struct KarpOutcome {
  double value = kMinusInf;
  std::vector<CycleCandidate> candidates;
};

KarpOutcome karp(const Component& c, const WeightedGraph& g, const SolverOptions& opts) {
  const int n = static_cast<int>(c.vertices.size());
  std::vector<std::vector<int>> incoming(n);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    incoming[c.edges[i].to].push_back(static_cast<int>(i));
    max_abs = std::max(max_abs, std::abs(c.edges[i].weight));
  }
  // best[k][v]: heaviest walk of exactly k edges from vertex 0 to v
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(n, kMinusInf));
  std::vector<std::vector<int>> pred(n + 1, std::vector<int>(n, -1));
  best[0][0] = 0.0;
  for (int k = 1; k <= n; ++k) {
    for (int v = 0; v < n; ++v) {
      for (int id : incoming[v]) {
        const Edge& e = c.edges[id];
        if (best[k - 1][e.from] == kMinusInf) continue;
        double cand = best[k - 1][e.from] + e.weight;
        if (cand > best[k][v]) {
          best[k][v] = cand;
          pred[k][v] = id;
        }
      }
    }
  }
  KarpOutcome out;
  int argmax = -1;
  for (int v = 0; v < n; ++v) {
    if (best[n][v] == kMinusInf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (best[k][v] == kMinusInf) continue;
      worst = std::min(worst, (best[n][v] - best[k][v]) / (n - k));
    }
    if (worst > out.value) {
      out.value = worst;
      argmax = v;
    }
  }
  if (argmax < 0) return out;
  const double lambda = out.value;

  // Cycle on the critical walk of length n ending at argmax.
  {
    std::vector<int> walk_vertices(n + 1), walk_edges(n + 1, -1);
    walk_vertices[n] = argmax;
    for (int k = n; k >= 1; --k) {
      walk_edges[k] = pred[k][walk_vertices[k]];
      walk_vertices[k - 1] = c.edges[walk_edges[k]].from;
    }
    std::vector<int> seen_at(n, -1);
    for (int k = n; k >= 0; --k) {
      int v = walk_vertices[k];
      if (seen_at[v] != -1) {
        std::vector<int> ids(walk_edges.begin() + k + 1, walk_edges.begin() + seen_at[v] + 1);
        out.candidates.push_back(make_candidate(c, g, std::move(ids)));
        break;
      }
      seen_at[v] = k;
    }
  }

  // Tight subgraph: edges with zero slack for the potential
  // h(v) = max_k best[k][v] - k lambda. Every cycle of mean lambda uses only
  // tight edges.
  std::vector<double> h(n, kMinusInf);
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < n; ++k) {
      if (best[k][v] != kMinusInf) h[v] = std::max(h[v], best[k][v] - k * lambda);
    }
  }
  const double slack_tol = 1e-9 * (1.0 + max_abs) * n;
  std::vector<std::vector<int>> tight_out(n);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = c.edges[i];
    if (h[e.from] == kMinusInf || h[e.to] == kMinusInf) continue;
    if (h[e.from] + e.weight - lambda >= h[e.to] - slack_tol) tight_out[e.from].push_back(static_cast<int>(i));
  }
  for (auto& list : tight_out) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      int la = g.labels[c.vertices[c.edges[a].to]], lb = g.labels[c.vertices[c.edges[b].to]];
      return la != lb ? la < lb : c.edges[a].to < c.edges[b].to;
    });
  }
  // Shortest tight cycle through each vertex, BFS in label order.
  std::vector<int> via(n);
  for (int start = 0; start < n; ++start) {
    if (tight_out[start].empty()) continue;
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{start};
    int closing = -1;
    while (!queue.empty() && closing < 0) {
      int u = queue.front();
      queue.pop_front();
      for (int id : tight_out[u]) {
        int v = c.edges[id].to;
        if (v == start) {
          closing = id;
          break;
        }
        if (via[v] == -1) {
          via[v] = id;
          queue.push_back(v);
        }
      }
    }
    if (closing < 0) continue;
    std::vector<int> ids{closing};
    for (int v = c.edges[closing].from; v != start; v = c.edges[via[v]].from) ids.push_back(via[v]);
    std::reverse(ids.begin(), ids.end());
    out.candidates.push_back(make_candidate(c, g, std::move(ids)));
  }
  (void)opts;
  return out;
}

WeightedGraph shifted_graph(const WeightedGraph& g, double lambda) {
  WeightedGraph out = g;
  for (Edge& e : out.edges) e.weight -= lambda * e.ratio_weight;
  return out;
}

double cycle_ratio(const WeightedGraph& g, const std::vector<int>& vertices) {
  // vertices are consecutive along the cycle; pick the best parallel edge
  // only when the graph has several (not the case for block graphs).
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    int from = vertices[i], to = vertices[(i + 1) % vertices.size()];
    const Edge* chosen = nullptr;
    for (const Edge& e : g.edges) {
      if (e.from == from && e.to == to && (!chosen || e.weight > chosen->weight)) chosen = &e;
    }
    num += chosen->weight;
    den += chosen->ratio_weight;
  }
  return num / den;
}

}  // namespace

MaximizationResult max_mean_cycle(const WeightedGraph& g, const SolverOptions& opts) {
  if (g.vertex_count <= 0 || g.edges.empty()) throw EmptyGraph("graph has no edges");
  if (static_cast<int>(g.labels.size()) != g.vertex_count) throw InputError("graph labels do not match vertex count");
  int component_count = 0;
  const std::vector<int> comp = strongly_connected_components(g, component_count);
  std::vector<Component> components(static_cast<std::size_t>(component_count));
  std::vector<int> local(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) {
    local[v] = static_cast<int>(components[comp[v]].vertices.size());
    components[comp[v]].vertices.push_back(v);
  }
  for (const Edge& e : g.edges) {
    if (comp[e.from] == comp[e.to]) {
      components[comp[e.from]].edges.push_back({local[e.from], local[e.to], e.weight, e.ratio_weight});
    }
  }

  double best_value = kMinusInf;
  std::vector<CycleCandidate> pool;
  for (const Component& c : components) {
    if (c.edges.empty()) continue;
    KarpOutcome k = karp(c, g, opts);
    if (k.value == kMinusInf) continue;
    best_value = std::max(best_value, k.value);
    for (auto& cand : k.candidates) pool.push_back(std::move(cand));
  }
  if (best_value == kMinusInf || pool.empty()) throw EmptyGraph("graph has no cycles");

  const double tie = opts.tie_tolerance * (1.0 + std::abs(best_value));
  const CycleCandidate* chosen = nullptr;
  for (const CycleCandidate& cand : pool) {
    if (cand.mean < best_value - tie) continue;
    if (!chosen || cand.word < chosen->word) chosen = &cand;
  }
  if (!chosen) {
    // rounding pushed every candidate below the tie band; keep the best one
    chosen = &*std::max_element(pool.begin(), pool.end(),
                                [](const CycleCandidate& a, const CycleCandidate& b) { return a.mean < b.mean; });
  }
  MaximizationResult r;
  r.value = best_value;
  r.certificate = PeriodicCertificate(chosen->word);
  r.cycle = chosen->vertices;
  r.residual = std::abs(best_value - chosen->mean);
  r.method = "karp_max_mean_cycle";
  return r;
}

MaximizationResult max_ratio_cycle(const WeightedGraph& g, const SolverOptions& opts) {
  if (g.edges.empty()) throw EmptyGraph("graph has no edges");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges) {
    if (!(e.ratio_weight > 0.0)) throw NonPositiveRoof("ratio weights must be strictly positive");
    lo = std::min(lo, e.weight / e.ratio_weight);
    hi = std::max(hi, e.weight / e.ratio_weight);
  }
  // f(lambda) = max mean of (weight - lambda * ratio) is convex, decreasing,
  // and vanishes at the optimal ratio, which lies in [lo, hi].
  MaximizationResult at_lo = max_mean_cycle(shifted_graph(g, lo), opts);
  MaximizationResult at_hi = max_mean_cycle(shifted_graph(g, hi), opts);
  int steps = 0;
  while (at_lo.cycle != at_hi.cycle && steps < opts.max_bisection_steps && hi > lo) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    MaximizationResult at_mid = max_mean_cycle(shifted_graph(g, mid), opts);
    if (at_mid.value >= 0.0) {
      lo = mid;
      at_lo = std::move(at_mid);
    } else {
      hi = mid;
      at_hi = std::move(at_mid);
    }
    ++steps;
  }
  // The lambda_low certificate has ratio >= lo; when both ends agree it is
  // optimal on the whole bracket and its exact ratio is the root.
  double lambda = cycle_ratio(g, at_lo.cycle);
  MaximizationResult check = max_mean_cycle(shifted_graph(g, lambda), opts);
  for (int refine = 0; refine < 64; ++refine) {
    double next = cycle_ratio(g, check.cycle);
    if (!(next > lambda + opts.tie_tolerance * (1.0 + std::abs(lambda)))) break;
    lambda = next;
    check = max_mean_cycle(shifted_graph(g, lambda), opts);
  }
  MaximizationResult r;
  // Prefer the zero-mean cycle picked by the tie-breaking rule at lambda.
  const double check_ratio = cycle_ratio(g, check.cycle);
  if (std::abs(check_ratio - lambda) <= opts.tie_tolerance * (1.0 + std::abs(lambda))) {
    r.certificate = check.certificate;
    r.cycle = check.cycle;
  } else {
    r.certificate = at_lo.certificate;
    r.cycle = at_lo.cycle;
  }
  r.value = lambda;
  r.residual = std::abs(check.value);
  r.method = "bisection_max_ratio_cycle";
  return r;
}

BlockGraph build_block_graph(const OneSidedPotential& weight, const OneSidedPotential* ratio_weight) {
  const TransitionStructure& ts = weight.ts();
  if (ratio_weight && !(ratio_weight->ts() == ts)) throw InputError("potentials live on different shifts");
  const int depth = std::max(weight.depth(), ratio_weight ? ratio_weight->depth() : 1);
  const int k = std::max(1, depth - 1);
  BlockGraph bg{refine_blocks(ts, k), {}};
  const BlockRefinement& ref = bg.refinement;
  WeightedGraph& g = bg.graph;
  g.vertex_count = static_cast<int>(ref.blocks.size());
  for (const Word& b : ref.blocks) g.labels.push_back(b.front());
  Word edge_word;
  for (int u = 0; u < g.vertex_count; ++u) {
    for (Symbol v : ref.ts.successors(u)) {
      edge_word = ref.blocks[u];
      edge_word.push_back(ref.blocks[v].back());
      std::span<const Symbol> view(edge_word);
      double w = weight.table().value(view.first(static_cast<std::size_t>(weight.depth())));
      double r = ratio_weight ? ratio_weight->table().value(view.first(static_cast<std::size_t>(ratio_weight->depth())))
                              : 1.0;
      g.add_edge(u, v, w, r);
    }
  }
  return bg;
}

MaximizationResult maximize_map(const OneSidedPotential& psi, const SolverOptions& opts) {
  BlockGraph bg = build_block_graph(psi);
  MaximizationResult r = max_mean_cycle(bg.graph, opts);
  r.method = "maximize_map/" + r.method;
  return r;
}

FlowResult maximize_flow(const OneSidedPotential& phi, const OneSidedPotential& roof, const SolverOptions& opts) {
  if (!(roof.min_value() > 0.0)) throw NonPositiveRoof("roof function must be strictly positive");
  BlockGraph bg = build_block_graph(phi, &roof);
  MaximizationResult r = max_ratio_cycle(bg.graph, opts);
  r.method = "maximize_flow/" + r.method;
  OneSidedPotential reduced = phi.combined(1.0, roof, -r.value);
  const double zero = maximize_map(reduced, opts).value;
  if (r.residual > opts.tolerance || std::abs(zero) > opts.tolerance) {
    throw SolverError("ratio solver residual " + std::to_string(std::max(r.residual, std::abs(zero))) +
                      " exceeds tolerance");
  }
  return FlowResult{std::move(r), std::move(reduced), zero};
}

OneSidedPotential normalize_pi0(const OneSidedPotential& psi, const SolverOptions& opts) {
  return psi.plus_constant(-maximize_map(psi, opts).value);
}

CycleObjective mean_objective(const OneSidedPotential& psi) {
  return {[psi](const PeriodicCertificate& o) { return psi.cycle_sum(o); }, {}, "mean"};
}

CycleObjective mean_objective(const TwoSidedPotential& phi) {
  return {[phi](const PeriodicCertificate& o) { return phi.cycle_sum(o); }, {}, "two_sided_mean"};
}

CycleObjective ratio_objective(const OneSidedPotential& phi, const OneSidedPotential& roof) {
  return {[phi](const PeriodicCertificate& o) { return phi.cycle_sum(o); },
          [roof](const PeriodicCertificate& o) { return roof.cycle_sum(o); }, "ratio"};
}

double orbit_count_estimate(const TransitionStructure& ts, int p_max) {
  double total = 0.0;
  for (int p = 1; p <= p_max; ++p) total += ts.trace_power(p) / p;
  return total;
}

namespace {

double score(const CycleObjective& objective, const PeriodicCertificate& orbit) {
  double num = objective.numerator(orbit);
  double den = objective.denominator ? objective.denominator(orbit) : static_cast<double>(orbit.period());
  return num / den;
}

MaximizationResult pick_best(const std::vector<PeriodicCertificate>& orbits, const std::vector<double>& scores,
                             const BruteForceOptions& opts, int p_max) {
  if (orbits.empty()) throw EmptyGraph("no periodic orbits of the requested periods");
  std::size_t best = 0;
  for (std::size_t i = 1; i < orbits.size(); ++i) {
    if (scores[i] > scores[best] + opts.tie_tolerance * (1.0 + std::abs(scores[best]))) best = i;
  }
  MaximizationResult r;
  r.value = scores[best];
  r.certificate = orbits[best];
  r.residual = 0.0;
  r.method = "brute_force_periodic(p_max=" + std::to_string(p_max) + ")";
  return r;
}

std::vector<PeriodicCertificate> budgeted_orbits(const TransitionStructure& ts, int p_max,
                                                 const BruteForceOptions& opts) {
  if (p_max < 1) throw InputError("p_max must be >= 1");
  const double estimate = orbit_count_estimate(ts, p_max);
  if (estimate > opts.budget) {
    throw BudgetExceeded("about " + std::to_string(static_cast<long long>(estimate)) + " orbits exceed the budget");
  }
  return periodic_words(ts, p_max);
}

}  // namespace

MaximizationResult brute_force_periodic(const TransitionStructure& ts, const CycleObjective& objective, int p_max,
                                        const BruteForceOptions& opts) {
  const std::vector<PeriodicCertificate> orbits = budgeted_orbits(ts, p_max, opts);
  std::vector<double> scores(orbits.size());
  const long count = static_cast<long>(orbits.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count())
  for (long i = 0; i < count; ++i) scores[static_cast<std::size_t>(i)] = score(objective, orbits[static_cast<std::size_t>(i)]);
  return pick_best(orbits, scores, opts, p_max);
}

MaximizationResult brute_force_periodic_serial(const TransitionStructure& ts, const CycleObjective& objective,
                                               int p_max, const BruteForceOptions& opts) {
  const std::vector<PeriodicCertificate> orbits = budgeted_orbits(ts, p_max, opts);
  std::vector<double> scores;
  scores.reserve(orbits.size());
  for (const auto& o : orbits) scores.push_back(score(objective, o));
  return pick_best(orbits, scores, opts, p_max);
}

}  // namespace ergopt
