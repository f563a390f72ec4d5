#include "ergopt/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ergopt/error.hpp"
#include "ergopt/parallel.hpp"

namespace ergopt {

SuspensionSpec::SuspensionSpec(OneSidedPotential roof, double beta) : roof_(std::move(roof)), beta_(beta) {
  if (!(roof_.min_value() > 0.0)) throw NonPositiveRoof("roof must be bounded away from zero");
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0, 1)");
}

double SuspensionSpec::roof_at(const SequenceWindow& x) const {
  return roof_(x.slice(0, roof_.depth() - 1));
}

SuspensionPoint flow(const SuspensionSpec& spec, const SuspensionPoint& p, double t) {
  if (t < 0.0) throw InputError("flow time must be >= 0");
  SuspensionPoint q = p;
  double remaining = t;
  for (;;) {
    const double r = spec.roof_at(q.base);
    const double to_top = r - q.height;
    if (remaining < to_top - 1e-12 * std::max(1.0, r)) break;
    remaining = std::max(0.0, remaining - to_top);
    q.base = q.base.shifted(1);
    q.height = 0.0;
  }
  q.height += remaining;
  return q;
}

double base_distance(const SequenceWindow& x, const SequenceWindow& y, double beta) {
  const int reach = std::min({-x.min_coord(), -y.min_coord(), x.max_coord(), y.max_coord()});
  if (reach < 0 || x.at(0) != y.at(0)) return 1.0;
  for (int n = 1; n <= reach; ++n) {
    if (x.at(n) != y.at(n) || x.at(-n) != y.at(-n)) return std::pow(beta, n);
  }
  return 0.0;
}

double d_pi(const SuspensionSpec& spec, const SuspensionPoint& p, const SuspensionPoint& q) {
  const double b = spec.beta();
  const double rx = spec.roof_at(p.base);
  const double ry = spec.roof_at(q.base);
  const double stay = base_distance(p.base, q.base, b) + std::abs(p.height - q.height);
  const double wrap_p = base_distance(p.base.shifted(1), q.base, b) + rx - p.height + q.height;
  const double wrap_q = base_distance(p.base, q.base.shifted(1), b) + ry - q.height + p.height;
  return std::min({stay, wrap_p, wrap_q});
}

double segment_length(const SuspensionSpec& spec, const HorizontalSegment& w) {
  const double b = spec.beta();
  return (1.0 - w.tau) * base_distance(w.x, w.y, b) + w.tau * base_distance(w.x.shifted(1), w.y.shifted(1), b);
}

double segment_length(const SuspensionSpec& spec, const VerticalSegment& w) {
  return std::abs(w.t - w.s) / spec.roof_at(w.x);
}

SequenceWindow random_window(const TransitionStructure& ts, int lo, int hi, std::mt19937_64& rng) {
  if (lo > 0 || hi < 0) throw InputError("window must contain coordinate 0");
  SequenceWindow w;
  w.origin = -lo;
  std::uniform_int_distribution<int> first(0, ts.size() - 1);
  w.symbols.push_back(first(rng));
  for (int k = lo + 1; k <= hi; ++k) {
    auto next = ts.successors(w.symbols.back());
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    w.symbols.push_back(next[pick(rng)]);
  }
  return w;
}

double comparability_estimate(const SuspensionSpec& spec, int samples, std::mt19937_64& rng) {
  const int reach = 12 + spec.roof().depth();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    SequenceWindow x = random_window(spec.ts(), -reach, reach, rng);
    SequenceWindow y = random_window(spec.ts(), -reach, reach, rng);
    // share a random central block so that base distances vary
    const int shared = static_cast<int>(unit(rng) * 6);
    if (shared > 0 && x.at(0) == y.at(0)) {
      for (int k = -shared; k <= shared; ++k) {
        if (k == 0) continue;
        y.symbols[static_cast<std::size_t>(y.origin + k)] = x.at(k);
      }
      if (!admissible(spec.ts(), y.symbols)) y = x;
    }
    const double rx = spec.roof_at(x), ry = spec.roof_at(y);
    const double tau = unit(rng);
    SuspensionPoint p{x, unit(rng) * rx};
    SuspensionPoint q{y, tau * ry};
    const double chain = segment_length(spec, VerticalSegment{x, p.height, tau * rx}) +
                         segment_length(spec, HorizontalSegment{x, y, tau});
    const double d = d_pi(spec, p, q);
    if (chain > 0.0) worst = std::max(worst, d / chain);
  }
  return std::max(worst, 1.0);
}

namespace observables {

FlowObservable constant(double c) {
  return {"constant", 1, [c](std::span<const Symbol>, double) { return c; }};
}

FlowObservable height_linear(double c0, double c1) {
  return {"height_linear", 1, [c0, c1](std::span<const Symbol>, double s) { return c0 + c1 * s; }};
}

FlowObservable fiber_sine(double amplitude, double omega, double phase) {
  return {"fiber_sine", 1,
          [amplitude, omega, phase](std::span<const Symbol>, double s) { return amplitude * std::sin(omega * s + phase); }};
}

FlowObservable base_indicator_poly(Word cylinder, std::vector<double> coeffs) {
  const int depth = std::max<int>(1, static_cast<int>(cylinder.size()));
  return {"base_indicator_poly", depth, [cylinder = std::move(cylinder), coeffs = std::move(coeffs)](
                                            std::span<const Symbol> base, double s) {
            if (!std::equal(cylinder.begin(), cylinder.end(), base.begin())) return 0.0;
            double value = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = value * s + *it;
            return value;
          }};
}

FlowObservable fiber_density(const OneSidedPotential& phi, const OneSidedPotential& roof) {
  const int depth = std::max(phi.depth(), roof.depth());
  return {"fiber_density", depth,
          [phi, roof](std::span<const Symbol> base, double) { return phi(base) / roof(base); }};
}

FlowObservable combination(double a, const FlowObservable& lhs, const FlowObservable& rhs) {
  return {"combination", std::max(lhs.base_depth, rhs.base_depth),
          [a, lhs, rhs](std::span<const Symbol> base, double s) { return a * lhs(base, s) + rhs(base, s); }};
}

}  // namespace observables

double quotient_defect(const SuspensionSpec& spec, const FlowObservable& phi) {
  const int depth = std::max(spec.roof().depth(), phi.base_depth);
  double worst = 0.0;
  for (const Word& w : admissible_words(spec.ts(), depth + 1)) {
    std::span<const Symbol> view(w);
    const double top = phi(view, spec.roof()(view));
    const double bottom = phi(view.subspan(1), 0.0);
    worst = std::max(worst, std::abs(top - bottom));
  }
  return worst;
}

GaussRule gauss_legendre(int order) {
  static std::mutex lock;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> guard(lock);
  if (auto it = cache.find(order); it != cache.end()) return it->second;
  if (order < 1) throw InputError("Gauss-Legendre order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    // Newton iteration on P_order from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      derivative = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(order - 1 - i)] = 2.0 / ((1.0 - x * x) * derivative * derivative);
  }
  cache.emplace(order, rule);
  return rule;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int nodes, int panel_order) {
  if (nodes % panel_order != 0) throw InputError("node count must be a multiple of the panel order");
  const GaussRule rule = gauss_legendre(panel_order);
  const int panels = nodes / panel_order;
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * width;
    double panel = 0.0;
    for (int i = 0; i < panel_order; ++i) panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * panel;
  }
  return total;
}

namespace {

struct FiberIntegral {
  double value;
  double error;
};

FiberIntegral fiber_integral(const SuspensionSpec& spec, const FlowObservable& phi, const Word& w,
                             const QuadratureOptions& quad) {
  std::span<const Symbol> view(w);
  const double r = spec.roof()(view);
  auto integrand = [&](double s) { return phi(view, s); };
  const double coarse = integrate(integrand, 0.0, r, quad.nodes, quad.panel_order);
  const double fine = integrate(integrand, 0.0, r, 2 * quad.nodes, quad.panel_order);
  return {fine, std::abs(fine - coarse)};
}

InducedObservable finish(const SuspensionSpec& spec, int depth, const std::vector<FiberIntegral>& parts,
                         const QuadratureOptions& quad) {
  OneSidedPotential out(spec.ts(), depth);
  double error = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.table().value_at(i) = parts[i].value;
    error = std::max(error, parts[i].error);
  }
  if (error > quad.tolerance) {
    throw QuadratureNotConverged("fiber quadrature error " + std::to_string(error) + " above tolerance");
  }
  return {std::move(out), error};
}

}  // namespace

InducedObservable induce_observable(const SuspensionSpec& spec, const FlowObservable& phi,
                                    const QuadratureOptions& quad) {
  const int depth = std::max(spec.roof().depth(), phi.base_depth);
  const WordTable layout(spec.ts(), depth);
  const auto& words = layout.words();
  std::vector<FiberIntegral> parts(words.size());
  const long count = static_cast<long>(words.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    parts[static_cast<std::size_t>(i)] = fiber_integral(spec, phi, words[static_cast<std::size_t>(i)], quad);
  }
  return finish(spec, depth, parts, quad);
}

InducedObservable induce_observable_serial(const SuspensionSpec& spec, const FlowObservable& phi,
                                           const QuadratureOptions& quad) {
  const int depth = std::max(spec.roof().depth(), phi.base_depth);
  const WordTable layout(spec.ts(), depth);
  std::vector<FiberIntegral> parts;
  for (const Word& w : layout.words()) parts.push_back(fiber_integral(spec, phi, w, quad));
  return finish(spec, depth, parts, quad);
}

double flow_average(const SuspensionSpec& spec, const FlowObservable& phi, const PeriodicCertificate& cert,
                    const QuadratureOptions& quad) {
  const InducedObservable induced = induce_observable(spec, phi, quad);
  return induced.phi.cycle_sum(cert) / spec.roof().cycle_sum(cert);
}

double lifted_cylinder_mass(const SuspensionSpec& spec, const PeriodicCertificate& cert,
                            std::span<const Symbol> cylinder) {
  const int len = static_cast<int>(cylinder.size());
  double inside = 0.0;
  for (int i = 0; i < cert.period(); ++i) {
    const Word w = cert.window(i, len);
    if (std::equal(w.begin(), w.end(), cylinder.begin())) {
      inside += spec.roof()(cert.window(i, spec.roof().depth()));
    }
  }
  return inside / spec.roof().cycle_sum(cert);
}

}  // namespace ergopt
