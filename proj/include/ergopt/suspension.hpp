#pragma once

// Symbolic suspension flow over a subshift of finite type under a locally
// constant roof.

#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ergopt/potentials.hpp"
#include "ergopt/sft.hpp"

namespace ergopt {

class SuspensionSpec {
 public:
  /// Throws NonPositiveRoof unless min r > 0.
  explicit SuspensionSpec(OneSidedPotential roof, double beta = 0.5);

  const TransitionStructure& ts() const { return roof_.ts(); }
  const OneSidedPotential& roof() const { return roof_; }
  double beta() const { return beta_; }
  double roof_min() const { return roof_.min_value(); }
  /// r at the base point, read from coordinates 0 .. d-1.
  double roof_at(const SequenceWindow& x) const;

 private:
  OneSidedPotential roof_;
  double beta_;
};

struct SuspensionPoint {
  SequenceWindow base;
  double height = 0.0;
};

/// X^t(x, s). Heights that land within rounding (1e-12 relative) of the
/// roof wrap to the next fiber. Throws WindowTooShort, InputError for t < 0.
SuspensionPoint flow(const SuspensionSpec& spec, const SuspensionPoint& p, double t);

/// beta^N with N the largest integer such that x_i = y_i for |i| < N, over
/// the coordinates both windows cover (0 when they agree on all of them).
double base_distance(const SequenceWindow& x, const SequenceWindow& y, double beta);

/// Minimum over staying in the fiber and wrapping through either roof.
double d_pi(const SuspensionSpec& spec, const SuspensionPoint& p, const SuspensionPoint& q);

/// Points (x, tau r(x)) to (y, tau r(y)) at a common fiber fraction tau.
struct HorizontalSegment {
  SequenceWindow x;
  SequenceWindow y;
  double tau = 0.0;
};

/// Points (x, t) to (x, s) in one fiber.
struct VerticalSegment {
  SequenceWindow x;
  double t = 0.0;
  double s = 0.0;
};

double segment_length(const SuspensionSpec& spec, const HorizontalSegment& w);
double segment_length(const SuspensionSpec& spec, const VerticalSegment& w);

/// Random admissible window over coordinates lo..hi.
SequenceWindow random_window(const TransitionStructure& ts, int lo, int hi, std::mt19937_64& rng);

/// Sampled comparability of d_pi with a vertical-then-horizontal chain:
/// the largest d_pi / chain length seen over `samples` random pairs.
double comparability_estimate(const SuspensionSpec& spec, int samples, std::mt19937_64& rng);

/// Phi(x, s) depending on the base through x_0 .. x_{depth-1}.
struct FlowObservable {
  std::string name;
  int base_depth = 1;
  std::function<double(std::span<const Symbol>, double)> evaluate;

  double operator()(std::span<const Symbol> base, double s) const { return evaluate(base, s); }
};

namespace observables {
FlowObservable constant(double c);
/// c0 + c1 s.
FlowObservable height_linear(double c0, double c1);
/// amplitude sin(omega s + phase).
FlowObservable fiber_sine(double amplitude, double omega, double phase = 0.0);
/// 1[x starts with `cylinder`] * sum_k coeffs[k] s^k.
FlowObservable base_indicator_poly(Word cylinder, std::vector<double> coeffs);
/// phi(x) / r(x), constant along fibers.
FlowObservable fiber_density(const OneSidedPotential& phi, const OneSidedPotential& roof);
/// a * lhs + rhs.
FlowObservable combination(double a, const FlowObservable& lhs, const FlowObservable& rhs);
}  // namespace observables

/// Largest |Phi(x, r(x)) - Phi(sigma x, 0)| over admissible windows. The
/// quotient condition is reported, not enforced.
double quotient_defect(const SuspensionSpec& spec, const FlowObservable& phi);

struct QuadratureOptions {
  int nodes = 16;        // per fiber; the error estimate doubles this
  int panel_order = 8;   // Gauss-Legendre points per panel
  double tolerance = 1e-10;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

/// Composite Gauss-Legendre integral of f over [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi, int nodes, int panel_order);

struct InducedObservable {
  OneSidedPotential phi;
  double error_estimate = 0.0;  // max over windows of |I_N - I_2N|
};

/// phi(x) = int_0^{r(x)} Phi(x, s) ds on every admissible window of depth
/// max(roof depth, Phi depth). Fiber integrals run in an OpenMP loop, each
/// writing its own slot. Throws QuadratureNotConverged.
InducedObservable induce_observable(const SuspensionSpec& spec, const FlowObservable& phi,
                                    const QuadratureOptions& quad = {});
/// Serial reference for induce_observable.
InducedObservable induce_observable_serial(const SuspensionSpec& spec, const FlowObservable& phi,
                                           const QuadratureOptions& quad = {});

/// Time average of Phi along the flow orbit over a base periodic orbit.
double flow_average(const SuspensionSpec& spec, const FlowObservable& phi, const PeriodicCertificate& cert,
                    const QuadratureOptions& quad = {});

/// Share of flow time the lifted periodic measure spends over a cylinder.
double lifted_cylinder_mass(const SuspensionSpec& spec, const PeriodicCertificate& cert,
                            std::span<const Symbol> cylinder);

}  // namespace ergopt
