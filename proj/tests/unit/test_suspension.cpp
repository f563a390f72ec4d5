#include <doctest.h>

#include <cmath>
#include <random>

#include "ergopt/error.hpp"
#include "ergopt/optimizer.hpp"
#include "ergopt/suspension.hpp"
#include "oracles.hpp"

using namespace ergopt;

namespace {

const TransitionStructure full2 = TransitionStructure::full_shift(2);

// roof 1 on [0], 2 on [1]
SuspensionSpec two_level() { return SuspensionSpec(OneSidedPotential(full2, 1, {1.0, 2.0})); }

SequenceWindow window_of(const Word& w, int origin) { return SequenceWindow{w, origin}; }

}  // namespace

TEST_CASE("suspension construction") {
  CHECK_THROWS_AS(SuspensionSpec(OneSidedPotential(full2, 1, {1.0, 0.0})), NonPositiveRoof);
  CHECK_THROWS_AS(SuspensionSpec(OneSidedPotential(full2, 1, {1.0, -1.0})), NonPositiveRoof);
  CHECK_THROWS_AS(SuspensionSpec(OneSidedPotential(full2, 1, {1.0, 1.0}), 1.5), InputError);
  CHECK(two_level().roof_min() == 1.0);
}

TEST_CASE("flow moves along fibers and wraps") {
  const SuspensionSpec spec = two_level();
  const SequenceWindow x = window_of({0, 1, 0, 0, 1, 1}, 2);  // x_0 = 0, x_1 = 0, x_2 = 1
  SuspensionPoint p{x, 0.25};
  SuspensionPoint q = flow(spec, p, 0.5);
  CHECK(q.base.origin == 2);
  CHECK(q.height == doctest::Approx(0.75));
  q = flow(spec, p, 0.75);  // reaches the top exactly and wraps
  CHECK(q.base.origin == 3);
  CHECK(q.height == 0.0);
  q = flow(spec, p, 2.5);  // 0.75 to the top, 1 through x_1 = 0, then 0.75 into x_2 = 1
  CHECK(q.base.origin == 4);
  CHECK(q.height == doctest::Approx(0.75));
  CHECK(flow(spec, p, 0.0).height == 0.25);
  CHECK_THROWS_AS(flow(spec, p, -1.0), InputError);
  CHECK_THROWS_AS(flow(spec, p, 50.0), WindowTooShort);
}

TEST_CASE("flow semigroup law") {
  const SuspensionSpec spec(OneSidedPotential(full2, 2, {0.5, 1.25, 2.0, 0.75}));
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const SequenceWindow x = random_window(full2, -2, 60, rng);
    const SuspensionPoint p{x, unit(rng) * spec.roof_at(x)};
    const double s = 3.0 * unit(rng), t = 3.0 * unit(rng);
    const SuspensionPoint a = flow(spec, flow(spec, p, s), t);
    const SuspensionPoint b = flow(spec, p, s + t);
    // identical, or the same point on either side of a roof crossing
    if (a.base.origin == b.base.origin) {
      CHECK(a.height == doctest::Approx(b.height).epsilon(1e-9).scale(1.0));
    } else {
      CHECK(std::abs(a.base.origin - b.base.origin) == 1);
      const SuspensionPoint& low = a.base.origin < b.base.origin ? a : b;
      const SuspensionPoint& high = a.base.origin < b.base.origin ? b : a;
      CHECK(spec.roof_at(low.base) - low.height + high.height <= 1e-9);
    }
  }
}

TEST_CASE("base distance and d_pi") {
  const SequenceWindow x = window_of({0, 0, 1, 0, 0}, 2);
  const SequenceWindow y = window_of({1, 0, 1, 0, 0}, 2);
  const SequenceWindow z = window_of({0, 0, 0, 0, 0}, 2);
  CHECK(base_distance(x, x, 0.5) == 0.0);
  CHECK(base_distance(x, y, 0.5) == 0.25);  // agree for |i| < 2
  CHECK(base_distance(x, z, 0.5) == 1.0);   // differ at 0
  CHECK(base_distance(x, window_of({1, 0, 1, 1, 0}, 2), 0.5) == 0.5);

  const SuspensionSpec spec = two_level();
  // same fiber
  CHECK(d_pi(spec, {x, 0.25}, {x, 0.75}) == doctest::Approx(0.5));
  // nearby bases at the same height
  CHECK(d_pi(spec, {x, 0.5}, {y, 0.5}) == doctest::Approx(0.25));
  // top of the fiber over x (x_0 = 1, r = 2) is glued to the bottom over sigma x
  const SequenceWindow sx = x.shifted(1);
  const double delta = 1e-3;
  CHECK(d_pi(spec, {x, 2.0 - delta}, {sx, delta}) == doctest::Approx(2 * delta));
  CHECK(d_pi(spec, {sx, delta}, {x, 2.0 - delta}) == doctest::Approx(2 * delta));
  // symmetry on random points
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const SequenceWindow a = random_window(full2, -10, 10, rng), b = random_window(full2, -10, 10, rng);
    const SuspensionPoint p{a, unit(rng) * spec.roof_at(a)}, q{b, unit(rng) * spec.roof_at(b)};
    CHECK(d_pi(spec, p, q) == doctest::Approx(d_pi(spec, q, p)));
    CHECK(d_pi(spec, p, q) >= 0.0);
    CHECK(d_pi(spec, p, p) == 0.0);
  }
}

TEST_CASE("segment lengths") {
  const SuspensionSpec spec = two_level();
  const SequenceWindow x = window_of({0, 1, 1, 0, 0}, 2);  // x_0 = 1
  CHECK(segment_length(spec, VerticalSegment{x, 0.5, 1.5}) == doctest::Approx(0.5));
  const SequenceWindow y = window_of({1, 1, 1, 0, 1}, 2);
  // base distance 1/4 (differ at +-2); after the shift they differ at +1: 1/2
  CHECK(segment_length(spec, HorizontalSegment{x, y, 0.0}) == doctest::Approx(0.25));
  CHECK(segment_length(spec, HorizontalSegment{x, y, 1.0}) == doctest::Approx(0.5));
  CHECK(segment_length(spec, HorizontalSegment{x, y, 0.5}) == doctest::Approx(0.375));
}

TEST_CASE("comparability of d_pi with segment chains") {
  std::mt19937_64 rng(79);
  const SuspensionSpec spec = two_level();
  const double k = comparability_estimate(spec, 5000, rng);
  CHECK(k >= 1.0);
  CHECK(k <= 10.0);
  const TransitionStructure golden({{1, 1}, {1, 0}});
  const SuspensionSpec g(OneSidedPotential(golden, 2, {0.5, 3.0, 1.0}), 0.3);
  CHECK(comparability_estimate(g, 5000, rng) <= 10.0);
}

TEST_CASE("Gauss-Legendre quadrature") {
  for (int order : {1, 2, 4, 8, 16}) {
    const GaussRule rule = gauss_legendre(order);
    double w = 0.0;
    for (double v : rule.weights) w += v;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    // exact for degree 2 order - 1
    const int deg = 2 * order - 1;
    double m = 0.0;
    for (int i = 0; i < order; ++i) m += rule.weights[i] * std::pow(rule.nodes[i], deg - 1);
    const double exact = (deg - 1) % 2 == 0 ? 2.0 / deg : 0.0;
    CHECK(m == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(integrate([](double s) { return std::sin(s); }, 0.0, 1.0, 16, 8) == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-14));
  auto wiggle = [](double s) { return std::exp(-s) * std::cos(5.0 * s); };
  CHECK(integrate(wiggle, 0.0, 3.0, 32, 8) == doctest::Approx(oracle::simpson(wiggle, 0.0, 3.0, 1e-13)).epsilon(1e-11));
}

TEST_CASE("induced observables") {
  const SuspensionSpec spec = two_level();
  const InducedObservable c = induce_observable(spec, observables::constant(3.0));
  CHECK(c.phi.table().value_at(0) == doctest::Approx(3.0));
  CHECK(c.phi.table().value_at(1) == doctest::Approx(6.0));
  const InducedObservable lin = induce_observable(spec, observables::height_linear(0.0, 2.0));
  CHECK(lin.phi.table().value_at(0) == doctest::Approx(1.0));  // r^2
  CHECK(lin.phi.table().value_at(1) == doctest::Approx(4.0));
  const InducedObservable s = induce_observable(spec, observables::fiber_sine(1.0, 1.0));
  CHECK(s.phi.table().value_at(0) == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-13));
  CHECK(s.phi.table().value_at(1) == doctest::Approx(1.0 - std::cos(2.0)).epsilon(1e-13));
  CHECK(s.error_estimate <= 1e-10);

  // indicator of [1] times (1 + s^2), depth-2 roof: compare with Simpson
  const SuspensionSpec deeper(OneSidedPotential(full2, 2, {0.5, 1.25, 2.0, 0.75}));
  const FlowObservable poly = observables::base_indicator_poly({1}, {1.0, 0.0, 1.0});
  const InducedObservable ip = induce_observable(deeper, poly);
  for (std::size_t i = 0; i < ip.phi.table().size(); ++i) {
    const Word& w = ip.phi.table().words()[i];
    const double r = deeper.roof()(w);
    const double expected = w[0] == 1 ? oracle::simpson([](double t) { return 1.0 + t * t; }, 0.0, r, 1e-13) : 0.0;
    CHECK(ip.phi.table().value_at(i) == doctest::Approx(expected).epsilon(1e-12));
  }

  // linearity in the observable
  const FlowObservable a = observables::fiber_sine(0.7, 2.3, 0.1);
  const FlowObservable b = observables::height_linear(1.0, -0.5);
  const InducedObservable lhs = induce_observable(deeper, observables::combination(2.5, a, b));
  const InducedObservable ia = induce_observable(deeper, a), ib = induce_observable(deeper, b);
  for (std::size_t i = 0; i < lhs.phi.table().size(); ++i) {
    CHECK(lhs.phi.table().value_at(i) ==
          doctest::Approx(2.5 * ia.phi.table().value_at(i) + ib.phi.table().value_at(i)).epsilon(1e-12));
  }

  // fiber_density integrates back to phi: every locally constant phi is reached
  const OneSidedPotential target(full2, 2, {0.3, -1.0, 2.0, 0.0});
  const InducedObservable back = induce_observable(deeper, observables::fiber_density(target, deeper.roof()));
  for (std::size_t i = 0; i < back.phi.table().size(); ++i) {
    CHECK(back.phi.table().value_at(i) == doctest::Approx(target.table().value_at(i)).epsilon(1e-13));
  }
}

TEST_CASE("induced observable serial and parallel agree") {
  const TransitionStructure ts = TransitionStructure::full_shift(3);
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  std::vector<double> roof(27);
  for (double& v : roof) v = u(rng);
  const SuspensionSpec spec(OneSidedPotential(ts, 3, roof));
  const FlowObservable phi = observables::fiber_sine(1.3, 1.7, 0.2);
  const InducedObservable a = induce_observable_serial(spec, phi);
  const InducedObservable b = induce_observable(spec, phi);
  CHECK(a.phi.table().values() == b.phi.table().values());
  CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("quadrature failure is reported") {
  const SuspensionSpec spec = two_level();
  const FlowObservable rough{"rough", 1, [](std::span<const Symbol>, double s) { return std::sin(400.0 * s * s); }};
  CHECK_THROWS_AS(induce_observable(spec, rough, QuadratureOptions{2, 2, 1e-14}), QuadratureNotConverged);
}

TEST_CASE("quotient defect") {
  const SuspensionSpec spec = two_level();
  CHECK(quotient_defect(spec, observables::constant(1.0)) == 0.0);
  // 1 - cos(2 pi s / r) vanishes at both ends of every fiber
  const FlowObservable periodic{"periodic", 1, [](std::span<const Symbol> base, double s) {
                                  const double r = base[0] == 0 ? 1.0 : 2.0;
                                  return 1.0 - std::cos(2.0 * M_PI * s / r);
                                }};
  CHECK(quotient_defect(spec, periodic) <= 1e-12);
  CHECK(quotient_defect(spec, observables::height_linear(0.0, 1.0)) == doctest::Approx(2.0));
}

TEST_CASE("flow averages over periodic orbits") {
  const SuspensionSpec spec = two_level();
  const PeriodicCertificate orbit(Word{0, 1});
  // height s averages to (1/2 + 2) / 3
  CHECK(flow_average(spec, observables::height_linear(0.0, 1.0), orbit) == doctest::Approx(2.5 / 3.0));
  CHECK(flow_average(spec, observables::constant(4.0), orbit) == doctest::Approx(4.0));
  const SuspensionSpec doubled(OneSidedPotential(full2, 1, {2.0, 2.0}));
  CHECK(flow_average(doubled, observables::height_linear(0.0, 1.0), PeriodicCertificate(Word{0})) == doctest::Approx(1.0));
  CHECK(lifted_cylinder_mass(spec, orbit, Word{1}) == doctest::Approx(2.0 / 3.0));
  CHECK(lifted_cylinder_mass(spec, orbit, Word{0}) + lifted_cylinder_mass(spec, orbit, Word{1}) == doctest::Approx(1.0));
}
