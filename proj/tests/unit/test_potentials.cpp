#include <doctest.h>

#include <cmath>
#include <random>

#include "ergopt/acceptance.hpp"
#include "ergopt/error.hpp"
#include "ergopt/potentials.hpp"
#include "oracles.hpp"

using namespace ergopt;

namespace {

const TransitionStructure golden({{1, 1}, {1, 0}});

TwoSidedPotential random_two_sided(std::mt19937_64& rng, const TransitionStructure& ts, int radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(admissible_words(ts, 2 * radius + 1).size());
  for (double& v : values) v = u(rng);
  return TwoSidedPotential(ts, radius, values);
}

}  // namespace

TEST_CASE("potential tables and evaluation") {
  const OneSidedPotential phi(golden, 2, {1.0, 2.0, 3.0});  // 00, 01, 10
  CHECK(phi(Word{0, 1, 1}) == 2.0);
  CHECK(phi.min_value() == 1.0);
  CHECK(phi.max_value() == 3.0);
  CHECK_THROWS_AS(phi(Word{0}), WindowTooShort);
  CHECK_THROWS_AS(OneSidedPotential(golden, 2, {1.0}), InputError);
  CHECK(phi.cycle_average(PeriodicCertificate(Word{0, 1})) == doctest::Approx(2.5));
  const auto deeper = phi.with_depth(4);
  for (const Word& w : deeper.table().words()) CHECK(deeper(w) == phi(w));
  CHECK(phi.plus_constant(1.5)(Word{1, 0}) == 4.5);
}

TEST_CASE("var_k") {
  const auto full = TransitionStructure::full_shift(2);
  const TwoSidedPotential zero_radius(full, 0, {0.3, -0.7});
  CHECK(var_k(zero_radius, 0) == 0.0);
  // radius-1 table on words x_{-1} x_0 x_1 in lexicographic order
  const TwoSidedPotential phi(full, 1, {0.0, 1.0, 5.0, 2.0, 4.0, -1.0, 3.0, 3.5});
  // centre 0: {0, 1, 4, -1} -> 5; centre 1: {5, 2, 3, 3.5} -> 3
  CHECK(var_k(phi, 0) == 5.0);
  CHECK(var_k(phi, 1) == 0.0);
  CHECK(var_k(phi, 3) == 0.0);
}

TEST_CASE("reference scheme and rho") {
  const ReferenceScheme g(golden);
  CHECK(g.cycle(0) == Word{0});
  CHECK(g.cycle(1) == Word{1, 0});
  // past of a sequence with x_0 = 1 alternates 0, 1 going backwards
  SequenceWindow x{{1, 0, 0, 1, 0, 1}, 3};  // coordinates -3..2, x_0 = 1
  const SequenceWindow star = rho(g, x);
  CHECK(star.at(0) == 1);
  CHECK(star.at(-1) == 0);
  CHECK(star.at(-2) == 1);
  CHECK(star.at(-3) == 0);
  CHECK(star.at(1) == x.at(1));
  CHECK(star.at(2) == x.at(2));
  CHECK(admissible(golden, star.symbols));

  const auto full = TransitionStructure::full_shift(2);
  const ReferenceScheme f(full);
  SequenceWindow y{{1, 0, 0, 1}, 2};  // (.., 1, 0, [0], 1)
  const SequenceWindow fy = rho(f, y);
  CHECK(fy.symbols == Word{0, 0, 0, 1});
  CHECK(rho(f, fy).symbols == fy.symbols);
  CHECK_THROWS_AS(ReferenceScheme(golden, {{0}, {1}}), InputError);
}

TEST_CASE("coboundary u") {
  const auto full = TransitionStructure::full_shift(2);
  const ReferenceScheme scheme(full);
  std::mt19937_64 rng(3);
  const TwoSidedPotential flat = random_two_sided(rng, full, 0);
  const TwoSidedPotential u0 = coboundary_u(flat, scheme);
  for (double v : u0.table().values()) CHECK(v == 0.0);

  // radius 1: u(x) = phi(x) - phi(rho x)
  const TwoSidedPotential phi = random_two_sided(rng, full, 1);
  const TwoSidedPotential u = coboundary_u(phi, scheme);
  CHECK(u.radius() == 1);
  for (const Word& w : u.table().words()) {
    const SequenceWindow x{w, 1};
    CHECK(u(x) == doctest::Approx(phi(x) - phi(rho(scheme, x))).epsilon(1e-15));
  }

  // one-sided input: u vanishes
  const OneSidedPotential forward(golden, 2, {0.5, -1.0, 2.0});
  const TwoSidedPotential lifted = TwoSidedPotential::from_one_sided(forward);
  const TwoSidedPotential u_forward = coboundary_u(lifted, ReferenceScheme(golden));
  for (double v : u_forward.table().values()) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("reduction agrees with phi + u o sigma - u and preserves orbit averages") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const TransitionStructure ts = random_primitive_sft(rng, 2, 3);
    const int m = static_cast<int>(rng() % 3);
    const TwoSidedPotential phi = random_two_sided(rng, ts, m);
    const ReferenceScheme scheme(ts);
    const OneSidedPotential psi = reduce_two_sided(phi, scheme);
    CHECK(psi.depth() == 2 * m + 1);
    const TwoSidedPotential u = coboundary_u(phi, scheme);
    // Evaluate the defining identity on periodic sequences, which are
    // admissible on every window.
    for (const PeriodicCertificate& o : periodic_words(ts, 6)) {
      for (int shift = 0; shift < o.period(); ++shift) {
        const Word rotated = o.window(shift, o.period());
        const SequenceWindow x = oracle::periodic_window(rotated, 4 * m + 4);
        const double by_definition = phi(x) + u(x.shifted(1)) - u(x);
        CHECK(psi(x.slice(0, 2 * m)) == doctest::Approx(by_definition).epsilon(1e-13));
      }
      CHECK(std::abs(psi.cycle_average(o) - phi.cycle_average(o)) <= 1e-12);
    }
  }
}

TEST_CASE("reduction of a radius-0 potential is the identity") {
  const TwoSidedPotential phi(golden, 0, {0.25, -2.0});
  const OneSidedPotential psi = reduce_two_sided(phi, ReferenceScheme(golden));
  CHECK(psi.depth() == 1);
  CHECK(psi.table().values() == std::vector<double>{0.25, -2.0});
}

TEST_CASE("reduction is one-sided and linear") {
  std::mt19937_64 rng(23);
  const TransitionStructure ts({{1, 1, 0}, {0, 1, 1}, {1, 1, 1}});
  const ReferenceScheme scheme(ts);
  const TwoSidedPotential a = random_two_sided(rng, ts, 2);
  const TwoSidedPotential b = random_two_sided(rng, ts, 2);
  const double c = -1.75;
  const OneSidedPotential lhs = reduce_two_sided(a.combined(c, b, 1.0), scheme);
  const OneSidedPotential rhs = reduce_two_sided(a, scheme).combined(c, reduce_two_sided(b, scheme), 1.0);
  for (std::size_t i = 0; i < lhs.table().size(); ++i) {
    CHECK(lhs.table().value_at(i) == doctest::Approx(rhs.table().value_at(i)).epsilon(1e-14));
  }
}

TEST_CASE("golden-mean radius-1 reduction matches orbit averages up to period 6") {
  std::mt19937_64 rng(29);
  const TwoSidedPotential phi = random_two_sided(rng, golden, 1);
  const OneSidedPotential psi = reduce_two_sided(phi, ReferenceScheme(golden));
  CHECK(psi.depth() <= 3);
  int orbits = 0;
  for (const PeriodicCertificate& o : periodic_words(golden, 6)) {
    CHECK(std::abs(psi.cycle_average(o) - phi.cycle_average(o)) <= 1e-12);
    ++orbits;
  }
  CHECK(orbits == 1 + 1 + 1 + 1 + 2 + 2);
}

TEST_CASE("Hölder truncation") {
  const auto full = TransitionStructure::full_shift(2);
  const ReferenceScheme scheme(full);
  auto geometric = [](const SequenceWindow& x) {
    double sum = 0.0;
    for (int j = x.min_coord(); j <= x.max_coord(); ++j) sum += std::pow(0.5, std::abs(j)) * x.at(j);
    return sum;
  };
  const int m = 8;
  const TruncatedPotential t = truncate_holder(full, scheme, geometric, 4.0, 0.5, m);
  CHECK(t.error_bound == doctest::Approx(4.0 / 256.0));
  // sup error against sequences that differ from the completion outside |j| <= m
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    SequenceWindow x;
    x.origin = 40;
    for (int k = -40; k <= 40; ++k) x.symbols.push_back(static_cast<Symbol>(rng() % 2));
    CHECK(std::abs(t.potential(x) - geometric(x)) <= t.error_bound);
  }
  for (int k = 0; k <= m; ++k) CHECK(var_k(t.potential, k) <= 4.0 * std::pow(0.5, k) + t.error_bound);

  const TruncatedPotential constant = truncate_holder(full, scheme, [](const SequenceWindow&) { return 2.5; }, 0.0, 0.5, 3);
  for (double v : constant.potential.table().values()) CHECK(v == 2.5);
  CHECK(constant.error_bound == 0.0);

  const TwoSidedPotential exact(full, 1, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0});
  const TruncatedPotential again =
      truncate_holder(full, scheme, [&](const SequenceWindow& x) { return exact(x); }, 1.0, 0.5, 1);
  CHECK(again.potential.table().values() == exact.table().values());
}
