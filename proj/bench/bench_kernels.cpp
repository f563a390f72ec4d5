// Serial reference vs OpenMP kernels: brute-force orbit scoring, Lorenz
// orbit enumeration and fiber integrals. Prints best-of-N wall times and
// checks that both paths agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "ergopt/lorenz.hpp"
#include "ergopt/optimizer.hpp"
#include "ergopt/parallel.hpp"
#include "ergopt/suspension.hpp"

using namespace ergopt;

namespace {

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-28s serial %9.4f s   openmp %9.4f s   speedup %5.2fx   %s\n", name, serial, parallel,
              serial / parallel, agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("workers: %d\n", worker_count());
  std::mt19937_64 rng(2024);

  {
    const TransitionStructure ts = TransitionStructure::full_shift(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> values(27);
    for (double& v : values) v = u(rng);
    const TwoSidedPotential phi(ts, 1, values);
    const CycleObjective objective = mean_objective(phi);
    MaximizationResult a, b;
    const double serial = best_of(3, [&] { a = brute_force_periodic_serial(ts, objective, 12); });
    const double parallel = best_of(3, [&] { b = brute_force_periodic(ts, objective, 12); });
    report("brute_force_periodic p<=12", serial, parallel,
           a.value == b.value && a.certificate.word() == b.certificate.word());
  }
  {
    const LorenzModel m;
    std::vector<LorenzOrbit> a, b;
    const double serial = best_of(3, [&] { a = enumerate_orbits_serial(m, 16, 0.0); });
    const double parallel = best_of(3, [&] { b = enumerate_orbits(m, 16, 0.0); });
    bool agree = a.size() == b.size();
    for (std::size_t i = 0; agree && i < a.size(); ++i) agree = a[i].itinerary == b[i].itinerary && a[i].points == b[i].points;
    report("enumerate_orbits p<=16", serial, parallel, agree);
  }
  {
    const TransitionStructure ts = TransitionStructure::full_shift(4);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    std::vector<double> roof(4 * 4 * 4 * 4);
    for (double& v : roof) v = u(rng);
    const SuspensionSpec spec(OneSidedPotential(ts, 4, roof));
    const FlowObservable phi = observables::fiber_sine(1.3, 1.7, 0.2);
    const QuadratureOptions quad{64, 8, 1e-8};
    InducedObservable a{OneSidedPotential(ts, 1), 0.0}, b{OneSidedPotential(ts, 1), 0.0};
    const double serial = best_of(3, [&] { a = induce_observable_serial(spec, phi, quad); });
    const double parallel = best_of(3, [&] { b = induce_observable(spec, phi, quad); });
    report("induce_observable 256 fibers", serial, parallel, a.phi.table().values() == b.phi.table().values());
  }
  return 0;
}
