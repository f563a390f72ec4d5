#pragma once

// Geometric Lorenz model: the one-dimensional quotient map, its Poincaré
// map and log-singular roof, periodic orbits by branch composition, and the
// constrained-optimum and near-singular experiments built on them.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ergopt {

struct LorenzModel {
  double gamma = 0.75;
  double a = 0.95;
  double lambda_y = 0.5;
  double lambda1 = 1.0;
  double s0 = 1.0;
  // Only the ordering lambda3 < lambda1 < lambda2 is checked.
  double lambda2 = 2.0;
  double lambda3 = 0.5;
};

/// sign(x) ((1+a)|x|^gamma - 1). Throws SingularInput at 0.
double alpha(const LorenzModel& m, double x);
double alpha_prime(const LorenzModel& m, double x);
/// (alpha(x), (lambda_y y + sign(x)(1 - lambda_y)) / 2).
std::pair<double, double> poincare(const LorenzModel& m, double x, double y);
/// -log|x| / lambda1 + s0.
double roof(const LorenzModel& m, double x);

/// C1 log alpha'(x) <= roof(x) <= C2 log alpha'(x) for 0 < |x| <= x_bar.
struct RoofComparability {
  double c1 = 0.0;
  double c2 = 0.0;
  double x_bar = 1.0;
};
RoofComparability roof_comparability(const LorenzModel& m);

struct ModelCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ModelCheck> checks;
  double min_alpha_prime_analytic = 0.0;
  double min_alpha_prime_grid = 0.0;
  bool passed() const;
};

/// Never throws on a bad model; failures are listed in the report.
ValidationReport validate_model(const LorenzModel& m);

/// Periodic orbit of alpha. itinerary[i] is 'L' when points[i] < 0 and 'R'
/// when points[i] > 0.
struct LorenzOrbit {
  std::string itinerary;
  std::vector<double> points;

  int period() const { return static_cast<int>(points.size()); }
  double min_abs() const;
  /// Rotation with the lexicographically least itinerary.
  LorenzOrbit canonical() const;
};

/// Fixed point of the branch composition along `itinerary`, or nullopt when
/// the composition does not cross the diagonal or the orbit comes within
/// 1e-10 of the discontinuity. Throws InputError on letters other than L, R.
std::optional<LorenzOrbit> find_periodic(const LorenzModel& m, const std::string& itinerary);

/// max |alpha(x_i) - x_{i+1}| around the orbit.
double orbit_defect(const LorenzModel& m, const LorenzOrbit& o);

struct EnumerationOptions {
  int max_period = 22;  // larger p_max raises BudgetExceeded
};

/// Orbits of every primitive itinerary up to rotation with period <= p_max
/// and min |x_i| >= epsilon, sorted by (period, itinerary). The orbit search
/// is an OpenMP loop over itineraries.
std::vector<LorenzOrbit> enumerate_orbits(const LorenzModel& m, int p_max, double epsilon,
                                          const EnumerationOptions& opts = {});
/// Serial reference for enumerate_orbits.
std::vector<LorenzOrbit> enumerate_orbits_serial(const LorenzModel& m, int p_max, double epsilon,
                                                 const EnumerationOptions& opts = {});

struct OrbitStats {
  double map_avg = 0.0;
  double flow_avg = 0.0;  // sum phi * roof / sum roof
  double lyap = 0.0;
  double roof_sum = 0.0;
};
OrbitStats orbit_stats(const LorenzModel& m, const LorenzOrbit& o, const std::function<double(double)>& phi);

struct LorenzObservable {
  std::string name;
  std::function<double(double)> phi;
};

/// Built-in observables: "constant", "log_singular", "bump", "bump_singular".
LorenzObservable lorenz_observable(const std::string& name);
std::vector<std::string> lorenz_observable_names();

enum class CurveShape { mixed, strict_decrease, plateau, undetermined };
std::string shape_label(CurveShape s);

/// Shape of a curve listed along a decreasing epsilon grid, judged against
/// the value at the smallest epsilon: plateau when the last two finite
/// values agree within 1e-9, strict_decrease (in epsilon) when every finite
/// step strictly increases, mixed otherwise.
CurveShape classify_shape(const std::vector<double>& m_hat);

struct CurvePoint {
  double epsilon = 0.0;
  double m_hat = 0.0;  // NaN when no orbit avoids (-epsilon, epsilon)
  std::optional<LorenzOrbit> certificate;
};

struct ConstrainedCurve {
  std::vector<CurvePoint> points;
  CurveShape shape = CurveShape::undetermined;
  bool non_increasing = true;
  std::vector<std::string> warnings;
};

/// Best flow average over orbits avoiding each cut. `epsilon_grid` must be
/// strictly decreasing; InputError otherwise.
ConstrainedCurve constrained_m_curve(const LorenzModel& m, const std::function<double(double)>& phi,
                                     const std::vector<double>& epsilon_grid, int p_max);

/// Orbits of period <= p_max ordered by decreasing min |x|, keeping each one
/// whose mean roof beats every orbit before it.
std::vector<LorenzOrbit> near_singular_family(const LorenzModel& m, int p_max);

struct DiracRow {
  std::string itinerary;
  double min_abs_x = 0.0;
  double roof_mean = 0.0;
  double lyap = 0.0;
  double f_eps = 0.0;
  double bound = 0.0;
};

struct DiracExperiment {
  double epsilon = 0.0;
  double c_eps = 0.0;
  std::vector<DiracRow> rows;
  bool bound_holds = true;
  bool f_increasing = true;
};

/// f_eps = sum max(0, roof(x_i) - C_eps) / sum roof(x_i) with C_eps the roof
/// bound off the cut |x| < epsilon, against (1 - eps)(1 - C_eps / mean roof).
/// Throws EmptyFamily, InputError unless 0 < epsilon < 1.
DiracExperiment dirac_mass_experiment(const LorenzModel& m, const std::vector<LorenzOrbit>& family, double epsilon);

/// Largest Lyapunov exponent over enumerate_orbits(m, p, 0), per p.
std::vector<double> max_lyapunov_by_period(const LorenzModel& m, const std::vector<int>& periods);

}  // namespace ergopt
