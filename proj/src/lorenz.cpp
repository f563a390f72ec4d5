#include "ergopt/lorenz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ergopt/error.hpp"
#include "ergopt/parallel.hpp"
#include "ergopt/sft.hpp"

namespace ergopt {

namespace {

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_nonzero(double x) {
  if (x == 0.0 || !std::isfinite(x)) throw SingularInput("the Lorenz map is singular at x = 0");
}

}  // namespace

double alpha(const LorenzModel& m, double x) {
  require_nonzero(x);
  return sign(x) * ((1.0 + m.a) * std::pow(std::abs(x), m.gamma) - 1.0);
}

double alpha_prime(const LorenzModel& m, double x) {
  require_nonzero(x);
  return (1.0 + m.a) * m.gamma * std::pow(std::abs(x), m.gamma - 1.0);
}

std::pair<double, double> poincare(const LorenzModel& m, double x, double y) {
  return {alpha(m, x), (m.lambda_y * y + sign(x) * (1.0 - m.lambda_y)) / 2.0};
}

double roof(const LorenzModel& m, double x) {
  require_nonzero(x);
  return -std::log(std::abs(x)) / m.lambda1 + m.s0;
}

RoofComparability roof_comparability(const LorenzModel& m) {
  // With L = -log|x| >= 0: log alpha' = K + (1 - gamma) L, roof = L / lambda1 + s0.
  // Their ratio is a Moebius function of L, so its extremes sit at L = 0 and L -> inf.
  const double k = std::log((1.0 + m.a) * m.gamma);
  RoofComparability c;
  if (!(k > 0.0)) {
    c.c1 = c.c2 = std::numeric_limits<double>::quiet_NaN();
    return c;
  }
  const double at_one = m.s0 / k;
  const double at_zero = 1.0 / (m.lambda1 * (1.0 - m.gamma));
  c.c1 = std::min(at_one, at_zero);
  c.c2 = std::max(at_one, at_zero);
  c.x_bar = 1.0;
  return c;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ModelCheck& c) { return c.passed; });
}

namespace {

using Interval = std::pair<double, double>;

// Image of a closed interval under alpha, with each branch extended to its
// closed domain (alpha(0-) = 1, alpha(0+) = -1).
std::vector<Interval> image(const LorenzModel& m, const Interval& iv) {
  auto branch = [&](double x, bool right) {
    const double core = (1.0 + m.a) * std::pow(std::abs(x), m.gamma);
    return right ? core - 1.0 : 1.0 - core;
  };
  std::vector<Interval> out;
  if (iv.first < 0.0) out.emplace_back(branch(iv.first, false), branch(std::min(iv.second, 0.0), false));
  if (iv.second > 0.0) out.emplace_back(branch(std::max(iv.first, 0.0), true), branch(iv.second, true));
  return out;
}

std::vector<Interval> merged(std::vector<Interval> ivs) {
  std::sort(ivs.begin(), ivs.end());
  std::vector<Interval> out;
  for (const Interval& iv : ivs) {
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

// Number of iterates until the image of [lo, hi] covers [alpha(-1), alpha(1)],
// or -1 within the step cap.
int steps_to_onto(const LorenzModel& m, Interval start, int cap) {
  std::vector<Interval> current{start};
  const double target_lo = -m.a, target_hi = m.a;
  for (int step = 1; step <= cap; ++step) {
    std::vector<Interval> next;
    for (const Interval& iv : current) {
      for (const Interval& piece : image(m, iv)) next.push_back(piece);
    }
    current = merged(std::move(next));
    for (const Interval& iv : current) {
      if (iv.first <= target_lo && iv.second >= target_hi) return step;
    }
  }
  return -1;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate_model(const LorenzModel& m) {
  ValidationReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const bool gamma_ok = m.gamma > 0.0 && m.gamma < 1.0;
  add("gamma_in_unit_interval", gamma_ok, "gamma = " + format_double(m.gamma));
  add("alpha_at_one_below_one", m.a > 0.0 && m.a < 1.0, "alpha(1) = a = " + format_double(m.a));

  const double near_zero = 1e-12;
  const double left_limit = sign(near_zero) * ((1.0 + m.a) * std::pow(near_zero, m.gamma) - 1.0);
  add("alpha_at_zero_plus_is_minus_one", gamma_ok && std::abs(left_limit + 1.0) < 1e-6,
      "alpha(1e-12) = " + format_double(left_limit));

  report.min_alpha_prime_analytic = (1.0 + m.a) * m.gamma;
  add("expansion_analytic", report.min_alpha_prime_analytic > std::numbers::sqrt2,
      "(1+a) gamma = " + format_double(report.min_alpha_prime_analytic));

  // 10^4 log-spaced points on [1e-6, 1]; oddness and expansion on both signs.
  double grid_min = std::numeric_limits<double>::infinity();
  double odd_defect = 0.0;
  const int grid = 10000;
  for (int i = 0; i < grid; ++i) {
    const double x = std::pow(10.0, -6.0 + 6.0 * i / (grid - 1));
    grid_min = std::min({grid_min, alpha_prime(m, x), alpha_prime(m, -x)});
    odd_defect = std::max(odd_defect, std::abs(alpha(m, -x) + alpha(m, x)));
  }
  report.min_alpha_prime_grid = grid_min;
  add("expansion_grid", grid_min > std::numbers::sqrt2, "min alpha' on grid = " + format_double(grid_min));
  add("alpha_odd", odd_defect == 0.0, "max |alpha(-x) + alpha(x)| = " + format_double(odd_defect));
  add("alpha_prime_unbounded", gamma_ok && alpha_prime(m, 1e-12) > 1e2,
      "alpha'(1e-12) = " + format_double(alpha_prime(m, 1e-12)));
  add("roof_positive", m.lambda1 > 0.0 && m.s0 > 0.0,
      "lambda1 = " + format_double(m.lambda1) + ", s0 = " + format_double(m.s0));
  add("y_contraction", m.lambda_y > 0.0 && m.lambda_y < 1.0, "lambda_y = " + format_double(m.lambda_y));
  add("eigenvalue_ordering", 0.0 < m.lambda3 && m.lambda3 < m.lambda1 && m.lambda1 < m.lambda2,
      "lambda3 < lambda1 < lambda2");

  // Locally eventually onto, on a grid of small intervals away from 0.
  int worst_steps = 0;
  bool onto = gamma_ok && m.a > 0.0 && m.a < 1.0;
  for (int i = 0; onto && i < 100; ++i) {
    const double lo = -1.0 + 0.02 * i;
    const double hi = lo + 0.01;
    const int steps = steps_to_onto(m, {lo, hi}, 200);
    if (steps < 0) onto = false;
    worst_steps = std::max(worst_steps, steps);
  }
  add("locally_eventually_onto", onto, "max iterates to cover (alpha(-1), alpha(1)) = " + std::to_string(worst_steps));
  return report;
}

double LorenzOrbit::min_abs() const {
  double best = std::numeric_limits<double>::infinity();
  for (double x : points) best = std::min(best, std::abs(x));
  return best;
}

LorenzOrbit LorenzOrbit::canonical() const {
  std::size_t best = 0;
  const std::size_t p = itinerary.size();
  for (std::size_t s = 1; s < p; ++s) {
    if ((itinerary.substr(s) + itinerary.substr(0, s)) < (itinerary.substr(best) + itinerary.substr(0, best))) {
      best = s;
    }
  }
  LorenzOrbit out;
  out.itinerary = itinerary.substr(best) + itinerary.substr(0, best);
  out.points.assign(points.begin() + static_cast<std::ptrdiff_t>(best), points.end());
  out.points.insert(out.points.end(), points.begin(), points.begin() + static_cast<std::ptrdiff_t>(best));
  return out;
}

namespace {

struct Branch {
  bool right;
  double lo, hi;            // closed domain
  double range_lo, range_hi;
};

Branch branch_of(const LorenzModel& m, char letter) {
  if (letter == 'R') return {true, 0.0, 1.0, -1.0, m.a};
  if (letter == 'L') return {false, -1.0, 0.0, -m.a, 1.0};
  throw InputError(std::string("itinerary letters must be L or R, got '") + letter + "'");
}

double apply(const LorenzModel& m, const Branch& b, double x) {
  const double core = (1.0 + m.a) * std::pow(std::abs(x), m.gamma);
  return b.right ? core - 1.0 : 1.0 - core;
}

double invert(const LorenzModel& m, const Branch& b, double y) {
  const double base = b.right ? (1.0 + y) / (1.0 + m.a) : (1.0 - y) / (1.0 + m.a);
  const double r = std::pow(std::max(base, 0.0), 1.0 / m.gamma);
  return b.right ? std::min(r, 1.0) : -std::min(r, 1.0);
}

}  // namespace

std::optional<LorenzOrbit> find_periodic(const LorenzModel& m, const std::string& itinerary) {
  if (itinerary.empty()) throw InputError("itinerary must be nonempty");
  const int p = static_cast<int>(itinerary.size());
  std::vector<Branch> branches;
  for (char c : itinerary) branches.push_back(branch_of(m, c));

  // Backward recursion: K_j = D_j intersected with the preimage of K_{j+1}.
  Interval k{branches[p - 1].lo, branches[p - 1].hi};
  for (int j = p - 2; j >= 0; --j) {
    const Branch& b = branches[j];
    const double lo = std::max(k.first, b.range_lo);
    const double hi = std::min(k.second, b.range_hi);
    if (lo > hi) return std::nullopt;
    k = {invert(m, b, lo), invert(m, b, hi)};
  }
  auto excess = [&](double x) {
    double y = x;
    for (const Branch& b : branches) y = apply(m, b, y);
    return y - x;
  };
  double lo = k.first, hi = k.second;
  if (!(excess(lo) <= 0.0 && excess(hi) >= 0.0)) return std::nullopt;
  // The composition is increasing with slope > 1, so the crossing is unique.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double x0 = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;

  LorenzOrbit orbit;
  orbit.itinerary = itinerary;
  orbit.points.assign(static_cast<std::size_t>(p), 0.0);
  orbit.points[0] = x0;
  // Inverse branches contract, so points are recovered backwards from x0.
  double y = x0;
  for (int j = p - 1; j >= 1; --j) {
    y = invert(m, branches[j], y);
    orbit.points[static_cast<std::size_t>(j)] = y;
  }
  for (int j = 0; j < p; ++j) {
    const double x = orbit.points[static_cast<std::size_t>(j)];
    if (std::abs(x) < 1e-10) return std::nullopt;
    if ((x < 0.0) != (itinerary[static_cast<std::size_t>(j)] == 'L')) return std::nullopt;
  }
  if (orbit_defect(m, orbit) > 1e-10) return std::nullopt;
  return orbit;
}

double orbit_defect(const LorenzModel& m, const LorenzOrbit& o) {
  double worst = 0.0;
  for (int i = 0; i < o.period(); ++i) {
    const double next = o.points[static_cast<std::size_t>((i + 1) % o.period())];
    worst = std::max(worst, std::abs(alpha(m, o.points[static_cast<std::size_t>(i)]) - next));
  }
  return worst;
}

namespace {

std::vector<std::string> itineraries(int p_max, const EnumerationOptions& opts) {
  if (p_max < 1) throw InputError("p_max must be >= 1");
  if (p_max > opts.max_period) {
    throw BudgetExceeded("p_max " + std::to_string(p_max) + " exceeds the limit " + std::to_string(opts.max_period));
  }
  std::vector<std::string> out;
  for (const PeriodicCertificate& c : periodic_words(TransitionStructure::full_shift(2), p_max)) {
    std::string s;
    for (Symbol v : c.word()) s.push_back(v == 0 ? 'L' : 'R');
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<LorenzOrbit> collect(std::vector<std::optional<LorenzOrbit>>& found, double epsilon) {
  std::vector<LorenzOrbit> out;
  for (auto& o : found) {
    if (o && o->min_abs() >= epsilon) out.push_back(std::move(*o));
  }
  return out;
}

}  // namespace

std::vector<LorenzOrbit> enumerate_orbits(const LorenzModel& m, int p_max, double epsilon,
                                          const EnumerationOptions& opts) {
  const std::vector<std::string> words = itineraries(p_max, opts);
  std::vector<std::optional<LorenzOrbit>> found(words.size());
  const long count = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic, 32) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    found[static_cast<std::size_t>(i)] = find_periodic(m, words[static_cast<std::size_t>(i)]);
  }
  return collect(found, epsilon);
}

std::vector<LorenzOrbit> enumerate_orbits_serial(const LorenzModel& m, int p_max, double epsilon,
                                                 const EnumerationOptions& opts) {
  const std::vector<std::string> words = itineraries(p_max, opts);
  std::vector<std::optional<LorenzOrbit>> found;
  for (const std::string& w : words) found.push_back(find_periodic(m, w));
  return collect(found, epsilon);
}

OrbitStats orbit_stats(const LorenzModel& m, const LorenzOrbit& o, const std::function<double(double)>& phi) {
  OrbitStats s;
  double weighted = 0.0, plain = 0.0, log_derivative = 0.0;
  for (double x : o.points) {
    const double value = phi(x);
    const double r = roof(m, x);
    plain += value;
    weighted += value * r;
    s.roof_sum += r;
    log_derivative += std::log(alpha_prime(m, x));
  }
  const double p = static_cast<double>(o.period());
  s.map_avg = plain / p;
  s.flow_avg = weighted / s.roof_sum;
  s.lyap = log_derivative / p;
  return s;
}

namespace {

double bump(double x) {
  const double z = (x - 0.6) / 0.1;
  return std::max(0.0, 1.0 - z * z);
}

}  // namespace

LorenzObservable lorenz_observable(const std::string& name) {
  if (name == "constant") return {name, [](double) { return 1.0; }};
  if (name == "log_singular") return {name, [](double x) { return -std::log(std::abs(x)); }};
  if (name == "bump") return {name, bump};
  if (name == "bump_singular") {
    return {name, [](double x) { return bump(x) + std::max(0.0, -std::log(std::abs(x)) - std::log(100.0)); }};
  }
  throw InputError("unknown Lorenz observable '" + name + "'");
}

std::vector<std::string> lorenz_observable_names() { return {"constant", "log_singular", "bump", "bump_singular"}; }

std::string shape_label(CurveShape s) {
  switch (s) {
    case CurveShape::mixed: return "mixed";
    case CurveShape::strict_decrease: return "strict_decrease";
    case CurveShape::plateau: return "plateau";
    case CurveShape::undetermined: return "undetermined";
  }
  return "undetermined";
}

CurveShape classify_shape(const std::vector<double>& m_hat) {
  std::vector<double> finite;
  for (double v : m_hat) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.size() < 2) return CurveShape::undetermined;
  const double tol = 1e-9;
  if (std::abs(finite[finite.size() - 1] - finite[finite.size() - 2]) <= tol) return CurveShape::plateau;
  for (std::size_t i = 1; i < finite.size(); ++i) {
    if (!(finite[i] > finite[i - 1] + tol)) return CurveShape::mixed;
  }
  return CurveShape::strict_decrease;
}

ConstrainedCurve constrained_m_curve(const LorenzModel& m, const std::function<double(double)>& phi,
                                     const std::vector<double>& epsilon_grid, int p_max) {
  if (epsilon_grid.empty()) throw InputError("epsilon grid is empty");
  for (std::size_t i = 0; i < epsilon_grid.size(); ++i) {
    if (!(epsilon_grid[i] >= 0.0)) throw InputError("epsilon values must be >= 0");
    if (i > 0 && !(epsilon_grid[i] < epsilon_grid[i - 1])) throw InputError("epsilon grid must be strictly decreasing");
  }
  // One enumeration at the smallest cut; larger cuts select nested subsets.
  const std::vector<LorenzOrbit> orbits = enumerate_orbits(m, p_max, epsilon_grid.back());
  std::vector<double> averages;
  for (const LorenzOrbit& o : orbits) averages.push_back(orbit_stats(m, o, phi).flow_avg);

  ConstrainedCurve curve;
  std::vector<double> values;
  for (double eps : epsilon_grid) {
    CurvePoint point;
    point.epsilon = eps;
    point.m_hat = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if (orbits[i].min_abs() < eps) continue;
      if (!point.certificate || averages[i] > point.m_hat) {
        point.m_hat = averages[i];
        point.certificate = orbits[i];
      }
    }
    if (!point.certificate) {
      curve.warnings.push_back("no orbit of period <= " + std::to_string(p_max) + " avoids (-" +
                               format_double(eps) + ", " + format_double(eps) + ")");
    }
    values.push_back(point.m_hat);
    curve.points.push_back(std::move(point));
  }
  double previous = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isnan(v)) {
      if (std::isfinite(previous)) curve.non_increasing = false;
      continue;
    }
    if (v < previous) curve.non_increasing = false;
    previous = v;
  }
  curve.shape = classify_shape(values);
  return curve;
}

std::vector<LorenzOrbit> near_singular_family(const LorenzModel& m, int p_max) {
  std::vector<LorenzOrbit> orbits = enumerate_orbits(m, p_max, 0.0);
  std::stable_sort(orbits.begin(), orbits.end(),
                   [](const LorenzOrbit& a, const LorenzOrbit& b) { return a.min_abs() > b.min_abs(); });
  std::vector<LorenzOrbit> family;
  double record = -std::numeric_limits<double>::infinity();
  for (LorenzOrbit& o : orbits) {
    const double mean = orbit_stats(m, o, [](double) { return 0.0; }).roof_sum / o.period();
    if (mean > record) {
      record = mean;
      family.push_back(std::move(o));
    }
  }
  return family;
}

DiracExperiment dirac_mass_experiment(const LorenzModel& m, const std::vector<LorenzOrbit>& family, double epsilon) {
  if (family.empty()) throw EmptyFamily("orbit family is empty");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  DiracExperiment ex;
  ex.epsilon = epsilon;
  // roof is decreasing in |x|, so its bound off the cut is roof(epsilon)
  ex.c_eps = roof(m, epsilon);
  double previous = -std::numeric_limits<double>::infinity();
  for (const LorenzOrbit& o : family) {
    DiracRow row;
    row.itinerary = o.itinerary;
    row.min_abs_x = o.min_abs();
    double total = 0.0, excess = 0.0, log_derivative = 0.0;
    for (double x : o.points) {
      const double r = roof(m, x);
      total += r;
      excess += std::max(0.0, r - ex.c_eps);
      log_derivative += std::log(alpha_prime(m, x));
    }
    row.roof_mean = total / o.period();
    row.lyap = log_derivative / o.period();
    row.f_eps = excess / total;
    row.bound = (1.0 - epsilon) * (1.0 - ex.c_eps / row.roof_mean);
    if (row.f_eps < row.bound - 1e-9) ex.bound_holds = false;
    if (row.f_eps < previous) ex.f_increasing = false;
    previous = row.f_eps;
    ex.rows.push_back(std::move(row));
  }
  return ex;
}

std::vector<double> max_lyapunov_by_period(const LorenzModel& m, const std::vector<int>& periods) {
  if (periods.empty()) return {};
  const int top = *std::max_element(periods.begin(), periods.end());
  const std::vector<LorenzOrbit> orbits = enumerate_orbits(m, top, 0.0);
  std::vector<double> out;
  for (int p : periods) {
    double best = -std::numeric_limits<double>::infinity();
    for (const LorenzOrbit& o : orbits) {
      if (o.period() <= p) best = std::max(best, orbit_stats(m, o, [](double) { return 0.0; }).lyap);
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace ergopt
