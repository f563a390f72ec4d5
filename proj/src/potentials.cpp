#include "ergopt/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "ergopt/error.hpp"

namespace ergopt {

Word SequenceWindow::slice(int lo, int hi) const {
  if (lo < min_coord() || hi > max_coord()) {
    throw WindowTooShort("window covers " + std::to_string(min_coord()) + ".." + std::to_string(max_coord()) +
                         ", needed " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return Word(symbols.begin() + (origin + lo), symbols.begin() + (origin + hi + 1));
}

WordTable::WordTable(const TransitionStructure& ts, int length) : n_(ts.size()), length_(length) {
  if (length < 1) throw InputError("word table length must be >= 1");
  double space = std::pow(static_cast<double>(n_), length);
  if (space > static_cast<double>(1 << 26)) throw BudgetExceeded("word table window space too large");
  words_ = admissible_words(ts, length);
  values_.assign(words_.size(), 0.0);
  code_to_position_.assign(static_cast<std::size_t>(space), -1);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    long code = 0;
    for (Symbol s : words_[i]) code = code * n_ + s;
    code_to_position_[static_cast<std::size_t>(code)] = static_cast<long>(i);
  }
}

long WordTable::position(std::span<const Symbol> w) const {
  if (static_cast<int>(w.size()) != length_) return -1;
  long code = 0;
  for (Symbol s : w) {
    if (s < 0 || s >= n_) return -1;
    code = code * n_ + s;
  }
  return code_to_position_[static_cast<std::size_t>(code)];
}

double WordTable::value(std::span<const Symbol> w) const {
  long pos = position(w);
  if (pos < 0) throw InputError("potential evaluated on an inadmissible or mis-sized window");
  return values_[static_cast<std::size_t>(pos)];
}

// ---------------------------------------------------------------------------

OneSidedPotential::OneSidedPotential(TransitionStructure ts, int depth)
    : ts_(std::move(ts)), table_(ts_, depth) {}

OneSidedPotential::OneSidedPotential(TransitionStructure ts, int depth, std::vector<double> values)
    : OneSidedPotential(std::move(ts), depth) {
  if (values.size() != table_.size()) {
    throw InputError("potential has " + std::to_string(values.size()) + " values for " +
                     std::to_string(table_.size()) + " admissible words");
  }
  for (std::size_t i = 0; i < values.size(); ++i) table_.value_at(i) = values[i];
}

OneSidedPotential OneSidedPotential::constant(const TransitionStructure& ts, double c) {
  OneSidedPotential phi(ts, 1);
  for (std::size_t i = 0; i < phi.table_.size(); ++i) phi.table_.value_at(i) = c;
  return phi;
}

OneSidedPotential OneSidedPotential::from_function(
    const TransitionStructure& ts, int depth, const std::function<double(std::span<const Symbol>)>& value_of) {
  OneSidedPotential phi(ts, depth);
  for (std::size_t i = 0; i < phi.table_.size(); ++i) phi.table_.value_at(i) = value_of(phi.table_.words()[i]);
  return phi;
}

double OneSidedPotential::operator()(std::span<const Symbol> prefix) const {
  if (static_cast<int>(prefix.size()) < depth()) throw WindowTooShort("one-sided window shorter than potential depth");
  return table_.value(prefix.first(static_cast<std::size_t>(depth())));
}

double OneSidedPotential::min_value() const {
  return *std::min_element(table_.values().begin(), table_.values().end());
}

double OneSidedPotential::max_value() const {
  return *std::max_element(table_.values().begin(), table_.values().end());
}

double OneSidedPotential::cycle_sum(const PeriodicCertificate& orbit) const {
  double sum = 0.0;
  for (int i = 0; i < orbit.period(); ++i) sum += table_.value(orbit.window(i, depth()));
  return sum;
}

double OneSidedPotential::cycle_average(const PeriodicCertificate& orbit) const {
  return cycle_sum(orbit) / orbit.period();
}

OneSidedPotential OneSidedPotential::with_depth(int new_depth) const {
  if (new_depth < depth()) throw InputError("cannot lower the depth of a potential");
  const int d = depth();
  return from_function(ts_, new_depth, [&](std::span<const Symbol> w) { return table_.value(w.first(d)); });
}

OneSidedPotential OneSidedPotential::plus_constant(double c) const {
  OneSidedPotential out = *this;
  for (std::size_t i = 0; i < out.table_.size(); ++i) out.table_.value_at(i) += c;
  return out;
}

OneSidedPotential OneSidedPotential::combined(double a, const OneSidedPotential& other, double b) const {
  if (!(ts_ == other.ts_)) throw InputError("potentials live on different shifts");
  const int d = std::max(depth(), other.depth());
  const OneSidedPotential lhs = with_depth(d);
  const OneSidedPotential rhs = other.with_depth(d);
  OneSidedPotential out(ts_, d);
  for (std::size_t i = 0; i < out.table_.size(); ++i) {
    out.table_.value_at(i) = a * lhs.table_.value_at(i) + b * rhs.table_.value_at(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

TwoSidedPotential::TwoSidedPotential(TransitionStructure ts, int radius)
    : ts_(std::move(ts)), radius_(radius), table_(ts_, 2 * radius + 1) {
  if (radius < 0) throw InputError("radius must be >= 0");
}

TwoSidedPotential::TwoSidedPotential(TransitionStructure ts, int radius, std::vector<double> values)
    : TwoSidedPotential(std::move(ts), radius) {
  if (values.size() != table_.size()) {
    throw InputError("potential has " + std::to_string(values.size()) + " values for " +
                     std::to_string(table_.size()) + " admissible windows");
  }
  for (std::size_t i = 0; i < values.size(); ++i) table_.value_at(i) = values[i];
}

TwoSidedPotential TwoSidedPotential::from_one_sided(const OneSidedPotential& phi) {
  const int m = phi.depth() - 1;
  TwoSidedPotential out(phi.ts(), m);
  for (std::size_t i = 0; i < out.table_.size(); ++i) {
    const Word& w = out.table_.words()[i];
    out.table_.value_at(i) = phi(std::span<const Symbol>(w).subspan(static_cast<std::size_t>(m)));
  }
  return out;
}

double TwoSidedPotential::operator()(const SequenceWindow& x) const {
  return table_.value(x.slice(-radius_, radius_));
}

double TwoSidedPotential::cycle_sum(const PeriodicCertificate& orbit) const {
  double sum = 0.0;
  for (int i = 0; i < orbit.period(); ++i) sum += table_.value(orbit.window(i - radius_, 2 * radius_ + 1));
  return sum;
}

double TwoSidedPotential::cycle_average(const PeriodicCertificate& orbit) const {
  return cycle_sum(orbit) / orbit.period();
}

TwoSidedPotential TwoSidedPotential::combined(double a, const TwoSidedPotential& other, double b) const {
  if (!(ts_ == other.ts_) || radius_ != other.radius_) {
    throw InputError("two-sided potentials must share shift and radius to be combined");
  }
  TwoSidedPotential out(ts_, radius_);
  for (std::size_t i = 0; i < out.table_.size(); ++i) {
    out.table_.value_at(i) = a * table_.value_at(i) + b * other.table_.value_at(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Word shortest_cycle_through(const TransitionStructure& ts, Symbol t) {
  if (ts.allowed(t, t)) return Word{t};
  auto gap = connecting_gap(ts, t, t);
  if (!gap) throw InputError("symbol " + std::to_string(t) + " lies on no cycle");
  Word cycle{t};
  cycle.insert(cycle.end(), gap->begin(), gap->end());
  return cycle;
}

}  // namespace

ReferenceScheme::ReferenceScheme(const TransitionStructure& ts) {
  cycles_.reserve(static_cast<std::size_t>(ts.size()));
  for (Symbol t = 0; t < ts.size(); ++t) cycles_.push_back(shortest_cycle_through(ts, t));
}

ReferenceScheme::ReferenceScheme(const TransitionStructure& ts, std::vector<Word> cycles)
    : cycles_(std::move(cycles)) {
  if (static_cast<int>(cycles_.size()) != ts.size()) throw InputError("reference scheme needs one cycle per symbol");
  for (Symbol t = 0; t < ts.size(); ++t) {
    if (cycles_[t].empty() || cycles_[t].front() != t || !cyclic_admissible(ts, cycles_[t])) {
      throw InputError("reference cycle for symbol " + std::to_string(t) + " is invalid");
    }
  }
}

Symbol ReferenceScheme::reference(Symbol t, int k) const {
  const Word& c = cycles_.at(t);
  const int len = static_cast<int>(c.size());
  return c[((k % len) + len) % len];
}

double var_k(const TwoSidedPotential& phi, int k) {
  if (k < 0) throw InputError("var_k needs k >= 0");
  const int m = phi.radius();
  if (k >= m) return 0.0;
  std::map<Word, std::pair<double, double>> range;
  const auto& words = phi.table().words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word centre(words[i].begin() + (m - k), words[i].begin() + (m + k + 1));
    double v = phi.table().value_at(i);
    auto [it, inserted] = range.try_emplace(std::move(centre), v, v);
    if (!inserted) {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  }
  double worst = 0.0;
  for (const auto& [centre, mm] : range) worst = std::max(worst, mm.second - mm.first);
  return worst;
}

SequenceWindow rho(const ReferenceScheme& scheme, const SequenceWindow& x) {
  SequenceWindow out = x;
  const Symbol x0 = x.at(0);
  for (int k = x.min_coord(); k <= 0; ++k) out.symbols[static_cast<std::size_t>(out.origin + k)] = scheme.reference(x0, k);
  return out;
}

SequenceWindow complete_window(const ReferenceScheme& scheme, const SequenceWindow& x, int radius) {
  const int lo = std::min(-radius, x.min_coord());
  const int hi = std::max(radius, x.max_coord());
  SequenceWindow out;
  out.origin = -lo;
  out.symbols.resize(static_cast<std::size_t>(hi - lo + 1));
  const Symbol first = x.at(x.min_coord());
  const Symbol last = x.at(x.max_coord());
  for (int k = lo; k <= hi; ++k) {
    Symbol s;
    if (k < x.min_coord()) {
      s = scheme.reference(first, k - x.min_coord());
    } else if (k > x.max_coord()) {
      s = scheme.reference(last, k - x.max_coord());
    } else {
      s = x.at(k);
    }
    out.symbols[static_cast<std::size_t>(k - lo)] = s;
  }
  return out;
}

TwoSidedPotential coboundary_u(const TwoSidedPotential& phi, const ReferenceScheme& scheme) {
  const int m = phi.radius();
  const int r = std::max(2 * m - 1, 0);
  TwoSidedPotential u(phi.ts(), r);
  if (m == 0) return u;
  const auto& windows = u.table().words();
  for (std::size_t i = 0; i < windows.size(); ++i) {
    SequenceWindow x{windows[i], r};
    SequenceWindow spliced = rho(scheme, x);
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      sum += phi(x.shifted(j)) - phi(spliced.shifted(j));
    }
    u.table().value_at(i) = sum;
  }
  return u;
}

OneSidedPotential reduce_two_sided(const TwoSidedPotential& phi, const ReferenceScheme& scheme) {
  // Pairing the terms of phi + u o sigma - u gives
  //   psi(x) = phi(rho x) + sum_{j<m} [phi(sigma^{j+1} rho x) - phi(sigma^j rho(sigma x))],
  // and sigma^{j+1} rho x agrees with sigma^j rho(sigma x) on coordinates >= -j,
  // so every term reads only x_0 .. x_{2m}.
  const int m = phi.radius();
  OneSidedPotential psi(phi.ts(), 2 * m + 1);
  const auto& words = psi.table().words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];  // x_0 .. x_{2m}
    SequenceWindow rx;
    rx.origin = m;
    rx.symbols.resize(static_cast<std::size_t>(3 * m + 1));  // coordinates -m .. 2m
    for (int k = -m; k <= 2 * m; ++k) {
      rx.symbols[static_cast<std::size_t>(k + m)] = k <= 0 ? scheme.reference(w[0], k) : w[static_cast<std::size_t>(k)];
    }
    double value = phi(rx);
    if (m > 0) {
      SequenceWindow rsx;  // rho(sigma x) on coordinates -m .. 2m-1
      rsx.origin = m;
      rsx.symbols.resize(static_cast<std::size_t>(3 * m));
      for (int k = -m; k <= 2 * m - 1; ++k) {
        rsx.symbols[static_cast<std::size_t>(k + m)] =
            k <= 0 ? scheme.reference(w[1], k) : w[static_cast<std::size_t>(k + 1)];
      }
      for (int j = 0; j < m; ++j) value += phi(rx.shifted(j + 1)) - phi(rsx.shifted(j));
    }
    psi.table().value_at(i) = value;
  }
  return psi;
}

TruncatedPotential truncate_holder(const TransitionStructure& ts, const ReferenceScheme& scheme,
                                   const std::function<double(const SequenceWindow&)>& evaluate, double b,
                                   double c, int m, int eval_radius) {
  if (m < 0) throw InputError("truncation radius must be >= 0");
  if (!(c > 0.0 && c < 1.0) || b < 0.0) throw InputError("Hölder constants need b >= 0 and 0 < c < 1");
  TwoSidedPotential phi(ts, m);
  const auto& windows = phi.table().words();
  for (std::size_t i = 0; i < windows.size(); ++i) {
    SequenceWindow x{windows[i], m};
    phi.table().value_at(i) = evaluate(complete_window(scheme, x, std::max(eval_radius, m)));
  }
  return {std::move(phi), b * std::pow(c, m)};
}

}  // namespace ergopt
