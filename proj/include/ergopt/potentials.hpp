#pragma once

// Locally constant observables on a subshift of finite type and the
// coboundary reduction from two-sided to one-sided potentials.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ergopt/sft.hpp"

namespace ergopt {

/// Finite window of a bi-infinite sequence: coordinate k lives at
/// symbols[origin + k].
struct SequenceWindow {
  Word symbols;
  int origin = 0;

  int min_coord() const { return -origin; }
  int max_coord() const { return static_cast<int>(symbols.size()) - origin - 1; }
  Symbol at(int k) const { return symbols.at(static_cast<std::size_t>(origin + k)); }
  /// Coordinates lo..hi (inclusive) as a word. Throws WindowTooShort.
  Word slice(int lo, int hi) const;
  /// Same sequence seen from coordinate `shift` (the shift map applied
  /// `shift` times).
  SequenceWindow shifted(int shift) const { return {symbols, origin + shift}; }
};

/// Table of real values indexed by admissible words of one fixed length.
/// Lookup goes through a dense base-n code, so the window space n^length
/// must stay below 2^26.
class WordTable {
 public:
  WordTable() = default;
  WordTable(const TransitionStructure& ts, int length);

  int length() const { return length_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

  double value(std::span<const Symbol> w) const;
  double& value_at(std::size_t i) { return values_[i]; }
  double value_at(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  /// Position of `w` in words(), or -1 when `w` is not admissible.
  long position(std::span<const Symbol> w) const;

 private:
  int n_ = 1;
  int length_ = 0;
  std::vector<Word> words_;
  std::vector<double> values_;
  std::vector<long> code_to_position_;
};

/// phi(x) = table(x_0 .. x_{d-1}).
class OneSidedPotential {
 public:
  OneSidedPotential(TransitionStructure ts, int depth);
  /// Values listed in the order of admissible_words(ts, depth).
  OneSidedPotential(TransitionStructure ts, int depth, std::vector<double> values);
  static OneSidedPotential constant(const TransitionStructure& ts, double c);
  /// phi(x) = value_of(x_0 .. x_{d-1}).
  static OneSidedPotential from_function(const TransitionStructure& ts, int depth,
                                         const std::function<double(std::span<const Symbol>)>& value_of);

  const TransitionStructure& ts() const { return ts_; }
  int depth() const { return table_.length(); }
  const WordTable& table() const { return table_; }
  WordTable& table() { return table_; }

  double operator()(std::span<const Symbol> prefix) const;
  double min_value() const;
  double max_value() const;
  /// Sum of phi over the orbit of a periodic word.
  double cycle_sum(const PeriodicCertificate& orbit) const;
  double cycle_average(const PeriodicCertificate& orbit) const;

  /// Same function, read through a longer window.
  OneSidedPotential with_depth(int depth) const;
  OneSidedPotential plus_constant(double c) const;
  /// a * this + b * other (other is brought to a common depth).
  OneSidedPotential combined(double a, const OneSidedPotential& other, double b) const;

 private:
  TransitionStructure ts_;
  WordTable table_;
};

/// phi(x) = table(x_{-m} .. x_m).
class TwoSidedPotential {
 public:
  TwoSidedPotential(TransitionStructure ts, int radius);
  TwoSidedPotential(TransitionStructure ts, int radius, std::vector<double> values);
  static TwoSidedPotential from_one_sided(const OneSidedPotential& phi);

  const TransitionStructure& ts() const { return ts_; }
  int radius() const { return radius_; }
  const WordTable& table() const { return table_; }
  WordTable& table() { return table_; }

  /// Value on the central (2m+1)-window of x.
  double operator()(const SequenceWindow& x) const;
  double value_of_window(std::span<const Symbol> centered) const { return table_.value(centered); }
  double cycle_sum(const PeriodicCertificate& orbit) const;
  double cycle_average(const PeriodicCertificate& orbit) const;

  TwoSidedPotential combined(double a, const TwoSidedPotential& other, double b) const;

 private:
  TransitionStructure ts_;
  int radius_ = 0;
  WordTable table_;
};

/// For every symbol t a periodic admissible sequence a_{k,t} with
/// a_{0,t} = t, stored as a cyclic word starting at t.
class ReferenceScheme {
 public:
  /// Shortest cycle through each symbol (BFS, lexicographic ties).
  explicit ReferenceScheme(const TransitionStructure& ts);
  ReferenceScheme(const TransitionStructure& ts, std::vector<Word> cycles);

  const Word& cycle(Symbol t) const { return cycles_.at(t); }
  /// a_{k,t} for any integer k.
  Symbol reference(Symbol t, int k) const;

 private:
  std::vector<Word> cycles_;
};

/// Largest difference of phi between windows that agree on |i| <= k.
double var_k(const TwoSidedPotential& phi, int k);

/// The splice x* with x*_k = x_k for k > 0 and x*_k = a_{k, x_0} for k <= 0,
/// over the same coordinate range as x.
SequenceWindow rho(const ReferenceScheme& scheme, const SequenceWindow& x);

/// u(x) = sum_{j=0}^{m-1} [phi(sigma^j x) - phi(sigma^j rho(x))]. The result
/// reads coordinates -m .. 2m-1 and is returned with radius max(2m-1, 0).
TwoSidedPotential coboundary_u(const TwoSidedPotential& phi, const ReferenceScheme& scheme);

/// psi = phi + u o sigma - u, which depends only on x_0 .. x_{2m}.
OneSidedPotential reduce_two_sided(const TwoSidedPotential& phi, const ReferenceScheme& scheme);

struct TruncatedPotential {
  TwoSidedPotential potential;
  double error_bound = 0.0;  // b * c^m
};

/// Locally constant approximation of a Hölder potential with
/// var_k <= b c^k. Each (2m+1)-window is completed by the reference scheme
/// to `eval_radius` coordinates on each side before evaluation.
TruncatedPotential truncate_holder(const TransitionStructure& ts, const ReferenceScheme& scheme,
                                   const std::function<double(const SequenceWindow&)>& evaluate,
                                   double b, double c, int m, int eval_radius = 64);

/// Completion of a finite two-sided window to a wider window, continuing
/// forward along the reference cycle of the last symbol and backward along
/// the reference cycle of the first symbol.
SequenceWindow complete_window(const ReferenceScheme& scheme, const SequenceWindow& x, int radius);

}  // namespace ergopt
