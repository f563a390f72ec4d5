#pragma once

// Subshifts of finite type: transition structures, words, periodic orbits,
// block refinement and the gluing of orbit segments into periodic orbits.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ergopt {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Square 0/1 transition matrix over the alphabet 0..n-1.
///
/// Construction rejects dead symbols (a zero row or a zero column). The
/// structure is immutable afterwards; the primitivity index is computed
/// lazily, at most once, and shared between copies.
class TransitionStructure {
 public:
  /// `rows[i][j]` is nonzero iff the transition i -> j is allowed.
  explicit TransitionStructure(const std::vector<std::vector<int>>& rows);

  static TransitionStructure full_shift(int n);

  int size() const { return n_; }
  bool allowed(Symbol from, Symbol to) const {
    return matrix_[static_cast<std::size_t>(from) * n_ + to] != 0;
  }
  /// Successors of `s` in increasing order.
  std::span<const Symbol> successors(Symbol s) const { return successors_[s]; }

  /// Least m >= 1 with R^m entrywise positive, or nullopt when none exists
  /// within the Wielandt bound n^2 - 2n + 2.
  std::optional<int> primitivity_index() const;
  bool is_primitive() const { return primitivity_index().has_value(); }
  bool is_irreducible() const;

  /// Number of admissible words of the given length.
  std::uint64_t count_words(int length) const;
  /// trace(R^p): the number of points of period dividing p.
  double trace_power(int p) const;

  bool operator==(const TransitionStructure& other) const {
    return n_ == other.n_ && matrix_ == other.matrix_;
  }

 private:
  struct PrimitivityCache;

  int n_ = 0;
  std::vector<std::uint8_t> matrix_;
  std::vector<std::vector<Symbol>> successors_;
  std::shared_ptr<PrimitivityCache> cache_;
};

/// Throws InputError when a symbol of `w` is outside 0..n-1.
bool admissible(const TransitionStructure& ts, std::span<const Symbol> w);
/// Admissible and closes up: R[w_last][w_first] = 1.
bool cyclic_admissible(const TransitionStructure& ts, std::span<const Symbol> w);

/// Least m with R^m > 0. Throws NotPrimitive.
int mixing_constant(const TransitionStructure& ts);

/// All admissible words of a given length, in lexicographic order.
std::vector<Word> admissible_words(const TransitionStructure& ts, int length);

/// Lexicographically least rotation.
Word canonical_rotation(std::span<const Symbol> w);
/// True when `w` is not a proper power of a shorter word.
bool is_primitive_word(std::span<const Symbol> w);
/// Shortest u with w = u^k.
Word primitive_root(std::span<const Symbol> w);

/// Number of cyclic occurrences of a cylinder word in a periodic orbit,
/// together with the period.
struct Frequency {
  int count = 0;
  int period = 1;
  double value() const { return static_cast<double>(count) / period; }
  bool operator==(const Frequency&) const = default;
};

/// A cyclic admissible word read as a periodic orbit, and the periodic
/// empirical measure it induces on cylinders.
class PeriodicCertificate {
 public:
  PeriodicCertificate() = default;
  explicit PeriodicCertificate(Word word);

  const Word& word() const { return word_; }
  int period() const { return static_cast<int>(word_.size()); }

  Frequency frequency(std::span<const Symbol> cylinder) const;
  /// Frequencies of every cylinder of length `depth` that occurs.
  std::map<Word, Frequency> frequencies(int depth) const;

  /// Cyclic window of length `length` starting at position `start`.
  Word window(int start, int length) const;

  /// Same orbit with the lexicographically least rotation and the
  /// primitive root.
  PeriodicCertificate canonical() const;
  bool same_orbit(const PeriodicCertificate& other) const;

 private:
  Word word_;
};

/// Primitive cyclic words of length <= p_max up to rotation, each given by
/// its lexicographically least rotation, in lexicographic order.
/// Enumerated by depth-first search over the transition graph.
std::vector<PeriodicCertificate> periodic_words(const TransitionStructure& ts, int p_max);

/// Reference enumeration: every admissible cyclic word of each length,
/// filtered by canonicality. Exponential in p_max; kept for testing.
std::vector<PeriodicCertificate> periodic_words_reference(const TransitionStructure& ts,
                                                          int p_max);

/// Higher block presentation: symbols are admissible k-words, transitions
/// admissible (k+1)-words.
struct BlockRefinement {
  TransitionStructure ts;
  int block_length = 1;
  std::vector<Word> blocks;      // symbol -> k-word
  std::map<Word, Symbol> index;  // k-word -> symbol

  /// Refined cycle traced by a periodic orbit of the original shift.
  Word lift(const PeriodicCertificate& orbit) const;
  /// Original orbit read off the first symbol of each block.
  Word project(std::span<const Symbol> refined_cycle) const;
};

BlockRefinement refine_blocks(const TransitionStructure& ts, int k);

/// Shortest admissible path strictly between `from` and `to`: returns the
/// intermediate symbols (empty when from -> to is allowed). Ties are broken
/// by smallest symbol. nullopt when `to` is unreachable.
std::optional<Word> connecting_gap(const TransitionStructure& ts, Symbol from, Symbol to);

struct GluedOrbit {
  PeriodicCertificate certificate;
  std::vector<int> segment_offsets;  // position of each segment in the word
  std::vector<int> gap_lengths;      // gap after each segment (cyclically)
  int mixing_constant = 1;

  int total_gap() const;
};

/// Concatenates the segments in order with shortest connecting gaps,
/// closing the last segment back onto the first.
GluedOrbit glue_orbits(const TransitionStructure& ts, const std::vector<Word>& segments);

/// Plain-text format: first line n, then n lines of n characters 0/1.
TransitionStructure parse_sft(const std::string& text);
std::string format_sft(const TransitionStructure& ts);

}  // namespace ergopt
