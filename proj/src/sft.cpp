#include "ergopt/sft.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

#include "ergopt/error.hpp"

namespace ergopt {

struct TransitionStructure::PrimitivityCache {
  std::once_flag once;
  std::optional<int> index;
};

TransitionStructure::TransitionStructure(const std::vector<std::vector<int>>& rows)
    : n_(static_cast<int>(rows.size())), cache_(std::make_shared<PrimitivityCache>()) {
  if (n_ == 0) throw InputError("transition matrix is empty");
  matrix_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(rows[i].size()) != n_) {
      throw InputError("transition matrix row " + std::to_string(i) + " has length " +
                       std::to_string(rows[i].size()) + ", expected " + std::to_string(n_));
    }
    for (int j = 0; j < n_; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) throw InputError("transition matrix entries must be 0 or 1");
      matrix_[static_cast<std::size_t>(i) * n_ + j] = static_cast<std::uint8_t>(rows[i][j]);
    }
  }
  successors_.resize(n_);
  std::vector<bool> has_in(n_, false);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (allowed(i, j)) {
        successors_[i].push_back(j);
        has_in[j] = true;
      }
    }
    if (successors_[i].empty()) throw InputError("symbol " + std::to_string(i) + " has no successor");
  }
  for (int j = 0; j < n_; ++j) {
    if (!has_in[j]) throw InputError("symbol " + std::to_string(j) + " has no predecessor");
  }
}

TransitionStructure TransitionStructure::full_shift(int n) {
  return TransitionStructure(std::vector<std::vector<int>>(n, std::vector<int>(n, 1)));
}

namespace {

using BitRows = std::vector<std::vector<std::uint64_t>>;

BitRows to_bits(const TransitionStructure& ts) {
  const int n = ts.size();
  const std::size_t words = (n + 63) / 64;
  BitRows rows(n, std::vector<std::uint64_t>(words, 0));
  for (int i = 0; i < n; ++i) {
    for (Symbol j : ts.successors(i)) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
  }
  return rows;
}

// Row i of (P R) is the union of the rows of R selected by row i of P.
BitRows multiply(const BitRows& p, const BitRows& r) {
  const std::size_t n = p.size();
  BitRows out(n, std::vector<std::uint64_t>(p.empty() ? 0 : p[0].size(), 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((p[i][j / 64] >> (j % 64)) & 1U) {
        for (std::size_t w = 0; w < out[i].size(); ++w) out[i][w] |= r[j][w];
      }
    }
  }
  return out;
}

bool all_positive(const BitRows& rows, int n) {
  for (const auto& row : rows) {
    for (int j = 0; j < n; ++j) {
      if (!((row[j / 64] >> (j % 64)) & 1U)) return false;
    }
  }
  return true;
}

void check_symbols(const TransitionStructure& ts, std::span<const Symbol> w) {
  for (Symbol s : w) {
    if (s < 0 || s >= ts.size()) {
      throw InputError("symbol " + std::to_string(s) + " out of range 0.." + std::to_string(ts.size() - 1));
    }
  }
}

}  // namespace

std::optional<int> TransitionStructure::primitivity_index() const {
  std::call_once(cache_->once, [this] {
    const long bound = static_cast<long>(n_) * n_ - 2L * n_ + 2;
    const BitRows base = to_bits(*this);
    BitRows power = base;
    for (long m = 1; m <= std::max(1L, bound); ++m) {
      if (all_positive(power, n_)) {
        cache_->index = static_cast<int>(m);
        return;
      }
      power = multiply(power, base);
    }
  });
  return cache_->index;
}

bool TransitionStructure::is_irreducible() const {
  // Strongly connected iff every vertex reaches everything and is reached
  // from vertex 0.
  auto reach_all = [this](bool reverse) {
    std::vector<bool> seen(n_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n_; ++v) {
        bool edge = reverse ? allowed(v, u) : allowed(u, v);
        if (edge && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach_all(false) && reach_all(true);
}

std::uint64_t TransitionStructure::count_words(int length) const {
  if (length <= 0) return 0;
  std::vector<std::uint64_t> ending(n_, 1);
  for (int step = 1; step < length; ++step) {
    std::vector<std::uint64_t> next(n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (Symbol j : successors_[i]) next[j] += ending[i];
    }
    ending = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : ending) total += c;
  return total;
}

double TransitionStructure::trace_power(int p) const {
  double trace = 0.0;
  for (int start = 0; start < n_; ++start) {
    std::vector<double> walks(n_, 0.0);
    walks[start] = 1.0;
    for (int step = 0; step < p; ++step) {
      std::vector<double> next(n_, 0.0);
      for (int i = 0; i < n_; ++i) {
        if (walks[i] == 0.0) continue;
        for (Symbol j : successors_[i]) next[j] += walks[i];
      }
      walks = std::move(next);
    }
    trace += walks[start];
  }
  return trace;
}

bool admissible(const TransitionStructure& ts, std::span<const Symbol> w) {
  check_symbols(ts, w);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!ts.allowed(w[i], w[i + 1])) return false;
  }
  return true;
}

bool cyclic_admissible(const TransitionStructure& ts, std::span<const Symbol> w) {
  return !w.empty() && admissible(ts, w) && ts.allowed(w.back(), w.front());
}

int mixing_constant(const TransitionStructure& ts) {
  auto index = ts.primitivity_index();
  if (!index) throw NotPrimitive("transition matrix is not primitive within the Wielandt bound");
  return *index;
}

std::vector<Word> admissible_words(const TransitionStructure& ts, int length) {
  std::vector<Word> out;
  if (length <= 0) return out;
  Word current;
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == length) {
      out.push_back(current);
      return;
    }
    if (current.empty()) {
      for (Symbol s = 0; s < ts.size(); ++s) {
        current.push_back(s);
        self(self);
        current.pop_back();
      }
      return;
    }
    for (Symbol s : ts.successors(current.back())) {
      current.push_back(s);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  return out;
}

Word canonical_rotation(std::span<const Symbol> w) {
  Word best(w.begin(), w.end());
  Word rotated(w.size());
  for (std::size_t shift = 1; shift < w.size(); ++shift) {
    std::rotate_copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(shift), w.end(), rotated.begin());
    if (rotated < best) best = rotated;
  }
  return best;
}

Word primitive_root(std::span<const Symbol> w) {
  const std::size_t p = w.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < p && repeats; ++i) repeats = w[i] == w[i - d];
    if (repeats) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return Word(w.begin(), w.end());
}

bool is_primitive_word(std::span<const Symbol> w) { return primitive_root(w).size() == w.size(); }

PeriodicCertificate::PeriodicCertificate(Word word) : word_(std::move(word)) {
  if (word_.empty()) throw InputError("periodic orbit word must be nonempty");
}

Frequency PeriodicCertificate::frequency(std::span<const Symbol> cylinder) const {
  const int p = period();
  Frequency f{0, p};
  for (int start = 0; start < p; ++start) {
    bool match = true;
    for (std::size_t j = 0; j < cylinder.size() && match; ++j) {
      match = word_[(start + j) % p] == cylinder[j];
    }
    if (match) ++f.count;
  }
  return f;
}

std::map<Word, Frequency> PeriodicCertificate::frequencies(int depth) const {
  std::map<Word, Frequency> out;
  for (int start = 0; start < period(); ++start) {
    auto& f = out[window(start, depth)];
    f.period = period();
    ++f.count;
  }
  return out;
}

Word PeriodicCertificate::window(int start, int length) const {
  const int p = period();
  Word out(length);
  for (int j = 0; j < length; ++j) out[j] = word_[((start + j) % p + p) % p];
  return out;
}

PeriodicCertificate PeriodicCertificate::canonical() const {
  return PeriodicCertificate(canonical_rotation(primitive_root(word_)));
}

bool PeriodicCertificate::same_orbit(const PeriodicCertificate& other) const {
  return canonical().word() == other.canonical().word();
}

std::vector<PeriodicCertificate> periodic_words(const TransitionStructure& ts, int p_max) {
  // Depth-first search over prenecklaces (the prefixes of Lyndon words):
  // at position t the next symbol must be >= a[t - p], where p is the
  // period of the longest Lyndon prefix. Pre-order emission is
  // lexicographic order.
  std::vector<PeriodicCertificate> out;
  if (p_max < 1) return out;
  Word a;
  a.reserve(p_max);
  auto visit = [&](auto&& self, int lyndon_period) -> void {
    const int t = static_cast<int>(a.size());
    if (lyndon_period == t && ts.allowed(a.back(), a.front())) out.emplace_back(a);
    if (t == p_max) return;
    const Symbol floor = a[t - lyndon_period];
    for (Symbol c : ts.successors(a.back())) {
      if (c < floor) continue;
      a.push_back(c);
      self(self, c == floor ? lyndon_period : t + 1);
      a.pop_back();
    }
  };
  for (Symbol s = 0; s < ts.size(); ++s) {
    a.assign(1, s);
    visit(visit, 1);
  }
  return out;
}

std::vector<PeriodicCertificate> periodic_words_reference(const TransitionStructure& ts,
                                                          int p_max) {
  std::vector<PeriodicCertificate> out;
  for (int p = 1; p <= p_max; ++p) {
    for (const Word& w : admissible_words(ts, p)) {
      if (!ts.allowed(w.back(), w.front())) continue;
      if (!is_primitive_word(w) || canonical_rotation(w) != w) continue;
      out.emplace_back(w);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PeriodicCertificate& x, const PeriodicCertificate& y) { return x.word() < y.word(); });
  return out;
}

Word BlockRefinement::lift(const PeriodicCertificate& orbit) const {
  Word out(orbit.period());
  for (int i = 0; i < orbit.period(); ++i) {
    auto it = index.find(orbit.window(i, block_length));
    if (it == index.end()) throw InputError("orbit is not admissible for this refinement");
    out[i] = it->second;
  }
  return out;
}

Word BlockRefinement::project(std::span<const Symbol> refined_cycle) const {
  Word out;
  out.reserve(refined_cycle.size());
  for (Symbol s : refined_cycle) out.push_back(blocks.at(s).front());
  return out;
}

BlockRefinement refine_blocks(const TransitionStructure& ts, int k) {
  if (k < 1) throw InputError("block length must be >= 1");
  std::vector<Word> blocks = admissible_words(ts, k);
  constexpr std::size_t kMaxBlocks = 1U << 13;
  if (blocks.size() > kMaxBlocks) throw BudgetExceeded("block refinement has too many vertices");
  std::map<Word, Symbol> index;
  for (std::size_t i = 0; i < blocks.size(); ++i) index.emplace(blocks[i], static_cast<Symbol>(i));

  const std::size_t n = blocks.size();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Word next(blocks[i].begin() + 1, blocks[i].end());
    next.push_back(0);
    for (Symbol s : ts.successors(blocks[i].back())) {
      next.back() = s;
      rows[i][index.at(next)] = 1;
    }
  }
  return BlockRefinement{TransitionStructure(rows), k, std::move(blocks), std::move(index)};
}

std::optional<Word> connecting_gap(const TransitionStructure& ts, Symbol from, Symbol to) {
  if (ts.allowed(from, to)) return Word{};
  const int n = ts.size();
  std::vector<int> parent(n, -2);  // -2 unvisited, -1 reached directly from `from`
  std::deque<Symbol> queue;
  for (Symbol s : ts.successors(from)) {
    parent[s] = -1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Symbol u = queue.front();
    queue.pop_front();
    if (ts.allowed(u, to)) {
      Word path;
      for (int v = u; v != -1; v = parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Symbol v : ts.successors(u)) {
      if (parent[v] == -2) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

int GluedOrbit::total_gap() const {
  int total = 0;
  for (int g : gap_lengths) total += g;
  return total;
}

GluedOrbit glue_orbits(const TransitionStructure& ts, const std::vector<Word>& segments) {
  if (segments.empty()) throw InputError("glue_orbits needs at least one segment");
  for (const Word& seg : segments) {
    if (seg.empty()) throw InputError("orbit segments must be nonempty");
    if (!admissible(ts, seg)) throw InputError("orbit segment is not admissible");
  }
  GluedOrbit glued;
  glued.mixing_constant = mixing_constant(ts);
  Word word;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    glued.segment_offsets.push_back(static_cast<int>(word.size()));
    word.insert(word.end(), segments[i].begin(), segments[i].end());
    const Word& next = segments[(i + 1) % segments.size()];
    auto gap = connecting_gap(ts, segments[i].back(), next.front());
    if (!gap) throw NotPrimitive("no connecting path between segments");
    glued.gap_lengths.push_back(static_cast<int>(gap->size()));
    word.insert(word.end(), gap->begin(), gap->end());
  }
  glued.certificate = PeriodicCertificate(std::move(word));
  return glued;
}

TransitionStructure parse_sft(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&]() -> std::optional<std::string> {
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      auto last = line.find_last_not_of(" \t\r");
      return line.substr(first, last - first + 1);
    }
    return std::nullopt;
  };
  auto header = next_line();
  if (!header) throw InputError("SFT text is empty");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(*header, &used);
    if (used != header->size()) throw InputError("bad SFT header");
  } catch (const std::logic_error&) {
    throw InputError("SFT header must be the alphabet size, got '" + *header + "'");
  }
  if (n <= 0) throw InputError("SFT alphabet size must be positive");
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    auto row = next_line();
    if (!row) throw InputError("SFT text has " + std::to_string(i) + " rows, expected " + std::to_string(n));
    if (static_cast<int>(row->size()) != n) throw InputError("SFT row " + std::to_string(i) + " has wrong length");
    std::vector<int> values;
    for (char c : *row) {
      if (c != '0' && c != '1') throw InputError("SFT rows may only contain 0 and 1");
      values.push_back(c - '0');
    }
    rows.push_back(std::move(values));
  }
  if (next_line()) throw InputError("trailing content after SFT matrix");
  return TransitionStructure(rows);
}

std::string format_sft(const TransitionStructure& ts) {
  std::string out = std::to_string(ts.size()) + "\n";
  for (int i = 0; i < ts.size(); ++i) {
    for (int j = 0; j < ts.size(); ++j) out += ts.allowed(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace ergopt
