#include <doctest.h>

#include <random>
#include <set>

#include "ergopt/acceptance.hpp"
#include "ergopt/error.hpp"
#include "ergopt/sft.hpp"
#include "oracles.hpp"

using namespace ergopt;

namespace {
const TransitionStructure golden({{1, 1}, {1, 0}});
}

TEST_CASE("construction rejects dead symbols and non 0/1 entries") {
  CHECK_THROWS_AS(TransitionStructure({{1, 0}, {1, 0}}), InputError);
  CHECK_THROWS_AS(TransitionStructure({{1, 1}, {0, 0}}), InputError);
  CHECK_THROWS_AS(TransitionStructure({{2, 1}, {1, 1}}), InputError);
  CHECK_THROWS_AS(TransitionStructure({{1, 1}}), InputError);
}

TEST_CASE("admissible words") {
  const auto full = TransitionStructure::full_shift(2);
  CHECK(admissible(full, Word{0, 1, 1, 0}));
  CHECK_FALSE(admissible(golden, Word{1, 1}));
  CHECK(admissible(golden, Word{0, 1, 0, 0}));
  CHECK_THROWS_AS(admissible(golden, Word{0, 2}), InputError);
  CHECK_FALSE(cyclic_admissible(golden, Word{1, 0, 1}));
  CHECK(cyclic_admissible(golden, Word{0, 1}));
}

TEST_CASE("mixing constant") {
  CHECK(mixing_constant(TransitionStructure::full_shift(2)) == 1);
  CHECK(mixing_constant(TransitionStructure({{0, 1}, {1, 1}})) == 2);
  CHECK_THROWS_AS(mixing_constant(TransitionStructure({{1, 0}, {0, 1}})), NotPrimitive);
  // irreducible with period 2: never primitive
  const TransitionStructure flip({{0, 1}, {1, 0}});
  CHECK(flip.is_irreducible());
  CHECK_FALSE(flip.is_primitive());
  // Wielandt's extremal matrix reaches the bound n^2 - 2n + 2
  const TransitionStructure wielandt({{0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  CHECK(mixing_constant(wielandt) == 5);
}

TEST_CASE("periodic words on the full 2-shift") {
  const auto full = TransitionStructure::full_shift(2);
  auto words = [&](int p) {
    std::vector<Word> out;
    for (const auto& c : periodic_words(full, p)) out.push_back(c.word());
    return out;
  };
  CHECK(words(1) == std::vector<Word>{{0}, {1}});
  CHECK(words(2).size() == 3);
  CHECK(words(3).size() == 5);
}

TEST_CASE("orbit counts match the necklace formula and traces") {
  for (int n = 2; n <= 3; ++n) {
    const auto full = TransitionStructure::full_shift(n);
    const auto orbits = periodic_words(full, 10);
    for (int p = 1; p <= 10; ++p) {
      long exact = 0;
      long weighted = 0;
      for (const auto& o : orbits) {
        if (o.period() == p) ++exact;
        if (p % o.period() == 0) weighted += o.period();
      }
      CHECK(exact == oracle::primitive_orbits_full_shift(n, p));
      CHECK(weighted == oracle::ipow(n, p));
    }
  }
  const auto orbits = periodic_words(golden, 12);
  for (int p = 1; p <= 12; ++p) {
    long weighted = 0;
    for (const auto& o : orbits) {
      if (p % o.period() == 0) weighted += o.period();
    }
    CHECK(static_cast<double>(weighted) == golden.trace_power(p));
  }
}

TEST_CASE("DFS enumeration agrees with the reference enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ts = random_primitive_sft(rng, 2, 4);
    const auto fast = periodic_words(ts, 7);
    const auto slow = periodic_words_reference(ts, 7);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].word() == slow[i].word());
    for (const auto& c : fast) {
      CHECK(canonical_rotation(c.word()) == c.word());
      CHECK(is_primitive_word(c.word()));
      CHECK(cyclic_admissible(ts, c.word()));
    }
  }
}

TEST_CASE("certificate frequencies") {
  const PeriodicCertificate c(Word{0, 0, 1});
  CHECK(c.frequency(Word{0}).value() == doctest::Approx(2.0 / 3.0));
  CHECK(c.frequency(Word{0, 1}) == Frequency{1, 3});
  CHECK(c.frequency(Word{1, 0}) == Frequency{1, 3});
  CHECK(c.frequency(Word{1, 1}).count == 0);
  for (int d = 1; d <= 4; ++d) {
    int total = 0;
    for (const auto& [w, f] : c.frequencies(d)) total += f.count;
    CHECK(total == 3);
  }
  CHECK(PeriodicCertificate(Word{1, 0, 0}).same_orbit(c));
  CHECK(PeriodicCertificate(Word{0, 1, 0, 1}).canonical().word() == Word{0, 1});
  CHECK(primitive_root(Word{1, 2, 1, 2, 1, 2}) == Word{1, 2});
}

TEST_CASE("block refinement") {
  const auto full = TransitionStructure::full_shift(2);
  const auto one = refine_blocks(full, 1);
  CHECK(one.ts == full);
  const auto two = refine_blocks(full, 2);
  CHECK(two.ts.size() == 4);
  CHECK(two.ts.count_words(2) == 8);
  const auto g2 = refine_blocks(golden, 2);
  CHECK(g2.blocks == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(g2.ts.count_words(2) == 5);
  // orbits correspond one to one, with the same periods
  const auto original = periodic_words(golden, 9);
  const auto refined = periodic_words(g2.ts, 9);
  CHECK(original.size() == refined.size());
  for (const auto& o : original) {
    const Word lifted = g2.lift(o);
    CHECK(cyclic_admissible(g2.ts, lifted));
    CHECK(g2.project(lifted) == o.word());
  }
}

TEST_CASE("connecting gaps") {
  CHECK(connecting_gap(golden, 1, 1) == Word{0});
  CHECK(connecting_gap(golden, 0, 1) == Word{});
  const TransitionStructure cycle3({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK(connecting_gap(cycle3, 0, 0) == Word{1, 2});
}

TEST_CASE("gluing orbit segments") {
  const auto full = TransitionStructure::full_shift(2);
  const auto single = glue_orbits(full, {{0, 0, 0}});
  CHECK(single.certificate.word() == Word{0, 0, 0});
  CHECK(single.total_gap() == 0);

  const auto two = glue_orbits(full, {{0, 0}, {1, 1}});
  CHECK(two.certificate.period() <= 2 + 2 + 2 * 1);
  CHECK(two.certificate.word() == Word{0, 0, 1, 1});

  const auto g = glue_orbits(golden, {{1}, {1}});
  CHECK(g.certificate.word() == Word{1, 0, 1, 0});
  CHECK(g.gap_lengths == std::vector<int>{1, 1});
  CHECK(g.segment_offsets == std::vector<int>{0, 2});
}

TEST_CASE("glued frequencies stay within the gap budget") {
  // For cylinders of length d the segment average differs from the glued
  // orbit by at most (gaps + straddling windows) / period.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ts = random_primitive_sft(rng, 2, 4);
    std::vector<Word> segments;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < count; ++k) {
      Word w{static_cast<Symbol>(rng() % ts.size())};
      const int len = 2 + static_cast<int>(rng() % 5);
      while (static_cast<int>(w.size()) < len) {
        auto next = ts.successors(w.back());
        w.push_back(next[rng() % next.size()]);
      }
      segments.push_back(w);
    }
    const auto glued = glue_orbits(ts, segments);
    for (int g : glued.gap_lengths) CHECK(g <= glued.mixing_constant);
    for (std::size_t i = 0; i < segments.size(); ++i) {
      CHECK(glued.certificate.window(glued.segment_offsets[i], static_cast<int>(segments[i].size())) == segments[i]);
    }
    const int d = 2;
    int straddle = 0;
    long windows = 0;
    for (const Word& s : segments) {
      straddle += std::min<int>(static_cast<int>(s.size()), d - 1);
      windows += static_cast<long>(s.size()) - d + 1;
    }
    const double bound = static_cast<double>(glued.total_gap() + straddle) / glued.certificate.period();
    for (const auto& [cyl, freq] : glued.certificate.frequencies(d)) {
      long inside = 0;
      for (const Word& s : segments) {
        for (std::size_t j = 0; j + d <= s.size(); ++j) inside += Word(s.begin() + j, s.begin() + j + d) == cyl;
      }
      CHECK(std::abs(freq.value() - static_cast<double>(inside) / windows) <= bound + 1e-15);
    }
  }
}

TEST_CASE("SFT text format round trip") {
  const auto ts = parse_sft("3\n110\n011\n101\n");
  CHECK(ts.size() == 3);
  CHECK(ts.allowed(0, 1));
  CHECK_FALSE(ts.allowed(0, 2));
  CHECK(parse_sft(format_sft(ts)) == ts);
  CHECK_THROWS_AS(parse_sft(""), InputError);
  CHECK_THROWS_AS(parse_sft("2\n11\n1x\n"), InputError);
  CHECK_THROWS_AS(parse_sft("2\n11\n"), InputError);
  CHECK_THROWS_AS(parse_sft("2\n111\n11\n"), InputError);
}
