#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fock/core.hpp"
#include "fock/hierarchy.hpp"
#include "support/oracles.hpp"

using namespace fock;

namespace {

Multipartition mp1(std::vector<int> parts) { return Multipartition({Partition(std::move(parts))}); }

Multipartition mp2(std::vector<int> a, std::vector<int> b) {
  return Multipartition({Partition(std::move(a)), Partition(std::move(b))});
}

PlusMinusWord word(const std::string& s) { return PlusMinusWord(s.begin(), s.end()); }

// Strips removable boxes of the residue one at a time in random order until
// none is left. Slow counterpart of the one-pass skeleton.
Multipartition strip_slowly(Multipartition mp, int res, const Multicharge& ctx,
                            std::mt19937& rng) {
  for (;;) {
    std::vector<Box> rem = removable_boxes(mp, res, ctx);
    if (rem.empty()) return mp;
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, rem.size() - 1)(rng);
    mp = remove_box(mp, rem[pick]);
  }
}

}  // namespace

TEST_CASE("word order") {
  CHECK(pm_leq(word(""), word("")));
  CHECK(pm_leq(word("+-"), word("+-")));
  CHECK(pm_leq(word("+-"), word("-+")));
  CHECK_FALSE(pm_leq(word("-+"), word("+-")));
  CHECK(pm_leq(word("+-+-"), word("-++-")));
  CHECK_FALSE(pm_leq(word("+-"), word("--")));   // totals differ
  CHECK_FALSE(pm_leq(word("+-"), word("+-+")));  // lengths differ
}

TEST_CASE("family goldens, level one") {
  Multicharge ctx(2, {0});

  Family f0 = family_of(mp1({}), 0, ctx);
  CHECK(f0.skeleton == mp1({}));
  REQUIRE(f0.slots.size() == 1);
  CHECK(f0.slots[0] == Box{1, 1, 1});

  Family f2 = family_of(mp1({2}), 0, ctx);
  CHECK(f2.skeleton == mp1({2}));
  REQUIRE(f2.slots.size() == 1);
  CHECK(f2.slots[0] == Box{1, 3, 1});

  Family f22 = family_of(mp1({2, 2}), 0, ctx);
  CHECK(f22.skeleton == mp1({2, 1}));
  REQUIRE(f22.slots.size() == 3);
  CHECK(f22.slots[0] == Box{1, 3, 1});
  CHECK(f22.slots[1] == Box{2, 2, 1});
  CHECK(f22.slots[2] == Box{3, 1, 1});
  CHECK(sigma_a_inv(mp1({2, 2}), 0, ctx) == word("+-+"));

  Family g1 = family_of(mp1({1}), 1, ctx);
  CHECK(g1.skeleton == mp1({1}));
  REQUIRE(g1.slots.size() == 2);
  CHECK(g1.slots[0] == Box{1, 2, 1});
  CHECK(g1.slots[1] == Box{2, 1, 1});
}

TEST_CASE("family goldens, level two") {
  Multicharge ctx(2, {0, 0});
  Family f = family_of(mp2({1}, {1}), 0, ctx);
  CHECK(f.skeleton == mp2({}, {}));
  REQUIRE(f.slots.size() == 2);
  CHECK(f.slots[0] == Box{1, 1, 1});
  CHECK(f.slots[1] == Box{1, 1, 2});
  CHECK(sigma_a_inv(mp2({1}, {1}), 0, ctx) == word("--"));
  CHECK(sigma_a_inv(mp2({1}, {}), 0, ctx) == word("-+"));
  CHECK(sigma_a_inv(mp2({}, {1}), 0, ctx) == word("+-"));
}

TEST_CASE("skeleton matches single step stripping in any order") {
  std::mt19937 rng(20240811u);
  for (const Multicharge& ctx :
       {Multicharge(2, {0}), Multicharge(3, {1}), Multicharge(2, {0, 1}), Multicharge(3, {4, 1})}) {
    for (const Multipartition& mp : multipartitions_up_to(5, ctx.ell()))
      for (int res = 0; res < ctx.e; ++res) {
        Family f = family_of(mp, res, ctx);
        CHECK(removable_boxes(f.skeleton, res, ctx).empty());
        for (int round = 0; round < 3; ++round)
          CHECK(strip_slowly(mp, res, ctx, rng) == f.skeleton);
      }
  }
}

TEST_CASE("slots are the skeleton's addable boxes, listed large to small") {
  for (const Multicharge& ctx : {Multicharge(2, {0, 1}), Multicharge(3, {1, 4})}) {
    for (const Multipartition& mp : multipartitions_up_to(5, ctx.ell()))
      for (int res = 0; res < ctx.e; ++res) {
        Family f = family_of(mp, res, ctx);
        std::vector<Box> expect = addable_boxes(f.skeleton, res, ctx);
        CHECK(f.slots.size() == expect.size());
        for (const Box& sl : f.slots) {
          CHECK(std::find(expect.begin(), expect.end(), sl) != expect.end());
          CHECK(box_leq(f.slots.back(), sl, ctx));
        }
        for (std::size_t k = 0; k + 1 < f.slots.size(); ++k)
          CHECK(box_leq(f.slots[k + 1], f.slots[k], ctx));
      }
  }
}

TEST_CASE("members, words and the order embed") {
  for (const Multicharge& ctx : {Multicharge(2, {0}), Multicharge(2, {0, 1})}) {
    for (const Multipartition& mp : multipartitions_up_to(4, ctx.ell()))
      for (int res = 0; res < ctx.e; ++res) {
        Family f = family_of(mp, res, ctx);
        std::vector<Multipartition> members;
        std::vector<PlusMinusWord> words;
        for (unsigned mask = 0; mask < (1u << f.slots.size()); ++mask) {
          PlusMinusWord w(f.slots.size(), '+');
          for (std::size_t k = 0; k < f.slots.size(); ++k)
            if (mask & (1u << k)) w[k] = '-';
          Multipartition mem = family_member(f, w);
          CHECK(sigma_a_inv(mem, res, ctx) == w);
          CHECK(family_of(mem, res, ctx).skeleton == f.skeleton);
          members.push_back(mem);
          words.push_back(w);
        }
        for (std::size_t p = 0; p < members.size(); ++p)
          for (std::size_t q = 0; q < members.size(); ++q)
            CHECK(mp_preceq(members[p], members[q], ctx) == pm_leq(words[p], words[q]));
      }
  }
}

TEST_CASE("exterior adjacency") {
  CHECK(ext_adjacent(word("-+"), word("+-")));
  CHECK_FALSE(ext_adjacent(word("-+"), word("-+")));
  CHECK_FALSE(ext_adjacent(word("+-"), word("-+")));

  // -+--++ reduces through the pairs (1,2), (4,5), (3,6); swapping one pair
  // at a time gives exactly three neighbours among the twenty rearrangements.
  PlusMinusWord t = word("-+--++");
  std::set<std::string> got;
  std::vector<char> perm(t.begin(), t.end());
  std::sort(perm.begin(), perm.end());
  do {
    PlusMinusWord s(perm.begin(), perm.end());
    if (ext_adjacent(t, s)) got.insert(std::string(s.begin(), s.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(got == std::set<std::string>{"+---++", "-+-+-+", "-++-+-"});
}

TEST_CASE("splitting goldens, level one") {
  Multicharge ctx(2, {0});

  Family f2 = family_of(mp1({2}), 0, ctx);
  CHECK(splitting_classify(f2, mp1({}), ctx) == SplitClass::Greater);
  CHECK(splitting_classify(f2, mp1({1}), ctx) == SplitClass::Greater);
  CHECK(splitting_classify(f2, mp1({1, 1}), ctx) == SplitClass::Less);
  CHECK(splitting_classify(f2, mp1({2}), ctx) == SplitClass::EqualPlus);
  CHECK(splitting_classify(f2, mp1({3}), ctx) == SplitClass::EqualMinus);
  CHECK(splitting_classify(f2, mp1({2, 1}), ctx) == SplitClass::Less);
  CHECK(splitting_classify(f2, mp1({2, 1, 1}), ctx) == SplitClass::Less);
  CHECK(splitting_classify(f2, mp1({3, 1}), ctx) == SplitClass::Less);

  Family f0 = family_of(mp1({}), 0, ctx);
  CHECK(splitting_classify(f0, mp1({}), ctx) == SplitClass::EqualPlus);
  CHECK(splitting_classify(f0, mp1({1}), ctx) == SplitClass::EqualMinus);
  CHECK(splitting_classify(f0, mp1({1, 1}), ctx) == SplitClass::Less);
  CHECK(splitting_classify(f0, mp1({2}), ctx) == SplitClass::Less);

  Family g1 = family_of(mp1({1}), 1, ctx);
  CHECK(splitting_classify(g1, mp1({}), ctx) == SplitClass::Greater);
  CHECK(splitting_classify(g1, mp1({1}), ctx) == SplitClass::EqualPlus);
  CHECK(splitting_classify(g1, mp1({2}), ctx) == SplitClass::EqualPlus);
  CHECK(splitting_classify(g1, mp1({1, 1}), ctx) == SplitClass::EqualMinus);
  CHECK(splitting_classify(g1, mp1({2, 1}), ctx) == SplitClass::EqualMinus);
  CHECK(splitting_classify(g1, mp1({3}), ctx) == SplitClass::Less);
}

TEST_CASE("splitting goldens, level two") {
  Multicharge ctx(2, {0, 0});
  Family f = family_of(mp2({1}, {1}), 0, ctx);
  CHECK(splitting_classify(f, mp2({}, {}), ctx) == SplitClass::EqualPlus);
  CHECK(splitting_classify(f, mp2({1}, {}), ctx) == SplitClass::EqualPlus);
  CHECK(splitting_classify(f, mp2({}, {1}), ctx) == SplitClass::EqualMinus);
  CHECK(splitting_classify(f, mp2({1}, {1}), ctx) == SplitClass::EqualMinus);
  CHECK(splitting_classify(f, mp2({2}, {}), ctx) == SplitClass::Less);
  CHECK(splitting_classify(f, mp2({1, 1}, {}), ctx) == SplitClass::Less);
  CHECK(splitting_classify(f, mp2({}, {1, 1}), ctx) == SplitClass::Less);
}

TEST_CASE("splitting axioms hold on mixed grids") {
  struct Line {
    Multicharge ctx;
    int max_weight;
  };
  std::vector<Line> grid = {
      {Multicharge(2, {0}), 7},    {Multicharge(3, {2}), 7},
      {Multicharge(2, {0, 0}), 6}, {Multicharge(2, {0, 1}), 6},
      {Multicharge(3, {1, 4}), 6}, {Multicharge(4, {0, 2}), 5},
  };
  for (const Line& line : grid)
    for (int res = 0; res < line.ctx.e; ++res) {
      SplitReport rep = verify_splitting_axioms(line.ctx, res, line.max_weight);
      INFO("e=", line.ctx.e, " res=", res);
      for (const std::string& f : rep.failures) INFO(f);
      CHECK(rep.all());
      CHECK(rep.families > 0);
    }
}

TEST_CASE("splitting axiom counts stay frozen") {
  SplitReport rep = verify_splitting_axioms(Multicharge(2, {0, 0}), 1, 6);
  CHECK(rep.all());
  CHECK(rep.families == 39);
  CHECK(rep.singleton_families == 3);
}

TEST_CASE("corrupted classification is caught") {
  SplitReport rep = verify_splitting_axioms(Multicharge(2, {0}), 0, 6, {}, true);
  CHECK_FALSE(rep.s2);
  CHECK_FALSE(rep.all());
}

TEST_CASE("per element scan agrees at level one but not at level two") {
  SplitOptions scan;
  scan.by_family = false;
  SplitReport lvl1 = verify_splitting_axioms(Multicharge(2, {0}), 0, 7, scan);
  CHECK(lvl1.all());
  SplitReport lvl2 = verify_splitting_axioms(Multicharge(2, {0, 0}), 0, 6, scan);
  CHECK_FALSE(lvl2.s0);
}

TEST_CASE("deep end tie direction matters at level two") {
  SplitOptions flipped;
  flipped.interleave = 1;
  SplitReport rep = verify_splitting_axioms(Multicharge(2, {0, 0}), 0, 6, flipped);
  CHECK_FALSE(rep.s0);
}
