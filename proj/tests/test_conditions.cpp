#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fock/conditions.hpp"
#include "fock/crystal.hpp"

using namespace fock;

namespace {

Multipartition mp1(std::vector<int> parts) { return Multipartition({Partition(std::move(parts))}); }

Multipartition mp2(std::vector<int> a, std::vector<int> b) {
  return Multipartition({Partition(std::move(a)), Partition(std::move(b))});
}

std::optional<Multipartition> usual(const ReducedWord& w, const Multipartition& mp,
                                    const Multicharge& ctx) {
  return apply_word(w, mp, ctx, {});
}

std::optional<Multipartition> dual(const ReducedWord& w, const Multipartition& mp,
                                   const Multicharge& ctx) {
  ApplyOptions o;
  o.dual = true;
  return apply_word(w, mp, ctx, o);
}

// surviving '-' boxes of one component taken on its own, across all residues
std::vector<Box> lone_minus_boxes(const Multipartition& mp, int comp, const Multicharge& ctx,
                                  bool dual_side) {
  Multipartition part({mp.comp(comp)});
  Multicharge local(ctx.e, {ctx.charge(comp)});
  std::vector<Box> out;
  for (int res = 0; res < ctx.e; ++res) {
    Signature sig = signature(part, res, local);
    ReducedSignature red = dual_side ? reduce_dual(sig) : reduce(sig);
    for (int pos : red.i_minus) {
      Box b = sig.entries[static_cast<std::size_t>(pos) - 1].box;
      b.comp = comp;
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("initial companions follow the marked pairs") {
  Multicharge e2(2, {0});
  auto cs = companions_initial(mp1({2}), e2);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].mp == mp1({1, 1}));
  CHECK(cs[0].res == 1);
  CHECK(cs[0].pair == std::pair<int, int>{1, 2});
  CHECK(cs[0].born_at == 0);

  CHECK(companions_initial(Multipartition::empty(1), e2).empty());

  auto sq = companions_initial(mp1({2, 2}), e2);
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].mp == mp1({2, 1, 1}));
  CHECK(sq[0].res == 0);

  Multicharge e3(3, {0});
  auto tr = companions_initial(mp1({3}), e3);
  REQUIRE(tr.size() == 1);
  CHECK(tr[0].mp == mp1({2, 1}));
  CHECK(tr[0].res == 2);

  CHECK_THROWS_AS((void)companions_initial(mp1({1}), e2), std::invalid_argument);
}

TEST_CASE("companion tracks stay strictly below the walked element") {
  std::mt19937 rng(2026u);
  for (int e : {2, 3}) {
    Multicharge ctx(e, {0});
    for (int n = 0; n <= 8; ++n) {
      for (const Multipartition& la : multipartitions_of(n, 1)) {
        if (!is_singular(la, ctx)) continue;
        for (int round = 0; round < 3; ++round) {
          CompanionTracker tracker(la, ctx);
          for (int k = 0; k < 6; ++k) {
            for (const Companion& c : tracker.companions()) {
              CHECK(c.mp.weight() == tracker.current().weight());
              CHECK(mp_lt(c.mp, tracker.current(), ctx));
            }
            int letter = static_cast<int>(rng() % static_cast<unsigned>(e));
            if (!tracker.step(letter)) break;
          }
        }
      }
    }
  }
}

// Along a staircase word, the marked pairs of the residue just acted on are
// exactly the removable boxes the prefix has not reached yet, each paired
// with the addable box one row further down.
TEST_CASE("pairing along staircase orbits") {
  for (int e : {2, 3}) {
    Multicharge ctx(e, {0});
    for (int wt = 0; wt <= 8; ++wt) {
      for (const Multipartition& la : multipartitions_of(wt, 1)) {
        if (!is_singular(la, ctx)) continue;
        for (int k = 1; k <= 8; ++k) {
          auto rho = usual(cycle(0, k, e), la, ctx);
          REQUIRE(rho.has_value());
          int i = (((1 - k) % e) + e) % e;
          const Partition& p = rho->comp(1);
          std::set<std::pair<Box, Box>> expected;
          for (int r = k + 1; r <= p.rows(); ++r) {
            Box rem{r, p.part(r), 1};
            if (!is_removable(*rho, rem) || residue(rem, ctx) != i) continue;
            // the prefix only grows the first k rows
            CHECK(p.part(r) == la.comp(1).part(r));
            Box add{r + 1, p.part(r + 1) + 1, 1};
            CHECK(is_addable(*rho, add));
            CHECK(residue(add, ctx) == i);
            expected.insert({rem, add});
          }
          Signature sig = signature(*rho, i, ctx);
          std::set<std::pair<Box, Box>> got;
          for (const auto& [j, jp] : reduce(sig).marked_pairs)
            got.insert({sig.entries[static_cast<std::size_t>(j) - 1].box,
                        sig.entries[static_cast<std::size_t>(jp) - 1].box});
          CHECK(got == expected);
        }
      }
    }
  }
}

TEST_CASE("the first faithfulness condition is found quickly") {
  Multicharge e2(2, {0});

  Verdict v = check_C(mp1({2}), mp1({1, 1}), e2);
  CHECK(v.holds);
  CHECK(v.stage == SearchStage::Identity);
  CHECK(v.witness.letters.empty());
  CHECK_FALSE(mp_preceq(mp1({2}), mp1({1, 1}), e2));

  // an element that is both singular and cosingular needs a real reflection
  Verdict d = check_C(mp1({2, 2}), mp1({2, 2}), e2);
  CHECK(d.holds);
  CHECK(d.stage == SearchStage::Cycle);
  CHECK(d.witness.letters == std::vector<int>{0});
  auto wl = usual(d.witness, mp1({2, 2}), e2);
  auto wm = dual(d.witness, mp1({2, 2}), e2);
  REQUIRE((wl && wm));
  CHECK(*wl == mp1({3, 2}));
  CHECK(*wm == mp1({2, 2, 1}));
  CHECK_FALSE(mp_preceq(*wl, *wm, e2));

  SearchBudget big;
  big.cycle_rounds = 14;
  big.bfs_length = 8;
  CHECK(check_C(mp1({2}), mp1({1, 1}), e2, big).holds);
  CHECK(check_C(mp1({2, 2}), mp1({2, 2}), e2, big).holds);

  CHECK_THROWS_AS((void)check_C(mp1({1}), mp1({1}), e2), std::invalid_argument);
  CHECK_THROWS_AS((void)check_C(mp1({2}), mp1({2}), e2), std::invalid_argument);
}

TEST_CASE("witness soundness on a mixed sample") {
  for (int e : {2, 3}) {
    Multicharge ctx(e, {0});
    for (int n = 1; n <= 6; ++n) {
      auto all = multipartitions_of(n, 1);
      for (const Multipartition& la : all) {
        if (!is_singular(la, ctx)) continue;
        for (const Multipartition& mu : all) {
          if (!is_cosingular(mu, ctx) || !same_block(la, mu, ctx)) continue;
          Verdict v = check_C(la, mu, ctx);
          if (!v.holds) continue;
          CHECK(is_reduced(v.witness, e));
          auto wl = usual(v.witness, la, ctx);
          auto wm = dual(v.witness, mu, ctx);
          REQUIRE((wl && wm));
          CHECK_FALSE(mp_preceq(*wl, *wm, ctx));
        }
      }
    }
  }
}

TEST_CASE("the refined condition respects the level one thresholds") {
  Multicharge e3(3, {0});
  for (int n = 1; n <= 6; ++n) {
    auto all = multipartitions_of(n, 1);
    for (const Multipartition& la : all) {
      if (!is_singular(la, e3)) continue;
      for (const Multipartition& mu : all) {
        if (!is_cosingular(mu, e3) || !same_block(la, mu, e3)) continue;
        Verdict v = check_Ctilde(la, mu, e3);
        CHECK(v.holds);
        CHECK(v.stage == SearchStage::Identity);
      }
    }
  }

  Multicharge e2(2, {0});
  CHECK_FALSE(check_Ctilde(mp1({2}), mp1({1, 1}), e2).holds);
  CHECK(check_C(mp1({2}), mp1({1, 1}), e2).holds);

  int cycles = 0;
  for (int n = 4; n <= 6; n += 2) {
    auto all = multipartitions_of(n, 1);
    for (const Multipartition& la : all) {
      if (!is_singular(la, e2)) continue;
      for (const Multipartition& mu : all) {
        if (!is_cosingular(mu, e2) || !same_block(la, mu, e2)) continue;
        Verdict v = check_Ctilde(la, mu, e2);
        CHECK(v.holds);
        CHECK(v.stage != SearchStage::Bfs);
        if (v.stage == SearchStage::Cycle) ++cycles;
      }
    }
  }
  CHECK(cycles == 6);

  Verdict w = check_Ctilde(mp1({2, 2, 2}), mp1({3, 3}), e2);
  CHECK(w.holds);
  CHECK(w.witness.letters == std::vector<int>{1, 0});
}

TEST_CASE("level two campaign, small weights") {
  Multicharge ctx(2, {2, 0});
  Level2Report rep = check_level2_Lambda0(ctx, 6);
  CHECK(rep.pairs.size() == 20);
  CHECK(rep.main_pairs == 5);
  CHECK(rep.prescribed_ok == 5);
  CHECK(rep.fallbacks_in_main == 0);
  CHECK_FALSE(rep.all_hold);
  for (const Level2Pair& p : rep.pairs) {
    if (p.la.weight() == 0) {
      // the empty pair tracks itself on both sides, so no witness exists
      CHECK(p.la == p.mu);
      CHECK_FALSE(p.main_case);
      CHECK_FALSE(p.fallback.holds);
      continue;
    }
    CHECK((p.prescribed_ok || p.fallback.holds));
    if (!p.main_case) continue;
    CHECK(p.short_circuit);
    CHECK_FALSE(p.daggered);
    CHECK(p.word.letters.empty());

    auto lm = lone_minus_boxes(p.la, 2, ctx, false);
    auto dm = lone_minus_boxes(p.mu, 2, ctx, true);
    REQUIRE(lm.size() == 1);
    REQUIRE(dm.size() == 1);
    CHECK(content(lm[0], ctx) >= ctx.charge(1));
    CHECK(content(dm[0], ctx) < ctx.charge(1));
    CHECK(dm[0].row > lm[0].row);
    CHECK(p.b == p.la.comp(2).rows() - p.mu.comp(2).rows());
    CHECK(p.b < 0);
  }

  Level2Report r3 = check_level2_Lambda0(Multicharge(3, {3, 0}), 6);
  CHECK(r3.pairs.size() == 8);
  CHECK(r3.main_pairs == 2);
  CHECK(r3.prescribed_ok == 2);
  CHECK(r3.fallbacks_in_main == 0);

  CHECK_THROWS_AS((void)check_level2_Lambda0(Multicharge(2, {0}), 2), std::invalid_argument);
}

TEST_CASE("level two campaign reaches the cycle and mirror branches") {
  Multicharge ctx(2, {0, 0});
  Level2Report rep = check_level2_Lambda0(ctx, 9);
  CHECK(rep.main_pairs == 44);
  CHECK(rep.fallbacks_in_main == 0);

  int cycle_pairs = 0, mirrored = 0;
  for (const Level2Pair& p : rep.pairs) {
    if (p.la.weight() > 0) CHECK((p.prescribed_ok || p.fallback.holds));
    if (!p.main_case || p.short_circuit) continue;
    ++cycle_pairs;
    if (p.daggered) ++mirrored;
    CHECK(p.prescribed_ok);
    CHECK(p.word.letters == cycle(p.a, p.b + 1, ctx.e).letters);

    Multipartition la = p.la, mu = p.mu;
    Multicharge world = ctx;
    if (p.daggered) {
      auto [flipped_mu, flipped_ctx] = dagger(mu, ctx);
      Multipartition flipped_la = dagger(la, ctx).first;
      la = flipped_mu;
      mu = flipped_la;
      world = flipped_ctx;
    }
    auto wl = usual(p.word, la, world);
    auto wm = dual(p.word, mu, world);
    REQUIRE((wl && wm));
    CHECK_FALSE(mp_preceq(*wl, *wm, world));
  }
  CHECK(cycle_pairs == 4);
  CHECK(mirrored == 1);

  bool found = false;
  for (const Level2Pair& p : rep.pairs)
    if (p.la == mp2({}, {3, 3, 3}) && p.mu == mp2({}, {4, 4, 1})) {
      found = true;
      CHECK(p.main_case);
      CHECK(p.daggered);
      CHECK_FALSE(p.short_circuit);
      CHECK(p.a == -3);
      CHECK(p.b == 1);
      CHECK(p.prescribed_ok);
    }
  CHECK(found);
}
