#include <vector>

#include "doctest.h"
#include "fock/crystal.hpp"
#include "fock/fockspace.hpp"

using namespace fock;

namespace {

Multipartition mp1(std::vector<int> parts) { return Multipartition({Partition(std::move(parts))}); }

FockVector basis(const Multipartition& mp) { return FockVector(mp); }

}  // namespace

TEST_CASE("vector arithmetic keeps the support tight") {
  Multipartition a = mp1({2}), b = mp1({1, 1});

  FockVector v;
  CHECK(v.zero());
  v.add(a, 3).add(b, -1);
  CHECK(v.coeff(a) == 3);
  CHECK(v.coeff(b) == -1);
  CHECK(v.coeff(mp1({3})) == 0);

  v.add(a, -3);
  CHECK(v.coeff(a) == 0);
  CHECK(v.terms().size() == 1);

  FockVector w = basis(a) + basis(b);
  CHECK((w - w).zero());
  CHECK((0 * w).zero());
  CHECK((2 * w).coeff(a) == 2);

  CHECK(basis(a) + basis(b) == basis(b) + basis(a));
}

TEST_CASE("ladder operator goldens on small diagrams") {
  Multicharge l1(2, {0});
  Multipartition empty1 = Multipartition::empty(1);

  FockVector up = f_op(0, basis(empty1), l1);
  CHECK(up == basis(mp1({1})));

  // Nothing is removable from the empty diagram.
  CHECK(e_op(0, basis(empty1), l1).zero());
  CHECK(e_op(1, basis(empty1), l1).zero());

  FockVector two = f_op(1, basis(mp1({1})), l1);
  CHECK(two.terms().size() == 2);
  CHECK(two.coeff(mp1({2})) == 1);
  CHECK(two.coeff(mp1({1, 1})) == 1);

  // Wrong residue: (1) has no addable box of residue 0 when e = 2.
  CHECK(f_op(0, basis(mp1({1})), l1).zero());

  // Linearity over a mixed support; both images collide on (2, 1).
  FockVector mix = basis(mp1({2})) + 2 * basis(mp1({1, 1}));
  FockVector img = f_op(1, mix, l1);
  CHECK(img.coeff(mp1({2, 1})) == 3);
  CHECK(img.terms().size() == 1);

  // Residue arguments are taken mod e.
  CHECK(f_op(-1, basis(mp1({1})), l1) == two);

  Multicharge wrong(2, {0, 1});
  CHECK_THROWS_AS((void)f_op(0, basis(empty1), wrong), std::invalid_argument);
}

TEST_CASE("diagonal eigenvalues") {
  Multicharge l1(2, {0});
  Multipartition empty1 = Multipartition::empty(1);

  CHECK(h_eigenvalue(empty1, 0, l1) == 1);
  CHECK(h_eigenvalue(empty1, 1, l1) == 0);

  Multicharge s3(4, {3});
  CHECK(h_eigenvalue(empty1, 3, s3) == 1);
  CHECK(h_eigenvalue(empty1, 0, s3) == 0);

  CHECK(h_eigenvalue(mp1({2}), 1, l1) == 0);
  CHECK(h_eigenvalue(mp1({2}), 0, l1) == 1);

  Multicharge l2(3, {0, 1});
  Multipartition empty2 = Multipartition::empty(2);
  CHECK(h_eigenvalue(empty2, 0, l2) == 1);
  CHECK(h_eigenvalue(empty2, 1, l2) == 1);
  CHECK(h_eigenvalue(empty2, 2, l2) == 0);
}

TEST_CASE("eigenvalue drops by two along a string") {
  for (const Multicharge& ctx :
       {Multicharge(2, {0}), Multicharge(3, {1}), Multicharge(2, {0, 1}), Multicharge(3, {4, 1})}) {
    for (const Multipartition& la : multipartitions_up_to(5, ctx.ell())) {
      for (int i = 0; i < ctx.e; ++i) {
        auto up = f_tilde(la, i, ctx);
        if (!up) continue;
        CHECK(h_eigenvalue(*up, i, ctx) == h_eigenvalue(la, i, ctx) - 2);
      }
    }
  }
}

TEST_CASE("truncation is flagged, never silent") {
  Multicharge l1(2, {0});
  Multipartition la = mp1({2, 1});

  TruncatedVector roomy = f_op_capped(0, basis(la), l1, 10);
  CHECK(!roomy.clipped);
  CHECK(roomy.vec == f_op(0, basis(la), l1));

  TruncatedVector tight = f_op_capped(0, basis(la), l1, 3);
  CHECK(tight.clipped);
  CHECK(tight.vec.zero());

  // A cap that only some support members exceed clips partially.
  FockVector mix = basis(Multipartition::empty(1)) + basis(mp1({2, 1}));
  TruncatedVector part = f_op_capped(0, mix, l1, 1);
  CHECK(part.clipped);
  CHECK(part.vec == f_op(0, basis(Multipartition::empty(1)), l1));

  // No addable box of the residue: nothing to clip.
  CHECK(!f_op_capped(0, basis(mp1({1})), l1, 1).clipped);
}

TEST_CASE("commutation relations on a truncated grid") {
  struct GridEntry {
    Multicharge ctx;
    int max;
  };
  const std::vector<GridEntry> grid = {
      {Multicharge(2, {0}), 7},    {Multicharge(3, {2}), 7},
      {Multicharge(2, {0, 1}), 5}, {Multicharge(3, {4, 1}), 5},
  };
  for (const auto& [ctx, max] : grid) {
    for (const Multipartition& la : multipartitions_up_to(max, ctx.ell())) {
      FockVector v = basis(la);
      for (int i = 0; i < ctx.e; ++i) {
        FockVector ef = e_op(i, f_op(i, v, ctx), ctx);
        FockVector fe = f_op(i, e_op(i, v, ctx), ctx);
        CHECK(ef - fe == static_cast<long long>(h_eigenvalue(la, i, ctx)) * v);
        for (int j = 0; j < ctx.e; ++j) {
          if (j == i) continue;
          CHECK(e_op(i, f_op(j, v, ctx), ctx) == f_op(j, e_op(i, v, ctx), ctx));
        }
      }
    }
  }
}

TEST_CASE("operators respect crystal arrows and blocks") {
  for (const Multicharge& ctx : {Multicharge(2, {0}), Multicharge(3, {1, 4})}) {
    for (const Multipartition& la : multipartitions_up_to(5, ctx.ell())) {
      for (int i = 0; i < ctx.e; ++i) {
        FockVector up = f_op(i, basis(la), ctx);
        if (auto arrow = f_tilde(la, i, ctx)) CHECK(up.coeff(*arrow) == 1);
        if (auto back = e_tilde(la, i, ctx))
          CHECK(e_op(i, basis(la), ctx).coeff(*back) == 1);

        // Every image lives one step over in the block grading.
        std::vector<long long> base = residue_counts(la, ctx);
        for (const auto& [mu, c] : up.terms()) {
          CHECK(c == 1);
          std::vector<long long> shifted = residue_counts(mu, ctx);
          for (int r = 0; r < ctx.e; ++r)
            CHECK(shifted[r] == base[r] + (r == i ? 1 : 0));
        }
      }
    }
  }
}
