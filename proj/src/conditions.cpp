#include "fock/conditions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "fock/crystal.hpp"

namespace fock {

namespace {

int norm_res(int x, int e) { return ((x % e) + e) % e; }

// True iff a and b differ only in boxes of the given residue.
bool moves_only_res_boxes(const Multipartition& a, const Multipartition& b, int res,
                          const Multicharge& ctx) {
  std::set<Box> sa, sb;
  for (const Box& x : boxes(a)) sa.insert(x);
  for (const Box& x : boxes(b)) sb.insert(x);
  int r = norm_res(res, ctx.e);
  for (const Box& x : sa)
    if (!sb.count(x) && residue(x, ctx) != r) return false;
  for (const Box& x : sb)
    if (!sa.count(x) && residue(x, ctx) != r) return false;
  return true;
}

std::vector<Companion> pair_companions(const Multipartition& mp, int res, const Multicharge& ctx,
                                       int born_at) {
  Signature sig = signature(mp, res, ctx);
  ReducedSignature red = reduce(sig);
  std::vector<Companion> out;
  for (const auto& [j, jp] : red.marked_pairs) {
    const Box& rem = sig.entries[static_cast<std::size_t>(j) - 1].box;
    const Box& add = sig.entries[static_cast<std::size_t>(jp) - 1].box;
    out.push_back({add_box(remove_box(mp, rem), add), born_at, norm_res(res, ctx.e), {j, jp}});
  }
  return out;
}

void dedupe(std::vector<Companion>& comps) {
  std::set<Multipartition> seen;
  std::vector<Companion> kept;
  for (Companion& c : comps)
    if (seen.insert(c.mp).second) kept.push_back(std::move(c));
  comps = std::move(kept);
}

}  // namespace

std::vector<Companion> companions_initial(const Multipartition& la, const Multicharge& ctx) {
  ensure_level(la, ctx);
  if (!is_singular(la, ctx))
    throw std::invalid_argument("companions_initial: input must be singular");
  std::vector<Companion> out;
  for (int res = 0; res < ctx.e; ++res)
    for (Companion& c : pair_companions(la, res, ctx, 0))
      if (!is_singular(c.mp, ctx)) out.push_back(std::move(c));
  dedupe(out);
  return out;
}

CompanionTracker::CompanionTracker(const Multipartition& la, const Multicharge& ctx)
    : ctx_(ctx), nu_(la), comps_(companions_initial(la, ctx)) {
  for (const Multipartition& mp : multipartitions_of(la.weight(), ctx.ell()))
    if (same_block(mp, la, ctx) && is_singular(mp, ctx)) sing_base_.push_back(mp);
  sing_now_.assign(sing_base_.begin(), sing_base_.end());
}

bool CompanionTracker::step(int res) {
  std::optional<Multipartition> next = sigma(nu_, res, ctx_);
  if (!next) return false;
  std::vector<Companion> kept;
  for (const Companion& c : comps_) {
    if (h_minus(c.mp, res, ctx_) != 0) continue;
    if (moves_only_res_boxes(c.mp, nu_, res, ctx_)) continue;
    std::optional<Multipartition> img = sigma(c.mp, res, ctx_);
    if (img) kept.push_back({*img, c.born_at, c.res, c.pair});
  }
  for (std::optional<Multipartition>& o : sing_now_)
    if (o) o = sigma(*o, res, ctx_);
  nu_ = *next;
  ++applied_;
  for (Companion& c : pair_companions(nu_, res, ctx_, applied_)) {
    bool tracked = false;
    for (const std::optional<Multipartition>& o : sing_now_)
      if (o && *o == c.mp) {
        tracked = true;
        break;
      }
    if (!tracked) kept.push_back(std::move(c));
  }
  dedupe(kept);
  comps_ = std::move(kept);
  return true;
}

bool CompanionTracker::walk(const ReducedWord& w) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    if (!step(*it)) return false;
  return true;
}

namespace {

std::optional<Multipartition> image(const ReducedWord& w, const Multipartition& mp,
                                    const Multicharge& ctx, bool dual, int cap) {
  ApplyOptions opts;
  opts.dual = dual;
  opts.max_weight = cap;
  return apply_word(w, mp, ctx, opts);
}

bool c_witness(const ReducedWord& w, const Multipartition& la, const Multipartition& mu,
               const Multicharge& ctx, int cap) {
  std::optional<Multipartition> wl = image(w, la, ctx, false, cap);
  std::optional<Multipartition> wm = image(w, mu, ctx, true, cap);
  return wl && wm && !mp_preceq(*wl, *wm, ctx);
}

bool ctilde_witness(const ReducedWord& w, const Multipartition& la, const Multipartition& mu,
                    const Multicharge& ctx, int cap) {
  std::optional<Multipartition> wm = image(w, mu, ctx, true, cap);
  if (!wm) return false;
  CompanionTracker tracker(la, ctx);
  if (!tracker.walk(w)) return false;
  for (const Companion& c : tracker.companions())
    if (mp_preceq(c.mp, *wm, ctx)) return false;
  for (const std::optional<Multipartition>& img : tracker.singular_images()) {
    if (!img) return false;
    if (mp_preceq(*img, *wm, ctx)) return false;
  }
  return true;
}

// The value window of a product in the affine symmetric group on residues
// mod e; used to enumerate group elements once each during the fallback
// search, so every tried word is automatically reduced.
using Window = std::vector<long long>;

Window window_apply(Window win, int letter, int e) {
  int i = norm_res(letter, e);
  int j = norm_res(i + 1, e);
  for (long long& v : win) {
    int r = norm_res(static_cast<int>(v % e), e);
    if (r == i)
      ++v;
    else if (r == j)
      --v;
  }
  return win;
}

template <class Predicate>
Verdict staged_search(const Multicharge& ctx, const SearchBudget& budget, Predicate&& good) {
  if (good(ReducedWord{})) return {true, {}, SearchStage::Identity};
  for (int n = 1; n <= budget.cycle_rounds; ++n)
    for (int j = 0; j < ctx.e; ++j) {
      ReducedWord w = cycle(j, n, ctx.e);
      if (!is_reduced(w, ctx.e)) continue;
      if (good(w)) return {true, w, SearchStage::Cycle};
    }
  Window id(static_cast<std::size_t>(ctx.e));
  for (int x = 1; x <= ctx.e; ++x) id[static_cast<std::size_t>(x) - 1] = x;
  std::set<Window> seen{id};
  std::deque<std::pair<Window, ReducedWord>> frontier{{id, {}}};
  while (!frontier.empty()) {
    auto [win, word] = frontier.front();
    frontier.pop_front();
    if (static_cast<int>(word.letters.size()) >= budget.bfs_length) continue;
    for (int i = 0; i < ctx.e; ++i) {
      Window next = window_apply(win, i, ctx.e);
      if (!seen.insert(next).second) continue;
      ReducedWord ext;
      ext.letters.reserve(word.letters.size() + 1);
      ext.letters.push_back(i);
      ext.letters.insert(ext.letters.end(), word.letters.begin(), word.letters.end());
      if (good(ext)) return {true, ext, SearchStage::Bfs};
      frontier.push_back({std::move(next), std::move(ext)});
    }
  }
  return {};
}

void require_pair(const Multipartition& la, const Multipartition& mu, const Multicharge& ctx) {
  ensure_level(la, ctx);
  ensure_level(mu, ctx);
  if (!is_singular(la, ctx) || !is_cosingular(mu, ctx) || !same_block(la, mu, ctx))
    throw std::invalid_argument("condition check: needs a singular/cosingular same-block pair");
}

}  // namespace

Verdict check_C(const Multipartition& la, const Multipartition& mu, const Multicharge& ctx,
                const SearchBudget& budget) {
  require_pair(la, mu, ctx);
  return staged_search(ctx, budget, [&](const ReducedWord& w) {
    return c_witness(w, la, mu, ctx, budget.weight_cap);
  });
}

Verdict check_Ctilde(const Multipartition& la, const Multipartition& mu, const Multicharge& ctx,
                     const SearchBudget& budget) {
  require_pair(la, mu, ctx);
  return staged_search(ctx, budget, [&](const ReducedWord& w) {
    return ctilde_witness(w, la, mu, ctx, budget.weight_cap);
  });
}

namespace {

// The lone surviving '-' across the reduced signatures of one component
// taken alone; absent when there is none or, defensively, more than one.
std::optional<Box> lone_minus(const Multipartition& mp, int comp, const Multicharge& ctx,
                              bool dual) {
  Multipartition part({mp.comp(comp)});
  Multicharge local(ctx.e, {ctx.charge(comp)});
  std::optional<Box> found;
  for (int res = 0; res < ctx.e; ++res) {
    Signature sig = signature(part, res, local);
    ReducedSignature red = dual ? reduce_dual(sig) : reduce(sig);
    for (int pos : red.i_minus) {
      if (found) return std::nullopt;
      Box b = sig.entries[static_cast<std::size_t>(pos) - 1].box;
      b.comp = comp;
      found = b;
    }
  }
  return found;
}

}  // namespace

Level2Report check_level2_Lambda0(const Multicharge& ctx, int max_weight,
                                  const SearchBudget& budget) {
  if (ctx.ell() != 2)
    throw std::invalid_argument("check_level2_Lambda0: needs a level two multicharge");
  Level2Report rep;
  for (int n = 0; n <= max_weight; ++n) {
    std::vector<Multipartition> sing, cosing;
    for (const Partition& p : partitions_of(n)) {
      Multipartition mp({Partition(), p});
      if (is_singular(mp, ctx)) sing.push_back(mp);
      if (is_cosingular(mp, ctx)) cosing.push_back(mp);
    }
    for (const Multipartition& la : sing)
      for (const Multipartition& mu : cosing) {
        if (!same_block(la, mu, ctx)) continue;
        Level2Pair p;
        p.la = la;
        p.mu = mu;
        Multipartition wla = la, wmu = mu;
        Multicharge wctx = ctx;
        int comp = 2;
        std::optional<Box> bla = lone_minus(wla, comp, wctx, false);
        std::optional<Box> bmu = lone_minus(wmu, comp, wctx, true);
        if (bla && bmu && bmu->row <= bla->row) {
          // Mirror through the duality; rows and columns trade places, so
          // the distinguished rows land in the right order.
          auto [dmu, dctx] = dagger(mu, ctx);
          wla = dmu;
          wmu = dagger(la, ctx).first;
          wctx = dctx;
          comp = 1;
          p.daggered = true;
          bla = lone_minus(wla, comp, wctx, false);
          bmu = lone_minus(wmu, comp, wctx, true);
        }
        p.main_case = bla && bmu && bmu->row > bla->row;
        if (p.main_case) {
          int rows_la = wla.comp(comp).rows();
          int rows_mu = wmu.comp(comp).rows();
          p.a = wctx.charge(comp) - rows_mu;
          p.b = rows_la - rows_mu;
          if (p.b < 0) {
            p.short_circuit = true;
            p.prescribed_ok = !mp_preceq(wla, wmu, wctx);
          } else {
            p.word = cycle(p.a, p.b + 1, wctx.e);
            p.prescribed_ok =
                is_reduced(p.word, wctx.e) && c_witness(p.word, wla, wmu, wctx, budget.weight_cap);
          }
          ++rep.main_pairs;
          if (p.prescribed_ok)
            ++rep.prescribed_ok;
          else
            ++rep.fallbacks_in_main;
        }
        if (!p.prescribed_ok) p.fallback = check_C(la, mu, ctx, budget);
        rep.all_hold = rep.all_hold && (p.prescribed_ok || p.fallback.holds);
        rep.pairs.push_back(std::move(p));
      }
  }
  return rep;
}

}  // namespace fock
