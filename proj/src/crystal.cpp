#include "fock/crystal.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace fock {

namespace {

// Bracket matching: push every `open`, let each `close` cancel the nearest
// open survivor to its left. Survivors of the closing sign all precede
// survivors of the opening sign.
ReducedSignature match_word(const std::vector<char>& word, char open, char close) {
  ReducedSignature out;
  std::vector<int> stack;
  std::vector<int> lone_close;
  for (int j = 1; j <= static_cast<int>(word.size()); ++j) {
    char t = word[static_cast<std::size_t>(j) - 1];
    if (t != open && t != close)
      throw std::invalid_argument("reduce: word entries must be '+' or '-'");
    if (t == open) {
      stack.push_back(j);
    } else if (stack.empty()) {
      lone_close.push_back(j);
    } else {
      out.marked_pairs.push_back({stack.back(), j});
      stack.pop_back();
    }
  }
  if (open == '-') {
    out.i_plus = std::move(lone_close);
    out.i_minus = std::move(stack);
  } else {
    out.i_minus = std::move(lone_close);
    out.i_plus = std::move(stack);
  }
  return out;
}

std::vector<char> word_of(const Signature& sig) {
  std::vector<char> w;
  w.reserve(sig.entries.size());
  for (const SigEntry& en : sig.entries) w.push_back(en.plus ? '+' : '-');
  return w;
}

}  // namespace

Signature signature(const Multipartition& mp, int res, const Multicharge& ctx) {
  ensure_level(mp, ctx);
  Signature sig;
  sig.res = ctx.residue_of(res);
  for (const Box& b : addable_boxes(mp, sig.res, ctx)) sig.entries.push_back({true, b});
  for (const Box& b : removable_boxes(mp, sig.res, ctx)) sig.entries.push_back({false, b});
  std::sort(sig.entries.begin(), sig.entries.end(),
            [&ctx](const SigEntry& x, const SigEntry& y) {
              int cx = content(x.box, ctx), cy = content(y.box, ctx);
              if (cx != cy) return cx > cy;
              return x.box.comp > y.box.comp;
            });
  return sig;
}

ReducedSignature reduce_word(const std::vector<char>& word) { return match_word(word, '-', '+'); }

ReducedSignature reduce_word_dual(const std::vector<char>& word) {
  return match_word(word, '+', '-');
}

ReducedSignature reduce(const Signature& sig) { return reduce_word(word_of(sig)); }

ReducedSignature reduce_dual(const Signature& sig) { return reduce_word_dual(word_of(sig)); }

std::optional<Multipartition> e_tilde(const Multipartition& mp, int res, const Multicharge& ctx) {
  Signature sig = signature(mp, res, ctx);
  ReducedSignature red = reduce(sig);
  if (red.i_minus.empty()) return std::nullopt;
  const Box& b = sig.entries[static_cast<std::size_t>(red.i_minus.front()) - 1].box;
  return remove_box(mp, b);
}

std::optional<Multipartition> f_tilde(const Multipartition& mp, int res, const Multicharge& ctx) {
  Signature sig = signature(mp, res, ctx);
  ReducedSignature red = reduce(sig);
  if (red.i_plus.empty()) return std::nullopt;
  const Box& b = sig.entries[static_cast<std::size_t>(red.i_plus.back()) - 1].box;
  return add_box(mp, b);
}

std::optional<Multipartition> e_tilde_star(const Multipartition& mp, int res,
                                           const Multicharge& ctx) {
  Signature sig = signature(mp, res, ctx);
  ReducedSignature red = reduce_dual(sig);
  if (red.i_minus.empty()) return std::nullopt;
  const Box& b = sig.entries[static_cast<std::size_t>(red.i_minus.back()) - 1].box;
  return remove_box(mp, b);
}

std::optional<Multipartition> f_tilde_star(const Multipartition& mp, int res,
                                           const Multicharge& ctx) {
  Signature sig = signature(mp, res, ctx);
  ReducedSignature red = reduce_dual(sig);
  if (red.i_plus.empty()) return std::nullopt;
  const Box& b = sig.entries[static_cast<std::size_t>(red.i_plus.front()) - 1].box;
  return add_box(mp, b);
}

int h_plus(const Multipartition& mp, int res, const Multicharge& ctx) {
  return static_cast<int>(reduce(signature(mp, res, ctx)).i_plus.size());
}

int h_minus(const Multipartition& mp, int res, const Multicharge& ctx) {
  return static_cast<int>(reduce(signature(mp, res, ctx)).i_minus.size());
}

int h_plus_star(const Multipartition& mp, int res, const Multicharge& ctx) {
  return static_cast<int>(reduce_dual(signature(mp, res, ctx)).i_plus.size());
}

int h_minus_star(const Multipartition& mp, int res, const Multicharge& ctx) {
  return static_cast<int>(reduce_dual(signature(mp, res, ctx)).i_minus.size());
}

int wt(const Multipartition& mp, int res, const Multicharge& ctx) {
  ensure_level(mp, ctx);
  int i = ctx.residue_of(res);
  int up = ctx.residue_of(i + 1);
  int down = ctx.residue_of(i - 1);
  long long out = 0;
  for (int c = 1; c <= ctx.ell(); ++c)
    if (ctx.residue_of(ctx.charge(c)) == i) ++out;
  for (const Box& b : boxes(mp)) {
    int r = residue(b, ctx);
    if (r == i) out -= 2;
    if (r == up) ++out;
    if (r == down) ++out;
  }
  return static_cast<int>(out);
}

bool is_singular(const Multipartition& mp, const Multicharge& ctx) {
  for (int i = 0; i < ctx.e; ++i)
    if (h_minus(mp, i, ctx) != 0) return false;
  return true;
}

bool is_cosingular(const Multipartition& mp, const Multicharge& ctx) {
  for (int i = 0; i < ctx.e; ++i)
    if (h_minus_star(mp, i, ctx) != 0) return false;
  return true;
}

std::vector<long long> residue_counts(const Multipartition& mp, const Multicharge& ctx) {
  ensure_level(mp, ctx);
  std::vector<long long> counts(static_cast<std::size_t>(ctx.e), 0);
  for (const Box& b : boxes(mp)) ++counts[static_cast<std::size_t>(residue(b, ctx))];
  return counts;
}

bool same_block(const Multipartition& a, const Multipartition& b, const Multicharge& ctx) {
  return a.weight() == b.weight() && residue_counts(a, ctx) == residue_counts(b, ctx);
}

std::set<Multipartition> crystal_component(const Multipartition& mp, const Multicharge& ctx,
                                           int max_weight) {
  ensure_level(mp, ctx);
  if (mp.weight() > max_weight)
    throw std::invalid_argument("crystal_component: weight of mp exceeds the bound");
  std::set<Multipartition> seen{mp};
  std::deque<Multipartition> queue{mp};
  while (!queue.empty()) {
    Multipartition cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < ctx.e; ++i) {
      for (auto& next : {e_tilde(cur, i, ctx), f_tilde(cur, i, ctx)}) {
        if (!next || next->weight() > max_weight) continue;
        if (seen.insert(*next).second) queue.push_back(*next);
      }
    }
  }
  return seen;
}

Multipartition crystal_source(const Multipartition& mp, const Multicharge& ctx) {
  Multipartition cur = mp;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < ctx.e && !moved; ++i) {
      if (auto down = e_tilde(cur, i, ctx)) {
        cur = *down;
        moved = true;
      }
    }
  }
  return cur;
}

bool par_r_membership(const Multipartition& mp, int r, const Multicharge& ctx) {
  return crystal_source(mp, ctx).weight() <= r;
}

}  // namespace fock
