#include "fock/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fock/crystal.hpp"

namespace fock {

bool pm_leq(const PlusMinusWord& t, const PlusMinusWord& u) {
  if (t.size() != u.size()) return false;
  int dt = 0, du = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    dt += t[k] == '-';
    du += u[k] == '-';
    if (dt > du) return false;
  }
  return dt == du;
}

Family family_of(const Multipartition& la, int res, const Multicharge& ctx) {
  ensure_level(la, ctx);
  res = ctx.residue_of(res);
  Multipartition skel = la;
  for (const Box& b : removable_boxes(la, res, ctx)) skel = remove_box(skel, b);
  // One pass suffices: with e > 1 a removal neither creates nor blocks
  // another removable box of the same residue.
  if (!removable_boxes(skel, res, ctx).empty())
    throw std::logic_error("family_of: stripping did not reach a fixed point");
  Family fam;
  fam.res = res;
  fam.slots = addable_boxes(skel, res, ctx);
  std::sort(fam.slots.begin(), fam.slots.end(), [&ctx](const Box& a, const Box& b) {
    int ca = content(a, ctx), cb = content(b, ctx);
    if (ca != cb) return ca > cb;
    return a.comp < b.comp;
  });
  fam.skeleton = std::move(skel);
  return fam;
}

PlusMinusWord sigma_a_inv(const Multipartition& la, int res, const Multicharge& ctx) {
  Family fam = family_of(la, res, ctx);
  PlusMinusWord w;
  w.reserve(fam.slots.size());
  for (const Box& sl : fam.slots) w.push_back(has_box(la, sl) ? '-' : '+');
  return w;
}

Multipartition family_member(const Family& fam, const PlusMinusWord& word) {
  if (word.size() != fam.slots.size())
    throw std::invalid_argument("family_member: word length must match the slot count");
  Multipartition mp = fam.skeleton;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k] == '-')
      mp = add_box(mp, fam.slots[k]);
    else if (word[k] != '+')
      throw std::invalid_argument("family_member: letters must be '+' or '-'");
  }
  return mp;
}

bool ext_adjacent(const PlusMinusWord& t, const PlusMinusWord& s) {
  if (t.size() != s.size()) return false;
  const ReducedSignature red = reduce_word(t);
  for (const auto& [j, jp] : red.marked_pairs) {
    PlusMinusWord u = t;
    std::swap(u[static_cast<std::size_t>(j) - 1], u[static_cast<std::size_t>(jp) - 1]);
    if (u == s) return true;
  }
  return false;
}

namespace {

// A counting level: (content, component), or (content, 0) when components
// are lumped together.
using Key = std::pair<int, int>;

Key level_key(int cont, int comp, const SplitOptions& o) {
  return {cont, o.exact_levels ? comp : 0};
}

Key level_key(const Box& b, const Multicharge& ctx, const SplitOptions& o) {
  return level_key(content(b, ctx), b.comp, o);
}

// Larger value = deeper level. Every mode refines content descent within a
// component; they differ in how the components interleave.
using Depth = std::pair<long long, long long>;

Depth level_d(const Key& k, const Multicharge& ctx, const SplitOptions& o) {
  const long long c = k.first, i = k.second;
  const long long ell = ctx.ell(), e = ctx.e;
  switch (o.interleave) {
    case 1: return {-ell * c - e * i, 0};
    case 2: return {-c, i};
    case 3: return {-c, -i};
    case 4: return {-c, 0};
    case 5: return {-i, -c};
    case 6: return {i, -c};
    default: return {-ell * c + e * i, 0};
  }
}

std::map<Key, int> level_counts(const Multipartition& mp, const Multicharge& ctx,
                                const SplitOptions& o) {
  std::map<Key, int> cnt;
  for (const Box& b : boxes(mp)) ++cnt[level_key(b, ctx, o)];
  return cnt;
}

int count_at(const std::map<Key, int>& cnt, const Key& k) {
  auto it = cnt.find(k);
  return it == cnt.end() ? 0 : it->second;
}

// The order-smallest slot: least content, ties broken towards the larger
// component. This follows the box order and so ignores the option that only
// tunes how the scan interleaves levels of different components.
Box family_pivot(const Family& fam, const Multicharge& ctx, const SplitOptions&) {
  Box pivot = fam.slots.front();
  for (const Box& sl : fam.slots) {
    int cs = content(sl, ctx), cp = content(pivot, ctx);
    if (cs < cp || (cs == cp && sl.comp > pivot.comp)) pivot = sl;
  }
  return pivot;
}

}  // namespace

SplitClass splitting_classify(const Family& fam, const Multipartition& mu,
                              const Multicharge& ctx, const SplitOptions& opts) {
  ensure_level(mu, ctx);

  if (opts.by_family) {
    const Family own = family_of(mu, fam.res, ctx);
    if (own.skeleton == fam.skeleton) {
      if (fam.slots.empty()) return SplitClass::Less;
      const Box pivot = family_pivot(fam, ctx, opts);
      return has_box(mu, pivot) ? SplitClass::EqualMinus : SplitClass::EqualPlus;
    }
    auto profile = [&](const Family& f) {
      Multipartition rep = f.skeleton;
      if (opts.family_top)
        for (const Box& sl : f.slots) rep = add_box(rep, sl);
      return level_counts(rep, ctx, opts);
    };
    const std::map<Key, int> pm = profile(own);
    const std::map<Key, int> pf = profile(fam);
    std::set<Key> keys;
    for (const auto& [k, c] : pm) keys.insert(k);
    for (const auto& [k, c] : pf) keys.insert(k);
    std::vector<Key> order(keys.begin(), keys.end());
    // Levels of equal depth are compared together only up to taking the
    // levels of the acting residue last: those are the levels the slots
    // live on, so any disagreement there may be slot slack rather than a
    // real separation.
    auto acts = [&](const Key& k) { return ctx.residue_of(k.first) == fam.res; };
    std::sort(order.begin(), order.end(), [&](const Key& a, const Key& b) {
      Depth da = level_d(a, ctx, opts), db = level_d(b, ctx, opts);
      if (da != db) return da > db;
      if (acts(a) != acts(b)) return !acts(a);
      return a.second != b.second ? a.second > b.second : a.first > b.first;
    });
    // The family with more boxes at the deepest disagreement sits lower.
    for (const Key& k : order) {
      int diff = count_at(pm, k) - count_at(pf, k);
      if (diff > 0) return SplitClass::Less;
      if (diff < 0) return SplitClass::Greater;
    }
    return SplitClass::Less;
  }

  const std::map<Key, int> cm = level_counts(mu, ctx, opts);
  const std::map<Key, int> cs = level_counts(fam.skeleton, ctx, opts);

  std::set<Key> keys;
  for (const auto& [k, c] : cm) keys.insert(k);
  for (const auto& [k, c] : cs) keys.insert(k);

  if (fam.slots.empty()) {
    // Degenerate split of a slotless family: compare against the skeleton
    // alone. Greater when the deepest disagreeing level is a deficit.
    Depth worst_d{};
    int sign = 0;
    for (const Key& k : keys) {
      int a = count_at(cs, k), m = count_at(cm, k);
      if (a == m) continue;
      Depth d = level_d(k, ctx, opts);
      if (sign == 0 || d > worst_d) {
        worst_d = d;
        sign = m < a ? -1 : 1;
      } else if (d == worst_d && m < a) {
        sign = -1;
      }
    }
    return sign < 0 ? SplitClass::Greater : SplitClass::Less;
  }

  const Box pivot = family_pivot(fam, ctx, opts);
  const Key pivot_key = level_key(pivot, ctx, opts);
  const Depth pivot_d = level_d(pivot_key, ctx, opts);
  const int base = count_at(cs, pivot_key);
  const int pivot_cnt = count_at(cm, pivot_key);

  std::map<Key, int> slot_cap;
  for (const Box& sl : fam.slots)
    if (!(sl == pivot)) ++slot_cap[level_key(sl, ctx, opts)];

  // The window of counts a level may carry without leaving the family's
  // layer: exact away from the slots, one box of slack per slot, and the
  // base count or its successor at the pivot.
  auto window = [&](const Key& k) -> std::pair<int, int> {
    int a = count_at(cs, k);
    if (k == pivot_key) return {base, base + 1};
    return {a, a + count_at(slot_cap, k)};
  };

  if (opts.scan_all_levels) {
    std::vector<Key> order(keys.begin(), keys.end());
    std::sort(order.begin(), order.end(), [&](const Key& a, const Key& b) {
      return level_d(a, ctx, opts) > level_d(b, ctx, opts);
    });
    std::size_t i = 0;
    while (i < order.size()) {
      const Depth d = level_d(order[i], ctx, opts);
      bool below = false, above = false;
      for (; i < order.size() && level_d(order[i], ctx, opts) == d; ++i) {
        auto [lo, hi] = window(order[i]);
        int m = count_at(cm, order[i]);
        below = below || m < lo;
        above = above || m > hi;
      }
      if (below) return SplitClass::Greater;
      if (above) return SplitClass::Less;
    }
    if (is_addable(mu, pivot)) return SplitClass::EqualPlus;
    if (is_removable(mu, pivot)) return SplitClass::EqualMinus;
    // A clean scan over exact levels means mu is a member, so only the
    // lumped variant can reach this point.
    return SplitClass::Less;
  }

  // Clause-shaped variant. Companion level: the box above the pivot's cell,
  // one content step up, absent in the first row; the alternative takes the
  // step down instead.
  bool has_bbar = true;
  Key bbar_key{};
  if (opts.bbar_row_above) {
    if (pivot.row == 1)
      has_bbar = false;
    else
      bbar_key = level_key(content(pivot, ctx) + 1, pivot.comp, opts);
  } else {
    bbar_key = level_key(content(pivot, ctx) - 1, pivot.comp, opts);
  }

  // Scan the levels strictly deeper than the pivot, deepest first. A
  // deficit at the first disagreement puts mu past the whole family.
  std::vector<Key> deep;
  for (const Key& k : keys)
    if (level_d(k, ctx, opts) > pivot_d) deep.push_back(k);
  std::sort(deep.begin(), deep.end(), [&](const Key& a, const Key& b) {
    return level_d(a, ctx, opts) > level_d(b, ctx, opts);
  });
  bool deep_disagrees = false;
  bool deep_deficit = false;
  Depth first_d{};
  for (const Key& k : deep) {
    Depth d = level_d(k, ctx, opts);
    if (deep_disagrees && d < first_d) break;
    int a = count_at(cs, k), m = count_at(cm, k);
    if (a == m) continue;
    if (!deep_disagrees) {
      deep_disagrees = true;
      first_d = d;
    }
    if (m < a) deep_deficit = true;
  }
  if (deep_disagrees && deep_deficit) return SplitClass::Greater;

  if (!deep_disagrees) {
    if (pivot_cnt < base) return SplitClass::Greater;
    if (pivot_cnt == base && has_bbar) {
      // First disagreement in the companion's class, scanned from the
      // deepest level up to the companion level inclusive.
      const int bbar_res = ctx.residue_of(bbar_key.first);
      const Depth bbar_d = level_d(bbar_key, ctx, opts);
      std::vector<Key> scan;
      for (const Key& k : keys)
        if (ctx.residue_of(k.first) == bbar_res && level_d(k, ctx, opts) >= bbar_d)
          scan.push_back(k);
      std::sort(scan.begin(), scan.end(), [&](const Key& a, const Key& b) {
        return level_d(a, ctx, opts) > level_d(b, ctx, opts);
      });
      for (const Key& k : scan) {
        int a = count_at(cs, k), m = count_at(cm, k);
        if (a == m) continue;
        if (m < a) return SplitClass::Greater;
        break;
      }
    }
  }

  if (pivot_cnt == base || pivot_cnt == base + 1) {
    // The Equal region only reaches the levels before the pivot plus the
    // companion tail, leaving everything past the pivot unconstrained.
    auto in_region = [&](const Key& k) {
      if (level_d(k, ctx, opts) < pivot_d) return true;
      if (!has_bbar) return false;
      return ctx.residue_of(k.first) == ctx.residue_of(bbar_key.first) &&
             level_d(k, ctx, opts) >= level_d(bbar_key, ctx, opts);
    };
    bool ok = true;
    for (const Key& k : keys) {
      if (k == pivot_key || !in_region(k)) continue;
      auto [lo, hi] = window(k);
      int m = count_at(cm, k);
      if (m < lo || m > hi) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (is_addable(mu, pivot)) return SplitClass::EqualPlus;
      if (is_removable(mu, pivot)) return SplitClass::EqualMinus;
    }
  }
  return SplitClass::Less;
}

SplitReport verify_splitting_axioms(const Multicharge& ctx, int res, int max_weight,
                                    const SplitOptions& opts, bool corrupt_negative_control) {
  res = ctx.residue_of(res);
  SplitReport rep;
  auto fail = [&rep](bool& flag, std::string msg) {
    flag = false;
    if (rep.failures.size() < 20) rep.failures.push_back(std::move(msg));
  };

  const std::vector<Multipartition> all = multipartitions_up_to(max_weight, ctx.ell());
  const int n = static_cast<int>(all.size());
  std::map<Multipartition, int> index;
  for (int i = 0; i < n; ++i) index.emplace(all[i], i);

  std::vector<std::vector<char>> leq(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (all[i].weight() == all[j].weight())
        leq[i][j] = mp_preceq(all[i], all[j], ctx) ? 1 : 0;

  struct FamData {
    Family fam;
    std::vector<int> members;
    std::vector<PlusMinusWord> words;
    std::vector<SplitClass> cls;
  };
  std::vector<FamData> fams;
  std::map<Multipartition, int> fam_index;
  for (int i = 0; i < n; ++i) {
    Family f = family_of(all[i], res, ctx);
    auto [it, fresh] = fam_index.try_emplace(f.skeleton, static_cast<int>(fams.size()));
    if (fresh) fams.push_back(FamData{std::move(f), {}, {}, {}});
    FamData& fd = fams[static_cast<std::size_t>(it->second)];
    fd.members.push_back(i);
    PlusMinusWord w;
    for (const Box& sl : fd.fam.slots) w.push_back(has_box(all[i], sl) ? '-' : '+');
    fd.words.push_back(std::move(w));
  }

  for (FamData& fd : fams) {
    if (fd.fam.slots.empty())
      ++rep.singleton_families;
    else
      ++rep.families;
    fd.cls.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      fd.cls[static_cast<std::size_t>(j)] = splitting_classify(fd.fam, all[j], ctx, opts);
    if (corrupt_negative_control)
      for (int j = 0; j < n; ++j)
        if (fd.cls[static_cast<std::size_t>(j)] == SplitClass::EqualMinus &&
            all[j].weight() % 2 == 1)
          fd.cls[static_cast<std::size_t>(j)] = SplitClass::EqualPlus;
  }

  // Family words embed the member order in both directions.
  for (const FamData& fd : fams) {
    for (std::size_t p = 0; p < fd.members.size() && rep.monotone; ++p)
      for (std::size_t q = 0; q < fd.members.size(); ++q) {
        bool om = leq[static_cast<std::size_t>(fd.members[p])]
                     [static_cast<std::size_t>(fd.members[q])] != 0;
        bool wm = pm_leq(fd.words[p], fd.words[q]);
        if (om != wm) {
          fail(rep.monotone, "monotone: " + compact_label(all[fd.members[p]]) + " vs " +
                                 compact_label(all[fd.members[q]]) + " in family " +
                                 compact_label(fd.fam.skeleton));
          break;
        }
      }
  }

  for (const FamData& g : fams) {
    if (g.fam.slots.empty()) continue;
    const std::string gname = compact_label(g.fam.skeleton);
    const Box pivot = family_pivot(g.fam, ctx, opts);
    auto cls = [&](int j) { return g.cls[static_cast<std::size_t>(j)]; };

    // The three nested lower sets are ideals iff the class rank never drops
    // when moving up.
    for (int i = 0; i < n && rep.s0; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
            static_cast<int>(cls(i)) > static_cast<int>(cls(j))) {
          fail(rep.s0, "s0: " + compact_label(all[i]) + " <= " + compact_label(all[j]) +
                           " ranks drop under " + gname);
          break;
        }

    // Every family must fall in one class, Equal members following their
    // last letter.
    for (const FamData& fd : fams) {
      int kind = -1;
      for (std::size_t p = 0; p < fd.members.size(); ++p) {
        SplitClass c = cls(fd.members[p]);
        int k = c == SplitClass::Less ? 0 : c == SplitClass::Greater ? 2 : 1;
        if (kind == -1)
          kind = k;
        else if (kind != k)
          fail(rep.s2, "s2: family " + compact_label(fd.fam.skeleton) +
                           " split across classes under " + gname);
        if (k == 1) {
          char last = fd.words[p].empty() ? '?' : fd.words[p].back();
          char want = c == SplitClass::EqualMinus ? '-' : '+';
          if (last != want)
            fail(rep.s2, "s2: " + compact_label(all[fd.members[p]]) +
                             " has last letter " + std::string(1, last) + " but class " +
                             std::string(1, want) + " under " + gname);
        }
      }
    }

    for (const FamData& fd : fams) {
      if (fd.fam.slots.empty()) continue;
      bool all_eq = true, all_gt = true;
      for (int m : fd.members) {
        SplitClass c = cls(m);
        all_eq = all_eq && (c == SplitClass::EqualPlus || c == SplitClass::EqualMinus);
        all_gt = all_gt && c == SplitClass::Greater;
      }
      if (all_eq) {
        // Equal-contained families cut out the same Equal sets.
        for (int j = 0; j < n; ++j) {
          SplitClass cg = cls(j), cf = fd.cls[static_cast<std::size_t>(j)];
          bool gp = cg == SplitClass::EqualPlus, fp = cf == SplitClass::EqualPlus;
          bool gm = cg == SplitClass::EqualMinus, fm = cf == SplitClass::EqualMinus;
          if (gp != fp || gm != fm) {
            fail(rep.s3, "s3: Equal sets of " + compact_label(fd.fam.skeleton) + " and " +
                             gname + " differ at " + compact_label(all[j]));
            break;
          }
        }
      }
      bool g_all_lt = true;
      for (int m : g.members)
        g_all_lt = g_all_lt && fd.cls[static_cast<std::size_t>(m)] == SplitClass::Less;
      if (all_gt != g_all_lt)
        fail(rep.s3, "s3: Greater/Less containment between " + gname + " and " +
                         compact_label(fd.fam.skeleton) + " is not symmetric");
    }

    // Removing the pivot maps the Minus part onto the Plus part, preserving
    // the order and flipping the last letter of the member word.
    std::vector<int> minus_ix, plus_ix;
    for (int j = 0; j < n; ++j) {
      if (cls(j) == SplitClass::EqualMinus) minus_ix.push_back(j);
      if (cls(j) == SplitClass::EqualPlus) plus_ix.push_back(j);
    }
    std::map<int, int> iota;
    for (int j : minus_ix) {
      if (!is_removable(all[j], pivot)) {
        fail(rep.s4, "s4: pivot not removable in " + compact_label(all[j]) + " under " + gname);
        continue;
      }
      Multipartition im = remove_box(all[j], pivot);
      auto it = index.find(im);
      if (it == index.end() || cls(it->second) != SplitClass::EqualPlus) {
        fail(rep.s4, "s4: image of " + compact_label(all[j]) + " is not in the Plus part under " +
                         gname);
        continue;
      }
      iota.emplace(j, it->second);
      Family fj = family_of(all[j], res, ctx);
      Family fi = family_of(im, res, ctx);
      bool words_ok = fj.skeleton == fi.skeleton && fj.slots == fi.slots &&
                      !fj.slots.empty() && fj.slots.back() == pivot;
      if (words_ok) {
        PlusMinusWord wj = sigma_a_inv(all[j], res, ctx);
        PlusMinusWord wi = sigma_a_inv(im, res, ctx);
        words_ok = wj.size() == wi.size() && !wj.empty() && wj.back() == '-' &&
                   wi.back() == '+' &&
                   std::equal(wj.begin(), wj.end() - 1, wi.begin(), wi.end() - 1);
      }
      if (!words_ok)
        fail(rep.s4, "s4: word of " + compact_label(all[j]) +
                         " does not flip its last letter under " + gname);
    }
    for (int j : plus_ix) {
      if (all[j].weight() + 1 > max_weight) continue;
      if (!is_addable(all[j], pivot)) {
        fail(rep.s4, "s4: pivot not addable in " + compact_label(all[j]) + " under " + gname);
        continue;
      }
      Multipartition am = add_box(all[j], pivot);
      auto it = index.find(am);
      if (it == index.end() || cls(it->second) != SplitClass::EqualMinus)
        fail(rep.s4, "s4: preimage of " + compact_label(all[j]) +
                         " is not in the Minus part under " + gname);
    }
    for (int p : minus_ix)
      for (int q : minus_ix) {
        auto ip = iota.find(p), iq = iota.find(q);
        if (ip == iota.end() || iq == iota.end()) continue;
        bool before = leq[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] != 0;
        bool after = leq[static_cast<std::size_t>(ip->second)]
                        [static_cast<std::size_t>(iq->second)] != 0;
        if (before != after) {
          fail(rep.s4, "s4: order not preserved between " + compact_label(all[p]) + " and " +
                           compact_label(all[q]) + " under " + gname);
          break;
        }
      }
  }

  // No slots iff no Equal elements; with slots both Equal parts show up as
  // soon as the weight bound allows them.
  for (const FamData& fd : fams) {
    bool has_plus = false, has_minus = false;
    for (int j = 0; j < n; ++j) {
      SplitClass c = fd.cls[static_cast<std::size_t>(j)];
      has_plus = has_plus || c == SplitClass::EqualPlus;
      has_minus = has_minus || c == SplitClass::EqualMinus;
    }
    const std::string name = compact_label(fd.fam.skeleton);
    if (fd.fam.slots.empty()) {
      if (has_plus || has_minus)
        fail(rep.s1, "s1: slotless family " + name + " has Equal elements");
    } else {
      if (!has_plus) fail(rep.s1, "s1: family " + name + " has no Plus part");
      if (!has_minus && fd.fam.skeleton.weight() + 1 <= max_weight)
        fail(rep.s1, "s1: family " + name + " has no Minus part");
    }
  }

  return rep;
}

}  // namespace fock
