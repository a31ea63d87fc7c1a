#pragma once

// Slow reference implementations used only by the test suite. They restate
// the definitions from scratch so the library and the tests cannot share a
// bug: the order oracle runs an explicit bipartite matching instead of the
// per class comparison, and the reduction oracle cancels adjacent letters
// in random order instead of a single stack pass.

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fock/core.hpp"

namespace oracle {

// true iff cont(c) - cont(b) is a positive multiple of e, or zero with
// comp(b) >= comp(c). Written directly from the definition.
inline bool box_leq_literal(const fock::Box& b, const fock::Box& c,
                            const fock::Multicharge& ctx) {
  int cb = b.col - b.row + ctx.s[static_cast<std::size_t>(b.comp) - 1];
  int cc = c.col - c.row + ctx.s[static_cast<std::size_t>(c.comp) - 1];
  if (cb == cc) return b.comp >= c.comp;
  return cc > cb && (cc - cb) % ctx.e == 0;
}

namespace detail {
inline bool kuhn_augment(int u, const std::vector<std::vector<int>>& adj,
                         std::vector<int>& match_right, std::vector<char>& seen) {
  for (int v : adj[static_cast<std::size_t>(u)]) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    seen[static_cast<std::size_t>(v)] = 1;
    if (match_right[static_cast<std::size_t>(v)] < 0 ||
        kuhn_augment(match_right[static_cast<std::size_t>(v)], adj, match_right, seen))
      return match_right[static_cast<std::size_t>(v)] = u, true;
  }
  return false;
}
}  // namespace detail

// lambda <= mu iff the boxes admit a perfect matching b -> b' with b <= b'.
inline bool mp_preceq_matching(const fock::Multipartition& a,
                               const fock::Multipartition& b,
                               const fock::Multicharge& ctx) {
  std::vector<fock::Box> left = fock::boxes(a), right = fock::boxes(b);
  if (left.size() != right.size()) return false;
  std::vector<std::vector<int>> adj(left.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      if (box_leq_literal(left[i], right[j], ctx)) adj[i].push_back(static_cast<int>(j));
  std::vector<int> match_right(right.size(), -1);
  int matched = 0;
  for (std::size_t u = 0; u < left.size(); ++u) {
    std::vector<char> seen(right.size(), 0);
    if (detail::kuhn_augment(static_cast<int>(u), adj, match_right, seen)) ++matched;
  }
  return matched == static_cast<int>(left.size());
}

struct ReductionResult {
  std::vector<int> plus;   // surviving '+' positions, 1-based, ascending
  std::vector<int> minus;  // surviving '-' positions, 1-based, ascending
  std::vector<std::pair<int, int>> pairs;  // cancelled pairs (left, right)
};

// Cancels adjacent occurrences of `left` then `right` among the surviving
// letters, picking the occurrence uniformly at random each round. The
// outcome is order independent, which is exactly what this oracle is used
// to demonstrate.
inline ReductionResult reduce_random_order(const std::string& word, char left,
                                           char right, std::mt19937& rng) {
  std::vector<int> alive(word.size());
  for (std::size_t k = 0; k < word.size(); ++k) alive[k] = static_cast<int>(k);
  ReductionResult out;
  for (;;) {
    std::vector<std::size_t> hits;
    for (std::size_t k = 0; k + 1 < alive.size(); ++k)
      if (word[static_cast<std::size_t>(alive[k])] == left &&
          word[static_cast<std::size_t>(alive[k + 1])] == right)
        hits.push_back(k);
    if (hits.empty()) break;
    std::size_t pick = hits[std::uniform_int_distribution<std::size_t>(
        0, hits.size() - 1)(rng)];
    out.pairs.push_back({alive[pick] + 1, alive[pick + 1] + 1});
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pick),
                alive.begin() + static_cast<std::ptrdiff_t>(pick) + 2);
  }
  for (int pos : alive)
    (word[static_cast<std::size_t>(pos)] == '+' ? out.plus : out.minus)
        .push_back(pos + 1);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

inline std::vector<fock::Multicharge> random_multicharges(int count, int ell, int e,
                                                          int charge_span,
                                                          unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(-charge_span, charge_span);
  std::vector<fock::Multicharge> out;
  for (int k = 0; k < count; ++k) {
    std::vector<int> s(static_cast<std::size_t>(ell));
    for (int& v : s) v = pick(rng);
    out.push_back(fock::Multicharge(e, std::move(s)));
  }
  return out;
}

}  // namespace oracle
