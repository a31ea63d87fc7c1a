#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fock/core.hpp"

namespace fock {

/// One signature entry: an addable (+) or removable (-) box of the residue
/// the signature was built for.
struct SigEntry {
  bool plus = true;
  Box box;
  friend bool operator==(const SigEntry&, const SigEntry&) = default;
};

/// All addable and removable boxes of one residue, listed left to right by
/// descending content, ties by descending component index.
struct Signature {
  int res = 0;
  std::vector<SigEntry> entries;
};

/// Survivors of a reduction, as 1-based positions into the original word,
/// plus the cancelled pairs (j < j', opposite signs). After the usual
/// reduction every surviving + precedes every surviving -.
struct ReducedSignature {
  std::vector<int> i_plus;
  std::vector<int> i_minus;
  std::vector<std::pair<int, int>> marked_pairs;
};

/// The signature of mp at the given residue (taken mod e).
Signature signature(const Multipartition& mp, int res, const Multicharge& ctx);

/// Usual reduction: repeatedly cancel an adjacent (-,+) survivor pair until
/// none remains. The outcome, pairs included, does not depend on the
/// cancellation order. reduce_dual cancels (+,-) instead.
ReducedSignature reduce(const Signature& sig);
ReducedSignature reduce_dual(const Signature& sig);

/// Same reductions on a bare sign word ('+' and '-' characters).
ReducedSignature reduce_word(const std::vector<char>& word);
ReducedSignature reduce_word_dual(const std::vector<char>& word);

/// Usual crystal operators at a residue. e_tilde removes the box at the
/// smallest surviving -, f_tilde adds the box at the largest surviving +;
/// absent when the relevant survivor set is empty.
std::optional<Multipartition> e_tilde(const Multipartition& mp, int res, const Multicharge& ctx);
std::optional<Multipartition> f_tilde(const Multipartition& mp, int res, const Multicharge& ctx);

/// Dual crystal operators: e_tilde_star removes at the largest surviving -
/// of the dual reduction, f_tilde_star adds at the smallest surviving +.
std::optional<Multipartition> e_tilde_star(const Multipartition& mp, int res, const Multicharge& ctx);
std::optional<Multipartition> f_tilde_star(const Multipartition& mp, int res, const Multicharge& ctx);

/// Survivor counts: h_plus = |I_+| and h_minus = |I_-| for the usual
/// reduction, the _star forms for the dual one.
int h_plus(const Multipartition& mp, int res, const Multicharge& ctx);
int h_minus(const Multipartition& mp, int res, const Multicharge& ctx);
int h_plus_star(const Multipartition& mp, int res, const Multicharge& ctx);
int h_minus_star(const Multipartition& mp, int res, const Multicharge& ctx);

/// Weight pairing at a residue, computed from charge and box residue counts
/// alone; equals h_plus - h_minus for both reductions.
int wt(const Multipartition& mp, int res, const Multicharge& ctx);

/// Singular: e_tilde kills mp at every residue. Cosingular: e_tilde_star
/// does.
bool is_singular(const Multipartition& mp, const Multicharge& ctx);
bool is_cosingular(const Multipartition& mp, const Multicharge& ctx);

/// Number of boxes of each residue, indexed 0..e-1.
std::vector<long long> residue_counts(const Multipartition& mp, const Multicharge& ctx);

/// Same size and the same number of boxes of every residue.
bool same_block(const Multipartition& a, const Multipartition& b, const Multicharge& ctx);

/// Connected component of mp under e_tilde/f_tilde at all residues,
/// restricted to multipartitions of weight <= max_weight.
std::set<Multipartition> crystal_component(const Multipartition& mp, const Multicharge& ctx,
                                           int max_weight);

/// The singular multipartition reached by applying e_tilde greedily until
/// none applies. It is the unique weight-minimal element of mp's component
/// and does not depend on the descent order.
Multipartition crystal_source(const Multipartition& mp, const Multicharge& ctx);

/// Whether mp's component contains a multipartition of weight <= r,
/// equivalently whether its source has weight <= r.
bool par_r_membership(const Multipartition& mp, int r, const Multicharge& ctx);

}  // namespace fock
