#pragma once

#include <optional>
#include <vector>

#include "fock/core.hpp"

namespace fock {

/// A word in the straightening reflections. Letters are residues mod e and
/// are applied right to left: the last letter acts first. Despite the name,
/// reducedness is not enforced; is_reduced checks it on demand.
struct ReducedWord {
  std::vector<int> letters;
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

/// The cycle word with letters j-n+1, ..., j-1, j (each taken mod e), so
/// the reflection at j acts first. n = 0 gives the empty word.
ReducedWord cycle(int j, int n, int e);

/// Coxeter length of the word's product in the affine symmetric group on
/// residues mod e, via the window inversion formula.
long long affine_length(const ReducedWord& w, int e);

/// True iff the word is a reduced expression: its length equals the Coxeter
/// length of its product.
bool is_reduced(const ReducedWord& w, int e);

/// Straightening reflection: absent when some surviving - remains at the
/// residue; otherwise the raising operator applied h_plus times, landing on
/// the top of the string.
std::optional<Multipartition> sigma(const Multipartition& mp, int res, const Multicharge& ctx);

/// The dual form, built from the dual reduction and dual raising operator.
std::optional<Multipartition> sigma_dual(const Multipartition& mp, int res,
                                         const Multicharge& ctx);

struct ApplyOptions {
  bool dual = false;
  /// Throw instead of returning absent when a reflection is undefined
  /// part-way through; use for words that are guaranteed to apply.
  bool require_defined = false;
  /// Hard cap on intermediate weights; exceeding it throws.
  int max_weight = 1 << 20;
};

/// Applies the word's reflections right to left. Absent propagates unless
/// require_defined is set.
std::optional<Multipartition> apply_word(const ReducedWord& w, const Multipartition& mp,
                                         const Multicharge& ctx, const ApplyOptions& opts = {});

/// The transpose of (n, n-(e-1), n-2(e-1), ...), keeping strictly positive
/// entries; empty for n = 0.
Partition nu_n(int n, int e);

/// Level one only: the rowwise sum la + nu_n, which the cycle at 0 of
/// length n produces from singular la.
Multipartition cycle_closed_form(const Multipartition& la, int n, const Multicharge& ctx);

/// Level one only: (mu^t + nu_n^t)^t, the dual cycle's output on
/// cosingular mu.
Multipartition cycle_closed_form_dual(const Multipartition& mu, int n, const Multicharge& ctx);

/// e = 2 only: the two-box multipartition built from the leftmost minimal
/// charge entry; a row of length 2 there, unless some earlier component
/// carries charge one higher, in which case one box in each. Always
/// singular.
Multipartition special_nu(const Multicharge& ctx);

/// Whether mp's crystal component reaches weight <= 1, or, when e = 2, the
/// component of special_nu.
bool par1_membership(const Multipartition& mp, const Multicharge& ctx);

}  // namespace fock
