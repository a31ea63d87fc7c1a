#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fock/core.hpp"
#include "fock/weyl.hpp"

namespace fock {

/// A companion multipartition with its provenance: how many letters had
/// been applied when it appeared, the residue of the signature it came
/// from, and the marked pair inside that signature (1-based positions).
struct Companion {
  Multipartition mp;
  int born_at = 0;
  int res = 0;
  std::pair<int, int> pair{0, 0};
};

/// Companions of a singular multipartition: for every residue, each marked
/// pair of the signature moves the removable box of the pair onto the
/// addable one; results that are singular themselves are dropped. Rejects
/// non-singular input.
std::vector<Companion> companions_initial(const Multipartition& la, const Multicharge& ctx);

/// Walks a singular element along reflection letters, maintaining its
/// companion set together with the images of every singular element of the
/// starting block. A carried companion survives a letter when the
/// reflection is defined on it and it differs from the tracked element by
/// more than boxes of the letter's residue. Fresh companions come from the
/// marked pairs of the new element's signature at the letter's residue,
/// except those equal to the image of some singular element of the block
/// under the same letters.
class CompanionTracker {
 public:
  CompanionTracker(const Multipartition& la, const Multicharge& ctx);

  /// Applies one reflection letter; false when the reflection is undefined
  /// on the tracked element, which cannot happen along a reduced word.
  bool step(int res);

  /// Applies every letter of the word, the last letter first.
  bool walk(const ReducedWord& w);

  const Multipartition& current() const { return nu_; }
  const std::vector<Companion>& companions() const { return comps_; }

  /// The singular elements of the starting block, and their images under
  /// the letters applied so far. An image is absent once a reflection was
  /// undefined somewhere along its chain.
  const std::vector<Multipartition>& singular_block() const { return sing_base_; }
  const std::vector<std::optional<Multipartition>>& singular_images() const { return sing_now_; }

 private:
  Multicharge ctx_;
  Multipartition nu_;
  std::vector<Companion> comps_;
  std::vector<Multipartition> sing_base_;
  std::vector<std::optional<Multipartition>> sing_now_;
  int applied_ = 0;
};

/// Budgets for the condition checkers: guided cycles up to this many
/// letters, breadth-first fallback over reduced words up to this length,
/// and a cap on intermediate diagram sizes.
struct SearchBudget {
  int cycle_rounds = 10;
  int bfs_length = 6;
  int weight_cap = 100000;
};

enum class SearchStage { None, Identity, Cycle, Bfs };

/// Outcome of a condition check. The conditions quantify over an infinite
/// group, so the checker either certifies them with a reduced witness word
/// or reports that the budget ran out; it never claims failure.
struct Verdict {
  bool holds = false;
  ReducedWord witness;
  SearchStage stage = SearchStage::None;
};

/// Searches for a word w with w(la) not below the dual action of w on mu:
/// the identity first, then cycles over every residue and length, then all
/// reduced words breadth first. Requires la singular, mu cosingular, same
/// block.
Verdict check_C(const Multipartition& la, const Multipartition& mu, const Multicharge& ctx,
                const SearchBudget& budget = {});

/// The stronger condition: a single word whose companions of w(la) all
/// avoid sitting below the dual image of mu, and whose images of every
/// singular element of the block do as well.
Verdict check_Ctilde(const Multipartition& la, const Multipartition& mu, const Multicharge& ctx,
                     const SearchBudget& budget = {});

/// One pair of the level-two campaign over multipartitions supported on
/// the second component.
struct Level2Pair {
  Multipartition la, mu;
  /// Mirrored through the duality so the distinguished row of the
  /// cosingular side sits strictly below that of the singular side.
  bool daggered = false;
  /// Both sides carry a distinguished box: the singular side's component
  /// has a lone surviving '-' and the cosingular side's has one in the
  /// dual sense. The remaining shapes go straight to the generic search.
  bool main_case = false;
  /// Negative row gap: the identity is already a witness.
  bool short_circuit = false;
  /// Contents of the deepest addable boxes driving the cycle witness;
  /// when daggered, these and the word live in the mirrored coordinates.
  int a = 0;
  int b = 0;
  ReducedWord word;
  bool prescribed_ok = false;
  Verdict fallback;
};

struct Level2Report {
  std::vector<Level2Pair> pairs;
  long long main_pairs = 0;
  long long prescribed_ok = 0;
  long long fallbacks_in_main = 0;
  bool all_hold = true;
};

/// Runs the guided campaign over every singular/cosingular same-block pair
/// supported on the second component, weights up to max_weight: computes
/// the cycle witness from the distinguished rows (flipping through the
/// duality when they are ordered the wrong way), verifies it from scratch,
/// and falls back to the generic search when the prescription fails or the
/// pair is degenerate.
Level2Report check_level2_Lambda0(const Multicharge& ctx, int max_weight,
                                  const SearchBudget& budget = {});

}  // namespace fock
