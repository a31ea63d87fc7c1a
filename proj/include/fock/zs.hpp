#pragma once

#include <optional>
#include <vector>

#include "fock/core.hpp"

namespace fock {

/// Element of Z^s: m = s_1 + ... + s_l integers, strictly decreasing inside
/// each block of length s_i.
struct ZsElement {
  std::vector<int> a;
  bool operator==(const ZsElement&) const = default;
  auto operator<=>(const ZsElement&) const = default;
};

/// l-tuple of virtual Young diagrams: component i lists the right ends of
/// its s_i rows relative to column 0, weakly decreasing, negatives allowed.
struct VirtualMultipartition {
  std::vector<std::vector<int>> rows;
  bool operator==(const VirtualMultipartition&) const = default;
};

/// Real affine root eps_i - eps_j + n * delta (1-based positions).
struct AffineRoot {
  int i = 1;
  int j = 2;
  int n = 0;
  bool operator==(const AffineRoot&) const = default;
};

/// Weight written on the basis (eps_1..eps_m, omega_0, delta). The delta
/// coefficient has denominator dividing 2e and is stored as an integer
/// numerator over 2e; everything stays exact.
struct WeightVector {
  std::vector<long long> eps;
  long long w0 = 0;
  long long delta_times_2e = 0;
  bool operator==(const WeightVector&) const = default;
};

int zs_length(const Multicharge& ctx);
void ensure_zs(const ZsElement& A, const Multicharge& ctx);

/// Validated constructor: checks length and strict decrease per block.
ZsElement make_zs(std::vector<int> entries, const Multicharge& ctx);

/// The base point: block i is (s_i, s_i - 1, ..., 1). Requires s_i >= 1.
ZsElement a_empty(const Multicharge& ctx);

/// Mutually inverse bijection between Z^s and virtual multipartitions,
/// subtracting or adding the base point offsets s_i - x + 1.
VirtualMultipartition to_virtual(const ZsElement& A, const Multicharge& ctx);
ZsElement from_virtual(const VirtualMultipartition& V, const Multicharge& ctx);

/// sigma_beta for beta = eps_i - eps_j + n delta: positions i and j become
/// a_j + e n and a_i - e n, everything else is fixed.
std::vector<int> reflect(const std::vector<int>& a, const AffineRoot& beta, int e);

/// Block-wise strictly decreasing rearrangement, or absent when a block
/// holds two equal entries.
std::optional<ZsElement> plus_sort(const std::vector<int>& a, const Multicharge& ctx);

/// sum a_k eps_k - e omega_0 + (sum a_k^2)/(2e) delta.
WeightVector weight_of(const ZsElement& A, const Multicharge& ctx);

/// Coordinates of weight_of(A) - weight_of(B) on the simple roots
/// alpha_k = eps_k - eps_{k+1} (k = 1..m-1) and alpha_0 = eps_m - eps_1 + delta,
/// returned as (c_1, ..., c_{m-1}, c_0). Absent when the difference is not
/// an integral combination.
std::optional<std::vector<long long>> simple_root_coordinates(const ZsElement& A,
                                                              const ZsElement& B,
                                                              const Multicharge& ctx);

/// Positive real roots with delta coefficient at most max_n:
/// n >= 0 when i < j and n >= 1 when i > j.
std::vector<AffineRoot> positive_roots(int m, int max_n);

/// One strictly lowering reflection: (sigma_beta A)+ when that element exists
/// and sits below A, i.e. the weight difference decomposes on the simple
/// roots with coefficients >= 0, integral and not all zero.
std::optional<ZsElement> descent_step(const ZsElement& A, const AffineRoot& beta,
                                      const Multicharge& ctx);

/// Search bounds for linkage_lt. max_abs_n = 0 picks
/// (spread of A)/e + 1 automatically.
struct LinkageWindow {
  int max_chain_length = 8;
  int max_abs_n = 0;
};

/// True iff a chain of descent steps inside the window leads from hi down
/// to lo. Strict: linkage_lt(A, A) is false.
bool linkage_lt(const ZsElement& lo, const ZsElement& hi, const Multicharge& ctx,
                LinkageWindow window = {});

/// Image of a multipartition with |mp| <= n < min s_i: block i holds
/// mp^{(i)}_x + s_i - x + 1 for x = 1..s_i, so positive columns match the
/// diagram and columns <= 0 are full.
ZsElement truncation_embed(const Multipartition& mp, const Multicharge& ctx, int n);

/// Order on virtual multipartitions of the same shape: the two finite sets
/// of cells where they differ must match per residue class like mp_preceq.
bool virtual_preceq(const VirtualMultipartition& V, const VirtualMultipartition& W,
                    const Multicharge& ctx);

/// Sorted residues of the entries, an invariant of descent chains.
std::vector<int> residue_multiset(const ZsElement& A, int e);

}  // namespace fock
