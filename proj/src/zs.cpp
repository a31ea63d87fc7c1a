#include "fock/zs.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fock {

int zs_length(const Multicharge& ctx) {
  int m = 0;
  for (int si : ctx.s) {
    if (si < 0) throw std::invalid_argument("zs_length: block sizes must be >= 0");
    m += si;
  }
  return m;
}

void ensure_zs(const ZsElement& A, const Multicharge& ctx) {
  if (static_cast<int>(A.a.size()) != zs_length(ctx))
    throw std::invalid_argument("ZsElement: length must equal s_1 + ... + s_l");
  std::size_t off = 0;
  for (int si : ctx.s) {
    for (int x = 1; x < si; ++x)
      if (A.a[off + static_cast<std::size_t>(x) - 1] <= A.a[off + static_cast<std::size_t>(x)])
        throw std::invalid_argument("ZsElement: blocks must decrease strictly");
    off += static_cast<std::size_t>(si);
  }
}

ZsElement make_zs(std::vector<int> entries, const Multicharge& ctx) {
  ZsElement A{std::move(entries)};
  ensure_zs(A, ctx);
  return A;
}

ZsElement a_empty(const Multicharge& ctx) {
  ZsElement A;
  for (int si : ctx.s) {
    if (si < 1) throw std::invalid_argument("a_empty: every s_i must be >= 1");
    for (int x = si; x >= 1; --x) A.a.push_back(x);
  }
  return A;
}

VirtualMultipartition to_virtual(const ZsElement& A, const Multicharge& ctx) {
  ensure_zs(A, ctx);
  VirtualMultipartition V;
  std::size_t off = 0;
  for (int si : ctx.s) {
    std::vector<int> rows(static_cast<std::size_t>(si));
    for (int x = 1; x <= si; ++x)
      rows[static_cast<std::size_t>(x) - 1] =
          A.a[off + static_cast<std::size_t>(x) - 1] - (si - x + 1);
    V.rows.push_back(std::move(rows));
    off += static_cast<std::size_t>(si);
  }
  return V;
}

namespace {
void ensure_virtual(const VirtualMultipartition& V, const Multicharge& ctx) {
  if (static_cast<int>(V.rows.size()) != ctx.ell())
    throw std::invalid_argument("VirtualMultipartition: wrong number of components");
  for (int i = 1; i <= ctx.ell(); ++i) {
    const auto& rows = V.rows[static_cast<std::size_t>(i) - 1];
    if (static_cast<int>(rows.size()) != ctx.charge(i))
      throw std::invalid_argument("VirtualMultipartition: component must have s_i rows");
    for (std::size_t x = 0; x + 1 < rows.size(); ++x)
      if (rows[x] < rows[x + 1])
        throw std::invalid_argument("VirtualMultipartition: rows must decrease weakly");
  }
}
}  // namespace

ZsElement from_virtual(const VirtualMultipartition& V, const Multicharge& ctx) {
  ensure_virtual(V, ctx);
  ZsElement A;
  for (int i = 1; i <= ctx.ell(); ++i) {
    int si = ctx.charge(i);
    for (int x = 1; x <= si; ++x)
      A.a.push_back(V.rows[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(x) - 1] +
                    (si - x + 1));
  }
  ensure_zs(A, ctx);
  return A;
}

std::vector<int> reflect(const std::vector<int>& a, const AffineRoot& beta, int e) {
  int m = static_cast<int>(a.size());
  if (beta.i < 1 || beta.i > m || beta.j < 1 || beta.j > m || beta.i == beta.j)
    throw std::invalid_argument("reflect: root positions out of range");
  std::vector<int> out = a;
  out[static_cast<std::size_t>(beta.i) - 1] =
      a[static_cast<std::size_t>(beta.j) - 1] + e * beta.n;
  out[static_cast<std::size_t>(beta.j) - 1] =
      a[static_cast<std::size_t>(beta.i) - 1] - e * beta.n;
  return out;
}

std::optional<ZsElement> plus_sort(const std::vector<int>& a, const Multicharge& ctx) {
  ZsElement out{a};
  if (static_cast<int>(a.size()) != zs_length(ctx))
    throw std::invalid_argument("plus_sort: length must equal s_1 + ... + s_l");
  std::size_t off = 0;
  for (int si : ctx.s) {
    auto first = out.a.begin() + static_cast<std::ptrdiff_t>(off);
    auto last = first + si;
    std::sort(first, last, std::greater<int>());
    for (auto it = first; it + 1 < last; ++it)
      if (*it == *(it + 1)) return std::nullopt;
    off += static_cast<std::size_t>(si);
  }
  return out;
}

WeightVector weight_of(const ZsElement& A, const Multicharge& ctx) {
  ensure_zs(A, ctx);
  WeightVector w;
  w.w0 = -ctx.e;
  for (int v : A.a) {
    w.eps.push_back(v);
    w.delta_times_2e += static_cast<long long>(v) * v;
  }
  return w;
}

std::optional<std::vector<long long>> simple_root_coordinates(const ZsElement& A,
                                                              const ZsElement& B,
                                                              const Multicharge& ctx) {
  if (A.a.size() != B.a.size())
    throw std::invalid_argument("simple_root_coordinates: length mismatch");
  int m = static_cast<int>(A.a.size());
  long long sq = 0;
  for (int v : A.a) sq += static_cast<long long>(v) * v;
  for (int v : B.a) sq -= static_cast<long long>(v) * v;
  long long denom = 2LL * ctx.e;
  if (sq % denom != 0) return std::nullopt;
  long long c0 = sq / denom;
  std::vector<long long> v(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k)
    v[static_cast<std::size_t>(k)] =
        static_cast<long long>(A.a[static_cast<std::size_t>(k)]) -
        B.a[static_cast<std::size_t>(k)];
  if (m == 1) {
    if (v[0] != 0) return std::nullopt;
    return std::vector<long long>{c0};
  }
  std::vector<long long> c(static_cast<std::size_t>(m));
  c[0] = v[0] + c0;
  for (int k = 1; k + 1 < m; ++k)
    c[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] +
                                     c[static_cast<std::size_t>(k) - 1];
  if (v[static_cast<std::size_t>(m) - 1] != c0 - c[static_cast<std::size_t>(m) - 2])
    return std::nullopt;
  c[static_cast<std::size_t>(m) - 1] = c0;
  return c;
}

std::vector<AffineRoot> positive_roots(int m, int max_n) {
  std::vector<AffineRoot> out;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      if (i == j) continue;
      for (int n = (i < j) ? 0 : 1; n <= max_n; ++n) out.push_back(AffineRoot{i, j, n});
    }
  return out;
}

std::optional<ZsElement> descent_step(const ZsElement& A, const AffineRoot& beta,
                                      const Multicharge& ctx) {
  ensure_zs(A, ctx);
  int m = static_cast<int>(A.a.size());
  if (beta.i < 1 || beta.i > m || beta.j < 1 || beta.j > m || beta.i == beta.j)
    throw std::invalid_argument("descent_step: root positions out of range");
  if (beta.n < (beta.i < beta.j ? 0 : 1))
    throw std::invalid_argument("descent_step: root is not positive");
  long long t = static_cast<long long>(A.a[static_cast<std::size_t>(beta.i) - 1]) -
                A.a[static_cast<std::size_t>(beta.j) - 1] -
                static_cast<long long>(beta.n) * ctx.e;
  if (t <= 0) return std::nullopt;
  auto sorted = plus_sort(reflect(A.a, beta, ctx.e), ctx);
  if (!sorted || *sorted == A) return std::nullopt;
  auto c = simple_root_coordinates(A, *sorted, ctx);
  if (!c) return std::nullopt;
  bool nonzero = false;
  for (long long x : *c) {
    if (x < 0) return std::nullopt;
    if (x > 0) nonzero = true;
  }
  if (!nonzero) return std::nullopt;
  return sorted;
}

std::vector<int> residue_multiset(const ZsElement& A, int e) {
  std::vector<int> out;
  for (int v : A.a) {
    int r = v % e;
    out.push_back(r < 0 ? r + e : r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool linkage_lt(const ZsElement& lo, const ZsElement& hi, const Multicharge& ctx,
                LinkageWindow window) {
  ensure_zs(lo, ctx);
  ensure_zs(hi, ctx);
  if (lo == hi || lo.a.size() < 2) return false;
  if (residue_multiset(lo, ctx.e) != residue_multiset(hi, ctx.e)) return false;
  long long sum_lo = 0, sum_hi = 0, sq_lo = 0;
  for (int v : lo.a) {
    sum_lo += v;
    sq_lo += static_cast<long long>(v) * v;
  }
  for (int v : hi.a) sum_hi += v;
  if (sum_lo != sum_hi) return false;

  int max_n = window.max_abs_n;
  if (max_n <= 0) {
    auto [mn, mx] = std::minmax_element(hi.a.begin(), hi.a.end());
    max_n = (*mx - *mn) / ctx.e + 1;
  }
  auto roots = positive_roots(static_cast<int>(hi.a.size()), max_n);

  std::set<std::vector<int>> visited{hi.a};
  std::vector<ZsElement> frontier{hi};
  for (int depth = 0; depth < window.max_chain_length && !frontier.empty(); ++depth) {
    std::vector<ZsElement> next;
    for (const ZsElement& cur : frontier)
      for (const AffineRoot& beta : roots) {
        auto down = descent_step(cur, beta, ctx);
        if (!down) continue;
        if (*down == lo) return true;
        long long sq = 0;
        for (int v : down->a) sq += static_cast<long long>(v) * v;
        if (sq < sq_lo) continue;  // squares only shrink along descents
        if (visited.insert(down->a).second) next.push_back(std::move(*down));
      }
    frontier = std::move(next);
  }
  return false;
}

ZsElement truncation_embed(const Multipartition& mp, const Multicharge& ctx, int n) {
  ensure_level(mp, ctx);
  if (mp.weight() > n) throw std::invalid_argument("truncation_embed: |mp| exceeds n");
  for (int si : ctx.s)
    if (n >= si)
      throw std::invalid_argument("truncation_embed: needs n < s_i for every i");
  ZsElement A;
  for (int i = 1; i <= ctx.ell(); ++i) {
    int si = ctx.charge(i);
    for (int x = 1; x <= si; ++x) A.a.push_back(mp.comp(i).part(x) + si - x + 1);
  }
  ensure_zs(A, ctx);
  return A;
}

bool virtual_preceq(const VirtualMultipartition& V, const VirtualMultipartition& W,
                    const Multicharge& ctx) {
  ensure_virtual(V, ctx);
  ensure_virtual(W, ctx);
  // Cells owned by exactly one side, keyed like mp_preceq.
  std::map<int, std::vector<std::pair<int, int>>> only_v, only_w;
  for (int i = 1; i <= ctx.ell(); ++i) {
    int si = ctx.charge(i);
    for (int x = 1; x <= si; ++x) {
      int rv = V.rows[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(x) - 1];
      int rw = W.rows[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(x) - 1];
      for (int y = std::min(rv, rw) + 1; y <= std::max(rv, rw); ++y) {
        int cont = y - x + si;
        (rv > rw ? only_v : only_w)[ctx.residue_of(cont)].push_back({cont, -i});
      }
    }
  }
  if (only_v.size() != only_w.size()) return false;
  for (auto& [res, xs] : only_v) {
    auto it = only_w.find(res);
    if (it == only_w.end() || it->second.size() != xs.size()) return false;
    auto& ys = it->second;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (xs[k] > ys[k]) return false;
  }
  return true;
}

}  // namespace fock
