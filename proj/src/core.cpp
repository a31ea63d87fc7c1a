#include "fock/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fock {

int Partition::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::transpose() const {
  if (parts_.empty()) return Partition();
  std::vector<int> t(static_cast<std::size_t>(parts_[0]), 0);
  for (int p : parts_)
    for (int y = 0; y < p; ++y) ++t[static_cast<std::size_t>(y)];
  return Partition(std::move(t));
}

int Multipartition::weight() const {
  int w = 0;
  for (const Partition& p : components_) w += p.weight();
  return w;
}

void ensure_level(const Multipartition& mp, const Multicharge& ctx) {
  if (mp.level() != ctx.ell())
    throw std::invalid_argument("multipartition level does not match multicharge");
}

std::vector<Box> boxes(const Multipartition& mp) {
  std::vector<Box> out;
  for (int c = 1; c <= mp.level(); ++c) {
    const Partition& p = mp.comp(c);
    for (int x = 1; x <= p.rows(); ++x)
      for (int y = 1; y <= p.part(x); ++y) out.push_back(Box{x, y, c});
  }
  return out;
}

bool box_leq(const Box& b, const Box& c, const Multicharge& ctx) {
  int d = content(c, ctx) - content(b, ctx);
  if (d != 0) return d > 0 && d % ctx.e == 0;
  return b.comp >= c.comp;
}

bool mp_preceq(const Multipartition& a, const Multipartition& b, const Multicharge& ctx) {
  ensure_level(a, ctx);
  ensure_level(b, ctx);
  if (a.weight() != b.weight()) return false;
  // Per residue class: equal cardinality and sorted pairwise domination in
  // the (content, -component) key, which realizes the box preorder there.
  std::map<int, std::vector<std::pair<int, int>>> ka, kb;
  for (const Box& x : boxes(a)) ka[residue(x, ctx)].push_back({content(x, ctx), -x.comp});
  for (const Box& x : boxes(b)) kb[residue(x, ctx)].push_back({content(x, ctx), -x.comp});
  if (ka.size() != kb.size()) return false;
  for (auto& [res, va] : ka) {
    auto it = kb.find(res);
    if (it == kb.end() || it->second.size() != va.size()) return false;
    auto& vb = it->second;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    for (std::size_t k = 0; k < va.size(); ++k)
      if (va[k] > vb[k]) return false;
  }
  return true;
}

bool mp_lt(const Multipartition& a, const Multipartition& b, const Multicharge& ctx) {
  return a != b && mp_preceq(a, b, ctx);
}

Multicharge dagger_charge(const Multicharge& ctx) {
  std::vector<int> t(ctx.s.rbegin(), ctx.s.rend());
  for (int& v : t) v = -v;
  return Multicharge(ctx.e, std::move(t));
}

std::pair<Multipartition, Multicharge> dagger(const Multipartition& mp,
                                              const Multicharge& ctx) {
  ensure_level(mp, ctx);
  std::vector<Partition> comps;
  for (int c = mp.level(); c >= 1; --c) comps.push_back(mp.comp(c).transpose());
  return {Multipartition(std::move(comps)), dagger_charge(ctx)};
}

Box dagger_box(const Box& b, int ell) { return Box{b.col, b.row, ell + 1 - b.comp}; }

bool has_box(const Multipartition& mp, const Box& b) {
  if (b.comp < 1 || b.comp > mp.level() || b.row < 1 || b.col < 1) return false;
  return mp.comp(b.comp).part(b.row) >= b.col;
}

bool is_addable(const Multipartition& mp, const Box& b) {
  if (b.comp < 1 || b.comp > mp.level() || b.row < 1 || b.col < 1) return false;
  const Partition& p = mp.comp(b.comp);
  if (p.part(b.row) + 1 != b.col) return false;
  return b.row == 1 || p.part(b.row - 1) >= b.col;
}

bool is_removable(const Multipartition& mp, const Box& b) {
  if (!has_box(mp, b)) return false;
  const Partition& p = mp.comp(b.comp);
  return p.part(b.row) == b.col && p.part(b.row + 1) < b.col;
}

Multipartition add_box(const Multipartition& mp, const Box& b) {
  if (!is_addable(mp, b)) throw std::invalid_argument("add_box: box is not addable");
  std::vector<Partition> comps = mp.components();
  std::vector<int> parts = comps[static_cast<std::size_t>(b.comp) - 1].parts();
  if (b.row > static_cast<int>(parts.size()))
    parts.push_back(1);
  else
    ++parts[static_cast<std::size_t>(b.row) - 1];
  comps[static_cast<std::size_t>(b.comp) - 1] = Partition(std::move(parts));
  return Multipartition(std::move(comps));
}

Multipartition remove_box(const Multipartition& mp, const Box& b) {
  if (!is_removable(mp, b)) throw std::invalid_argument("remove_box: box is not removable");
  std::vector<Partition> comps = mp.components();
  std::vector<int> parts = comps[static_cast<std::size_t>(b.comp) - 1].parts();
  if (--parts[static_cast<std::size_t>(b.row) - 1] == 0) parts.pop_back();
  comps[static_cast<std::size_t>(b.comp) - 1] = Partition(std::move(parts));
  return Multipartition(std::move(comps));
}

std::vector<Box> addable_boxes(const Multipartition& mp) {
  std::vector<Box> out;
  for (int c = 1; c <= mp.level(); ++c) {
    const Partition& p = mp.comp(c);
    for (int x = 1; x <= p.rows() + 1; ++x)
      if (x == 1 || p.part(x - 1) > p.part(x)) out.push_back(Box{x, p.part(x) + 1, c});
  }
  return out;
}

std::vector<Box> removable_boxes(const Multipartition& mp) {
  std::vector<Box> out;
  for (int c = 1; c <= mp.level(); ++c) {
    const Partition& p = mp.comp(c);
    for (int x = 1; x <= p.rows(); ++x)
      if (p.part(x) > p.part(x + 1)) out.push_back(Box{x, p.part(x), c});
  }
  return out;
}

namespace {
std::vector<Box> filter_residue(std::vector<Box> v, int res, const Multicharge& ctx) {
  std::vector<Box> out;
  for (const Box& b : v)
    if (residue(b, ctx) == ctx.residue_of(res)) out.push_back(b);
  return out;
}
}  // namespace

std::vector<Box> addable_boxes(const Multipartition& mp, int res, const Multicharge& ctx) {
  return filter_residue(addable_boxes(mp), res, ctx);
}
std::vector<Box> removable_boxes(const Multipartition& mp, int res, const Multicharge& ctx) {
  return filter_residue(removable_boxes(mp), res, ctx);
}

namespace {
void gen_partitions(int n, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n, cur, out);
  return out;
}

namespace {
void gen_multi(int n, int comp_index, int ell, std::vector<Partition>& cur,
               std::vector<Multipartition>& out) {
  if (comp_index == ell) {
    out.push_back(Multipartition(cur));
    return;
  }
  int lo = (comp_index + 1 == ell) ? n : 0;
  for (int k = lo; k <= n; ++k)
    for (Partition& p : partitions_of(k)) {
      cur.push_back(p);
      gen_multi(n - k, comp_index + 1, ell, cur, out);
      cur.pop_back();
    }
}
}  // namespace

std::vector<Multipartition> multipartitions_of(int n, int ell) {
  if (ell < 1) throw std::invalid_argument("multipartitions_of: level must be >= 1");
  std::vector<Multipartition> out;
  std::vector<Partition> cur;
  gen_multi(n, 0, ell, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Multipartition> multipartitions_up_to(int max_weight, int ell) {
  std::vector<Multipartition> out;
  for (int n = 0; n <= max_weight; ++n)
    for (Multipartition& mp : multipartitions_of(n, ell)) out.push_back(std::move(mp));
  return out;
}

std::string compact_label(const Multipartition& mp) {
  std::string out;
  for (int c = 1; c <= mp.level(); ++c) {
    if (c > 1) out += '|';
    const std::vector<int>& parts = mp.comp(c).parts();
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k > 0) out += '.';
      out += std::to_string(parts[k]);
    }
  }
  return out;
}

}  // namespace fock
