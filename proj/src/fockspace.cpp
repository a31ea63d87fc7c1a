#include "fock/fockspace.hpp"

namespace fock {

long long FockVector::coeff(const Multipartition& mp) const {
  auto it = terms_.find(mp);
  return it == terms_.end() ? 0 : it->second;
}

FockVector& FockVector::add(const Multipartition& mp, long long c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(mp, 0);
  it->second += c;
  if (it->second == 0) terms_.erase(it);
  return *this;
}

FockVector& FockVector::operator+=(const FockVector& rhs) {
  for (const auto& [mp, c] : rhs.terms_) add(mp, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& rhs) {
  for (const auto& [mp, c] : rhs.terms_) add(mp, -c);
  return *this;
}

FockVector& FockVector::operator*=(long long c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mp, v] : terms_) v *= c;
  return *this;
}

FockVector f_op(int res, const FockVector& v, const Multicharge& ctx) {
  FockVector out;
  for (const auto& [mp, c] : v.terms()) {
    ensure_level(mp, ctx);
    for (const Box& b : addable_boxes(mp, res, ctx)) out.add(add_box(mp, b), c);
  }
  return out;
}

FockVector e_op(int res, const FockVector& v, const Multicharge& ctx) {
  FockVector out;
  for (const auto& [mp, c] : v.terms()) {
    ensure_level(mp, ctx);
    for (const Box& b : removable_boxes(mp, res, ctx)) out.add(remove_box(mp, b), c);
  }
  return out;
}

TruncatedVector f_op_capped(int res, const FockVector& v, const Multicharge& ctx,
                            int max_weight) {
  TruncatedVector r;
  for (const auto& [mp, c] : v.terms()) {
    ensure_level(mp, ctx);
    if (mp.weight() + 1 > max_weight && !addable_boxes(mp, res, ctx).empty()) {
      r.clipped = true;
      continue;
    }
    for (const Box& b : addable_boxes(mp, res, ctx)) r.vec.add(add_box(mp, b), c);
  }
  return r;
}

int h_eigenvalue(const Multipartition& mp, int res, const Multicharge& ctx) {
  ensure_level(mp, ctx);
  return static_cast<int>(addable_boxes(mp, res, ctx).size()) -
         static_cast<int>(removable_boxes(mp, res, ctx).size());
}

}  // namespace fock
