#include "fock/weyl.hpp"

#include <algorithm>
#include <stdexcept>

#include "fock/crystal.hpp"

namespace fock {

namespace {

int norm_res(int x, int e) { return ((x % e) + e) % e; }

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

// Window of the product in the affine symmetric group: entry x holds the
// image of x under the product, extended by w(x + e) = w(x) + e. The letter
// i acts on values, swapping the classes i and i+1 mod e.
std::vector<long long> window_of(const ReducedWord& w, int e) {
  std::vector<long long> win(static_cast<std::size_t>(e));
  for (int x = 1; x <= e; ++x) win[static_cast<std::size_t>(x) - 1] = x;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    int i = norm_res(*it, e);
    int j = norm_res(i + 1, e);
    for (long long& v : win) {
      int r = norm_res(static_cast<int>(((v % e) + e) % e), e);
      if (r == i)
        ++v;
      else if (r == j)
        --v;
    }
  }
  return win;
}

}  // namespace

ReducedWord cycle(int j, int n, int e) {
  if (e < 2) throw std::invalid_argument("cycle: e must be at least 2");
  if (n < 0) throw std::invalid_argument("cycle: n must be non-negative");
  ReducedWord w;
  for (int k = j - n + 1; k <= j; ++k) w.letters.push_back(norm_res(k, e));
  return w;
}

long long affine_length(const ReducedWord& w, int e) {
  if (e < 2) throw std::invalid_argument("affine_length: e must be at least 2");
  std::vector<long long> win = window_of(w, e);
  long long len = 0;
  for (int x = 0; x < e; ++x)
    for (int y = x + 1; y < e; ++y)
      len += std::llabs(floor_div(win[static_cast<std::size_t>(y)] -
                                      win[static_cast<std::size_t>(x)],
                                  e));
  return len;
}

bool is_reduced(const ReducedWord& w, int e) {
  return affine_length(w, e) == static_cast<long long>(w.letters.size());
}

std::optional<Multipartition> sigma(const Multipartition& mp, int res, const Multicharge& ctx) {
  if (h_minus(mp, res, ctx) != 0) return std::nullopt;
  int reps = h_plus(mp, res, ctx);
  Multipartition cur = mp;
  for (int t = 0; t < reps; ++t) {
    auto up = f_tilde(cur, res, ctx);
    if (!up) throw std::logic_error("sigma: raising operator vanished before the string top");
    cur = *up;
  }
  return cur;
}

std::optional<Multipartition> sigma_dual(const Multipartition& mp, int res,
                                         const Multicharge& ctx) {
  if (h_minus_star(mp, res, ctx) != 0) return std::nullopt;
  int reps = h_plus_star(mp, res, ctx);
  Multipartition cur = mp;
  for (int t = 0; t < reps; ++t) {
    auto up = f_tilde_star(cur, res, ctx);
    if (!up) throw std::logic_error("sigma_dual: raising operator vanished before the string top");
    cur = *up;
  }
  return cur;
}

std::optional<Multipartition> apply_word(const ReducedWord& w, const Multipartition& mp,
                                         const Multicharge& ctx, const ApplyOptions& opts) {
  ensure_level(mp, ctx);
  Multipartition cur = mp;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    auto next = opts.dual ? sigma_dual(cur, *it, ctx) : sigma(cur, *it, ctx);
    if (!next) {
      if (opts.require_defined)
        throw std::runtime_error("apply_word: reflection undefined part-way through the word");
      return std::nullopt;
    }
    cur = *next;
    if (cur.weight() > opts.max_weight)
      throw std::runtime_error("apply_word: intermediate weight exceeds the cap");
  }
  return cur;
}

Partition nu_n(int n, int e) {
  if (e < 2) throw std::invalid_argument("nu_n: e must be at least 2");
  if (n < 0) throw std::invalid_argument("nu_n: n must be non-negative");
  std::vector<int> cols;
  for (int v = n; v > 0; v -= e - 1) cols.push_back(v);
  return Partition(std::move(cols)).transpose();
}

namespace {

Multipartition rowwise_sum(const Multipartition& la, const Partition& p) {
  int rows = std::max(la.comp(1).rows(), p.rows());
  std::vector<int> parts;
  for (int r = 1; r <= rows; ++r) parts.push_back(la.comp(1).part(r) + p.part(r));
  return Multipartition({Partition(std::move(parts))});
}

}  // namespace

Multipartition cycle_closed_form(const Multipartition& la, int n, const Multicharge& ctx) {
  ensure_level(la, ctx);
  if (ctx.ell() != 1)
    throw std::invalid_argument("cycle_closed_form: level one only");
  return rowwise_sum(la, nu_n(n, ctx.e));
}

Multipartition cycle_closed_form_dual(const Multipartition& mu, int n, const Multicharge& ctx) {
  ensure_level(mu, ctx);
  if (ctx.ell() != 1)
    throw std::invalid_argument("cycle_closed_form_dual: level one only");
  Multipartition t({mu.comp(1).transpose()});
  return Multipartition({rowwise_sum(t, nu_n(n, ctx.e).transpose()).comp(1).transpose()});
}

Multipartition special_nu(const Multicharge& ctx) {
  if (ctx.e != 2) throw std::invalid_argument("special_nu: defined for e = 2 only");
  int a = 1;
  for (int c = 2; c <= ctx.ell(); ++c)
    if (ctx.charge(c) < ctx.charge(a)) a = c;
  int b = 0;
  for (int c = 1; c < a; ++c)
    if (ctx.charge(c) == ctx.charge(a) + 1) {
      b = c;
      break;
    }
  std::vector<Partition> comps(static_cast<std::size_t>(ctx.ell()));
  if (b != 0) {
    comps[static_cast<std::size_t>(a) - 1] = Partition({1});
    comps[static_cast<std::size_t>(b) - 1] = Partition({1});
  } else {
    comps[static_cast<std::size_t>(a) - 1] = Partition({2});
  }
  Multipartition nu(std::move(comps));
  if (!is_singular(nu, ctx)) throw std::logic_error("special_nu: output is not singular");
  return nu;
}

bool par1_membership(const Multipartition& mp, const Multicharge& ctx) {
  Multipartition src = crystal_source(mp, ctx);
  if (src.weight() <= 1) return true;
  return ctx.e == 2 && src == special_nu(ctx);
}

}  // namespace fock
