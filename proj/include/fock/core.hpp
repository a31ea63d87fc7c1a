#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fock {

/// Context shared by every ordering in the library: the modulus e > 1 and
/// the integer multicharge (s_1, ..., s_l).
struct Multicharge {
  int e = 2;
  std::vector<int> s{0};

  Multicharge() = default;
  Multicharge(int e_, std::vector<int> s_) : e(e_), s(std::move(s_)) {
    if (e < 2) throw std::invalid_argument("Multicharge: e must be > 1");
    if (s.empty()) throw std::invalid_argument("Multicharge: level must be >= 1");
  }

  int ell() const { return static_cast<int>(s.size()); }

  /// Charge of component `comp`, 1-based.
  int charge(int comp) const { return s.at(static_cast<std::size_t>(comp) - 1); }

  /// Residue of a content value, normalized into [0, e).
  int residue_of(long long cont) const {
    long long r = cont % e;
    return static_cast<int>(r < 0 ? r + e : r);
  }

  bool operator==(const Multicharge&) const = default;
};

/// Integer partition in canonical form: weakly decreasing positive parts,
/// the empty sequence for the empty partition.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (parts_[k] < 1) throw std::invalid_argument("Partition: parts must be positive");
      if (k + 1 < parts_.size() && parts_[k] < parts_[k + 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  int rows() const { return static_cast<int>(parts_.size()); }

  /// Length of row `row` (1-based); 0 past the last row.
  int part(int row) const {
    return (row >= 1 && row <= rows()) ? parts_[static_cast<std::size_t>(row) - 1] : 0;
  }

  int weight() const;
  Partition transpose() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

class Multipartition {
 public:
  Multipartition() = default;
  explicit Multipartition(std::vector<Partition> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw std::invalid_argument("Multipartition: needs at least one component");
  }

  static Multipartition empty(int ell) {
    return Multipartition(std::vector<Partition>(static_cast<std::size_t>(ell)));
  }

  const std::vector<Partition>& components() const { return components_; }
  int level() const { return static_cast<int>(components_.size()); }

  /// Component `comp`, 1-based.
  const Partition& comp(int c) const {
    return components_.at(static_cast<std::size_t>(c) - 1);
  }

  int weight() const;
  bool empty() const { return weight() == 0; }

  auto operator<=>(const Multipartition&) const = default;

 private:
  std::vector<Partition> components_;
};

/// A cell of a multipartition: row, column (both 1-based) and component.
struct Box {
  int row = 1;
  int col = 1;
  int comp = 1;
  auto operator<=>(const Box&) const = default;
};

inline int content(const Box& b, const Multicharge& ctx) {
  return b.col - b.row + ctx.charge(b.comp);
}
inline int residue(const Box& b, const Multicharge& ctx) {
  return ctx.residue_of(content(b, ctx));
}

void ensure_level(const Multipartition& mp, const Multicharge& ctx);

/// All boxes of the diagram, one per cell.
std::vector<Box> boxes(const Multipartition& mp);

/// Box preorder: true iff cont(c) - cont(b) is a strictly positive multiple
/// of e, or the contents agree and comp(b) >= comp(c); at equal content the
/// box in the later component is the smaller one. Boxes with identical
/// (content, component) compare as order-equivalent.
bool box_leq(const Box& b, const Box& c, const Multicharge& ctx);

/// lambda <= mu: equal weight and a perfect box matching with b_i <= b'_i.
/// Per residue class the box preorder is total, so sorted pairwise
/// comparison decides; see the matching oracle in the tests.
bool mp_preceq(const Multipartition& a, const Multipartition& b, const Multicharge& ctx);
bool mp_lt(const Multipartition& a, const Multipartition& b, const Multicharge& ctx);

/// The order reversing involution: transposed components in reverse order,
/// multicharge (-s_l, ..., -s_1).
std::pair<Multipartition, Multicharge> dagger(const Multipartition& mp,
                                              const Multicharge& ctx);
Multicharge dagger_charge(const Multicharge& ctx);
Box dagger_box(const Box& b, int ell);

bool has_box(const Multipartition& mp, const Box& b);
bool is_addable(const Multipartition& mp, const Box& b);
bool is_removable(const Multipartition& mp, const Box& b);
Multipartition add_box(const Multipartition& mp, const Box& b);
Multipartition remove_box(const Multipartition& mp, const Box& b);

std::vector<Box> addable_boxes(const Multipartition& mp);
std::vector<Box> removable_boxes(const Multipartition& mp);
std::vector<Box> addable_boxes(const Multipartition& mp, int res, const Multicharge& ctx);
std::vector<Box> removable_boxes(const Multipartition& mp, int res, const Multicharge& ctx);

std::vector<Partition> partitions_of(int n);
std::vector<Multipartition> multipartitions_of(int n, int ell);
std::vector<Multipartition> multipartitions_up_to(int max_weight, int ell);

/// Bracket-free rendering: parts joined by '.', components by '|'.
std::string compact_label(const Multipartition& mp);

}  // namespace fock
