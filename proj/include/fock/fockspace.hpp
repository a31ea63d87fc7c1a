#pragma once

#include <map>

#include "fock/core.hpp"

namespace fock {

/// Finitely supported integer combination of multipartition basis symbols.
/// Zero coefficients are never stored, so equality of vectors is equality
/// of the underlying maps. All keys are expected to live over one charge
/// context; the operators below check that as they walk the support.
class FockVector {
 public:
  FockVector() = default;
  /// The basis vector with coefficient 1 at mp.
  explicit FockVector(const Multipartition& mp) { terms_[mp] = 1; }

  const std::map<Multipartition, long long>& terms() const { return terms_; }
  long long coeff(const Multipartition& mp) const;
  bool zero() const { return terms_.empty(); }

  /// Adds c times the basis vector at mp, erasing the entry on cancellation.
  FockVector& add(const Multipartition& mp, long long c);

  FockVector& operator+=(const FockVector& rhs);
  FockVector& operator-=(const FockVector& rhs);
  FockVector& operator*=(long long c);

  friend FockVector operator+(FockVector a, const FockVector& b) {
    a += b;
    return a;
  }
  friend FockVector operator-(FockVector a, const FockVector& b) {
    a -= b;
    return a;
  }
  friend FockVector operator*(long long c, FockVector v) {
    v *= c;
    return v;
  }

  bool operator==(const FockVector&) const = default;

 private:
  std::map<Multipartition, long long> terms_;
};

/// Raising operator for the residue: sends a basis vector to the sum of the
/// basis vectors obtained by adding one addable box of that residue,
/// extended linearly over the support.
FockVector f_op(int res, const FockVector& v, const Multicharge& ctx);

/// Lowering operator for the residue: sends a basis vector to the sum over
/// removals of one removable box of that residue, extended linearly.
FockVector e_op(int res, const FockVector& v, const Multicharge& ctx);

/// f_op with output terms of weight above max_weight dropped. clipped
/// records whether anything was dropped, so a truncated computation is
/// never mistaken for an exact one.
struct TruncatedVector {
  FockVector vec;
  bool clipped = false;
};
TruncatedVector f_op_capped(int res, const FockVector& v, const Multicharge& ctx,
                            int max_weight);

/// Eigenvalue of the diagonal operator at a basis vector: addable boxes of
/// the residue minus removable ones.
int h_eigenvalue(const Multipartition& mp, int res, const Multicharge& ctx);

}  // namespace fock
