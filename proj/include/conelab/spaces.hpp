#pragma once

// Finite truncations of the sequence spaces l2, l1, c0 and the renormed
// (c0, |||.|||) with |||x||| = ||x||_inf + ||Tx||_2, T(x)_n = x_n / 2^n.
// Sequence indices are 1-based in the API (coord(1) is x_1); Eigen storage is
// 0-based as usual.

#include <cmath>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "conelab/errors.hpp"
#include "conelab/table.hpp"

namespace conelab {

enum class NormKind { L2, L1, SUP, TRIPLE };

std::string_view to_string(NormKind kind);
NormKind norm_kind_from_string(std::string_view name);

/// Coordinates of a truncated sequence tagged with the norm of its ambient space.
template <typename Scalar>
class BasicVector {
 public:
  using Coords = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicVector(Coords coords, NormKind ambient = NormKind::L2)
      : coords_(std::move(coords)), ambient_(ambient) {
    if (coords_.size() < 1) throw InvalidInput("vector must have at least one coordinate");
    if (!coords_.allFinite()) throw InvalidInput("vector coordinates must be finite");
  }

  static BasicVector zero(Eigen::Index dim, NormKind ambient = NormKind::L2) {
    return BasicVector(Coords::Zero(dim), ambient);
  }
  /// e_k, with k counted from 1.
  static BasicVector unit(Eigen::Index dim, Eigen::Index k, NormKind ambient = NormKind::L2) {
    if (k < 1 || k > dim) throw InvalidInput("basis index out of range");
    Coords c = Coords::Zero(dim);
    c(k - 1) = Scalar(1);
    return BasicVector(std::move(c), ambient);
  }

  Eigen::Index size() const noexcept { return coords_.size(); }
  const Coords& coords() const noexcept { return coords_; }
  NormKind ambient() const noexcept { return ambient_; }

  /// x_k with k counted from 1.
  Scalar coord(Eigen::Index k) const { return coords_(k - 1); }

  BasicVector with_ambient(NormKind kind) const { return BasicVector(coords_, kind); }

  friend BasicVector operator+(const BasicVector& a, const BasicVector& b) {
    a.require_compatible(b);
    return BasicVector(a.coords_ + b.coords_, a.ambient_);
  }
  friend BasicVector operator-(const BasicVector& a, const BasicVector& b) {
    a.require_compatible(b);
    return BasicVector(a.coords_ - b.coords_, a.ambient_);
  }
  friend BasicVector operator-(const BasicVector& a) { return BasicVector(-a.coords_, a.ambient_); }
  friend BasicVector operator*(Scalar s, const BasicVector& a) {
    return BasicVector(s * a.coords_, a.ambient_);
  }
  friend BasicVector operator*(const BasicVector& a, Scalar s) { return s * a; }

 private:
  void require_compatible(const BasicVector& other) const {
    if (size() != other.size()) throw InvalidInput("dimension mismatch");
    if (ambient_ != other.ambient_) throw InvalidInput("ambient norm mismatch");
  }

  Coords coords_;
  NormKind ambient_;
};

using Vector = BasicVector<double>;

/// T(x)_n = x_n / 2^n.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_T(
    const Eigen::MatrixBase<Derived>& x) {
  using std::ldexp;
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = ldexp(x(i), -static_cast<int>(i + 1));
  return out;
}

template <typename Derived>
typename Derived::Scalar norm(const Eigen::MatrixBase<Derived>& x, NormKind kind) {
  if (x.size() == 0) throw InvalidInput("norm of an empty vector");
  switch (kind) {
    case NormKind::L2:
      return x.norm();
    case NormKind::L1:
      return x.template lpNorm<1>();
    case NormKind::SUP:
      return x.template lpNorm<Eigen::Infinity>();
    case NormKind::TRIPLE:
      return x.template lpNorm<Eigen::Infinity>() + apply_T(x).norm();
  }
  throw InvalidInput("unknown norm kind");
}

/// Norm of a functional (coordinate pairing) on the space normed by `kind`.
/// The renormed c0 uses the l1 norm as its dual scale; it is equivalent to the
/// exact dual norm up to the factor 1 + 1/sqrt(3).
template <typename Derived>
typename Derived::Scalar dual_norm(const Eigen::MatrixBase<Derived>& f, NormKind kind) {
  switch (kind) {
    case NormKind::L2:
      return norm(f, NormKind::L2);
    case NormKind::L1:
      return norm(f, NormKind::SUP);
    case NormKind::SUP:
    case NormKind::TRIPLE:
      return norm(f, NormKind::L1);
  }
  throw InvalidInput("unknown norm kind");
}

inline double norm(const Vector& x, NormKind kind) { return norm(x.coords(), kind); }
inline double norm(const Vector& x) { return norm(x.coords(), x.ambient()); }
inline Vector apply_T(const Vector& x) { return Vector(apply_T(x.coords()), NormKind::L2); }

double inner(const Vector& f, const Vector& x);

/// Equivalence constant of |||.||| against ||.||_inf on the first `dim`
/// coordinates: 1 + sqrt((1 - 4^-dim) / 3).
double triple_alpha(Eigen::Index dim);

/// Coordinate-probe proxy for the failure of weak-to-norm continuity at 0.
/// For each member z: probe_max = max_{j<=probes} |z_j|, norm = ||z||; the row
/// flag `pc_failure_witness` is set when probe_max < probe_threshold while
/// norm >= norm_floor.
std::vector<GalleryRow> weak_null_gap(const std::vector<Vector>& family, Eigen::Index probes,
                                      double probe_threshold = 0.1, double norm_floor = 0.5);

}  // namespace conelab
