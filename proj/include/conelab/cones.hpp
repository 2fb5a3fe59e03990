#pragma once

// Ordering cones on truncated sequence spaces:
//   Orthant   {x : x_n >= 0}                        (any ambient norm)
//   Slanted   {x : x_1 >= 0, n x_1 - |x_n| >= 0}     (l2)
//   Dilated   closed cone over (B + delta * unit ball), B a base of one of
//             the above (l2 only)

#include <cstdint>
#include <variant>
#include <vector>

#include "conelab/spaces.hpp"

namespace conelab {

struct Orthant {
  NormKind ambient = NormKind::L2;
};
struct Slanted {};

using PrimalCone = std::variant<Orthant, Slanted>;

/// Slice {x in cone : <functional, x> = level} of a primal cone.
struct BaseSpec {
  PrimalCone cone;
  Vector functional;
  double level = 1.0;
  /// Supremum of the ambient norm over the base at the full truncation and
  /// at the half truncation ceil(N/2); `bounded` compares their growth.
  double norm_sup = 0.0;
  double norm_sup_half = 0.0;
  bool bounded = false;

  Eigen::Index dim() const { return functional.size(); }
};

struct Dilated {
  BaseSpec base;
  double delta = 0.0;
};

class ConeSpec {
 public:
  using Family = std::variant<Orthant, Slanted, Dilated>;

  static ConeSpec orthant(Eigen::Index dim, NormKind ambient = NormKind::L2);
  static ConeSpec slanted(Eigen::Index dim);
  static ConeSpec from_primal(const PrimalCone& cone, Eigen::Index dim);

  const Family& family() const noexcept { return family_; }
  Eigen::Index dim() const noexcept { return dim_; }
  NormKind ambient() const;
  bool is_dilated() const noexcept { return std::holds_alternative<Dilated>(family_); }

 private:
  friend ConeSpec dilate(const ConeSpec&, const BaseSpec&, double);
  ConeSpec(Family family, Eigen::Index dim) : family_(std::move(family)), dim_(dim) {}

  Family family_;
  Eigen::Index dim_;
};

struct Projection {
  Vector point;
  double dist = 0.0;
};

/// Size of the worst violated defining inequality (Dilated: distance to the cone).
double cone_violation(const ConeSpec& cone, const Vector& x);
bool cone_contains(const ConeSpec& cone, const Vector& x, double tol = 1e-9);

/// Metric projection; `dist` is measured in the ambient norm. Orthant
/// projection is coordinate clipping, optimal for every lattice norm used here.
Projection cone_project(const ConeSpec& cone, const Vector& z, double tol = 1e-9);
Eigen::VectorXd cone_project(const ConeSpec& cone, const Eigen::VectorXd& z);

/// Scale-free strict-positivity margin of a functional f on the cone:
///   Orthant/Slanted: min over extreme rays r of f(r) / (||r|| ||f||_*)
///   Dilated(B, d):   inf_B f / ||f||_* - d
/// Positive exactly when f is strictly positive on the cone minus the origin.
double dual_margin(const ConeSpec& cone, const Vector& f);
bool dual_strictly_positive(const ConeSpec& cone, const Vector& f, double margin = 0.0);

/// Base slice of an Orthant or Slanted cone by a strictly positive functional.
BaseSpec base_of(const ConeSpec& cone, const Vector& f, double level);

/// Closed cone over (base + delta * ball). Requires 0 < delta <= 0.9 inf_B ||b||.
ConeSpec dilate(const ConeSpec& cone, const BaseSpec& base, double delta);

/// Largest admissible dilation radius for a base: 0.9 inf_B ||b||.
double max_dilation(const BaseSpec& base);

/// inf over the base of <h, b> (exact, through the base vertices).
double base_infimum(const BaseSpec& base, const Vector& h);
/// Euclidean projection onto the base (l2 bases; Slanted needs functional ∝ e_1).
Eigen::VectorXd project_onto_base(const BaseSpec& base, const Eigen::VectorXd& z);
/// Point of the base with least Euclidean norm.
Vector base_min_norm_point(const BaseSpec& base);

/// A unit functional well inside the dual cone.
Vector interior_functional(const ConeSpec& cone);

/// Finite list of nonzero cone elements used as search directions: the
/// coordinate rays, e_1 ± n e_n for the slanted cone, and perturbed base
/// vertices for dilated cones.
std::vector<Vector> cone_generators(const ConeSpec& cone);

/// Deterministic samples of cone elements with norms of order one.
std::vector<Vector> sample_cone(const ConeSpec& cone, std::size_t count, std::uint64_t seed);

}  // namespace conelab
