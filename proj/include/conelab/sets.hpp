#pragma once

// Feasible sets as oracle objects (membership, Euclidean projection, linear
// maximization, deterministic samplers).
//
//   KFlat        {x : x_1 + x_n^2 <= 0, 2 <= n <= N} ∩ r B_2
//   KMinusP      (-Slanted) ∩ B_2
//   KSlab        {x : -1 <= sum x_n / n <= 0} ∩ 2 B_1
//   KBallTriple  {x : ||x||_inf + ||Tx||_2 <= 1}
//   Ball2D       r B_2 in R^2
//   Square2D     [-1, 0]^2
//   HalfSpaceCap B_2 ∩ {<a, x> <= b}

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/solvers.hpp"

namespace conelab {

enum class SetFamily { KFlat, KMinusP, KSlab, KBallTriple, Ball2D, Square2D, HalfSpaceCap };

std::string_view to_string(SetFamily family);

class SetSpec {
 public:
  static SetSpec k_flat(Eigen::Index dim, double radius = 1.0);
  static SetSpec k_minus_p(Eigen::Index dim);
  static SetSpec k_slab(Eigen::Index dim);
  static SetSpec k_ball_triple(Eigen::Index dim);
  static SetSpec ball_2d(double radius = 1.0);
  static SetSpec square_2d();
  static SetSpec half_space_cap(const Eigen::VectorXd& normal, double offset);

  SetFamily family() const noexcept { return family_; }
  Eigen::Index dim() const noexcept { return dim_; }
  double radius() const noexcept { return radius_; }
  NormKind ambient() const noexcept { return ambient_; }
  const Eigen::VectorXd& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }

 private:
  SetSpec(SetFamily family, Eigen::Index dim, double radius, NormKind ambient)
      : family_(family), dim_(dim), radius_(radius), ambient_(ambient) {}

  SetFamily family_;
  Eigen::Index dim_;
  double radius_;
  NormKind ambient_;
  Eigen::VectorXd normal_;
  double offset_ = 0.0;
};

enum class Verdict {
  kMaximal,
  kDominated,
  kInconclusive,
  kSupported,
  kNotSupported,
  kNotStrictlyPositive,
};

std::string_view to_string(Verdict v);

/// Outcome of an analysis check. Failure/domination verdicts always carry a
/// witness that replays against the oracles to the recorded residuals.
struct Certificate {
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Vector> witness;
  std::optional<Vector> functional;
  std::vector<std::pair<std::string, double>> residuals;

  bool holds() const { return verdict == Verdict::kMaximal || verdict == Verdict::kSupported; }
  double residual(std::string_view name) const;
  void record(std::string name, double value) { residuals.emplace_back(std::move(name), value); }
};

/// Largest violated defining inequality of K at x (0 inside K).
double set_violation(const SetSpec& set, const Vector& x);
bool set_contains(const SetSpec& set, const Vector& x, double tol = 1e-9);

/// Increments c_j(x + d) - c_j(x) of the defining constraints c_j <= 0 of K,
/// evaluated without cancellation, paired with the values c_j(x). Tangent
/// moves along curved boundaries change a constraint by far less than the
/// rounding error in c_j(x) itself; the increments keep that change visible.
struct ConstraintStep {
  Eigen::VectorXd value;      // c_j(x)
  Eigen::VectorXd increment;  // c_j(x + d) - c_j(x)
};
ConstraintStep set_constraint_step(const SetSpec& set, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& d);

/// Euclidean projection (for every family); `dist` is the Euclidean distance.
Projection set_project(const SetSpec& set, const Vector& z, double tol = 1e-9);
Eigen::VectorXd set_project(const SetSpec& set, const Eigen::VectorXd& z);

struct LinearMax {
  Vector x;
  double value = 0.0;
};

/// sup <f, x> over K with a maximizer. Closed forms for Ball2D, Square2D,
/// KMinusP, HalfSpaceCap; vertex enumeration for KSlab; nested concave 1-D
/// searches over box-ellipsoid subproblems for KFlat and KBallTriple.
LinearMax linear_maximize(const SetSpec& set, const Vector& f, const SolverConfig& cfg = {});

/// The KSlab polytope maximum by enumerating its O(N^2) vertices.
LinearMax slab_vertex_maximize(const SetSpec& set, const Vector& f);

/// Deterministic members of K (boundary and interior), reproducible per seed.
std::vector<Vector> sample_set(const SetSpec& set, std::size_t count, std::uint64_t seed);

/// Natural ordering cone for each family (Slanted for KMinusP, orthant otherwise).
ConeSpec natural_cone(const SetSpec& set);

}  // namespace conelab
