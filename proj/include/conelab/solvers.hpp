#pragma once

// Numeric back ends shared by the cone, set and analysis modules. Everything
// here works on plain Eigen vectors with the Euclidean inner product.

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "conelab/errors.hpp"

namespace conelab {

struct SolverConfig {
  double tol = 1e-9;
  long max_iter = 100000;
  int multistarts = 8;
  std::uint64_t seed = 0;

  void validate() const;
};

using ScalarFn = std::function<double(double)>;
using Projector = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct BisectResult {
  double root = 0.0;
  long iterations = 0;
};

/// Root of a nondecreasing g on [lo, hi] with g(lo) <= 0 <= g(hi), bracketed to
/// width cfg.tol (or to floating-point resolution, whichever comes first).
BisectResult bisect_monotone(const ScalarFn& g, double lo, double hi, const SolverConfig& cfg);

/// Minimizer of a convex (or unimodal) function on [lo, hi].
double golden_section_min(const ScalarFn& phi, double lo, double hi, double tol,
                          long max_iter = 400);

struct AscentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  long iterations = 0;
  std::vector<double> history;  // objective after each step
};

/// Maximizes <f, x> over the set behind `project` by fixed-step projected
/// ascent along f / ||f||. Stops when a step moves less than cfg.tol.
/// Throws SolverFailure (carrying the best iterate) after cfg.max_iter steps.
AscentResult projected_gradient_max(const Eigen::VectorXd& f, const Projector& project,
                                    const Eigen::VectorXd& x0, const SolverConfig& cfg);

/// Unit normal (z - P(z)) / ||z - P(z)||; separates z from the set strictly.
Eigen::VectorXd separate_point(const Projector& project, const Eigen::VectorXd& z,
                               const SolverConfig& cfg);

/// Euclidean projection onto {y >= 0 : <weights, y> = level}, weights > 0.
Eigen::VectorXd project_weighted_simplex(const Eigen::VectorXd& z, const Eigen::VectorXd& weights,
                                         double level);

/// Euclidean projection onto the l1 ball of the given radius.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& z, double radius);

struct AdmmResult {
  Eigen::VectorXd x;           // iterate of the first set
  Eigen::VectorXd z;           // iterate of the second set
  Eigen::VectorXd functional;  // f - rho*u: f plus an element of -N_B(z)
  double primal_residual = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// ADMM for max <f, x> over A ∩ B, using one projection onto each set per
/// iteration and residual-balanced penalty. The returned functional satisfies
/// functional - f ∈ -N_B(z) exactly; at convergence it supports A at x.
AdmmResult admm_linear_max(const Eigen::VectorXd& f, const Projector& project_a,
                           const Projector& project_b, const Eigen::VectorXd& start,
                           const SolverConfig& cfg);

struct DistanceResult {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  double distance = 0.0;
  long iterations = 0;
};

/// Alternating projections between two closed convex sets; converges to a
/// pair realizing dist(A, B) when one of them is bounded.
DistanceResult alternating_distance(const Projector& project_a, const Projector& project_b,
                                    const Eigen::VectorXd& b0, double tol, long max_iter);

}  // namespace conelab
