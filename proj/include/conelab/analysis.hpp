#pragma once

// Maximal, positive and strictly maximal points of a set K under a cone
// order P, the dilating-cone approximation of maximal points by positive
// ones, and the witness families of the counterexample gallery.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/sets.hpp"
#include "conelab/solvers.hpp"
#include "conelab/table.hpp"

namespace conelab {

/// Is x maximal in K for the order of P? Searches K ∩ (x + P) along cone
/// generators, alternating-projection limits and an ADMM maximizer. A
/// dominated verdict carries a witness y with residuals "set_violation"
/// (of y in K), "cone_violation" (of y - x in P) and "gap" (||y - x||).
Certificate is_maximal(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                       const SolverConfig& cfg = {});

struct FlatDominance {
  Eigen::Index n0 = 0;  // 1-based
  double epsilon = 0.0;
  Vector y;
};

/// Explicit dominating point for a non-zero point of the flat set (without
/// the ball): y = x + epsilon e_{n0} with n0 the smallest |x_n| outside the
/// saturated indices {n : x_n^2 = |x_1|}. A caller-supplied epsilon is
/// validated instead of chosen. Throws TruncationSaturated when every index
/// 2..N is saturated.
FlatDominance nonmax_certificate_flat(const Vector& x, Eigen::Index dim,
                                      std::optional<double> epsilon = std::nullopt,
                                      double tol = 1e-9);

/// Is x supported on K by f, with f strictly positive on P? Residuals:
/// "margin" (dual margin of f), "sup" (estimated sup f(K)), "value" (f(x)),
/// "support_gap" (sup - f(x)); failures add "witness_value" (f at the witness).
Certificate pos_support_check(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                              const Vector& f, const SolverConfig& cfg = {});

struct PositivePoint {
  Vector x;
  Vector f;
  Certificate certificate;
};

/// Maximizer of a strictly positive functional (by default the base
/// functional) over K; requires a bounded base.
PositivePoint find_positive_point(const SetSpec& set, const ConeSpec& cone, const BaseSpec& base,
                                  const std::optional<Vector>& f = std::nullopt,
                                  const SolverConfig& cfg = {});

struct ModulusReport {
  double epsilon = 0.0;
  /// Smallest d(z - x, P) found over z in K with ||z - x|| >= epsilon.
  double delta_hat = 0.0;
  std::optional<Vector> witness;
  /// Best value of the generic search alone (infinity if it found nothing).
  double generic_value = 0.0;
  /// Best value over the explicit witness family (infinity if none applies).
  double family_value = 0.0;
  bool upper_bound_only = true;
  bool strictly_maximal = false;
  std::string source;  // "family", "search" or "dominated"
};

/// Strict-maximality modulus inf { d(z - x, P) : z in K, ||z - x|| >= epsilon }
/// estimated from explicit witness families and a multistart search.
ModulusReport strict_max_modulus(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                                 double epsilon, const SolverConfig& cfg = {});

/// Explicit family members z for (K, P, x) with ||z - x|| >= epsilon, if any.
std::vector<Vector> modulus_witness_family(const SetSpec& set, const ConeSpec& cone,
                                           const Vector& x, double epsilon, double tol = 1e-9);

struct AbbIterate {
  Vector x;
  Vector f;  // unit in the dual norm
  double support_residual = 0.0;
  double distance = 0.0;
  double cone_gap = 0.0;  // d(x - xbar, P_k)
  double margin = 0.0;    // dual margin of f on the original cone
  long iterations = 0;
  bool converged = false;
};

struct AbbTrace {
  std::vector<double> schedule;
  std::vector<AbbIterate> iterates;
};

/// For each delta_k: dilate P over the base and maximize the dilated cone's
/// interior functional g over K ∩ (xbar + P_k). The multiplier functional
/// h = g + lambda (lambda in P_k^*) supports K at x_k and is strictly positive
/// on P_k. Planar sets solve the dual exactly by nested 1-D searches; higher
/// dimensions run ADMM and report its convergence flag.
AbbTrace abb_approximate(const SetSpec& set, const ConeSpec& cone, const BaseSpec& base,
                         const Vector& xbar, const std::vector<double>& schedule,
                         const SolverConfig& cfg = {});

/// delta_k = delta0 * ratio^k for k = 0..count-1.
std::vector<double> geometric_schedule(double delta0, double ratio, int count);

struct DeltaCertificate {
  double delta = 0.0;
  Vector f;
  double alpha = 0.0;      // inf f(base)
  double sup_value = 0.0;  // sup f(K - xbar)
  double level = 0.0;      // base level after rescaling
  long samples = 0;
  long violations = 0;
};

/// Separates K - xbar from a base of P inside (epsilon/3) B and returns
/// delta = min(alpha, epsilon/3) with a sampled check of
/// (P + delta B) ∩ (K - xbar) ⊆ epsilon B. Throws SeparationFailure.
DeltaCertificate stmax_delta_certificate(const SetSpec& set, const ConeSpec& cone,
                                         const BaseSpec& base, const Vector& xbar, double epsilon,
                                         const SolverConfig& cfg = {}, long samples = 10000);

enum class GalleryFamily { Prop33, Ex34, Prop36, Prop37 };

std::string_view to_string(GalleryFamily family);
GalleryFamily gallery_family_from_string(std::string_view name);

/// Flat-set sequence: z_1 = -1/(sqrt2 n), z_k = 1/sqrt(2n) for 2 <= k <= n+1.
Vector flat_witness(Eigen::Index dim, long n);
/// Slanted pair: z = -1/(2(n+1)) e_1 + 1/2 e_{n+1} and w = z with x_1 negated.
Vector slanted_witness_z(Eigen::Index dim, long n);
Vector slanted_witness_w(Eigen::Index dim, long n);
/// e_n - e_1 / n in l1.
Vector slab_witness(Eigen::Index dim, long n);
/// (2/3) e_1 with the |||.||| ambient.
Vector triple_point(Eigen::Index dim);
/// z_n = (x + p_n) / |||x + p_n|||, p_n = e_n / (2 alpha_N), x = (2/3) e_1.
Vector triple_witness(Eigen::Index dim, long n);
/// First index n >= 2 with |x_n| <= 1/(2 alpha_N) for x = (2/3) e_1.
long triple_first_index(Eigen::Index dim);

/// Rows n = first..n_max of the named reproduction table at truncation dim.
std::vector<GalleryRow> gallery(GalleryFamily family, long n_max, Eigen::Index dim,
                                double tol = 1e-9);

/// Recomputes a named residual of a certificate from its witness with fresh
/// oracle calls ("set_violation", "cone_violation", "gap", "witness_value").
double replay_residual(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                       const Certificate& cert, std::string_view name);

}  // namespace conelab
