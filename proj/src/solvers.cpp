#include "conelab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conelab {

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidInput("solver tolerance must be positive");
  if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  if (multistarts < 1) throw InvalidInput("multistarts must be at least 1");
}

BisectResult bisect_monotone(const ScalarFn& g, double lo, double hi, const SolverConfig& cfg) {
  cfg.validate();
  if (!(lo <= hi)) throw InvalidInput("bisection interval is empty");
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0) throw InvalidInput("bisection bracket does not straddle a root");

  BisectResult out;
  while (hi - lo > cfg.tol && out.iterations < cfg.max_iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // floating-point resolution reached
    ++out.iterations;
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.root = lo + 0.5 * (hi - lo);
  return out;
}

double golden_section_min(const ScalarFn& phi, double lo, double hi, double tol, long max_iter) {
  if (!(lo <= hi)) throw InvalidInput("golden-section interval is empty");
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  for (long it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = phi(d);
    }
  }
  // Endpoints matter when the minimum sits on the boundary.
  double best = 0.5 * (a + b);
  double fbest = phi(best);
  for (double t : {lo, hi}) {
    const double ft = phi(t);
    if (ft < fbest) {
      fbest = ft;
      best = t;
    }
  }
  return best;
}

AscentResult projected_gradient_max(const Eigen::VectorXd& f, const Projector& project,
                                    const Eigen::VectorXd& x0, const SolverConfig& cfg) {
  cfg.validate();
  const double fnorm = f.norm();
  if (!(fnorm > 0.0)) throw InvalidInput("objective functional must be nonzero");
  const Eigen::VectorXd dir = f / fnorm;

  AscentResult out;
  Eigen::VectorXd x = project(x0);
  double value = f.dot(x);
  Eigen::VectorXd best = x;
  double best_value = value;

  for (long it = 0; it < cfg.max_iter; ++it) {
    Eigen::VectorXd next = project(x + dir);
    const double step = (next - x).norm();
    x = std::move(next);
    value = f.dot(x);
    out.history.push_back(value);
    out.iterations = it + 1;
    if (value > best_value) {
      best_value = value;
      best = x;
    }
    if (step < cfg.tol) {
      out.x = best;
      out.value = best_value;
      return out;
    }
  }
  throw SolverFailure("projected gradient ascent did not converge", best);
}

Eigen::VectorXd separate_point(const Projector& project, const Eigen::VectorXd& z,
                               const SolverConfig& cfg) {
  cfg.validate();
  const Eigen::VectorXd p = project(z);
  const double dist = (z - p).norm();
  if (dist <= cfg.tol) throw InvalidInput("point lies in the set; nothing to separate");
  return (z - p) / dist;
}

Eigen::VectorXd project_weighted_simplex(const Eigen::VectorXd& z, const Eigen::VectorXd& weights,
                                         double level) {
  const Eigen::Index n = z.size();
  if (weights.size() != n) throw InvalidInput("dimension mismatch in simplex projection");
  if ((weights.array() <= 0.0).any()) throw InvalidInput("simplex weights must be positive");
  if (!(level > 0.0)) throw InvalidInput("simplex level must be positive");

  // y_i = max(0, z_i - lambda w_i); breakpoints z_i / w_i in decreasing order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return z(a) / weights(a) > z(b) / weights(b);
  });

  double wz = 0.0;
  double ww = 0.0;
  double lambda = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index i = order[k];
    wz += weights(i) * z(i);
    ww += weights(i) * weights(i);
    const double candidate = (wz - level) / ww;
    if (z(i) / weights(i) > candidate) lambda = candidate;
  }
  return (z - lambda * weights).cwiseMax(0.0);
}

Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& z, double radius) {
  if (!(radius > 0.0)) throw InvalidInput("l1 radius must be positive");
  if (z.lpNorm<1>() <= radius) return z;
  const Eigen::VectorXd mag =
      project_weighted_simplex(z.cwiseAbs(), Eigen::VectorXd::Ones(z.size()), radius);
  return mag.cwiseProduct(z.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; }));
}

AdmmResult admm_linear_max(const Eigen::VectorXd& f, const Projector& project_a,
                           const Projector& project_b, const Eigen::VectorXd& start,
                           const SolverConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = f.size();
  double rho = 1.0;
  Eigen::VectorXd z = project_b(start);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd x = z;

  AdmmResult out;
  for (long it = 0; it < cfg.max_iter; ++it) {
    x = project_a(z - u + f / rho);
    const Eigen::VectorXd z_prev = z;
    z = project_b(x + u);
    u += x - z;

    const double primal = (x - z).norm();
    const double dual = rho * (z - z_prev).norm();
    out.iterations = it + 1;
    const double scale = 1.0 + std::max(x.norm(), z.norm());
    if (primal <= cfg.tol * scale && dual <= cfg.tol * scale && it > 0) {
      out.converged = true;
      break;
    }
    if (it % 10 == 9) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }
  out.x = x;
  out.z = z;
  out.functional = f - rho * u;
  out.primal_residual = (x - z).norm();
  return out;
}

DistanceResult alternating_distance(const Projector& project_a, const Projector& project_b,
                                    const Eigen::VectorXd& b0, double tol, long max_iter) {
  DistanceResult out;
  out.b = project_b(b0);
  out.a = project_a(out.b);
  out.distance = (out.a - out.b).norm();
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd b = project_b(out.a);
    Eigen::VectorXd a = project_a(b);
    const double d = (a - b).norm();
    out.iterations = it + 1;
    const double moved = (a - out.a).norm() + (b - out.b).norm();
    out.a = std::move(a);
    out.b = std::move(b);
    out.distance = d;
    if (moved <= tol) break;
  }
  return out;
}

}  // namespace conelab
