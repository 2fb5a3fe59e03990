#include "conelab/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/rng.hpp"

namespace conelab {
namespace {

void require_dim(const SetSpec& set, Eigen::Index n) {
  if (set.dim() != n) throw InvalidInput("dimension mismatch between set and vector");
}

Eigen::VectorXd slab_weights(Eigen::Index n) {
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = 1.0 / static_cast<double>(i + 1);
  return w;
}

// Projection onto {x : x_1 + x_n^2 <= 0 for all n >= 2}. For a fixed first
// coordinate a <= 0 the tail is clamped to [-sqrt(-a), sqrt(-a)]; the reduced
// objective is convex in a and is minimized through its derivative.
Eigen::VectorXd project_parabolic(const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  const Eigen::VectorXd tail = z.tail(n - 1).cwiseAbs();
  const double tmax = tail.size() > 0 ? tail.maxCoeff() : 0.0;
  if (z(0) + tmax * tmax <= 0.0) return z;

  auto slope = [&](double a) {
    if (a >= 0.0) return tmax > 0.0 ? std::numeric_limits<double>::infinity() : a - z(0);
    const double s = std::sqrt(-a);
    double v = a - z(0);
    for (Eigen::Index i = 0; i < tail.size(); ++i)
      if (tail(i) > s) v += (tail(i) - s) / (2.0 * s);
    return v;
  };
  double a = 0.0;
  const double lo = std::min(z(0), -tmax * tmax) - 1.0;
  if (slope(0.0) > 0.0) {
    SolverConfig cfg;
    cfg.tol = 1e-17 * std::max(1.0, -lo);
    cfg.max_iter = 4000;
    a = bisect_monotone(slope, lo, 0.0, cfg).root;
  }
  const double s = std::sqrt(std::max(0.0, -a));
  Eigen::VectorXd out(n);
  out(0) = -s * s;
  for (Eigen::Index i = 1; i < n; ++i) out(i) = std::clamp(z(i), -s, s);
  return out;
}

// Projection onto S ∩ rB for a closed convex S containing the origin:
// x = P_S(t z) with t in (0, 1] chosen so that ||x|| = r when the ball binds.
template <class ProjectS>
Eigen::VectorXd project_with_ball(const Eigen::VectorXd& z, double r, ProjectS&& project_s) {
  Eigen::VectorXd x = project_s(z);
  if (x.norm() <= r) return x;
  SolverConfig cfg;
  cfg.tol = 1e-16;
  const double t = bisect_monotone([&](double s) { return project_s(Eigen::VectorXd(s * z)).norm() - r; },
                                   0.0, 1.0, cfg)
                       .root;
  x = project_s(Eigen::VectorXd(t * z));
  const double nx = x.norm();
  if (nx > r) x *= r / nx;  // rounding only
  return x;
}

Eigen::VectorXd project_slab(const Eigen::VectorXd& z) {
  const Eigen::VectorXd w = slab_weights(z.size());
  auto x_of = [&](double lambda) { return project_l1_ball(z - lambda * w, 2.0); };
  auto level = [&](double lambda) { return w.dot(x_of(lambda)); };
  const double l0 = level(0.0);
  if (l0 <= 0.0 && l0 >= -1.0) return x_of(0.0);

  SolverConfig cfg;
  cfg.tol = 1e-16;
  if (l0 > 0.0) {
    // level(lambda) is nonincreasing; find lambda > 0 with level = 0.
    double hi = 1.0;
    while (level(hi) > 0.0) hi *= 2.0;
    cfg.tol *= hi;
    const double lam = bisect_monotone([&](double l) { return -level(l); }, 0.0, hi, cfg).root;
    return x_of(lam);
  }
  double hi = 1.0;
  while (level(-hi) < -1.0) hi *= 2.0;
  cfg.tol *= hi;
  const double mu = bisect_monotone([&](double m) { return level(-m) + 1.0; }, 0.0, hi, cfg).root;
  return x_of(-mu);
}

// Euclidean projection onto {||x||_inf + ||Dx||_2 <= 1}, D = diag(2^-n).
// For a split s (sup-norm budget) the set is a box intersected with an
// ellipsoid, handled by a multiplier on the ellipsoid; the optimal split
// is found by golden section on the convex value function.
Eigen::VectorXd project_triple_ball(const Eigen::VectorXd& z) {
  if (norm(z, NormKind::TRIPLE) <= 1.0) return z;
  const Eigen::Index n = z.size();
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = std::ldexp(1.0, -2 * static_cast<int>(std::min<Eigen::Index>(i + 1, 600)));

  auto inner = [&](double s) -> Eigen::VectorXd {
    const double c = 1.0 - s;
    if (c <= 0.0) return Eigen::VectorXd::Zero(n);
    auto x_of = [&](double tau) {
      const double mu = std::expm1(tau);
      Eigen::VectorXd x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = std::clamp(z(i) / (1.0 + mu * d2(i)), -s, s);
      return x;
    };
    auto ell = [&](const Eigen::VectorXd& x) { return std::sqrt((x.array().square() * d2.array()).sum()); };
    Eigen::VectorXd x0 = x_of(0.0);
    if (ell(x0) <= c) return x0;
    double hi = 1.0;
    while (ell(x_of(hi)) > c && hi < 4096.0) hi *= 2.0;
    SolverConfig cfg;
    cfg.tol = 1e-14 * hi;
    const double tau = bisect_monotone([&](double t) { return c - ell(x_of(t)); }, 0.0, hi, cfg).root;
    return x_of(tau);
  };
  const double s = golden_section_min([&](double t) { return (inner(t) - z).squaredNorm(); }, 0.0, 1.0, 1e-13);
  Eigen::VectorXd x = inner(s);
  const double tn = norm(x, NormKind::TRIPLE);
  if (tn > 1.0) x /= tn;  // rounding only
  return x;
}

Eigen::VectorXd project_cap(const SetSpec& set, const Eigen::VectorXd& z) {
  const Eigen::VectorXd& a = set.normal();
  const double b = set.offset();
  auto in_half = [&](const Eigen::VectorXd& x) { return a.dot(x) <= b; };
  const double aa = a.squaredNorm();
  Eigen::VectorXd h = z;
  if (!in_half(h)) h -= ((a.dot(z) - b) / aa) * a;
  if (h.norm() <= 1.0) return h;
  Eigen::VectorXd r = z / z.norm();
  if (in_half(r)) return r;
  // Both constraints bind: nearest point of the circle {a.x = b, ||x|| = 1}.
  const Eigen::VectorXd c0 = (b / aa) * a;
  Eigen::VectorXd w = z - (a.dot(z) / aa) * a;
  if (w.norm() < 1e-300) {
    w = Eigen::VectorXd::Zero(z.size());
    Eigen::Index k = 0;
    a.cwiseAbs().minCoeff(&k);
    w(k) = 1.0;
    w -= (a.dot(w) / aa) * a;
  }
  const double rho = std::sqrt(std::max(0.0, 1.0 - c0.squaredNorm()));
  return c0 + (rho / w.norm()) * w;
}

// ||x + d|| - ||x|| for the Euclidean norm.
double l2_increment(const Eigen::VectorXd& x, const Eigen::VectorXd& d) {
  const double den = (x + d).norm() + x.norm();
  if (den == 0.0) return 0.0;
  return (2.0 * x.dot(d) + d.squaredNorm()) / den;
}

Eigen::VectorXd anchor_point(const SetSpec& set) {
  const Eigen::Index n = set.dim();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  switch (set.family()) {
    case SetFamily::KFlat: c(0) = -0.5 * set.radius(); break;
    case SetFamily::KMinusP:
    case SetFamily::KSlab: c(0) = -0.5; break;
    case SetFamily::Square2D: c.setConstant(-0.5); break;
    case SetFamily::HalfSpaceCap: c = set_project(set, c); break;
    default: break;
  }
  return c;
}

double sample_scale(const SetSpec& set) {
  switch (set.family()) {
    case SetFamily::KSlab: return 2.5;
    case SetFamily::KFlat:
    case SetFamily::Ball2D: return 1.5 * set.radius();
    default: return 1.5;
  }
}

// argmax <f, x> over {|x_n| <= s} ∩ {sum a_n x_n^2 <= R^2}, a_n > 0. The
// maximizer is x_n = clamp(f_n / (mu a_n), -s, s); coordinate n is clipped iff
// mu <= |f_n| / (s a_n), so the breakpoint order does not depend on (s, R)
// and is sorted once.
class BoxEllipsoid {
 public:
  BoxEllipsoid(Eigen::VectorXd f, Eigen::VectorXd a) : f_(std::move(f)), a_(std::move(a)) {
    for (Eigen::Index i = 0; i < f_.size(); ++i)
      if (f_(i) != 0.0) order_.push_back(i);
    std::sort(order_.begin(), order_.end(), [&](Eigen::Index i, Eigen::Index j) {
      return std::abs(f_(i)) / a_(i) > std::abs(f_(j)) / a_(j);
    });
    const std::size_t k = order_.size();
    suffix_q_.assign(k + 1, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      const Eigen::Index n = order_[i];
      suffix_q_[i] = suffix_q_[i + 1] + f_(n) * f_(n) / a_(n);
    }
  }

  Eigen::VectorXd argmax(double s, double R) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(f_.size());
    if (!(s > 0.0) || !(R > 0.0) || order_.empty()) return x;
    double corner = 0.0;
    for (Eigen::Index n : order_) corner += a_(n) * s * s;
    double mu = 0.0;
    if (corner > R * R) {
      double clipped_a = 0.0;
      double best_gap = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < order_.size(); ++k) {
        const double denom = R * R - s * s * clipped_a;
        if (denom <= 0.0) break;
        const double m = std::sqrt(suffix_q_[k] / denom);
        const double lower = breakpoint(k, s);
        const double upper = k == 0 ? std::numeric_limits<double>::infinity() : breakpoint(k - 1, s);
        const double gap = std::max({0.0, lower - m, m - upper});
        if (gap < best_gap) best_gap = gap, mu = m;
        if (gap == 0.0) break;
        clipped_a += a_(order_[k]);
      }
    }
    for (Eigen::Index n : order_)
      x(n) = mu > 0.0 ? std::clamp(f_(n) / (mu * a_(n)), -s, s) : (f_(n) > 0.0 ? s : -s);
    const double q = (x.array().square() * a_.array()).sum();
    if (q > R * R) x *= R / std::sqrt(q);  // rounding only
    return x;
  }

 private:
  double breakpoint(std::size_t k, double s) const {
    const Eigen::Index n = order_[k];
    return std::abs(f_(n)) / (s * a_(n));
  }

  Eigen::VectorXd f_;
  Eigen::VectorXd a_;
  std::vector<Eigen::Index> order_;
  std::vector<double> suffix_q_;
};

// Maximizer of a concave function on [lo, hi], endpoints included.
template <typename F>
double concave_argmax(F&& value, double lo, double hi) {
  if (!(hi > lo)) return lo;
  double best = golden_section_min([&](double t) { return -value(t); }, lo, hi, 1e-14 * std::max(1.0, hi - lo));
  double best_v = value(best);
  for (double t : {lo, hi}) {
    const double v = value(t);
    if (v > best_v) best = t, best_v = v;
  }
  return best;
}

// sup <c, x> over K_flat ∩ rB. With t = x_1 and m = max_{n>=2} |x_n| the tail
// solves a box-ball problem; the value is jointly concave in (t, m) on
// {m >= 0, -r <= t <= -m^2}, so nested 1-D searches are exact.
Eigen::VectorXd flat_argmax(const Eigen::VectorXd& c, double r) {
  const Eigen::Index n = c.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 1) {
    x(0) = c(0) >= 0.0 ? 0.0 : -r;
    return x;
  }
  const BoxEllipsoid tail(c.tail(n - 1), Eigen::VectorXd::Ones(n - 1));
  auto tail_at = [&](double t, double m) { return tail.argmax(m, std::sqrt(std::max(0.0, r * r - t * t))); };
  auto value_tm = [&](double t, double m) { return c(0) * t + c.tail(n - 1).dot(tail_at(t, m)); };
  auto best_t = [&](double m) {
    return concave_argmax([&](double t) { return value_tm(t, m); }, -r, -m * m);
  };
  const double m = concave_argmax([&](double mm) { return value_tm(best_t(mm), mm); }, 0.0, std::sqrt(r));
  const double t = best_t(m);
  x(0) = t;
  x.tail(n - 1) = tail_at(t, m);
  return x;
}

// sup <c, x> over {||x||_inf + ||Tx||_2 <= 1}: for a sup budget s the set is
// box(s) ∩ {||Tx||_2 <= 1 - s}; the value is concave in s.
Eigen::VectorXd triple_argmax(const Eigen::VectorXd& c) {
  const Eigen::Index n = c.size();
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = std::ldexp(1.0, -2 * static_cast<int>(std::min<Eigen::Index>(i + 1, 500)));
  const BoxEllipsoid be(c, d2);
  const double s = concave_argmax([&](double ss) { return c.dot(be.argmax(ss, 1.0 - ss)); }, 0.0, 1.0);
  Eigen::VectorXd x = be.argmax(s, 1.0 - s);
  const double tn = norm(x, NormKind::TRIPLE);
  if (tn > 1.0) x /= tn;  // rounding only
  return x;
}

}  // namespace

std::string_view to_string(SetFamily family) {
  switch (family) {
    case SetFamily::KFlat: return "kflat";
    case SetFamily::KMinusP: return "kminusp";
    case SetFamily::KSlab: return "kslab";
    case SetFamily::KBallTriple: return "kballtriple";
    case SetFamily::Ball2D: return "disk2d";
    case SetFamily::Square2D: return "square2d";
    case SetFamily::HalfSpaceCap: return "halfcap";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kMaximal: return "maximal";
    case Verdict::kDominated: return "dominated";
    case Verdict::kInconclusive: return "inconclusive";
    case Verdict::kSupported: return "supported";
    case Verdict::kNotSupported: return "not_supported";
    case Verdict::kNotStrictlyPositive: return "not_strictly_positive";
  }
  return "?";
}

double Certificate::residual(std::string_view name) const {
  for (const auto& [key, v] : residuals)
    if (key == name) return v;
  throw InvalidInput("no residual named " + std::string(name));
}

SetSpec SetSpec::k_flat(Eigen::Index dim, double radius) {
  if (dim < 2) throw InvalidInput("the flat set needs N >= 2");
  if (!(radius > 0.0)) throw InvalidParameter("radius must be positive");
  return SetSpec(SetFamily::KFlat, dim, radius, NormKind::L2);
}
SetSpec SetSpec::k_minus_p(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  return SetSpec(SetFamily::KMinusP, dim, 1.0, NormKind::L2);
}
SetSpec SetSpec::k_slab(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  return SetSpec(SetFamily::KSlab, dim, 2.0, NormKind::L1);
}
SetSpec SetSpec::k_ball_triple(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  return SetSpec(SetFamily::KBallTriple, dim, 1.0, NormKind::TRIPLE);
}
SetSpec SetSpec::ball_2d(double radius) {
  if (!(radius > 0.0)) throw InvalidParameter("radius must be positive");
  return SetSpec(SetFamily::Ball2D, 2, radius, NormKind::L2);
}
SetSpec SetSpec::square_2d() { return SetSpec(SetFamily::Square2D, 2, 1.0, NormKind::L2); }
SetSpec SetSpec::half_space_cap(const Eigen::VectorXd& normal, double offset) {
  if (normal.size() < 1 || !(normal.norm() > 0.0)) throw InvalidInput("half-space normal must be nonzero");
  if (offset <= -normal.norm()) throw InvalidParameter("half-space misses the unit ball");
  SetSpec s(SetFamily::HalfSpaceCap, normal.size(), 1.0, NormKind::L2);
  s.normal_ = normal;
  s.offset_ = offset;
  return s;
}

double set_violation(const SetSpec& set, const Vector& x) {
  require_dim(set, x.size());
  const Eigen::VectorXd& c = x.coords();
  double v = 0.0;
  switch (set.family()) {
    case SetFamily::KFlat:
      for (Eigen::Index i = 1; i < c.size(); ++i) v = std::max(v, c(0) + c(i) * c(i));
      v = std::max(v, c.norm() - set.radius());
      break;
    case SetFamily::KMinusP:
      v = std::max(cone_violation(ConeSpec::slanted(set.dim()), Vector(-c)), c.norm() - 1.0);
      break;
    case SetFamily::KSlab: {
      const double fx = slab_weights(c.size()).dot(c);
      v = std::max({v, fx, -1.0 - fx, c.lpNorm<1>() - 2.0});
      break;
    }
    case SetFamily::KBallTriple:
      v = std::max(v, norm(c, NormKind::TRIPLE) - 1.0);
      break;
    case SetFamily::Ball2D:
      v = std::max(v, c.norm() - set.radius());
      break;
    case SetFamily::Square2D:
      v = std::max({v, c.maxCoeff(), -1.0 - c.minCoeff()});
      break;
    case SetFamily::HalfSpaceCap:
      v = std::max({v, c.norm() - 1.0, set.normal().dot(c) - set.offset()});
      break;
  }
  return v;
}

ConstraintStep set_constraint_step(const SetSpec& set, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& d) {
  require_dim(set, x.size());
  require_dim(set, d.size());
  const Eigen::Index n = x.size();
  std::vector<double> val;
  std::vector<double> inc;
  auto push = [&](double v, double i) {
    val.push_back(v);
    inc.push_back(i);
  };
  auto ball = [&](double r) { push(x.norm() - r, l2_increment(x, d)); };
  auto l1_increment = [&]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::abs(x(i) + d(i)) - std::abs(x(i));
    return s;
  };
  switch (set.family()) {
    case SetFamily::KFlat:
      for (Eigen::Index i = 1; i < n; ++i)
        push(x(0) + x(i) * x(i), d(0) + d(i) * (2.0 * x(i) + d(i)));
      ball(set.radius());
      break;
    case SetFamily::KMinusP:
      push(x(0), d(0));
      for (Eigen::Index i = 1; i < n; ++i) {
        const double w = static_cast<double>(i + 1);
        push(std::abs(x(i)) + w * x(0), std::abs(x(i) + d(i)) - std::abs(x(i)) + w * d(0));
      }
      ball(1.0);
      break;
    case SetFamily::KSlab: {
      const Eigen::VectorXd w = slab_weights(n);
      push(w.dot(x), w.dot(d));
      push(-1.0 - w.dot(x), -w.dot(d));
      push(x.lpNorm<1>() - 2.0, l1_increment());
      break;
    }
    case SetFamily::KBallTriple: {
      const Eigen::VectorXd tx = apply_T(x);
      const Eigen::VectorXd td = apply_T(d);
      const double sup_inc = (x + d).lpNorm<Eigen::Infinity>() - x.lpNorm<Eigen::Infinity>();
      push(norm(x, NormKind::TRIPLE) - 1.0, sup_inc + l2_increment(tx, td));
      break;
    }
    case SetFamily::Ball2D:
      ball(set.radius());
      break;
    case SetFamily::Square2D:
      for (Eigen::Index i = 0; i < n; ++i) {
        push(x(i), d(i));
        push(-1.0 - x(i), -d(i));
      }
      break;
    case SetFamily::HalfSpaceCap:
      ball(1.0);
      push(set.normal().dot(x) - set.offset(), set.normal().dot(d));
      break;
  }
  return {Eigen::Map<Eigen::VectorXd>(val.data(), static_cast<Eigen::Index>(val.size())),
          Eigen::Map<Eigen::VectorXd>(inc.data(), static_cast<Eigen::Index>(inc.size()))};
}

bool set_contains(const SetSpec& set, const Vector& x, double tol) { return set_violation(set, x) <= tol; }

Eigen::VectorXd set_project(const SetSpec& set, const Eigen::VectorXd& z) {
  require_dim(set, z.size());
  switch (set.family()) {
    case SetFamily::KFlat:
      return project_with_ball(z, set.radius(), project_parabolic);
    case SetFamily::KMinusP: {
      Eigen::VectorXd x = -cone_project(ConeSpec::slanted(set.dim()), Eigen::VectorXd(-z));
      const double nx = x.norm();
      if (nx > 1.0) x /= nx;
      return x;
    }
    case SetFamily::KSlab:
      return project_slab(z);
    case SetFamily::KBallTriple:
      return project_triple_ball(z);
    case SetFamily::Ball2D: {
      const double nz = z.norm();
      return nz <= set.radius() ? z : Eigen::VectorXd(z * (set.radius() / nz));
    }
    case SetFamily::Square2D:
      return z.cwiseMin(0.0).cwiseMax(-1.0);
    case SetFamily::HalfSpaceCap:
      return project_cap(set, z);
  }
  throw InvalidInput("unknown set family");
}

Projection set_project(const SetSpec& set, const Vector& z, double /*tol*/) {
  Eigen::VectorXd y = set_project(set, z.coords());
  const double dist = (z.coords() - y).norm();
  return {Vector(std::move(y), set.ambient()), dist};
}

LinearMax slab_vertex_maximize(const SetSpec& set, const Vector& f) {
  if (set.family() != SetFamily::KSlab) throw InvalidInput("vertex enumeration applies to the slab set");
  require_dim(set, f.size());
  const Eigen::Index n = set.dim();
  const Eigen::VectorXd w = slab_weights(n);
  const Eigen::VectorXd& c = f.coords();

  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd arg = Eigen::VectorXd::Zero(n);
  auto consider = [&](const Eigen::VectorXd& v) {
    const double fx = w.dot(v);
    if (fx > 1e-12 || fx < -1.0 - 1e-12) return;
    const double val = c.dot(v);
    if (val > best) {
      best = val;
      arg = v;
    }
  };
  // Cross-polytope vertices ±2 e_i, then edge/hyperplane intersections.
  std::vector<Eigen::VectorXd> verts;
  for (Eigen::Index i = 0; i < n; ++i)
    for (double s : {2.0, -2.0}) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(i) = s;
      verts.push_back(v);
      consider(v);
    }
  for (std::size_t p = 0; p < verts.size(); ++p)
    for (std::size_t q = p + 1; q < verts.size(); ++q) {
      const bool antipodal = (verts[p] + verts[q]).isZero();
      if (antipodal && n > 1) continue;
      const double wp = w.dot(verts[p]);
      const double wq = w.dot(verts[q]);
      if (wp == wq) continue;
      for (double level : {0.0, -1.0}) {
        const double t = (level - wp) / (wq - wp);
        if (t < 0.0 || t > 1.0) continue;
        Eigen::VectorXd v = (1.0 - t) * verts[p] + t * verts[q];
        consider(v);
      }
    }
  return {Vector(arg, NormKind::L1), best};
}

LinearMax linear_maximize(const SetSpec& set, const Vector& f, const SolverConfig& cfg) {
  cfg.validate();
  require_dim(set, f.size());
  const Eigen::VectorXd& c = f.coords();
  if (!(c.norm() > 0.0)) throw InvalidInput("functional must be nonzero");
  const NormKind amb = set.ambient();

  switch (set.family()) {
    case SetFamily::Ball2D: {
      Eigen::VectorXd x = c * (set.radius() / c.norm());
      return {Vector(x, amb), c.dot(x)};
    }
    case SetFamily::Square2D: {
      Eigen::VectorXd x = c.unaryExpr([](double v) { return v >= 0.0 ? 0.0 : -1.0; });
      return {Vector(x, amb), c.dot(x)};
    }
    case SetFamily::KMinusP: {
      // sup over (-P) ∩ B of <f, x> = ||P_P(-f)||, attained at -P_P(-f)/||P_P(-f)||.
      const Eigen::VectorXd p = cone_project(ConeSpec::slanted(set.dim()), Eigen::VectorXd(-c));
      const double np = p.norm();
      Eigen::VectorXd x = np > 0.0 ? Eigen::VectorXd(-p / np) : Eigen::VectorXd::Zero(c.size());
      return {Vector(x, amb), c.dot(x)};
    }
    case SetFamily::HalfSpaceCap: {
      Eigen::VectorXd x = c / c.norm();
      if (set.normal().dot(x) > set.offset()) {
        const Eigen::VectorXd& a = set.normal();
        const double aa = a.squaredNorm();
        const Eigen::VectorXd c0 = (set.offset() / aa) * a;
        Eigen::VectorXd w = c - (a.dot(c) / aa) * a;
        const double rho = std::sqrt(std::max(0.0, 1.0 - c0.squaredNorm()));
        x = w.norm() > 1e-300 ? Eigen::VectorXd(c0 + (rho / w.norm()) * w) : project_cap(set, c0);
      }
      return {Vector(x, amb), c.dot(x)};
    }
    case SetFamily::KSlab:
      return slab_vertex_maximize(set, f);
    case SetFamily::KFlat: {
      const Eigen::VectorXd x = flat_argmax(c, set.radius());
      return {Vector(x, amb), c.dot(x)};
    }
    case SetFamily::KBallTriple: {
      const Eigen::VectorXd x = triple_argmax(c);
      return {Vector(x, amb), c.dot(x)};
    }
  }
  throw InvalidInput("unknown set family");
}

std::vector<Vector> sample_set(const SetSpec& set, std::size_t count, std::uint64_t seed) {
  const Eigen::Index n = set.dim();
  const NormKind amb = set.ambient();
  std::vector<Vector> out;
  out.reserve(count);

  if (set.family() == SetFamily::Square2D) {
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    for (std::size_t i = 0; i < side && out.size() < count; ++i)
      for (std::size_t j = 0; j < side && out.size() < count; ++j) {
        const double h = side > 1 ? 1.0 / static_cast<double>(side - 1) : 0.0;
        out.emplace_back(Eigen::Vector2d(-static_cast<double>(i) * h, -static_cast<double>(j) * h), amb);
      }
    return out;
  }
  if (set.family() == SetFamily::Ball2D) {
    // Boundary circle plus concentric rings.
    const std::size_t boundary = count / 4;
    constexpr double kTwoPi = 6.283185307179586;
    for (std::size_t k = 0; k < boundary; ++k) {
      const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(boundary);
      out.emplace_back(Eigen::Vector2d(set.radius() * std::cos(th), set.radius() * std::sin(th)), amb);
    }
    const std::size_t rings = 50;
    const std::size_t per = (count - boundary + rings - 1) / rings;
    for (std::size_t r = 0; r < rings && out.size() < count; ++r)
      for (std::size_t k = 0; k < per && out.size() < count; ++k) {
        const double rad = set.radius() * static_cast<double>(r) / static_cast<double>(rings);
        const double th = kTwoPi * (static_cast<double>(k) + 0.5 * static_cast<double>(r % 2)) /
                          static_cast<double>(per);
        out.emplace_back(Eigen::Vector2d(rad * std::cos(th), rad * std::sin(th)), amb);
      }
    return out;
  }

  Rng rng(seed);
  const Eigen::VectorXd anchor = anchor_point(set);
  const double scale = sample_scale(set);
  while (out.size() < count) {
    Eigen::VectorXd v = rng.normal_vector(n);
    v *= scale * rng.uniform(0.2, 1.5) / std::max(1e-12, v.norm());
    // Sparse directions reach the corners of polyhedral families.
    if (rng.uniform() < 0.25) {
      for (Eigen::Index i = 0; i < n; ++i)
        if (rng.uniform() < 0.7) v(i) = 0.0;
    }
    Eigen::VectorXd p = set_project(set, v);
    if (out.size() % 2 == 1) p = anchor + rng.uniform() * (p - anchor);
    out.emplace_back(std::move(p), amb);
  }
  return out;
}

ConeSpec natural_cone(const SetSpec& set) {
  switch (set.family()) {
    case SetFamily::KMinusP: return ConeSpec::slanted(set.dim());
    case SetFamily::KSlab: return ConeSpec::orthant(set.dim(), NormKind::L1);
    case SetFamily::KBallTriple: return ConeSpec::orthant(set.dim(), NormKind::TRIPLE);
    default: return ConeSpec::orthant(set.dim(), NormKind::L2);
  }
}

}  // namespace conelab
