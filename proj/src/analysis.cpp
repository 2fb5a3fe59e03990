#include "conelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conelab/rng.hpp"

namespace conelab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dims(const SetSpec& set, const ConeSpec& cone, const Vector& x) {
  if (set.dim() != x.size() || cone.dim() != x.size())
    throw InvalidInput("dimension mismatch between set, cone and point");
}

// Distance from w to the cone, measured in the set's ambient norm. Every
// cone here is either l2 (Euclidean projection) or an orthant under a
// lattice norm (clipping), so the projection realizes the distance.
double cone_distance(const ConeSpec& cone, const Eigen::VectorXd& w, NormKind amb) {
  const Eigen::VectorXd p = cone_project(cone, w);
  return norm(Eigen::VectorXd(w - p), amb);
}

// Largest t with x + t g in K. Constraints within tol of equality at x count
// as active and may not increase at all; the others may use their slack.
double max_step(const SetSpec& set, const Eigen::VectorXd& x, const Eigen::VectorXd& g, double tol) {
  auto inside = [&](double t) {
    const ConstraintStep st = set_constraint_step(set, x, Eigen::VectorXd(t * g));
    for (Eigen::Index j = 0; j < st.value.size(); ++j) {
      const bool active = st.value(j) >= -tol;
      if (active ? st.increment(j) > 0.0 : st.value(j) + st.increment(j) > 0.0) return false;
    }
    return true;
  };
  double hi = 1.0;
  while (inside(hi)) {
    if (hi > 1e3) return hi;
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int i = 0; i < 80 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Unit ray minimizing f(r)/||r||, i.e. the worst direction for positivity.
Vector worst_ray(const ConeSpec& cone, const Vector& f) {
  const Eigen::Index n = cone.dim();
  const Eigen::VectorXd& c = f.coords();
  if (const auto* o = std::get_if<Orthant>(&cone.family())) {
    Eigen::Index k = 0;
    Eigen::VectorXd scaled(n);
    for (Eigen::Index i = 0; i < n; ++i) scaled(i) = c(i) / norm(Eigen::VectorXd(Eigen::VectorXd::Unit(n, i)), o->ambient);
    scaled.minCoeff(&k);
    return Vector::unit(n, k + 1, o->ambient);
  }
  if (std::holds_alternative<Slanted>(cone.family())) {
    Eigen::VectorXd r(n);
    r(0) = 1.0;
    for (Eigen::Index i = 1; i < n; ++i) r(i) = (c(i) > 0.0 ? -1.0 : 1.0) * static_cast<double>(i + 1);
    return Vector(r / r.norm());
  }
  std::optional<Vector> best;
  double worst = kInf;
  for (const auto& g : cone_generators(cone)) {
    const double v = c.dot(g.coords()) / g.coords().norm();
    if (v < worst) {
      worst = v;
      best = Vector(g.coords() / g.coords().norm(), cone.ambient());
    }
  }
  return *best;
}

LinearMax robust_maximize(const SetSpec& set, const Vector& f, const SolverConfig& cfg) {
  try {
    return linear_maximize(set, f, cfg);
  } catch (const SolverFailure& e) {
    Vector x(e.best_iterate(), set.ambient());
    return {x, inner(f, x)};
  }
}

}  // namespace

Certificate is_maximal(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                       const SolverConfig& cfg) {
  cfg.validate();
  require_dims(set, cone, x);
  if (!set_contains(set, x, cfg.tol)) throw InvalidParameter("point is not in the set");

  const NormKind amb = set.ambient();
  const Eigen::VectorXd& xc = x.coords();
  const double baseline = std::max(0.0, set_violation(set, x));
  const double threshold = 10.0 * cfg.tol;

  Certificate cert;
  double best_gap = 0.0;
  std::optional<Eigen::VectorXd> best_y;

  auto try_direction = [&](Eigen::VectorXd g) {
    g = cone_project(cone, g);
    const double gn = g.norm();
    if (!(gn > 1e-12)) return;
    g /= gn;
    const double t = max_step(set, xc, g, cfg.tol);
    const Eigen::VectorXd y = xc + t * g;
    const double gap = norm(Eigen::VectorXd(y - xc), amb);
    if (gap > best_gap) {
      best_gap = gap;
      best_y = y;
    }
  };

  try {
    for (const auto& g : cone_generators(cone)) try_direction(g.coords());
    const auto samples = sample_cone(cone, static_cast<std::size_t>(4 * cfg.multistarts), cfg.seed);
    for (const auto& g : samples) try_direction(g.coords());

    const Projector proj_k = [&](const Eigen::VectorXd& z) { return set_project(set, z); };
    const Projector proj_shifted = [&](const Eigen::VectorXd& z) {
      return Eigen::VectorXd(xc + cone_project(cone, Eigen::VectorXd(z - xc)));
    };
    // Alternating projections between K and x + P from cone directions.
    for (int s = 0; s < cfg.multistarts && s < static_cast<int>(samples.size()); ++s) {
      Eigen::VectorXd b = proj_k(Eigen::VectorXd(xc + samples[static_cast<std::size_t>(s)].coords()));
      for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd a = proj_shifted(b);
        const Eigen::VectorXd next = proj_k(a);
        const double moved = (next - b).norm();
        b = next;
        if (moved < cfg.tol) break;
      }
      try_direction(b - xc);
    }
    SolverConfig admm_cfg = cfg;
    admm_cfg.max_iter = std::min<long>(cfg.max_iter, 500);
    const AdmmResult res =
        admm_linear_max(interior_functional(cone).coords(), proj_k, proj_shifted, xc, admm_cfg);
    try_direction(res.x - xc);
    try_direction(res.z - xc);
  } catch (const SolverFailure& e) {
    cert.verdict = Verdict::kInconclusive;
    cert.record("best_gap", best_gap);
    return cert;
  }

  if (best_y && best_gap > threshold) {
    const Vector y(*best_y, amb);
    const double sv = set_violation(set, y);
    const double cv = cone_violation(cone, Vector(Eigen::VectorXd(*best_y - xc), cone.ambient()));
    if (sv <= std::max(cfg.tol, baseline) && cv <= cfg.tol) {
      cert.verdict = Verdict::kDominated;
      cert.witness = y;
      cert.record("set_violation", sv);
      cert.record("cone_violation", cv);
      cert.record("gap", best_gap);
      return cert;
    }
  }
  cert.verdict = Verdict::kMaximal;
  cert.record("best_gap", best_gap);
  return cert;
}

FlatDominance nonmax_certificate_flat(const Vector& x, Eigen::Index dim,
                                      std::optional<double> epsilon, double tol) {
  if (x.size() != dim) throw InvalidInput("point does not have the stated truncation dimension");
  if (dim < 2) throw InvalidInput("the flat set needs N >= 2");
  const Eigen::VectorXd& c = x.coords();
  for (Eigen::Index i = 1; i < dim; ++i)
    if (c(0) + c(i) * c(i) > tol) throw InvalidParameter("point is not in the flat set");
  if (!(c(0) < -tol)) throw InvalidParameter("first coordinate must be negative");

  const double a = -c(0);
  Eigen::Index n0 = -1;
  for (Eigen::Index i = 1; i < dim; ++i) {
    if (c(i) * c(i) >= a - tol) continue;
    if (n0 < 0 || std::abs(c(i)) < std::abs(c(n0))) n0 = i;
  }
  if (n0 < 0) throw TruncationSaturated("every index 2..N satisfies x_n^2 = |x_1|");

  const double room = std::sqrt(a) - std::abs(c(n0));
  double eps = 0.5 * room;
  if (epsilon) {
    eps = *epsilon;
    if (!(eps > 0.0) || !(a > std::pow(std::abs(c(n0)) + eps, 2)))
      throw InvalidParameter("epsilon must satisfy |x_1| > (|x_n0| + epsilon)^2");
  }
  Eigen::VectorXd y = c;
  y(n0) += eps;
  return {n0 + 1, eps, Vector(y, x.ambient())};
}

Certificate pos_support_check(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                              const Vector& f, const SolverConfig& cfg) {
  cfg.validate();
  require_dims(set, cone, x);
  if (f.size() != x.size()) throw InvalidInput("functional dimension mismatch");
  if (!set_contains(set, x, cfg.tol)) throw InvalidParameter("point is not in the set");

  Certificate cert;
  const Vector fk(f.coords(), set.ambient());
  cert.functional = fk;
  const double margin = dual_margin(cone, Vector(f.coords(), cone.ambient()));
  cert.record("margin", margin);
  if (!(margin > cfg.tol)) {
    cert.verdict = Verdict::kNotStrictlyPositive;
    cert.witness = worst_ray(cone, Vector(f.coords(), cone.ambient())).with_ambient(set.ambient());
    cert.record("witness_value", inner(fk, *cert.witness));
    return cert;
  }
  const LinearMax lm = robust_maximize(set, fk, cfg);
  const double fx = inner(fk, x.with_ambient(set.ambient()));
  cert.record("sup", lm.value);
  cert.record("value", fx);
  cert.record("support_gap", lm.value - fx);
  if (lm.value <= fx + cfg.tol) {
    cert.verdict = Verdict::kSupported;
  } else {
    cert.verdict = Verdict::kNotSupported;
    cert.witness = lm.x;
    cert.record("witness_value", inner(fk, lm.x));
    cert.record("set_violation", set_violation(set, lm.x));
  }
  return cert;
}

PositivePoint find_positive_point(const SetSpec& set, const ConeSpec& cone, const BaseSpec& base,
                                  const std::optional<Vector>& f, const SolverConfig& cfg) {
  if (!base.bounded) throw InvalidParameter("the cone base is not bounded");
  if (base.dim() != set.dim()) throw InvalidInput("dimension mismatch between base and set");
  const Vector f0 = f ? Vector(f->coords(), set.ambient()) : base.functional.with_ambient(set.ambient());
  const LinearMax lm = linear_maximize(set, f0, cfg);
  Certificate cert = pos_support_check(set, cone, lm.x, f0, cfg);
  return {lm.x, f0, std::move(cert)};
}

std::vector<Vector> modulus_witness_family(const SetSpec& set, const ConeSpec& cone,
                                           const Vector& x, double epsilon, double tol) {
  require_dims(set, cone, x);
  const Eigen::Index n = set.dim();
  const NormKind amb = set.ambient();
  std::vector<Vector> out;

  // Keep z if it is far enough from x, else stretch it radially to epsilon
  // when the stretched point stays in K.
  auto admit = [&](const Eigen::VectorXd& z) {
    const double d = norm(Eigen::VectorXd(z - x.coords()), amb);
    if (d >= epsilon - tol) {
      if (set_contains(set, Vector(z, amb), tol)) out.emplace_back(z, amb);
      return;
    }
    if (!(d > 0.0)) return;
    const Eigen::VectorXd s = x.coords() + (epsilon / d) * (z - x.coords());
    if (set_contains(set, Vector(s, amb), tol)) out.emplace_back(s, amb);
  };

  const bool at_zero = x.coords().isZero(0.0);
  const bool orthant = std::holds_alternative<Orthant>(cone.family());
  const bool slanted = std::holds_alternative<Slanted>(cone.family());
  switch (set.family()) {
    case SetFamily::KFlat:
      if (at_zero && orthant)
        for (long k = 1; k < n; ++k) admit(flat_witness(n, k).coords());
      break;
    case SetFamily::KMinusP:
      if (at_zero && slanted)
        for (long k = 1; k < n; ++k) admit(slanted_witness_z(n, k).coords());
      break;
    case SetFamily::KSlab:
      if (at_zero && orthant)
        for (long k = 2; k <= n; ++k) admit(slab_witness(n, k).coords());
      break;
    case SetFamily::KBallTriple:
      if (orthant && (x.coords() - triple_point(n).coords()).lpNorm<Eigen::Infinity>() <= 1e-12)
        for (long k = triple_first_index(n); k <= n; ++k) admit(triple_witness(n, k).coords());
      break;
    default:
      break;
  }
  return out;
}

ModulusReport strict_max_modulus(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                                 double epsilon, const SolverConfig& cfg) {
  cfg.validate();
  require_dims(set, cone, x);
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");

  ModulusReport rep;
  rep.epsilon = epsilon;
  const Certificate max_cert = is_maximal(set, cone, x, cfg);
  if (max_cert.verdict == Verdict::kDominated) {
    rep.delta_hat = 0.0;
    rep.witness = max_cert.witness;
    rep.source = "dominated";
    rep.upper_bound_only = false;
    rep.strictly_maximal = false;
    return rep;
  }

  const NormKind amb = set.ambient();
  const Eigen::VectorXd& xc = x.coords();
  const Eigen::Index n = set.dim();

  rep.family_value = kInf;
  std::optional<Vector> family_best;
  for (const auto& z : modulus_witness_family(set, cone, x, epsilon, cfg.tol)) {
    const double d = cone_distance(cone, Eigen::VectorXd(z.coords() - xc), amb);
    if (d < rep.family_value) {
      rep.family_value = d;
      family_best = z;
    }
  }

  // Generic search: projected steps on d(z - x, P)^2 / 2 - mu ||z - x||, with
  // mu adapted so that the iterates hover at distance epsilon from x.
  rep.generic_value = kInf;
  std::optional<Vector> generic_best;
  std::vector<double> start_best;
  Rng rng(cfg.seed);
  const auto gens = cone_generators(cone);
  const double feasible = epsilon * (1.0 - 1e-12);
  for (int s = 0; s < cfg.multistarts; ++s) {
    Eigen::VectorXd v = rng.normal_vector(n);
    if (s < static_cast<int>(gens.size()) && s % 2 == 1) v = -gens[static_cast<std::size_t>(s)].coords();
    v /= v.norm();
    Eigen::VectorXd z = set_project(set, Eigen::VectorXd(xc + 1.5 * epsilon * v));
    double mu = 0.5 * epsilon;
    double best = kInf;
    Eigen::VectorXd arg;
    auto evaluate = [&](const Eigen::VectorXd& y) {
      const double wn = norm(Eigen::VectorXd(y - xc), amb);
      if (wn < feasible || set_violation(set, Vector(y, amb)) > cfg.tol) return;
      const double d = cone_distance(cone, Eigen::VectorXd(y - xc), amb);
      if (d < best) {
        best = d;
        arg = y;
      }
    };
    for (int it = 0; it < 300; ++it) {
      const Eigen::VectorXd w = z - xc;
      const Eigen::VectorXd grad = w - cone_project(cone, w);
      const double wn = w.norm();
      const Eigen::VectorXd u = wn > 1e-14 ? Eigen::VectorXd(w / wn) : v;
      z = set_project(set, Eigen::VectorXd(z - grad + mu * u));
      const double zn = norm(Eigen::VectorXd(z - xc), amb);
      evaluate(z);
      if (zn > 0.0 && zn < feasible) evaluate(Eigen::VectorXd(xc + (epsilon / zn) * (z - xc)));
      mu *= zn < feasible ? 1.25 : 0.85;
    }
    start_best.push_back(best);
    if (best < rep.generic_value) {
      rep.generic_value = best;
      generic_best = Vector(arg, amb);
    }
  }

  const bool agree = std::isfinite(rep.generic_value) &&
                     std::all_of(start_best.begin(), start_best.end(),
                                 [&](double b) { return std::abs(b - rep.generic_value) <= 1e-6; });
  if (rep.family_value <= rep.generic_value) {
    rep.delta_hat = rep.family_value;
    rep.witness = family_best;
    rep.source = "family";
  } else {
    rep.delta_hat = rep.generic_value;
    rep.witness = generic_best;
    rep.source = "search";
  }
  if (!std::isfinite(rep.delta_hat)) {
    // Nothing in K reaches distance epsilon from x: the inclusion holds vacuously.
    rep.source = "empty";
    rep.upper_bound_only = false;
    rep.strictly_maximal = max_cert.verdict == Verdict::kMaximal;
    return rep;
  }
  rep.upper_bound_only = !(agree && rep.generic_value <= rep.family_value);
  rep.strictly_maximal = rep.delta_hat > cfg.tol;
  return rep;
}

std::vector<double> geometric_schedule(double delta0, double ratio, int count) {
  if (!(delta0 > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 1)
    throw InvalidParameter("geometric schedule needs delta0 > 0, 0 < ratio < 1, count >= 1");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(delta0 * std::pow(ratio, k));
  return out;
}

namespace {

struct DualPoint {
  Eigen::VectorXd h;
  Eigen::VectorXd x;  // point of K ∩ (xbar + P_k) for the ADMM path
  long iterations = 0;
  bool converged = false;
  bool primal = false;
};

// Planar case of min { sigma_{K - xbar}(g + lambda) : lambda in P_k^* }, the
// dual of max { <g, y> : y in K ∩ (xbar + P_k) }. Writing lambda = s l with
// l a unit direction of P_k^*, the inner problem in s is convex and the outer
// one in the angle of l is unimodal, so both are exact 1-D searches.
DualPoint planar_dual(const SetSpec& set, const ConeSpec& dilated, const Eigen::VectorXd& g,
                      const Eigen::VectorXd& xc, const SolverConfig& cfg) {
  const NormKind amb = set.ambient();
  auto gap = [&](const Eigen::VectorXd& h) {
    return robust_maximize(set, Vector(h, amb), cfg).value - h.dot(xc);
  };
  const double g_angle = std::atan2(g(1), g(0));
  auto dir = [&](double phi) {
    return Eigen::Vector2d(std::cos(g_angle + phi), std::sin(g_angle + phi)).eval();
  };
  auto feasible = [&](double phi) {
    return dual_margin(dilated, Vector(Eigen::VectorXd(dir(phi)))) >= 0.0;
  };
  auto edge = [&](double sign) {
    double lo = 0.0;
    double hi = sign * 1.5707963267948966;
    for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-16; ++i) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
  };
  const double phi_lo = edge(-1.0);
  const double phi_hi = edge(1.0);

  long evaluations = 0;
  auto ray_min = [&](double phi, double* s_out) {
    const Eigen::VectorXd l = dir(phi);
    auto along = [&](double s) {
      ++evaluations;
      return gap(Eigen::VectorXd(g + s * l));
    };
    double top = 1.0;
    while (top < 1e15 && along(2.0 * top) < along(top)) top *= 2.0;
    const double s = golden_section_min(along, 0.0, 2.0 * top, 1e-14 * top);
    const double v = along(s);
    const double v0 = along(0.0);
    if (v0 <= v) {
      if (s_out) *s_out = 0.0;
      return v0;
    }
    if (s_out) *s_out = s;
    return v;
  };
  const double phi =
      golden_section_min([&](double p) { return ray_min(p, nullptr); }, phi_lo, phi_hi, 1e-15);
  double s = 0.0;
  ray_min(phi, &s);
  DualPoint out;
  out.h = g + s * dir(phi);
  out.iterations = evaluations;
  out.converged = true;
  return out;
}

}  // namespace

AbbTrace abb_approximate(const SetSpec& set, const ConeSpec& cone, const BaseSpec& base,
                         const Vector& xbar, const std::vector<double>& schedule,
                         const SolverConfig& cfg) {
  cfg.validate();
  require_dims(set, cone, xbar);
  if (schedule.empty()) throw InvalidParameter("empty dilation schedule");
  for (std::size_t k = 1; k < schedule.size(); ++k)
    if (!(schedule[k] < schedule[k - 1])) throw InvalidParameter("schedule must be strictly decreasing");
  if (!set_contains(set, xbar, cfg.tol)) throw InvalidParameter("target point is not in the set");

  const NormKind amb = set.ambient();
  const Eigen::VectorXd& xc = xbar.coords();
  const Projector proj_k = [&](const Eigen::VectorXd& z) { return set_project(set, z); };

  AbbTrace trace;
  trace.schedule = schedule;
  for (double delta : schedule) {
    const ConeSpec dilated = dilate(cone, base, delta);
    const Eigen::VectorXd g = interior_functional(dilated).coords();

    DualPoint dp;
    if (set.dim() == 2) {
      dp = planar_dual(set, dilated, g, xc, cfg);
    } else {
      const Projector proj_shifted = [&](const Eigen::VectorXd& z) {
        return Eigen::VectorXd(xc + cone_project(dilated, Eigen::VectorXd(z - xc)));
      };
      const AdmmResult res = admm_linear_max(g, proj_k, proj_shifted, xc, cfg);
      dp.h = res.functional;
      dp.x = res.x;
      dp.iterations = res.iterations;
      dp.converged = res.converged;
      dp.primal = true;
    }
    Eigen::VectorXd h = dp.h;
    if (!dual_strictly_positive(dilated, Vector(h), 0.0)) h = g;
    h /= dual_norm(h, amb);

    const LinearMax lm = robust_maximize(set, Vector(h, amb), cfg);
    const Eigen::VectorXd xk = dp.primal ? dp.x : lm.x.coords();
    AbbIterate it{Vector(xk, amb), Vector(h, amb)};
    it.support_residual = std::max(0.0, lm.value - h.dot(xk));
    it.distance = norm(Eigen::VectorXd(xk - xc), amb);
    it.cone_gap = (xk - xc - cone_project(dilated, Eigen::VectorXd(xk - xc))).norm();
    it.margin = dual_margin(cone, Vector(h, cone.ambient()));
    it.iterations = dp.iterations;
    it.converged = dp.converged;
    trace.iterates.push_back(std::move(it));
  }
  return trace;
}

DeltaCertificate stmax_delta_certificate(const SetSpec& set, const ConeSpec& cone,
                                         const BaseSpec& base, const Vector& xbar, double epsilon,
                                         const SolverConfig& cfg, long samples) {
  cfg.validate();
  require_dims(set, cone, xbar);
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  if (base.dim() != set.dim()) throw InvalidInput("dimension mismatch between base and set");

  const ConeSpec primal = ConeSpec::from_primal(base.cone, base.dim());
  BaseSpec b = base;
  if (b.norm_sup > epsilon / 3.0) b = base_of(primal, base.functional, base.level * (epsilon / 3.0) / base.norm_sup);

  const NormKind amb = set.ambient();
  const Eigen::VectorXd& xc = xbar.coords();
  const Projector proj_shifted_k = [&](const Eigen::VectorXd& z) {
    return Eigen::VectorXd(set_project(set, Eigen::VectorXd(z + xc)) - xc);
  };
  const Projector proj_base = [&](const Eigen::VectorXd& z) { return project_onto_base(b, z); };

  const DistanceResult dr =
      alternating_distance(proj_shifted_k, proj_base, base_min_norm_point(b).coords(), 1e-15, 100000);
  if (!(dr.distance > cfg.tol))
    throw SeparationFailure("K - xbar meets the base of P; xbar is not maximal");

  const Eigen::VectorXd fc = (dr.b - dr.a) / (dr.b - dr.a).norm();
  DeltaCertificate out{0.0, Vector(fc, amb)};
  out.level = b.level;
  out.alpha = base_infimum(b, Vector(fc, b.functional.ambient()));
  out.sup_value = robust_maximize(set, out.f, cfg).value - fc.dot(xc);
  if (!(out.sup_value < out.alpha)) {
    std::ostringstream msg;
    msg << "separation failed: sup f(K - xbar) = " << out.sup_value << " >= inf f(B) = " << out.alpha;
    throw SeparationFailure(msg.str());
  }
  out.delta = std::min(out.alpha, epsilon / 3.0);

  // Sampled inclusion (P + delta B) ∩ (K - xbar) ⊆ epsilon B.
  const auto ks = sample_set(set, static_cast<std::size_t>(samples / 2), cfg.seed);
  const auto ps = sample_cone(cone, static_cast<std::size_t>(samples - samples / 2), cfg.seed + 1);
  Rng rng(cfg.seed + 2);
  for (const auto& k : ks) {
    const Eigen::VectorXd y = k.coords() - xc;
    ++out.samples;
    if (cone_distance(cone, y, amb) <= out.delta && norm(y, amb) > epsilon + cfg.tol) ++out.violations;
  }
  for (const auto& p : ps) {
    Eigen::VectorXd u = rng.normal_vector(set.dim());
    u *= rng.uniform() / u.norm();
    const Eigen::VectorXd y = rng.uniform() * epsilon * p.coords() + out.delta * u;
    ++out.samples;
    if (set_contains(set, Vector(Eigen::VectorXd(y + xc), amb), 0.0) && norm(y, amb) > epsilon + cfg.tol)
      ++out.violations;
  }
  return out;
}

std::string_view to_string(GalleryFamily family) {
  switch (family) {
    case GalleryFamily::Prop33: return "prop33";
    case GalleryFamily::Ex34: return "ex34";
    case GalleryFamily::Prop36: return "prop36";
    case GalleryFamily::Prop37: return "prop37";
  }
  return "?";
}

GalleryFamily gallery_family_from_string(std::string_view name) {
  for (auto f : {GalleryFamily::Prop33, GalleryFamily::Ex34, GalleryFamily::Prop36, GalleryFamily::Prop37})
    if (to_string(f) == name) return f;
  throw InvalidInput("unknown gallery family: " + std::string(name));
}

Vector flat_witness(Eigen::Index dim, long n) {
  if (n < 1 || n + 1 > dim) throw InvalidInput("flat witness needs 1 <= n <= N - 1");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
  const double nn = static_cast<double>(n);
  z(0) = -1.0 / (std::sqrt(2.0) * nn);
  z.segment(1, n).setConstant(1.0 / std::sqrt(2.0 * nn));
  return Vector(z);
}

Vector slanted_witness_z(Eigen::Index dim, long n) {
  if (n < 1 || n + 1 > dim) throw InvalidInput("slanted witness needs 1 <= n <= N - 1");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
  z(0) = -1.0 / (2.0 * static_cast<double>(n + 1));
  z(n) = 0.5;
  return Vector(z);
}

Vector slanted_witness_w(Eigen::Index dim, long n) {
  Eigen::VectorXd w = slanted_witness_z(dim, n).coords();
  w(0) = -w(0);
  return Vector(w);
}

Vector slab_witness(Eigen::Index dim, long n) {
  if (n < 2 || n > dim) throw InvalidInput("slab witness needs 2 <= n <= N");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  x(n - 1) = 1.0;
  x(0) = -1.0 / static_cast<double>(n);
  return Vector(x, NormKind::L1);
}

Vector triple_point(Eigen::Index dim) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  x(0) = 2.0 / 3.0;
  return Vector(x, NormKind::TRIPLE);
}

long triple_first_index(Eigen::Index dim) {
  const Eigen::VectorXd x = triple_point(dim).coords();
  const double bound = 1.0 / (2.0 * triple_alpha(dim));
  for (Eigen::Index i = 1; i < dim; ++i)
    if (std::abs(x(i)) <= bound) return static_cast<long>(i + 1);
  throw TruncationSaturated("no index n >= 2 with |x_n| <= 1/(2 alpha)");
}

Vector triple_witness(Eigen::Index dim, long n) {
  if (n < 1 || n > dim) throw InvalidInput("index out of range");
  Eigen::VectorXd y = triple_point(dim).coords();
  y(n - 1) += 1.0 / (2.0 * triple_alpha(dim));
  const double beta = norm(y, NormKind::TRIPLE);
  return Vector(y / beta, NormKind::TRIPLE);
}

std::vector<GalleryRow> gallery(GalleryFamily family, long n_max, Eigen::Index dim, double tol) {
  if (n_max < 1 || n_max + 1 > dim) throw InvalidInput("gallery needs 1 <= n_max <= N - 1");
  std::vector<GalleryRow> rows;
  switch (family) {
    case GalleryFamily::Prop37: {
      const SetSpec k = SetSpec::k_flat(dim);
      const ConeSpec p = ConeSpec::orthant(dim);
      for (long n = 1; n <= n_max; ++n) {
        const Vector z = flat_witness(dim, n);
        const double nn = static_cast<double>(n);
        GalleryRow row;
        row.n = n;
        const double nsq = z.coords().squaredNorm();
        const double nsq_expected = 1.0 / (2.0 * nn * nn) + 0.5;
        const double dist = cone_project(p, z).dist;
        const double dist_expected = 1.0 / (std::sqrt(2.0) * nn);
        row.set("norm_sq", nsq);
        row.set("norm_sq_expected", nsq_expected);
        row.set("dist", dist);
        row.set("dist_expected", dist_expected);
        row.check("norm_sq_match", std::abs(nsq - nsq_expected) <= tol);
        row.check("dist_match", std::abs(dist - dist_expected) <= tol);
        row.check("member", set_contains(k, z, tol));
        row.check("norm_floor", std::sqrt(nsq) >= std::sqrt(0.5) - tol);
        rows.push_back(std::move(row));
      }
      break;
    }
    case GalleryFamily::Prop33: {
      const SetSpec k = SetSpec::k_minus_p(dim);
      const ConeSpec p = ConeSpec::slanted(dim);
      for (long n = 1; n <= n_max; ++n) {
        const Vector z = slanted_witness_z(dim, n);
        const Vector w = slanted_witness_w(dim, n);
        const double n1 = static_cast<double>(n + 1);
        GalleryRow row;
        row.n = n;
        const double diff = (z - w).coords().norm();
        const double nsq = z.coords().squaredNorm();
        const double nsq_expected = 1.0 / (4.0 * n1 * n1) + 0.25;
        const double dist = cone_project(p, z).dist;
        row.set("diff_norm", diff);
        row.set("diff_expected", 1.0 / n1);
        row.set("norm_sq", nsq);
        row.set("norm_sq_expected", nsq_expected);
        row.set("dist", dist);
        row.check("diff_match", std::abs(diff - 1.0 / n1) <= tol);
        row.check("norm_sq_match", std::abs(nsq - nsq_expected) <= tol);
        row.check("w_in_cone", cone_contains(p, w, tol));
        row.check("z_in_set", set_contains(k, z, tol));
        row.check("dist_bound", dist <= diff + tol);
        rows.push_back(std::move(row));
      }
      break;
    }
    case GalleryFamily::Ex34: {
      const SetSpec k = SetSpec::k_slab(dim);
      const ConeSpec p = ConeSpec::orthant(dim, NormKind::L1);
      Eigen::VectorXd f(dim);
      for (Eigen::Index i = 0; i < dim; ++i) f(i) = 1.0 / static_cast<double>(i + 1);
      const Vector fv(f, NormKind::L1);
      for (long n = 2; n <= n_max; ++n) {
        const Vector x = slab_witness(dim, n);
        const double nn = static_cast<double>(n);
        GalleryRow row;
        row.n = n;
        const double fx = inner(fv, x);
        const double l1 = norm(x, NormKind::L1);
        const double dist = cone_project(p, x).dist;
        row.set("f_value", fx);
        row.set("l1_norm", l1);
        row.set("l1_expected", 1.0 + 1.0 / nn);
        row.set("dist", dist);
        row.set("dist_bound", 1.0 / nn);
        row.check("f_zero", std::abs(fx) <= 1e-12);
        row.check("l1_match", std::abs(l1 - (1.0 + 1.0 / nn)) <= 1e-12);
        row.check("dist_within_bound", dist <= 1.0 / nn + tol);
        row.check("member", set_contains(k, x, tol));
        rows.push_back(std::move(row));
      }
      break;
    }
    case GalleryFamily::Prop36: {
      const SetSpec k = SetSpec::k_ball_triple(dim);
      const ConeSpec p = ConeSpec::orthant(dim, NormKind::TRIPLE);
      const Vector x = triple_point(dim);
      const double alpha = triple_alpha(dim);
      const double bound = 1.0 / (2.0 * alpha);
      const long n0 = triple_first_index(dim);
      double prev_beta = kInf;
      double prev_residual = kInf;
      for (long n = n0; n <= n_max; ++n) {
        Eigen::VectorXd xp = x.coords();
        xp(n - 1) += bound;
        const double beta = norm(xp, NormKind::TRIPLE);
        const Vector z = triple_witness(dim, n);
        const double residual = norm(Eigen::VectorXd(z.coords() - xp), NormKind::TRIPLE);
        const double gap = norm(Eigen::VectorXd(z.coords() - x.coords()), NormKind::TRIPLE);
        const double dist = cone_distance(p, Eigen::VectorXd(z.coords() - x.coords()), NormKind::TRIPLE);
        GalleryRow row;
        row.n = n;
        row.set("beta", beta);
        row.set("beta_step", std::isfinite(prev_beta) ? beta - prev_beta : 0.0);
        row.set("residual", residual);
        row.set("gap", gap);
        row.set("gap_bound", bound);
        row.set("dist", dist);
        row.check("beta_monotone", !std::isfinite(prev_beta) || beta - prev_beta <= 1e-12);
        row.check("residual_monotone", !std::isfinite(prev_residual) || residual - prev_residual <= 1e-12);
        row.check("gap_bound_holds", gap >= bound - 1e-6);
        row.check("member", set_contains(k, z, tol));
        row.check("dist_bound", dist <= residual + tol);
        prev_beta = beta;
        prev_residual = residual;
        rows.push_back(std::move(row));
      }
      break;
    }
  }
  return rows;
}

double replay_residual(const SetSpec& set, const ConeSpec& cone, const Vector& x,
                       const Certificate& cert, std::string_view name) {
  if (!cert.witness) throw InvalidInput("certificate has no witness");
  const Vector& y = *cert.witness;
  if (name == "set_violation") return set_violation(set, y.with_ambient(set.ambient()));
  if (name == "cone_violation")
    return cone_violation(cone, Vector(Eigen::VectorXd(y.coords() - x.coords()), cone.ambient()));
  if (name == "gap") return norm(Eigen::VectorXd(y.coords() - x.coords()), set.ambient());
  if (name == "witness_value") {
    if (!cert.functional) throw InvalidInput("certificate has no functional");
    return cert.functional->coords().dot(y.coords());
  }
  throw InvalidInput("no replay rule for residual " + std::string(name));
}

}  // namespace conelab
