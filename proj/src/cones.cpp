#include "conelab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/rng.hpp"
#include "conelab/solvers.hpp"

namespace conelab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(const ConeSpec& cone, Eigen::Index n) {
  if (cone.dim() != n) throw InvalidInput("dimension mismatch between cone and vector");
}

// Norm of the coordinate ray e_i (i counted from 0) in the given norm.
double ray_norm(Eigen::Index i, NormKind kind) {
  return kind == NormKind::TRIPLE ? 1.0 + std::ldexp(1.0, -static_cast<int>(i + 1)) : 1.0;
}

// Extreme rays of the slanted cone are (1, ±2, ±3, ..., ±N); they share the
// Euclidean norm sqrt(1 + sum n^2).
double slanted_ray_norm(Eigen::Index dim) {
  double s = 1.0;
  for (Eigen::Index n = 2; n <= dim; ++n) s += static_cast<double>(n * n);
  return std::sqrt(s);
}

// min over extreme rays of <h, r> = h_1 - sum n |h_n|.
double slanted_min_ray_value(const Eigen::VectorXd& h) {
  double v = h(0);
  for (Eigen::Index i = 1; i < h.size(); ++i) v -= static_cast<double>(i + 1) * std::abs(h(i));
  return v;
}

// min over sign patterns s of <h, r_s> / <g, r_s>, with <g, r_s> > 0 for all s
// (Dinkelbach iteration; terminates after finitely many pattern changes).
double slanted_min_ray_ratio(const Eigen::VectorXd& h, const Eigen::VectorXd& g) {
  const Eigen::Index n = h.size();
  Eigen::VectorXd sign(n);
  sign(0) = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) sign(i) = h(i) > 0.0 ? -1.0 : 1.0;
  auto ratio = [&](const Eigen::VectorXd& s) {
    double num = h(0);
    double den = g(0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double w = static_cast<double>(i + 1) * s(i);
      num += w * h(i);
      den += w * g(i);
    }
    return num / den;
  };
  double lambda = ratio(sign);
  for (int it = 0; it < 200; ++it) {
    for (Eigen::Index i = 1; i < n; ++i) sign(i) = (h(i) - lambda * g(i)) > 0.0 ? -1.0 : 1.0;
    const double next = ratio(sign);
    if (!(next < lambda - 1e-15 * std::abs(lambda))) break;
    lambda = next;
  }
  return lambda;
}

Eigen::VectorXd project_orthant(const Eigen::VectorXd& z) { return z.cwiseMax(0.0); }

Eigen::VectorXd project_slanted(const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  if (n == 1) return z.cwiseMax(0.0);

  const Eigen::VectorXd a = z.tail(n - 1).cwiseAbs();
  // Half subderivative in the first coordinate p of the reduced objective
  // (z_1 - p)^2 + sum (|z_n| - n p)_+^2.
  auto slope = [&](double p) {
    double v = p - z(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double w = static_cast<double>(i + 2);
      const double excess = a(i) - w * p;
      if (excess > 0.0) v -= w * excess;
    }
    return v;
  };
  if (slope(0.0) >= 0.0) return Eigen::VectorXd::Zero(n);

  double hi = z(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) hi = std::max(hi, a(i) / static_cast<double>(i + 2));
  hi += 1e-12 * std::max(1.0, hi);  // keeps slope(hi) >= 0 under rounding
  SolverConfig cfg;
  cfg.tol = 1e-16 * std::max(1.0, hi);
  double p = bisect_monotone(slope, 0.0, hi, cfg).root;

  // Closed form on the identified active set.
  double num = z(0);
  double den = 1.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double w = static_cast<double>(i + 2);
    if (a(i) > w * p) {
      num += w * a(i);
      den += w * w;
    }
  }
  const double polished = num / den;
  if (polished >= 0.0 && std::abs(slope(polished)) <= std::abs(slope(p))) p = polished;

  Eigen::VectorXd out(n);
  out(0) = p;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double bound = static_cast<double>(i + 1) * p;
    out(i) = std::clamp(z(i), -bound, bound);
  }
  return out;
}

Eigen::VectorXd project_dilated(const Dilated& d, const Eigen::VectorXd& z) {
  const double m = base_min_norm_point(d.base).coords().norm();
  const double zn = z.norm();
  if (zn == 0.0) return z;
  const double t_max = 2.0 * zn / (m - d.delta) + 1.0;

  auto piece = [&](double t, Eigen::VectorXd* point) {
    if (t <= 0.0) {
      if (point) *point = Eigen::VectorXd::Zero(z.size());
      return zn;
    }
    const Eigen::VectorXd q = t * project_onto_base(d.base, z / t);
    const Eigen::VectorXd r = z - q;
    const double rn = r.norm();
    const double radius = t * d.delta;
    if (rn <= radius) {
      if (point) *point = z;
      return 0.0;
    }
    if (point) *point = q + (radius / rn) * r;
    return rn - radius;
  };
  const double t = golden_section_min([&](double s) { return piece(s, nullptr); }, 0.0, t_max,
                                      1e-15 * t_max);
  Eigen::VectorXd out;
  piece(t, &out);
  return out;
}

void require_primal_match(const ConeSpec& cone, const BaseSpec& base) {
  const bool ok = std::visit(
      Overloaded{[&](const Orthant& o) {
                   const auto* b = std::get_if<Orthant>(&base.cone);
                   return b != nullptr && b->ambient == o.ambient;
                 },
                 [&](const Slanted&) { return std::holds_alternative<Slanted>(base.cone); },
                 [](const Dilated&) { return false; }},
      cone.family());
  if (!ok) throw InvalidParameter("base does not belong to this cone");
  if (cone.dim() != base.dim()) throw InvalidInput("dimension mismatch between cone and base");
}

double base_norm_sup(const PrimalCone& cone, const Eigen::VectorXd& g, double level) {
  return std::visit(Overloaded{[&](const Orthant& o) {
                                 double s = 0.0;
                                 for (Eigen::Index i = 0; i < g.size(); ++i)
                                   s = std::max(s, ray_norm(i, o.ambient) / g(i));
                                 return level * s;
                               },
                               [&](const Slanted&) {
                                 return level * slanted_ray_norm(g.size()) / slanted_min_ray_value(g);
                               }},
                    cone);
}

}  // namespace

ConeSpec ConeSpec::orthant(Eigen::Index dim, NormKind ambient) {
  if (dim < 1) throw InvalidInput("cone dimension must be positive");
  return ConeSpec(Orthant{ambient}, dim);
}

ConeSpec ConeSpec::slanted(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("cone dimension must be positive");
  return ConeSpec(Slanted{}, dim);
}

ConeSpec ConeSpec::from_primal(const PrimalCone& cone, Eigen::Index dim) {
  return std::visit(Overloaded{[&](const Orthant& o) { return orthant(dim, o.ambient); },
                               [&](const Slanted&) { return slanted(dim); }},
                    cone);
}

NormKind ConeSpec::ambient() const {
  return std::visit(Overloaded{[](const Orthant& o) { return o.ambient; },
                               [](const Slanted&) { return NormKind::L2; },
                               [](const Dilated&) { return NormKind::L2; }},
                    family_);
}

double cone_violation(const ConeSpec& cone, const Vector& x) {
  require_dim(cone, x.size());
  const Eigen::VectorXd& c = x.coords();
  return std::visit(
      Overloaded{[&](const Orthant&) { return std::max(0.0, -c.minCoeff()); },
                 [&](const Slanted&) {
                   double v = std::max(0.0, -c(0));
                   for (Eigen::Index i = 1; i < c.size(); ++i)
                     v = std::max(v, std::abs(c(i)) - static_cast<double>(i + 1) * c(0));
                   return v;
                 },
                 [&](const Dilated& d) { return (c - project_dilated(d, c)).norm(); }},
      cone.family());
}

bool cone_contains(const ConeSpec& cone, const Vector& x, double tol) {
  return cone_violation(cone, x) <= tol;
}

Eigen::VectorXd cone_project(const ConeSpec& cone, const Eigen::VectorXd& z) {
  require_dim(cone, z.size());
  return std::visit(Overloaded{[&](const Orthant&) { return project_orthant(z); },
                               [&](const Slanted&) { return project_slanted(z); },
                               [&](const Dilated& d) { return project_dilated(d, z); }},
                    cone.family());
}

Projection cone_project(const ConeSpec& cone, const Vector& z, double /*tol*/) {
  Eigen::VectorXd p = cone_project(cone, z.coords());
  const double dist = norm(Eigen::VectorXd(z.coords() - p), cone.ambient());
  return {Vector(std::move(p), z.ambient()), dist};
}

double dual_margin(const ConeSpec& cone, const Vector& f) {
  require_dim(cone, f.size());
  const Eigen::VectorXd& c = f.coords();
  return std::visit(
      Overloaded{[&](const Orthant& o) {
                   const double scale = dual_norm(c, o.ambient);
                   if (scale == 0.0) return 0.0;
                   double m = std::numeric_limits<double>::infinity();
                   for (Eigen::Index i = 0; i < c.size(); ++i)
                     m = std::min(m, c(i) / ray_norm(i, o.ambient));
                   return m / scale;
                 },
                 [&](const Slanted&) {
                   const double scale = c.norm();
                   if (scale == 0.0) return 0.0;
                   return slanted_min_ray_value(c) / (slanted_ray_norm(c.size()) * scale);
                 },
                 [&](const Dilated& d) {
                   const double scale = c.norm();
                   if (scale == 0.0) return 0.0;
                   return base_infimum(d.base, f) / scale - d.delta;
                 }},
      cone.family());
}

bool dual_strictly_positive(const ConeSpec& cone, const Vector& f, double margin) {
  return dual_margin(cone, f) > margin;
}

BaseSpec base_of(const ConeSpec& cone, const Vector& f, double level) {
  require_dim(cone, f.size());
  if (cone.is_dilated()) throw InvalidParameter("bases are taken of orthant or slanted cones only");
  if (!(level > 0.0) || !std::isfinite(level)) throw InvalidParameter("base level must be positive");
  if (!dual_strictly_positive(cone, f, 0.0))
    throw InvalidParameter("base functional is not strictly positive on the cone");

  BaseSpec base{std::holds_alternative<Orthant>(cone.family())
                    ? PrimalCone(std::get<Orthant>(cone.family()))
                    : PrimalCone(Slanted{}),
                f, level};
  const Eigen::VectorXd& g = f.coords();
  base.norm_sup = base_norm_sup(base.cone, g, level);
  const Eigen::Index half = (g.size() + 1) / 2;
  base.norm_sup_half = base_norm_sup(base.cone, g.head(half), level);
  base.bounded = g.size() == 1 || base.norm_sup <= 1.5 * base.norm_sup_half;
  return base;
}

double base_infimum(const BaseSpec& base, const Vector& h) {
  if (h.size() != base.dim()) throw InvalidInput("dimension mismatch between base and functional");
  const Eigen::VectorXd& g = base.functional.coords();
  const Eigen::VectorXd& c = h.coords();
  return std::visit(Overloaded{[&](const Orthant&) {
                                 return base.level * (c.array() / g.array()).minCoeff();
                               },
                               [&](const Slanted&) {
                                 return base.level * slanted_min_ray_ratio(c, g);
                               }},
                    base.cone);
}

Eigen::VectorXd project_onto_base(const BaseSpec& base, const Eigen::VectorXd& z) {
  if (z.size() != base.dim()) throw InvalidInput("dimension mismatch between base and vector");
  const Eigen::VectorXd& g = base.functional.coords();
  return std::visit(
      Overloaded{[&](const Orthant&) { return project_weighted_simplex(z, g, base.level); },
                 [&](const Slanted&) -> Eigen::VectorXd {
                   if (z.size() > 1 &&
                       g.tail(z.size() - 1).lpNorm<Eigen::Infinity>() > 1e-14 * std::abs(g(0)))
                     throw InvalidParameter(
                         "slanted bases are supported for functionals proportional to e_1 only");
                   const double x1 = base.level / g(0);
                   Eigen::VectorXd out(z.size());
                   out(0) = x1;
                   for (Eigen::Index i = 1; i < z.size(); ++i) {
                     const double bound = static_cast<double>(i + 1) * x1;
                     out(i) = std::clamp(z(i), -bound, bound);
                   }
                   return out;
                 }},
      base.cone);
}

Vector base_min_norm_point(const BaseSpec& base) {
  return Vector(project_onto_base(base, Eigen::VectorXd::Zero(base.dim())), NormKind::L2);
}

double max_dilation(const BaseSpec& base) { return 0.9 * base_min_norm_point(base).coords().norm(); }

ConeSpec dilate(const ConeSpec& cone, const BaseSpec& base, double delta) {
  if (cone.is_dilated()) throw InvalidParameter("cone is already dilated");
  require_primal_match(cone, base);
  if (cone.ambient() != NormKind::L2) throw InvalidParameter("dilation is implemented for l2 cones");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidParameter("dilation radius must be positive");
  if (delta > max_dilation(base))
    throw InvalidParameter("dilation radius exceeds 0.9 * inf_B ||b||; dilated cone would not be pointed");
  return ConeSpec(Dilated{base, delta}, cone.dim());
}

Vector interior_functional(const ConeSpec& cone) {
  const Eigen::Index n = cone.dim();
  return std::visit(
      Overloaded{[&](const Orthant& o) {
                   Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
                   return Vector(ones / dual_norm(ones, o.ambient), o.ambient);
                 },
                 [&](const Slanted&) { return Vector::unit(n, 1); },
                 [&](const Dilated& d) {
                   const Eigen::VectorXd b = base_min_norm_point(d.base).coords();
                   return Vector(b / b.norm());
                 }},
      cone.family());
}

std::vector<Vector> cone_generators(const ConeSpec& cone) {
  const Eigen::Index n = cone.dim();
  const NormKind amb = cone.ambient();
  std::vector<Vector> out;
  auto slanted_rays = [&](double scale, std::vector<Eigen::VectorXd>& rays) {
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
    e1(0) = scale;
    rays.push_back(e1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (double s : {1.0, -1.0}) {
        Eigen::VectorXd r = e1;
        r(i) = s * static_cast<double>(i + 1) * scale;
        rays.push_back(r);
      }
    if (n > 1) {
      Eigen::VectorXd plus = e1;
      Eigen::VectorXd alt = e1;
      for (Eigen::Index i = 1; i < n; ++i) {
        plus(i) = static_cast<double>(i + 1) * scale;
        alt(i) = (i % 2 ? 1.0 : -1.0) * plus(i);
      }
      rays.push_back(plus);
      rays.push_back(alt);
    }
  };

  std::visit(Overloaded{[&](const Orthant&) {
                          for (Eigen::Index k = 1; k <= n; ++k) out.push_back(Vector::unit(n, k, amb));
                        },
                        [&](const Slanted&) {
                          std::vector<Eigen::VectorXd> rays;
                          slanted_rays(1.0, rays);
                          for (auto& r : rays) out.emplace_back(std::move(r), amb);
                        },
                        [&](const Dilated& d) {
                          std::vector<Eigen::VectorXd> vertices;
                          const Eigen::VectorXd& g = d.base.functional.coords();
                          if (std::holds_alternative<Orthant>(d.base.cone)) {
                            for (Eigen::Index i = 0; i < n; ++i) {
                              Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
                              v(i) = d.base.level / g(i);
                              vertices.push_back(v);
                            }
                          } else {
                            slanted_rays(d.base.level / g(0), vertices);
                          }
                          for (const auto& v : vertices) {
                            out.emplace_back(v, amb);
                            for (Eigen::Index j = 0; j < n; ++j)
                              for (double s : {1.0, -1.0}) {
                                Eigen::VectorXd w = v;
                                w(j) += s * d.delta;
                                out.emplace_back(std::move(w), amb);
                              }
                          }
                        }},
             cone.family());
  return out;
}

std::vector<Vector> sample_cone(const ConeSpec& cone, std::size_t count, std::uint64_t seed) {
  const Eigen::Index n = cone.dim();
  const NormKind amb = cone.ambient();
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  while (out.size() < count) {
    Eigen::VectorXd v(n);
    std::visit(Overloaded{[&](const Orthant&) {
                            for (Eigen::Index i = 0; i < n; ++i)
                              v(i) = rng.uniform() < 0.3 ? 0.0 : std::abs(rng.normal());
                          },
                          [&](const Slanted&) {
                            v(0) = rng.uniform();
                            for (Eigen::Index i = 1; i < n; ++i) {
                              const double u = rng.uniform() < 0.3 ? (rng.uniform() < 0.5 ? -1.0 : 1.0)
                                                                   : rng.uniform(-1.0, 1.0);
                              v(i) = u * static_cast<double>(i + 1) * v(0);
                            }
                          },
                          [&](const Dilated& d) {
                            const Eigen::VectorXd& g = d.base.functional.coords();
                            Eigen::VectorXd b(n);
                            if (std::holds_alternative<Orthant>(d.base.cone)) {
                              Eigen::VectorXd w(n);
                              for (Eigen::Index i = 0; i < n; ++i) w(i) = -std::log(1.0 - rng.uniform());
                              w /= w.sum();
                              b = d.base.level * w.cwiseQuotient(g);
                            } else {
                              b(0) = d.base.level / g(0);
                              for (Eigen::Index i = 1; i < n; ++i)
                                b(i) = rng.uniform(-1.0, 1.0) * static_cast<double>(i + 1) * b(0);
                            }
                            Eigen::VectorXd u = rng.normal_vector(n);
                            u *= rng.uniform() / u.norm();
                            v = b + d.delta * u;
                          }},
               cone.family());
    const double nv = v.norm();
    if (nv < 1e-12) continue;
    v *= rng.uniform(0.1, 1.5) / nv;
    out.emplace_back(std::move(v), amb);
  }
  return out;
}

}  // namespace conelab
