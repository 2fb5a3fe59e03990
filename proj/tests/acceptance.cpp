// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "conelab/analysis.hpp"
#include "conelab/rng.hpp"

using namespace conelab;
using Eigen::VectorXd;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << what << "; ";
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const long N = 128;
  const SetSpec k = SetSpec::k_flat(N);
  const ConeSpec p = ConeSpec::orthant(N);
  for (long n = 1; n <= 100; ++n) {
    const Vector z = flat_witness(N, n);
    const double nn = static_cast<double>(n);
    o.require(std::abs(z.coords().squaredNorm() - (1 / (2 * nn * nn) + 0.5)) <= 1e-9, "norm_sq n=" + std::to_string(n));
    const double d = (z - cone_project(p, z).point).coords().norm();
    o.require(std::abs(d - 1 / (std::sqrt(2.0) * nn)) <= 1e-9, "dist n=" + std::to_string(n));
    o.require(set_contains(k, z, 1e-9), "member n=" + std::to_string(n));
  }
  const auto rows = gallery(GalleryFamily::Prop37, 100, N);
  for (const auto& r : rows) o.require(r.pass, "gallery row " + std::to_string(r.n));
  const double t = seconds_since(t0);
  o.require(rows.size() == 100 && t < 2.0, "runtime/rows");
  o.note << "rows=" << rows.size() << " t=" << t << "s";
}

void criterion2(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const long N = 128;
  const SetSpec k = SetSpec::k_minus_p(N);
  const ConeSpec p = ConeSpec::slanted(N);
  for (long n = 1; n <= 100; ++n) {
    const Vector z = slanted_witness_z(N, n), w = slanted_witness_w(N, n);
    const double n1 = static_cast<double>(n + 1);
    o.require(std::abs((z - w).coords().norm() - 1 / n1) <= 1e-9, "diff n=" + std::to_string(n));
    o.require(std::abs(z.coords().squaredNorm() - (1 / (4 * n1 * n1) + 0.25)) <= 1e-9, "norm_sq n=" + std::to_string(n));
    o.require(cone_contains(p, w, 1e-9), "w in P n=" + std::to_string(n));
    o.require(set_contains(k, z, 1e-9), "z in K n=" + std::to_string(n));
  }
  const auto rows = gallery(GalleryFamily::Prop33, 100, N);
  for (const auto& r : rows) o.require(r.pass, "gallery row " + std::to_string(r.n));
  const double t = seconds_since(t0);
  o.require(rows.size() == 100 && t < 2.0, "runtime/rows");
  o.note << "rows=" << rows.size() << " t=" << t << "s";
}

void criterion3(Outcome& o) {
  const long N = 128;
  VectorXd f(N);
  for (long i = 0; i < N; ++i) f(i) = 1.0 / static_cast<double>(i + 1);
  for (long n = 2; n <= 100; ++n) {
    const VectorXd x = slab_witness(N, n).coords();
    const double nn = static_cast<double>(n);
    o.require(std::abs(f.dot(x)) <= 1e-12, "f(x) n=" + std::to_string(n));
    o.require(std::abs(x.lpNorm<1>() - (1 + 1 / nn)) <= 1e-12, "l1 n=" + std::to_string(n));
    // l1 distance to the positive cone is the mass of the negative part.
    o.require(x.cwiseMin(0.0).lpNorm<1>() <= 1 / nn + 1e-9, "dist n=" + std::to_string(n));
  }
  const auto rows = gallery(GalleryFamily::Ex34, 100, N);
  for (const auto& r : rows) o.require(r.pass, "gallery row " + std::to_string(r.n));
  o.note << "rows=" << rows.size();
}

void criterion4(Outcome& o) {
  const long N = 128;
  const Vector x = triple_point(N);
  o.require(std::abs(norm(x, NormKind::TRIPLE) - 1.0) <= 1e-12, "|||(2/3)e1||| != 1");
  const double alpha = 1 + std::sqrt((1 - std::pow(4.0, -static_cast<double>(N))) / 3);
  const long n0 = triple_first_index(N);
  double prev_beta = INFINITY, prev_res = INFINITY, first_res = NAN, res = NAN;
  for (long n = n0; n <= n0 + 50; ++n) {
    const VectorXd xp = x.coords() + VectorXd::Unit(N, n - 1) / (2 * alpha);
    const double beta = norm(xp, NormKind::TRIPLE);
    const Vector z = triple_witness(N, n);
    res = norm(Eigen::VectorXd(z.coords() - xp), NormKind::TRIPLE);
    if (n == n0) first_res = res;
    o.require(beta - prev_beta <= 1e-12, "beta increases at n=" + std::to_string(n));
    o.require(res - prev_res <= 1e-12, "residual increases at n=" + std::to_string(n));
    o.require(norm(Eigen::VectorXd(z.coords() - x.coords()), NormKind::TRIPLE) >= 1 / (2 * alpha) - 1e-6,
              "gap bound n=" + std::to_string(n));
    prev_beta = beta;
    prev_res = res;
  }
  o.require(res < first_res, "residual does not decrease");
  for (const auto& r : gallery(GalleryFamily::Prop36, n0 + 50, N)) o.require(r.pass, "gallery row " + std::to_string(r.n));
  o.note << "n0=" << n0 << " beta_last-1=" << prev_beta - 1 << " residual " << first_res << " -> " << res;
}

void criterion5(Outcome& o) {
  double min_val = INFINITY;
  int fails = 0;
  for (long N : {2L, 8L, 32L}) {
    const SetSpec k = SetSpec::k_flat(N);
    const ConeSpec p = ConeSpec::orthant(N);
    for (std::uint64_t s = 1; s <= 20; ++s) {
      Rng rng(s);
      const Vector f((rng.normal_vector(N).array().abs() + 0.05).matrix());
      const auto c = pos_support_check(k, p, Vector::zero(N), f);
      const bool ok = c.verdict == Verdict::kNotSupported && c.witness && set_contains(k, *c.witness, 1e-9) &&
                      inner(f, *c.witness) > 1e-6 &&
                      std::abs(replay_residual(k, p, Vector::zero(N), c, "witness_value") -
                               c.residual("witness_value")) <= 1e-12;
      if (!ok) ++fails;
      if (c.witness) min_val = std::min(min_val, inner(f, *c.witness));
    }
  }
  o.require(fails == 0, std::to_string(fails) + " of 60 functionals not refuted");
  o.note << "60 functionals, min f(witness)=" << min_val;
}

struct Cut {
  SetSpec set;
  ConeSpec cone;
};

// Sweeps N in {4, ..., 64}; true if every value is within bound and the
// sequence strictly decreases.
bool modulus_sweep(Outcome& o, const std::string& name, double eps, Cut (*make)(long), double (*bound)(long)) {
  double prev = INFINITY;
  bool ok = true;
  o.note << name << " eps=" << eps << ":";
  for (long N : {4L, 8L, 16L, 32L, 64L}) {
    const Cut c = make(N);
    const double d = strict_max_modulus(c.set, c.cone, Vector::zero(N), eps).delta_hat;
    o.note << " " << d;
    if (!(d <= bound(N) + 1e-9 && d < prev)) {
      ok = false;
      o.note << " (N=" << N << " bound " << bound(N) << " violated)";
    }
    prev = d;
  }
  o.note << "; ";
  return ok;
}

Cut flat_cut(long N) { return {SetSpec::k_flat(N), ConeSpec::orthant(N)}; }
Cut minus_cut(long N) { return {SetSpec::k_minus_p(N), ConeSpec::slanted(N)}; }
double flat_bound(long N) { return 1 / (std::sqrt(2.0) * static_cast<double>(N - 1)); }
double minus_bound(long N) { return 1 / static_cast<double>(N); }

// Dense search over the unit sphere of -Slanted at N = 4: the modulus of the
// cone K_minusP at 0 is epsilon times this infimum.
double minus_unit_modulus_n4() {
  const ConeSpec p = ConeSpec::slanted(4);
  double best = INFINITY;
  const int G = 40;
  for (int i = 0; i <= G; ++i)
    for (int j = 0; j <= G; ++j)
      for (int k = 0; k <= G; ++k) {
        VectorXd z(4);
        z << -1.0, 2.0 * (2.0 * i / G - 1), 3.0 * (2.0 * j / G - 1), 4.0 * (2.0 * k / G - 1);
        z.normalize();
        best = std::min(best, (z - cone_project(p, z)).norm());
      }
  return best;
}

void criterion6(Outcome& o) {
  o.require(modulus_sweep(o, "kflat", 0.7, flat_cut, flat_bound), "kflat sweep");
  const bool minus = modulus_sweep(o, "kminusp", 0.7, minus_cut, minus_bound);
  o.require(minus, "kminusp sweep at eps=0.7");
  if (!minus) {
    o.note << "grid inf at N=4: " << 0.7 * minus_unit_modulus_n4() << " > 1/4; ";
    const bool small = modulus_sweep(o, "kminusp", 0.4, minus_cut, minus_bound);
    o.note << "eps=0.4 sweep " << (small ? "holds" : "fails") << "; ";
  }
}

void criterion7(Outcome& o) {
  const ConeSpec p = ConeSpec::orthant(2);
  // Unit normal functional at level 1/2: inf_B ||b|| = 1/2, so 0.45 is the
  // largest admissible dilation.
  const auto base = base_of(p, Vector(VectorXd(VectorXd::Ones(2) / std::sqrt(2.0))), 0.5);
  std::vector<double> schedule;
  for (int k = 0; k <= 20; ++k) schedule.push_back(0.45 * std::ldexp(1.0, -k));
  const auto tr = abb_approximate(SetSpec::ball_2d(), p, base, Vector(VectorXd(Eigen::Vector2d(1, 0))), schedule);
  double prev = INFINITY, min_coord = INFINITY, max_res = 0;
  for (const auto& it : tr.iterates) {
    const VectorXd f = it.f.coords() / it.f.coords().norm();
    min_coord = std::min(min_coord, f.minCoeff());
    max_res = std::max(max_res, it.support_residual);
    o.require(it.distance <= prev, "distance increases");
    prev = it.distance;
  }
  o.require(tr.iterates.size() == 21, "trace length");
  o.require(min_coord >= 1e-6, "f not strictly positive enough");
  o.require(max_res <= 1e-8, "support residual");
  o.require(prev < 1e-3, "final distance");
  o.note << "k=0..20 min f coord=" << min_coord << " max residual=" << max_res << " final distance=" << prev;
}

void criterion8(Outcome& o) {
  const ConeSpec p = ConeSpec::orthant(2);
  const double eps = 0.6;
  const auto d = stmax_delta_certificate(SetSpec::square_2d(), p, base_of(p, Vector(VectorXd(VectorXd::Ones(2))), 1.0),
                                         Vector::zero(2), eps);
  const double want = (eps / 3) / std::sqrt(2.0);
  o.require(std::abs(d.delta - want) <= 1e-12 && std::abs(d.alpha - want) <= 1e-12, "delta/alpha");
  o.require(d.samples == 10000 && d.violations == 0, "sampled inclusion");
  o.note << "delta=" << d.delta << " alpha=" << d.alpha << " violations=" << d.violations << "/" << d.samples;
}

void criterion9(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = std::string(PROPERTIES_BIN) + " --gtest_brief=1 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const double t = seconds_since(t0);
  o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "property suite failures");
  o.require(t < 30.0, "runtime");
  o.note << "seeds 1,2,3 t=" << t << "s";
}

}  // namespace

int main() {
  void (*const criteria[])(Outcome&) = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                        criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (int i = 0; i < 9; ++i) {
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    if (!o.ok) ++failed;
    std::printf("%s criterion %d: %s\n", o.ok ? "PASS" : "FAIL", i + 1, o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
