#include "contact/legendrian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <type_traits>

#include "contact/diff.hpp"
#include "contact/geometry.hpp"
#include "contact/tulczyjew.hpp"

namespace contact {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Fiber gradient and fiber Hessian of E at fixed base, one Dual2 evaluation.
void fiber_derivatives(const MorseFamily& fam, std::span<const double> base,
                       std::span<const double> fiber, Eigen::VectorXd* g,
                       Eigen::MatrixXd* J) {
  int m = fam.n_base, K = fam.n_fiber;
  std::vector<Dual2> in(static_cast<std::size_t>(m + K));
  for (int i = 0; i < m; ++i) in[i] = Dual2(base[i]);
  for (int a = 0; a < K; ++a) {
    Dual inner(fiber[a]);
    inner.partials.assign(K, 0.0);
    inner.partials[a] = 1.0;
    in[m + a].value = inner;
    in[m + a].partials.assign(K, Dual(0.0));
    in[m + a].partials[a] = Dual(1.0);
  }
  Dual2 r = fam.E->eval(std::span<const Dual2>(in));
  g->setZero(K);
  for (int a = 0; a < K && static_cast<std::size_t>(a) < r.value.partials.size(); ++a)
    (*g)(a) = r.value.partials[a];
  if (J) {
    J->setZero(K, K);
    for (int a = 0; a < K && static_cast<std::size_t>(a) < r.partials.size(); ++a)
      for (int b = 0; b < K && static_cast<std::size_t>(b) < r.partials[a].partials.size(); ++b)
        (*J)(a, b) = r.partials[a].partials[b];
  }
}

std::vector<double> family_gradient_and_value(const MorseFamily& fam,
                                              std::span<const double> base,
                                              std::span<const double> fiber, double* value) {
  std::vector<double> x(base.begin(), base.end());
  x.insert(x.end(), fiber.begin(), fiber.end());
  std::vector<double> g = gradient(*fam.E, x);
  if (value) *value = (*fam.E)(std::span<const double>(x));
  return g;
}

}  // namespace

bool morse_rank_check(const MorseFamily& fam, std::span<const double> base,
                      std::span<const double> fiber) {
  int m = fam.n_base, K = fam.n_fiber;
  if (K == 0) return true;
  fam.E->check_arity(static_cast<std::size_t>(m + K));
  std::vector<double> x(base.begin(), base.end());
  x.insert(x.end(), fiber.begin(), fiber.end());
  Eigen::MatrixXd H = hessian(*fam.E, x);
  Eigen::MatrixXd block = H.block(m, 0, K, m + K);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  if (smax == 0.0) return false;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * smax) ++rank;
  return rank == K;
}

std::vector<double> critical_fiber(const MorseFamily& fam, std::span<const double> base,
                                   std::span<const double> seed, int max_iter) {
  int K = fam.n_fiber;
  if (K == 0) return {};
  if (static_cast<int>(seed.size()) != K)
    throw std::invalid_argument("fiber seed needs " + std::to_string(K) + " slots");
  std::vector<double> eps(seed.begin(), seed.end());
  Eigen::VectorXd g(K);
  Eigen::MatrixXd J(K, K);
  fiber_derivatives(fam, base, eps, &g, &J);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() <= 1e-10) return eps;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    if (!(lu.rcond() > 1e-14))
      throw NoCriticalFiber("no critical fiber found: fiber Hessian is singular");
    Eigen::VectorXd delta = lu.solve(-g);
    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      std::vector<double> trial(eps);
      for (int a = 0; a < K; ++a) trial[a] += lambda * delta(a);
      Eigen::VectorXd gt(K);
      Eigen::MatrixXd Jt(K, K);
      fiber_derivatives(fam, base, trial, &gt, &Jt);
      if (gt.lpNorm<Eigen::Infinity>() < g.lpNorm<Eigen::Infinity>()) {
        eps = std::move(trial);
        g = gt;
        J = Jt;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw NoCriticalFiber("no critical fiber found: damped Newton stalled");
  }
  if (g.lpNorm<Eigen::Infinity>() <= 1e-10) return eps;
  throw NoCriticalFiber("no critical fiber found within iteration budget");
}

SubmanifoldTest prolong(FieldPtr F) {
  int k = F->arity();
  SubmanifoldTest s;
  s.name = "prolongation";
  s.ambient_dim = 2 * k + 1;
  s.membership = [F, k](std::span<const double> x) {
    if (static_cast<int>(x.size()) != 2 * k + 1)
      throw std::invalid_argument("prolongation point needs 2k+1 slots");
    std::span<const double> base = x.subspan(0, static_cast<std::size_t>(k));
    std::vector<double> g = gradient(*F, base);
    double v = (*F)(base);
    std::vector<double> res(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) res[i] = x[k + i] - g[i];
    res[k] = x[2 * k] - v;
    return res;
  };
  s.param_dim = k;
  s.parametrize = [F, k](std::span<const double> base) {
    std::vector<double> g = gradient(*F, base);
    double v = (*F)(base);
    std::vector<double> pt(base.begin(), base.end());
    pt.insert(pt.end(), g.begin(), g.end());
    pt.push_back(v);
    return pt;
  };
  return s;
}

SubmanifoldTest legendrian_from_morse(const MorseFamily& fam, FiberSeed seed,
                                      bool with_z_slot) {
  int m = fam.n_base;
  SubmanifoldTest s;
  s.name = "morse family legendrian";
  s.ambient_dim = with_z_slot ? 2 * m + 1 : 2 * m;
  MorseFamily f = fam;
  s.membership = [f, seed, with_z_slot, m](std::span<const double> x) {
    if (static_cast<int>(x.size()) != (with_z_slot ? 2 * m + 1 : 2 * m))
      throw std::invalid_argument("morse membership point has wrong dimension");
    std::span<const double> base = x.subspan(0, static_cast<std::size_t>(m));
    std::vector<double> eps0 = seed(x);
    std::vector<double> eps = critical_fiber(f, base, eps0);
    double value = 0.0;
    std::vector<double> g = family_gradient_and_value(f, base, eps, &value);
    std::vector<double> res;
    res.reserve(static_cast<std::size_t>(m) + (with_z_slot ? 1 : 0));
    for (int i = 0; i < m; ++i) res.push_back(x[m + i] - g[i]);
    if (with_z_slot) res.push_back(x[2 * m] - value);
    return res;
  };
  return s;
}

SubmanifoldTest hamiltonian_legendrian(const HamiltonianSystem& sys) {
  int n = sys.n;
  SubmanifoldTest s;
  s.name = "flow legendrian of -H";
  s.ambient_dim = 4 * n + 3;
  HamiltonianSystem sy = sys;
  s.membership = [sy, n](std::span<const double> x) {
    ExtTangentPoint pt = unflatten_ext_tangent(x);
    FieldValue f = contact_hamiltonian_field(sy, pt.base);
    std::vector<double> res;
    res.reserve(2 * static_cast<std::size_t>(n) + 2);
    for (int i = 0; i < n; ++i) res.push_back(pt.qdot[i] - f.lift.qdot[i]);
    for (int i = 0; i < n; ++i) res.push_back(pt.pdot[i] - f.lift.pdot[i]);
    res.push_back(pt.zdot - f.lift.zdot);
    res.push_back(pt.u - f.conformal);
    return res;
  };
  s.param_dim = 2 * n + 1;
  s.parametrize = [sy](std::span<const double> base) {
    FieldValue f = contact_hamiltonian_field(sy, unflatten_contact(base));
    return flatten(f.lift);
  };
  return s;
}

SubmanifoldTest negative_prolongation(FieldPtr H) {
  int k = H->arity();
  SubmanifoldTest s;
  s.name = "image of -dH";
  s.ambient_dim = 2 * k + 1;
  s.membership = [H, k](std::span<const double> x) {
    if (static_cast<int>(x.size()) != 2 * k + 1)
      throw std::invalid_argument("prolongation point needs 2k+1 slots");
    std::span<const double> base = x.subspan(0, static_cast<std::size_t>(k));
    std::vector<double> g = gradient(*H, base);
    double v = (*H)(base);
    std::vector<double> res(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) res[i] = x[k + i] + g[i];
    res[k] = x[2 * k] + v;
    return res;
  };
  s.param_dim = k;
  s.parametrize = [H, k](std::span<const double> base) {
    std::vector<double> g = gradient(*H, base);
    double v = (*H)(base);
    std::vector<double> pt(base.begin(), base.end());
    for (int i = 0; i < k; ++i) pt.push_back(-g[i]);
    pt.push_back(-v);
    return pt;
  };
  return s;
}

namespace {

// Slots of the Lagrangian-side Legendrian at state (q, qdot, z).
std::vector<double> lagrangian_point(const LagrangianSystem& sys,
                                     std::span<const double> state, bool evolution) {
  int n = sys.n;
  std::vector<double> g = gradient(*sys.L, state);
  double L = (*sys.L)(std::span<const double>(state));
  double Lz = g[2 * static_cast<std::size_t>(n)];
  ExtTangentPoint pt;
  pt.base.q.assign(state.begin(), state.begin() + n);
  pt.base.p.assign(g.begin() + n, g.begin() + 2 * n);
  pt.base.z = state[2 * static_cast<std::size_t>(n)];
  pt.qdot.assign(state.begin() + n, state.begin() + 2 * n);
  pt.pdot.resize(n);
  for (int i = 0; i < n; ++i) pt.pdot[i] = Lz * g[n + i] + g[i];
  if (evolution) {
    pt.zdot = 0.0;
    for (int i = 0; i < n; ++i) pt.zdot += state[n + i] * g[n + i];
  } else {
    pt.zdot = L;
  }
  pt.u = -Lz;
  return flatten(pt);
}

std::vector<double> lagrangian_residuals(const LagrangianSystem& sys,
                                         std::span<const double> x, bool evolution) {
  int n = sys.n;
  ExtTangentPoint pt = unflatten_ext_tangent(x);
  std::vector<double> state(pt.base.q);
  state.insert(state.end(), pt.qdot.begin(), pt.qdot.end());
  state.push_back(pt.base.z);
  std::vector<double> expected = lagrangian_point(sys, state, evolution);
  std::vector<double> res;
  res.reserve(2 * static_cast<std::size_t>(n) + 2);
  for (int i = 0; i < n; ++i) res.push_back(x[n + i] - expected[n + i]);          // p slots
  for (int i = 0; i < n; ++i)
    res.push_back(x[3 * n + 1 + i] - expected[3 * n + 1 + i]);                    // pdot slots
  res.push_back(x[4 * n + 1] - expected[4 * n + 1]);                              // zdot
  res.push_back(x[4 * n + 2] - expected[4 * n + 2]);                              // u
  return res;
}

}  // namespace

SubmanifoldTest lagrangian_legendrian(const LagrangianSystem& sys) {
  int n = sys.n;
  SubmanifoldTest s;
  s.name = "lagrangian legendrian";
  s.ambient_dim = 4 * n + 3;
  LagrangianSystem sy = sys;
  s.membership = [sy](std::span<const double> x) {
    return lagrangian_residuals(sy, x, false);
  };
  s.param_dim = 2 * n + 1;
  s.parametrize = [sy](std::span<const double> state) {
    return lagrangian_point(sy, state, false);
  };
  return s;
}

SubmanifoldTest evolution_lagrangian_submanifold(const LagrangianSystem& sys) {
  int n = sys.n;
  SubmanifoldTest s;
  s.name = "evolution lagrangian submanifold";
  s.ambient_dim = 4 * n + 3;
  LagrangianSystem sy = sys;
  s.membership = [sy](std::span<const double> x) {
    return lagrangian_residuals(sy, x, true);
  };
  s.param_dim = 2 * n + 1;
  s.parametrize = [sy](std::span<const double> state) {
    return lagrangian_point(sy, state, true);
  };
  return s;
}

MorseFamily energy_family(const LagrangianSystem& sys) {
  int n = sys.n;
  std::vector<std::string> lc = sys.L->coords();
  std::vector<std::string> coords;
  coords.reserve(3 * static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) coords.push_back(lc[i]);
  for (int i = 0; i < n; ++i)
    coords.push_back(n == 1 ? "p" : "p" + std::to_string(i + 1));
  coords.push_back(lc[2 * static_cast<std::size_t>(n)]);
  for (int i = 0; i < n; ++i) coords.push_back(lc[n + i]);
  FieldPtr L = sys.L;
  MorseFamily fam;
  fam.n_base = 2 * n + 1;
  fam.n_fiber = n;
  fam.E = make_field(std::move(coords), [L, n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> state;
    state.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) state.push_back(x[i]);                      // q
    for (int i = 0; i < n; ++i) state.push_back(x[2 * n + 1 + i]);          // qdot
    state.push_back(x[2 * n]);                                              // z
    T e = T(0.0);
    for (int i = 0; i < n; ++i) e = e + x[n + i] * x[2 * n + 1 + i];
    return e - L->eval(std::span<const T>(state));
  });
  return fam;
}

VerificationReport legendre_equivalence(const LagrangianSystem& sys,
                                        const std::string& label, int samples, Rng& rng,
                                        double tolerance, double box_lo, double box_hi) {
  int n = sys.n;
  CoordMap leg = beta_c(n);
  SubmanifoldTest nl = lagrangian_legendrian(sys);
  double max_res = 0.0;

  auto energy_image_residual = [&](std::span<const double> y) {
    // Closed-form image of the energy generator in T*(T*Q x R) x R:
    // with qdot read from the -b slots, p = dL/dqdot, a = dL/dq, v = dL/dz,
    // w = L - p.qdot.
    ExtCotangentPoint pt = unflatten_ext_cotangent(y);
    std::vector<double> state(pt.base.q);
    for (int i = 0; i < n; ++i) state.push_back(-pt.b[i]);
    state.push_back(pt.base.z);
    std::vector<double> g = gradient(*sys.L, state);
    double L = (*sys.L)(std::span<const double>(state));
    double r = 0.0, pq = 0.0;
    for (int i = 0; i < n; ++i) {
      r = std::max(r, std::abs(pt.base.p[i] - g[n + i]));
      r = std::max(r, std::abs(pt.a[i] - g[i]));
      pq += pt.base.p[i] * (-pt.b[i]);
    }
    r = std::max(r, std::abs(pt.v - g[2 * n]));
    r = std::max(r, std::abs(pt.w - (L - pq)));
    return r;
  };

  for (int s = 0; s < samples; ++s) {
    std::vector<double> state = rng.box(2 * n + 1, box_lo, box_hi);

    // Forward: Lagrangian Legendrian point pushed through the beta leg.
    std::vector<double> pt = nl.parametrize(state);
    std::vector<double> image = leg.forward(std::span<const double>(pt));
    max_res = std::max(max_res, energy_image_residual(image));

    // Reverse: closed-form energy image pulled back through the inverse leg.
    std::vector<double> g = gradient(*sys.L, state);
    double L = (*sys.L)(std::span<const double>(state));
    ExtCotangentPoint img;
    img.base.q.assign(state.begin(), state.begin() + n);
    img.base.p.assign(g.begin() + n, g.begin() + 2 * n);
    img.base.z = state[2 * static_cast<std::size_t>(n)];
    img.a.assign(g.begin(), g.begin() + n);
    img.b.resize(n);
    double pq = 0.0;
    for (int i = 0; i < n; ++i) {
      img.b[i] = -state[n + i];
      pq += g[n + i] * state[n + i];
    }
    img.v = g[2 * n];
    img.w = L - pq;
    std::vector<double> back = leg.inverse(std::span<const double>(flatten(img)));
    max_res = std::max(max_res, max_abs(nl.membership(back)));
  }
  return finalize_report("legendre equivalence " + label, samples, max_res, tolerance);
}

double tangency_residual(const SubmanifoldTest& s, std::span<const double> params, double h) {
  if (!s.parametrize) throw std::logic_error("submanifold has no parametrization");
  std::vector<double> pt = s.parametrize(params);
  ExtTangentPoint at = unflatten_ext_tangent(pt);
  Eigen::MatrixXd T = fd_jacobian_of(
      [&s](std::span<const double> u) { return s.parametrize(u); }, params, h);
  double r = 0.0;
  for (Eigen::Index c = 0; c < T.cols(); ++c) {
    std::vector<double> col(static_cast<std::size_t>(T.rows()));
    for (Eigen::Index i = 0; i < T.rows(); ++i) col[static_cast<std::size_t>(i)] = T(i, c);
    r = std::max(r, std::abs(eta_T_eval(at, col)));
  }
  return r;
}

double membership_residual(const SubmanifoldTest& s, std::span<const double> point) {
  std::vector<double> res = s.membership(point);
  return max_abs(res);
}

}  // namespace contact
