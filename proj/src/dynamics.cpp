#include "contact/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "contact/diff.hpp"

namespace contact {

namespace {

void check_system(const ScalarField& f, int n, const char* what) {
  if (f.arity() != 2 * n + 1)
    throw std::invalid_argument(std::string(what) + " must have 2n+1 = " +
                                std::to_string(2 * n + 1) + " coordinates");
}

}  // namespace

FieldValue contact_hamiltonian_field(const HamiltonianSystem& sys, const ContactPoint& x) {
  int n = sys.n;
  check_system(*sys.H, n, "Hamiltonian");
  std::vector<double> flat_x = flatten(x);
  double H = (*sys.H)(flat_x);
  std::vector<double> g = gradient(*sys.H, flat_x);
  double Hz = g[2 * static_cast<std::size_t>(n)];
  FieldValue out;
  out.lift.base = x;
  out.lift.qdot.resize(n);
  out.lift.pdot.resize(n);
  double p_dot_Hp = 0.0;
  for (int i = 0; i < n; ++i) {
    out.lift.qdot[i] = g[n + i];
    out.lift.pdot[i] = -g[i] - x.p[i] * Hz;
    p_dot_Hp += x.p[i] * g[n + i];
  }
  out.lift.zdot = p_dot_Hp - H;
  out.lift.u = Hz;
  out.conformal = Hz;
  return out;
}

FieldValue evolution_field(const HamiltonianSystem& sys, const ContactPoint& x) {
  FieldValue out = contact_hamiltonian_field(sys, x);
  double H = (*sys.H)(std::span<const double>(flatten(x)));
  out.lift.zdot += H;  // the contact field plus H times the Reeb field
  return out;
}

double jacobi_bracket(const ScalarField& F, const ScalarField& H, const ContactPoint& x) {
  int n = x.n();
  check_system(F, n, "bracket argument");
  check_system(H, n, "bracket argument");
  std::vector<double> flat_x = flatten(x);
  double fv = F(flat_x), hv = H(flat_x);
  std::vector<double> gf = gradient(F, flat_x);
  std::vector<double> gh = gradient(H, flat_x);
  double r = 0.0, p_gf = 0.0, p_gh = 0.0;
  for (int i = 0; i < n; ++i) {
    r += gf[i] * gh[n + i] - gf[n + i] * gh[i];
    p_gf += x.p[i] * gf[n + i];
    p_gh += x.p[i] * gh[n + i];
  }
  r += (fv - p_gf) * gh[2 * n] - (hv - p_gh) * gf[2 * n];
  return r;
}

namespace {

LagrangianRhs second_order_rhs(const LagrangianSystem& sys, std::span<const double> state,
                               bool evolution) {
  int n = sys.n;
  check_system(*sys.L, n, "Lagrangian");
  if (static_cast<int>(state.size()) != 2 * n + 1)
    throw std::invalid_argument("Lagrangian state needs 2n+1 slots");

  auto seeded = seed_dual2(state);
  Dual2 r = sys.L->eval(std::span<const Dual2>(seeded));
  double L = r.value.value;
  auto d1 = [&](int i) {
    return static_cast<std::size_t>(i) < r.value.partials.size() ? r.value.partials[i] : 0.0;
  };
  auto d2 = [&](int i, int j) {
    if (static_cast<std::size_t>(i) >= r.partials.size()) return 0.0;
    const auto& row = r.partials[static_cast<std::size_t>(i)].partials;
    return static_cast<std::size_t>(j) < row.size() ? row[static_cast<std::size_t>(j)] : 0.0;
  };

  double Lz = d1(2 * n);
  double zdot;
  if (evolution) {
    zdot = 0.0;
    for (int i = 0; i < n; ++i) zdot += state[n + i] * d1(n + i);
  } else {
    zdot = L;
  }

  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = d2(n + i, n + j);
    double bi = d1(i) + Lz * d1(n + i);
    for (int j = 0; j < n; ++j) bi -= d2(n + i, j) * state[n + j];
    bi -= d2(n + i, 2 * n) * zdot;
    b(i) = bi;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  if (!(lu.rcond() > 1e-12))
    throw SingularLagrangian("velocity Hessian is singular; second-order dynamics undefined");
  Eigen::VectorXd qdd = lu.solve(b);

  LagrangianRhs out;
  out.qdot.assign(state.begin() + n, state.begin() + 2 * n);
  out.qddot.assign(qdd.data(), qdd.data() + n);
  out.zdot = zdot;
  return out;
}

}  // namespace

LagrangianRhs herglotz_rhs(const LagrangianSystem& sys, std::span<const double> state) {
  return second_order_rhs(sys, state, false);
}

LagrangianRhs evolution_herglotz_rhs(const LagrangianSystem& sys,
                                     std::span<const double> state) {
  return second_order_rhs(sys, state, true);
}

ContactPoint fiber_derivative(const LagrangianSystem& sys, std::span<const double> state) {
  int n = sys.n;
  check_system(*sys.L, n, "Lagrangian");
  std::vector<double> g = gradient(*sys.L, state);
  ContactPoint x;
  x.q.assign(state.begin(), state.begin() + n);
  x.p.assign(g.begin() + n, g.begin() + 2 * n);
  x.z = state[2 * static_cast<std::size_t>(n)];
  return x;
}

Trajectory integrate(const Rhs& rhs, std::span<const double> y0, double t0, double t1,
                     double step,
                     const std::vector<std::pair<std::string, Monitor>>& monitors) {
  if (!(step > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (!(t1 >= t0)) throw std::invalid_argument("integration span must run forward");

  Trajectory traj;
  for (const auto& [name, fn] : monitors) traj.diagnostics[name] = {};

  std::vector<double> y(y0.begin(), y0.end());
  auto store = [&](double t) {
    traj.t.push_back(t);
    traj.states.push_back(y);
    for (const auto& [name, fn] : monitors)
      traj.diagnostics[name].push_back(fn(t, std::span<const double>(y)));
  };
  store(t0);

  double span = t1 - t0;
  long nfull = static_cast<long>(std::floor(span / step));
  while (nfull > 0 && t0 + static_cast<double>(nfull) * step > t1) --nfull;
  bool remainder = t0 + static_cast<double>(nfull) * step < t1 - 1e-12 * step;
  long total = nfull + (remainder ? 1 : 0);

  std::size_t m = y.size();
  std::vector<double> k1, k2, k3, k4, tmp(m);
  for (long k = 0; k < total; ++k) {
    double ta = t0 + static_cast<double>(k) * step;
    double tb = k + 1 <= nfull ? t0 + static_cast<double>(k + 1) * step : t1;
    double dt = tb - ta;
    // A stage leaving a field's domain means the state escaped in finite
    // time; truncate like a non-finite step instead of aborting the run.
    try {
      k1 = rhs(ta, std::span<const double>(y));
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
      k2 = rhs(ta + 0.5 * dt, std::span<const double>(tmp));
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
      k3 = rhs(ta + 0.5 * dt, std::span<const double>(tmp));
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + dt * k3[i];
      k4 = rhs(tb, std::span<const double>(tmp));
    } catch (const DomainError&) {
      traj.blew_up = true;
      break;
    }
    bool finite = true;
    for (std::size_t i = 0; i < m; ++i) {
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      finite = finite && std::isfinite(y[i]);
    }
    if (!finite) {
      traj.blew_up = true;
      break;
    }
    store(tb);
  }
  return traj;
}

Trajectory simulate_hamiltonian(const HamiltonianSystem& sys, const ContactPoint& x0,
                                double t0, double t1, double step, bool evolution,
                                const std::vector<std::pair<std::string, Monitor>>& monitors) {
  int n = sys.n;
  Rhs rhs = [&sys, n, evolution](double, std::span<const double> y) {
    FieldValue f = evolution ? evolution_field(sys, unflatten_contact(y))
                             : contact_hamiltonian_field(sys, unflatten_contact(y));
    std::vector<double> dy(2 * static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
      dy[i] = f.lift.qdot[i];
      dy[n + i] = f.lift.pdot[i];
    }
    dy[2 * n] = f.lift.zdot;
    return dy;
  };
  Trajectory traj = integrate(rhs, flatten(x0), t0, t1, step, monitors);
  traj.state_names = sys.H->coords();
  return traj;
}

Trajectory simulate_lagrangian(const LagrangianSystem& sys, std::span<const double> state0,
                               double t0, double t1, double step, bool evolution,
                               const std::vector<std::pair<std::string, Monitor>>& monitors) {
  int n = sys.n;
  Rhs rhs = [&sys, n, evolution](double, std::span<const double> y) {
    LagrangianRhs r = evolution ? evolution_herglotz_rhs(sys, y) : herglotz_rhs(sys, y);
    std::vector<double> dy(2 * static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
      dy[i] = r.qdot[i];
      dy[n + i] = r.qddot[i];
    }
    dy[2 * n] = r.zdot;
    return dy;
  };
  Trajectory traj = integrate(rhs, state0, t0, t1, step, monitors);
  traj.state_names = sys.L->coords();
  return traj;
}

VerificationReport monitor_dissipation(const HamiltonianSystem& sys, const Trajectory& traj,
                                       double tolerance) {
  double max_res = 0.0;
  for (const auto& state : traj.states) {
    ContactPoint x = unflatten_contact(state);
    FieldValue f = contact_hamiltonian_field(sys, x);
    std::vector<double> g = gradient(*sys.H, state);
    double H = (*sys.H)(std::span<const double>(state));
    double dHdt = 0.0;
    for (int i = 0; i < sys.n; ++i)
      dHdt += g[i] * f.lift.qdot[i] + g[sys.n + i] * f.lift.pdot[i];
    dHdt += g[2 * sys.n] * f.lift.zdot;
    double res = std::abs(dHdt + f.conformal * H) / (1.0 + std::abs(H));
    max_res = std::max(max_res, res);
  }
  return finalize_report("dissipation law", static_cast<int>(traj.states.size()), max_res,
                         tolerance);
}

std::vector<double> conserved_quantity(const LagrangianSystem& sys, const Trajectory& traj) {
  int n = sys.n;
  std::size_t m = traj.states.size();
  std::vector<double> lz(m), g(m), out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& s = traj.states[k];
    std::vector<double> grad = gradient(*sys.L, s);
    double L = (*sys.L)(std::span<const double>(s));
    double qd_lqd = 0.0;
    for (int i = 0; i < n; ++i) qd_lqd += s[n + i] * grad[n + i];
    lz[k] = grad[2 * n];
    g[k] = L - qd_lqd;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0) acc += 0.5 * (lz[k - 1] + lz[k]) * (traj.t[k] - traj.t[k - 1]);
    out[k] = std::exp(-acc) * g[k];
  }
  return out;
}

double fd_divergence(const HamiltonianSystem& sys, const ContactPoint& x, double h) {
  std::vector<double> flat_x = flatten(x);
  auto component = [&](std::span<const double> y, std::size_t i) {
    FieldValue f = contact_hamiltonian_field(sys, unflatten_contact(y));
    std::size_t n = static_cast<std::size_t>(sys.n);
    if (i < n) return f.lift.qdot[i];
    if (i < 2 * n) return f.lift.pdot[i - n];
    return f.lift.zdot;
  };
  double div = 0.0;
  std::vector<double> y(flat_x);
  for (std::size_t i = 0; i < flat_x.size(); ++i) {
    double xi = y[i];
    y[i] = xi + h;
    double fp = component(y, i);
    y[i] = xi - h;
    double fm = component(y, i);
    y[i] = xi;
    div += (fp - fm) / (2.0 * h);
  }
  return div;
}

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "t";
  for (const auto& name : traj.state_names) out << "," << name;
  for (const auto& [name, values] : traj.diagnostics) out << "," << name;
  out << "\n";
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    out << format17(traj.t[k]);
    for (double v : traj.states[k]) out << "," << format17(v);
    for (const auto& [name, values] : traj.diagnostics) out << "," << format17(values[k]);
    out << "\n";
  }
}

void write_json(const Trajectory& traj, const std::string& path) {
  nlohmann::ordered_json j;
  j["times"] = traj.t;
  j["state_names"] = traj.state_names;
  j["states"] = traj.states;
  nlohmann::ordered_json diag = nlohmann::ordered_json::object();
  for (const auto& [name, values] : traj.diagnostics) diag[name] = values;
  j["diagnostics"] = diag;
  j["blew_up"] = traj.blew_up;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

}  // namespace contact
