#include "contact/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

#include "contact/diff.hpp"
#include "contact/expr.hpp"
#include "contact/geometry.hpp"
#include "contact/legendrian.hpp"
#include "contact/rng.hpp"
#include "contact/tulczyjew.hpp"

namespace contact {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> sample_box(Rng& rng, const std::vector<std::pair<double, double>>& box) {
  std::vector<double> x;
  x.reserve(box.size());
  for (const auto& [lo, hi] : box) x.push_back(rng.uniform(lo, hi));
  return x;
}

std::vector<std::pair<double, double>> cube(int k, double lo, double hi) {
  return std::vector<std::pair<double, double>>(static_cast<std::size_t>(k), {lo, hi});
}

CoordMap identity_map(int dim) {
  return CoordMap::make("identity", dim, dim, [](auto xs) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    return std::vector<T>(xs.begin(), xs.end());
  });
}

// Inverts (q, p, qd, pd) -> (q, qd, pd, p) as a forward-evaluable map, so it
// can be composed with the other legs over duals as well as doubles.
CoordMap alpha_inverse(int n) {
  return CoordMap::make("alpha inverse", 4 * n, 4 * n, [n](auto xs) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> out;
    out.reserve(4 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(xs[i]);
    for (int i = 0; i < n; ++i) out.push_back(xs[3 * n + i]);
    for (int i = 0; i < n; ++i) out.push_back(xs[n + i]);
    for (int i = 0; i < n; ++i) out.push_back(xs[2 * n + i]);
    return out;
  });
}

VerificationReport tag(VerificationReport r, int n) {
  r.name += " (n=" + std::to_string(n) + ")";
  return r;
}

VerificationReport parametrize_membership(const SubmanifoldTest& s, const std::string& name,
                                          int samples, Rng& rng, double tolerance,
                                          double lo = -1.5, double hi = 1.5) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> params = rng.box(s.param_dim, lo, hi);
    std::vector<double> pt = s.parametrize(params);
    worst = std::max(worst, membership_residual(s, pt));
  }
  return finalize_report(name, samples, worst, tolerance);
}

double eval_at(const ScalarField& f, std::initializer_list<double> xs) {
  std::vector<double> v(xs);
  return f(std::span<const double>(v));
}

}  // namespace

HamiltonianSystem reeb_system() { return {parse_field("z", {"q", "p", "z"}), 1}; }

HamiltonianSystem linear_system() { return {parse_field("p^2/2 + q", {"q", "p", "z"}), 1}; }

HamiltonianSystem conservative_system() {
  return {parse_field("(q^2 + p^2)/2", {"q", "p", "z"}), 1};
}

HamiltonianSystem damped_system(double gamma) {
  return {parse_field("(q^2 + p^2)/2 + gamma*z", {"q", "p", "z"}, {{"gamma", gamma}}), 1};
}

LagrangianSystem harmonic_lagrangian() {
  return {parse_field("qdot^2/2 - q^2/2", {"q", "qdot", "z"}), 1, Regularity::Regular};
}

LagrangianSystem damped_lagrangian(double gamma) {
  return {parse_field("qdot^2/2 - q^2/2 - gamma*z", {"q", "qdot", "z"}, {{"gamma", gamma}}),
          1, Regularity::Regular};
}

LagrangianSystem free_lagrangian() {
  return {parse_field("qdot^2/2", {"q", "qdot", "z"}), 1, Regularity::Regular};
}

LagrangianSystem degenerate_lagrangian() {
  return {parse_field("qdot", {"q", "qdot", "z"}), 1, Regularity::Degenerate};
}

std::vector<BoxedField> differentiation_catalog(const thermo::GasConstants& gas) {
  thermo::GasPotentials pots = thermo::potentials(gas);
  std::vector<BoxedField> out;
  out.push_back({"reeb hamiltonian", reeb_system().H, cube(3, -2.0, 2.0)});
  out.push_back({"linear hamiltonian", linear_system().H, cube(3, -2.0, 2.0)});
  out.push_back({"conservative hamiltonian", conservative_system().H, cube(3, -2.0, 2.0)});
  out.push_back({"damped hamiltonian", damped_system().H, cube(3, -2.0, 2.0)});
  out.push_back({"harmonic lagrangian", harmonic_lagrangian().L, cube(3, -2.0, 2.0)});
  out.push_back({"damped lagrangian", damped_lagrangian().L, cube(3, -2.0, 2.0)});
  out.push_back({"free lagrangian", free_lagrangian().L, cube(3, -2.0, 2.0)});
  out.push_back({"degenerate lagrangian", degenerate_lagrangian().L, cube(3, -2.0, 2.0)});
  out.push_back({"gas hamiltonian", thermo::gas_hamiltonian(gas), cube(7, -2.0, 2.0)});
  out.push_back({"internal energy U", pots.U, {{-1.0, 1.0}, {0.5, 2.0}, {0.5, 2.0}}});
  out.push_back({"enthalpy B", pots.B, {{-1.0, 1.0}, {0.5, 3.0}, {0.5, 2.0}}});
  out.push_back({"free energy F", pots.F, {{0.2, 3.0}, {0.5, 2.0}, {0.5, 2.0}}});
  out.push_back({"gibbs energy G", pots.G, {{0.2, 3.0}, {0.5, 3.0}, {0.5, 2.0}}});
  // mu <= 0 keeps the substitution denominator (c+1) R T - mu away from zero.
  out.push_back(
      {"null potential W", pots.W, {{0.5, 2.0}, {0.5, 3.0}, {-1.0, 0.0}, {0.5, 2.0}}});
  return out;
}

std::vector<VerificationReport> gradient_suite(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VerificationReport> out;
  for (const BoxedField& f : differentiation_catalog()) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      std::vector<double> x = sample_box(rng, f.box);
      std::vector<double> g = gradient(*f.field, x);
      std::vector<double> fd = fd_gradient(*f.field, x);
      double gn = 0.0, dn = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        gn = std::max(gn, std::abs(g[i]));
        dn = std::max(dn, std::abs(g[i] - fd[i]));
      }
      worst = std::max(worst, dn / (1.0 + gn));
    }
    out.push_back(finalize_report("gradient check " + f.name, samples, worst, 1e-5));
  }
  return out;
}

std::vector<VerificationReport> maps_suite(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VerificationReport> out;
  for (int n : {1, 2}) {
    FormEvaluator omega_tan = tangent_symplectic_form(n);
    FormEvaluator omega_cot = canonical_symplectic_form(2 * n, "omega");

    out.push_back(tag(verify_pullback(classical_alpha(n), omega_tan, omega_cot, samples,
                                      rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(classical_beta(n), omega_tan, omega_cot, samples,
                                      rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(classical_psi(n), canonical_symplectic_form(2 * n, "omega"),
                                      omega_cot, samples, rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(beta_c(n), eta_T_form(n), eta_cot_cot_form(n),
                                      samples, rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(alpha_c(n), eta_T_form(n), eta_cot_tan_form(n),
                                      samples, rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(psi_c(n), eta_cot_tan_form(n), eta_cot_cot_form(n),
                                      samples, rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(evolution_alpha0(n), omega_eta_form(n),
                                      omega_cot_tan_form(n), samples, rng, 1e-8),
                      n));
    out.push_back(tag(verify_pullback(evolution_beta0(n), omega_eta_form(n),
                                      omega_cot_cot_form(n), samples, rng, 1e-8),
                      n));

    for (const CoordMap& m : {classical_alpha(n), classical_beta(n), classical_psi(n),
                              kappa(n), beta_c(n), alpha_c(n), psi_c(n),
                              evolution_alpha0(n), evolution_beta0(n)}) {
      out.push_back(tag(verify_round_trip(m, samples, rng, 1e-12), n));
    }

    out.push_back(tag(verify_map_equal(compose(classical_beta(n), alpha_inverse(n)),
                                       classical_psi(n), "psi = beta o alpha inverse",
                                       samples, rng, 1e-12),
                      n));
    out.push_back(tag(verify_map_equal(compose(kappa(n), kappa(n)), identity_map(4 * n),
                                       "kappa is an involution", samples, rng, 1e-12),
                      n));
    out.push_back(tag(verify_map_equal(compose(psi_c(n), alpha_c(n)), beta_c(n),
                                       "beta_c = psi_c o alpha_c", samples, rng, 1e-12),
                      n));
  }
  return out;
}

std::vector<VerificationReport> legendrian_suite(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VerificationReport> out;

  struct HNamed {
    std::string label;
    HamiltonianSystem sys;
  };
  struct LNamed {
    std::string label;
    LagrangianSystem sys;
  };
  std::vector<HNamed> hams = {{"reeb", reeb_system()},
                              {"linear", linear_system()},
                              {"conservative", conservative_system()},
                              {"damped", damped_system()}};
  std::vector<LNamed> lags = {{"harmonic", harmonic_lagrangian()},
                              {"damped", damped_lagrangian()},
                              {"free", free_lagrangian()},
                              {"degenerate", degenerate_lagrangian()}};

  for (const LNamed& l : lags)
    out.push_back(legendre_equivalence(l.sys, l.label, samples, rng));

  CoordMap bc = beta_c(1);
  for (const HNamed& h : hams) {
    SubmanifoldTest flow = hamiltonian_legendrian(h.sys);
    SubmanifoldTest neg = negative_prolongation(h.sys.H);
    out.push_back(parametrize_membership(flow, "membership " + h.label + " flow legendrian",
                                         samples, rng, 1e-10));
    out.push_back(parametrize_membership(neg, "membership " + h.label + " -H prolongation",
                                         samples, rng, 1e-10));

    double wtan = 0.0, wlift = 0.0;
    for (int k = 0; k < samples; ++k) {
      std::vector<double> state = rng.box(3, -1.5, 1.5);
      wtan = std::max(wtan, tangency_residual(flow, state));
      FieldValue X = contact_hamiltonian_field(h.sys, unflatten_contact(state));
      std::vector<double> image = bc.forward(std::span<const double>(flatten(X.lift)));
      wlift = std::max(wlift, membership_residual(neg, image));
    }
    out.push_back(finalize_report("tangency " + h.label + " flow legendrian", samples,
                                  wtan, 1e-7));
    out.push_back(finalize_report("lifted flow in -H prolongation " + h.label, samples,
                                  wlift, 1e-9));
  }

  for (const LNamed& l : lags) {
    SubmanifoldTest nl = lagrangian_legendrian(l.sys);
    out.push_back(parametrize_membership(nl, "membership " + l.label + " lagrangian legendrian",
                                         samples, rng, 1e-10));

    double wtan = 0.0, wevo = 0.0;
    int rank_failures = 0;
    MorseFamily fam = energy_family(l.sys);
    SubmanifoldTest evo = evolution_lagrangian_submanifold(l.sys);
    CoordMap a0 = evolution_alpha0(1);
    for (int k = 0; k < samples; ++k) {
      std::vector<double> state = rng.box(3, -1.5, 1.5);
      wtan = std::max(wtan, tangency_residual(nl, state));

      // alpha0 sends the evolution lift to the first jet of L.
      std::vector<double> lift = evo.parametrize(state);
      std::vector<double> slice = {lift[0], lift[1], lift[2], lift[3], lift[4], lift[6]};
      std::vector<double> image = a0.forward(std::span<const double>(slice));
      std::vector<double> g = gradient(*l.sys.L, state);
      std::vector<double> jet = {state[0], state[1], state[2], g[0], g[1], g[2]};
      double r = 0.0;
      for (std::size_t i = 0; i < jet.size(); ++i)
        r = std::max(r, std::abs(image[i] - jet[i]));
      wevo = std::max(wevo, r);

      std::vector<double> base = rng.box(3, -1.5, 1.5);
      std::vector<double> fiber = rng.box(1, -1.5, 1.5);
      if (!morse_rank_check(fam, base, fiber)) ++rank_failures;
    }
    out.push_back(finalize_report("tangency " + l.label + " lagrangian legendrian", samples,
                                  wtan, 1e-7));
    out.push_back(finalize_report("evolution image is the first jet " + l.label, samples,
                                  wevo, 1e-12));
    out.push_back(finalize_report("energy family rank " + l.label, samples,
                                  static_cast<double>(rank_failures), 0.0));
  }

  // Conjugate pairs: the Lagrangian Legendrian equals the flow Legendrian of
  // the transformed Hamiltonian.
  struct Pair {
    std::string label;
    LagrangianSystem lag;
    HamiltonianSystem ham;
  };
  std::vector<Pair> pairs = {{"harmonic", harmonic_lagrangian(), conservative_system()},
                             {"damped", damped_lagrangian(), damped_system()}};
  for (const Pair& p : pairs) {
    SubmanifoldTest nl = lagrangian_legendrian(p.lag);
    SubmanifoldTest flow = hamiltonian_legendrian(p.ham);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      std::vector<double> state = rng.box(3, -1.5, 1.5);
      worst = std::max(worst, membership_residual(flow, nl.parametrize(state)));
    }
    out.push_back(finalize_report("legendre pair " + p.label, samples, worst, 1e-10));
  }
  return out;
}

std::vector<VerificationReport> potentials_suite(const thermo::GasConstants& gas,
                                                 int samples, std::uint64_t seed) {
  gas.validate();
  Rng rng(seed);
  thermo::GasPotentials pots = thermo::potentials(gas);
  FieldPtr H = thermo::gas_hamiltonian(gas);
  double wb = 0.0, wf = 0.0, wg = 0.0, ww = 0.0, wgrad = 0.0, wh = 0.0;
  for (int k = 0; k < samples; ++k) {
    double S = rng.uniform(0.3, 1.5);
    double V = rng.log_uniform(0.5, 2.0);
    double N = rng.log_uniform(0.5, 2.0);
    std::vector<double> x = thermo::gas_state(gas, S, V, N);
    double T = x[3], P = -x[4], mu = x[5], U = x[6];

    double b = eval_at(*pots.B, {S, P, N});
    wb = std::max(wb, std::abs(b - (U + P * V)) / (1.0 + std::abs(U + P * V)));
    double f = eval_at(*pots.F, {T, V, N});
    wf = std::max(wf, std::abs(f - (U - T * S)) / (1.0 + std::abs(U - T * S)));
    double g = eval_at(*pots.G, {T, P, N});
    wg = std::max(wg, std::abs(g - (f + P * V)) / (1.0 + std::abs(f + P * V)));

    double w = eval_at(*pots.W, {T, P, mu, S});
    ww = std::max(ww, std::abs(w) / (1.0 + std::abs(U)));
    std::vector<double> wx = {T, P, mu, S};
    std::vector<double> dw = gradient(*pots.W, wx);
    std::vector<double> expect = {-S, V, -N, 0.0};
    double scale = 1.0 + max_abs(expect), diff = 0.0;
    for (std::size_t i = 0; i < dw.size(); ++i)
      diff = std::max(diff, std::abs(dw[i] - expect[i]));
    wgrad = std::max(wgrad, diff / scale);

    wh = std::max(wh, std::abs((*H)(std::span<const double>(x))) / (1.0 + std::abs(U)));
  }
  std::vector<VerificationReport> out;
  out.push_back(finalize_report("enthalpy identity B = U + PV", samples, wb, 1e-8));
  out.push_back(finalize_report("free energy identity F = U - TS", samples, wf, 1e-8));
  out.push_back(finalize_report("gibbs identity G = F + PV", samples, wg, 1e-8));
  out.push_back(finalize_report("null potential vanishes on shell", samples, ww, 1e-9));
  out.push_back(
      finalize_report("null potential gradient is (-S, V, -N, 0)", samples, wgrad, 1e-8));
  out.push_back(finalize_report("state surface sits in the zero level", samples, wh, 1e-9));
  return out;
}

std::vector<VerificationReport> legendre_chain_suite(const thermo::GasConstants& gas,
                                                     int samples, std::uint64_t seed) {
  gas.validate();
  Rng rng(seed);
  std::vector<VerificationReport> out;
  out.push_back(thermo::generator_transport(gas, 'U', samples, rng, 1e-9));
  for (char which : {'B', 'F', 'G', 'W'})
    out.push_back(thermo::generator_transport(gas, which, samples, rng, 1e-7));

  for (const CoordMap& m : {thermo::phi1(), thermo::phi2(), thermo::phi3(), thermo::phi4(),
                            thermo::quantato(), thermo::quantato2()}) {
    out.push_back(verify_pullback(m, eta_form(3), eta_form(3), samples, rng, 1e-9));
    out.push_back(verify_round_trip(m, samples, rng, 1e-12));
  }

  out.push_back(verify_map_equal(compose(thermo::phi3(), thermo::phi2()), thermo::quantato(),
                                 "quantato = phi3 o phi2", samples, rng, 1e-12));
  out.push_back(verify_map_equal(
      compose(thermo::phi4(), compose(thermo::phi3(), thermo::phi2())), thermo::quantato2(),
      "quantato-2 = phi4 o phi3 o phi2", samples, rng, 1e-12));
  CoordMap p1 = thermo::phi1();
  out.push_back(verify_map_equal(compose(p1, compose(p1, compose(p1, p1))), identity_map(7),
                                 "fourth iterate of phi1 is the identity", samples, rng,
                                 1e-12));
  return out;
}

std::vector<VerificationReport> gas_flow_suite(const thermo::GasConstants& gas, int samples,
                                               std::uint64_t seed) {
  gas.validate();
  Rng rng(seed);
  HamiltonianSystem sys = thermo::gas_system(gas);
  SubmanifoldTest neg = negative_prolongation(sys.H);
  CoordMap bc = beta_c(3);
  const double R = gas.R;

  double wfield = 0.0, wreeb = 0.0, wlift = 0.0;
  for (int k = 0; k < samples; ++k) {
    ContactPoint x;
    x.q = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
    x.p = {rng.uniform(0.5, 2.0), rng.uniform(-2.0, -0.5), rng.uniform(-1.0, 1.0)};
    x.z = rng.uniform(0.5, 2.0);
    double S = x.q[0], V = x.q[1], N = x.q[2];
    double T = x.p[0], negP = x.p[1], mu = x.p[2], U = x.z;
    (void)V;

    FieldValue X = contact_hamiltonian_field(sys, x);
    std::vector<double> expq = {S - N * R, 0.0, N};
    std::vector<double> expp = {0.0, negP, R * T};
    double r = 0.0;
    for (int i = 0; i < 3; ++i) {
      r = std::max(r, std::abs(X.lift.qdot[i] - expq[i]));
      r = std::max(r, std::abs(X.lift.pdot[i] - expp[i]));
    }
    r = std::max(r, std::abs(X.lift.zdot - U));
    r = std::max(r, std::abs(X.lift.u + 1.0));
    FieldValue E = evolution_field(sys, x);
    for (int i = 0; i < 3; ++i) {
      r = std::max(r, std::abs(E.lift.qdot[i] - expq[i]));
      r = std::max(r, std::abs(E.lift.pdot[i] - expp[i]));
    }
    r = std::max(r, std::abs(E.lift.zdot - (T * S - N * R * T + mu * N)));
    wfield = std::max(wfield, r);
    wreeb = std::max(wreeb, std::abs(X.conformal + 1.0));

    std::vector<double> image = bc.forward(std::span<const double>(flatten(X.lift)));
    wlift = std::max(wlift, membership_residual(neg, image));
  }

  std::vector<VerificationReport> out;
  out.push_back(finalize_report("gas field closed form", samples, wfield, 1e-12));
  out.push_back(finalize_report("reeb rate is minus one", samples, wreeb, 1e-12));
  out.push_back(finalize_report("lifted gas flow in -H prolongation", samples, wlift, 1e-9));

  std::vector<double> x0v = thermo::gas_state(gas, 1.0, 1.0, 1.0);
  ContactPoint x0 = unflatten_contact(x0v);
  SubmanifoldTest surface = thermo::gas_legendrian(gas);

  Trajectory tr = simulate_hamiltonian(sys, x0, 0.0, 1.0, 1e-3);
  double wtv = 0.0, wsurf = 0.0;
  int checked = 0;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    wtv = std::max(wtv, std::abs(tr.states[i][3] - x0v[3]));
    wtv = std::max(wtv, std::abs(tr.states[i][1] - x0v[1]));
    if (i % 20 == 0) {
      wsurf = std::max(wsurf, membership_residual(surface, tr.states[i]));
      ++checked;
    }
  }
  out.push_back(finalize_report("flow holds T and V fixed",
                                static_cast<int>(tr.states.size()), wtv, 1e-12));
  out.push_back(finalize_report("flow stays on the state surface", checked, wsurf, 1e-6));
  out.push_back(monitor_dissipation(sys, tr));

  Trajectory ev = simulate_hamiltonian(sys, x0, 0.0, 1.0, 1e-3, true);
  double wh = 0.0, wsurf_e = 0.0;
  checked = 0;
  for (std::size_t i = 0; i < ev.states.size(); ++i) {
    double h = (*sys.H)(std::span<const double>(ev.states[i]));
    wh = std::max(wh, std::abs(h) / (1.0 + std::abs(ev.states[i][6])));
    if (i % 20 == 0) {
      wsurf_e = std::max(wsurf_e, membership_residual(surface, ev.states[i]));
      ++checked;
    }
  }
  out.push_back(finalize_report("evolution flow conserves the hamiltonian",
                                static_cast<int>(ev.states.size()), wh, 1e-9));
  out.push_back(
      finalize_report("evolution flow stays on the state surface", checked, wsurf_e, 1e-6));
  return out;
}

std::vector<VerificationReport> gas_morse_suite(const thermo::GasConstants& gas, int samples,
                                                std::uint64_t seed) {
  gas.validate();
  Rng rng(seed);
  MorseFamily fam = thermo::gas_lagrangian_family(gas);
  HamiltonianSystem sys = thermo::gas_system(gas);
  SubmanifoldTest flow = hamiltonian_legendrian(sys);
  CoordMap ac = alpha_c(3);
  CoordMap a0 = evolution_alpha0(3);
  SubmanifoldTest gen = legendrian_from_morse(fam, [](std::span<const double> x) {
    return std::vector<double>{x[10], x[11], x[12]};
  });
  const double R = gas.R;

  int rank_failures = 0;
  double wcrit = 0.0, wgen = 0.0, wevo = 0.0, wmem = 0.0;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> base = rng.box(7, -1.5, 1.5);
    std::vector<double> fiber = rng.box(3, -1.5, 1.5);
    if (!morse_rank_check(fam, base, fiber)) ++rank_failures;

    std::vector<double> both(base);
    both.insert(both.end(), fiber.begin(), fiber.end());
    std::vector<double> g = gradient(*fam.E, both);
    std::vector<double> expect = {base[3] - base[0] + base[2] * R, base[4],
                                  base[5] - base[2]};
    for (int i = 0; i < 3; ++i) wcrit = std::max(wcrit, std::abs(g[7 + i] - expect[i]));

    double S = rng.uniform(0.3, 1.5);
    double V = rng.log_uniform(0.5, 2.0);
    double N = rng.log_uniform(0.5, 2.0);
    std::vector<double> state = thermo::gas_state(gas, S, V, N);
    std::vector<double> lift = flow.parametrize(state);
    std::vector<double> A = ac.forward(std::span<const double>(lift));

    std::vector<double> fbase = {state[0], state[1], state[2], lift[7],
                                 lift[8],  lift[9],  state[6]};
    std::vector<double> ffiber = {state[3], state[4], state[5]};
    std::vector<double> fboth(fbase);
    fboth.insert(fboth.end(), ffiber.begin(), ffiber.end());
    std::vector<double> fg = gradient(*fam.E, fboth);
    double fe = (*fam.E)(std::span<const double>(fboth));
    std::vector<double> genpt(fbase);
    genpt.insert(genpt.end(), fg.begin(), fg.begin() + 7);
    genpt.push_back(fe);
    double r = 0.0;
    for (std::size_t i = 0; i < genpt.size(); ++i)
      r = std::max(r, std::abs(A[i] - genpt[i]));
    wgen = std::max(wgen, r);
    wmem = std::max(wmem, membership_residual(gen, A));

    std::vector<double> slice = {state[0], state[1], state[2], state[3], state[4],
                                 state[5], state[6], lift[7],  lift[8],  lift[9],
                                 lift[10], lift[11], lift[12], lift[14]};
    std::vector<double> A0 = a0.forward(std::span<const double>(slice));
    r = 0.0;
    for (std::size_t i = 0; i < A0.size(); ++i)
      r = std::max(r, std::abs(A0[i] - genpt[i]));
    wevo = std::max(wevo, r);
  }

  std::vector<VerificationReport> out;
  out.push_back(finalize_report("gas family rank condition", samples,
                                static_cast<double>(rank_failures), 0.0));
  out.push_back(finalize_report("critical equations are the flow constraints", samples,
                                wcrit, 1e-12));
  out.push_back(
      finalize_report("generated points match the alpha_c image", samples, wgen, 1e-12));
  out.push_back(
      finalize_report("evolution points match the alpha0 image", samples, wevo, 1e-12));
  out.push_back(
      finalize_report("newton membership on generated points", samples, wmem, 1e-10));
  return out;
}

std::vector<VerificationReport> verify_suite(const std::string& which, int samples,
                                             std::uint64_t seed) {
  auto append = [](std::vector<VerificationReport>& all,
                   std::vector<VerificationReport> part) {
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  };
  std::vector<VerificationReport> all;
  if (which == "maps") {
    append(all, maps_suite(samples, seed));
  } else if (which == "legendrian") {
    append(all, legendrian_suite(samples, seed));
  } else if (which == "all") {
    thermo::GasConstants gas;
    append(all, maps_suite(samples, seed));
    append(all, legendrian_suite(samples, seed));
    append(all, gradient_suite(samples, seed));
    append(all, potentials_suite(gas, samples, seed));
    append(all, legendre_chain_suite(gas, samples, seed));
    append(all, gas_flow_suite(gas, samples, seed));
    append(all, gas_morse_suite(gas, samples, seed));
  } else {
    throw std::invalid_argument("unknown suite '" + which +
                                "' (expected maps, legendrian or all)");
  }
  return all;
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const VerificationReport& r : reports) {
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["samples"] = r.samples;
    o["max_residual"] = r.max_residual;
    o["tolerance"] = r.tolerance;
    o["pass"] = r.pass;
    if (r.samples == 0) o["vacuous"] = true;
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

}  // namespace contact
