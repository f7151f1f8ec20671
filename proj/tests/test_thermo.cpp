#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "contact/diff.hpp"
#include "contact/dynamics.hpp"
#include "contact/rng.hpp"
#include "contact/thermo.hpp"
#include "contact/tulczyjew.hpp"

using namespace contact;
using thermo::GasConstants;

namespace {

double eval(const FieldPtr& f, std::vector<double> x) {
  return (*f)(std::span<const double>(x));
}

}  // namespace

TEST_CASE("energy potential hits the reference point") {
  GasConstants gas;
  auto p = thermo::potentials(gas);
  CHECK(eval(p.U, {0.0, 1.0, 1.0}) == doctest::Approx(1.0));
  // Extensivity: U(lambda S, lambda V, lambda N) = lambda U(S, V, N).
  double u1 = eval(p.U, {0.4, 1.3, 0.9});
  double u2 = eval(p.U, {0.8, 2.6, 1.8});
  CHECK(u2 == doctest::Approx(2.0 * u1));
}

TEST_CASE("equilibrium state slots are the energy gradient") {
  GasConstants gas;
  auto p = thermo::potentials(gas);
  auto state = thermo::gas_state(gas, 0.0, 1.0, 1.0);
  REQUIRE(state.size() == 7);
  CHECK(state[0] == doctest::Approx(0.0));
  CHECK(state[1] == doctest::Approx(1.0));
  CHECK(state[2] == doctest::Approx(1.0));
  CHECK(state[3] == doctest::Approx(2.0 / 3.0));   // T = U/(c N R)
  CHECK(state[4] == doctest::Approx(-2.0 / 3.0));  // -P = dU/dV
  CHECK(state[5] == doctest::Approx(5.0 / 3.0));   // mu = dU/dN
  CHECK(state[6] == doctest::Approx(1.0));

  std::vector<double> base{0.0, 1.0, 1.0};
  auto g = gradient(*p.U, base);
  CHECK(state[3] == doctest::Approx(g[0]));
  CHECK(state[4] == doctest::Approx(g[1]));
  CHECK(state[5] == doctest::Approx(g[2]));
}

TEST_CASE("enthalpy equals U plus PV in its own chart") {
  // Regression for the U0 exponent: run off the default constants.
  GasConstants gas;
  gas.U0 = 2.0;
  gas.c = 1.2;
  auto p = thermo::potentials(gas);
  for (double S : {-0.4, 0.0, 0.7}) {
    for (double V : {0.6, 1.7}) {
      double N = 1.3;
      double U = eval(p.U, {S, V, N});
      double P = U / (gas.c * V);  // -dU/dV
      CHECK(eval(p.B, {S, P, N}) == doctest::Approx(U + P * V).epsilon(1e-10));
    }
  }
}

TEST_CASE("free energy and free enthalpy agree with their legendre definitions") {
  GasConstants gas;
  auto p = thermo::potentials(gas);
  for (double S : {-0.3, 0.5, 1.1}) {
    double V = 1.4, N = 0.8;
    auto state = thermo::gas_state(gas, S, V, N);
    double T = state[3], P = -state[4], mu = state[5], U = state[6];
    CHECK(eval(p.F, {T, V, N}) == doctest::Approx(U - T * S).epsilon(1e-10));
    CHECK(eval(p.G, {T, P, N}) == doctest::Approx(U - T * S + P * V).epsilon(1e-10));
    // Euler relation: G = mu N on shell.
    CHECK(eval(p.G, {T, P, N}) == doctest::Approx(mu * N).epsilon(1e-10));
  }
}

TEST_CASE("null potential vanishes on shell for every fiber value") {
  GasConstants gas;
  auto p = thermo::potentials(gas);
  auto state = thermo::gas_state(gas, 0.5, 1.0, 1.0);
  double T = state[3], P = -state[4], mu = state[5];
  for (double s : {0.2, 0.5, 1.7}) {
    CHECK(std::abs(eval(p.W, {T, P, mu, s})) < 1e-12);
  }
  // Off shell it does not vanish.
  CHECK(std::abs(eval(p.W, {T, 1.5 * P, mu, 0.5})) > 1e-4);
  // The mole-number substitution breaks down where (c+1) R T = mu.
  std::vector<double> bad{1.0, 1.0, 2.5, 0.5};
  CHECK_THROWS_AS((*p.W)(std::span<const double>(bad)), DomainError);
}

TEST_CASE("gas hamiltonian vanishes exactly on equilibrium states") {
  GasConstants gas;
  auto H = thermo::gas_hamiltonian(gas);
  CHECK(H->arity() == 7);
  // Generic off-shell point: H = T S - N R T + mu N - U.
  CHECK(eval(H, {2.0, 1.0, 1.0, 3.0, -1.0, 4.0, 5.0}) == doctest::Approx(2.0));
  for (double S : {-0.5, 0.0, 0.8}) {
    auto state = thermo::gas_state(gas, S, 1.3, 0.7);
    CHECK(std::abs(eval(H, state)) < 1e-12);
  }
}

TEST_CASE("gas contact field in closed form") {
  GasConstants gas;
  HamiltonianSystem sys = thermo::gas_system(gas);
  ContactPoint x;
  x.q = {2.0, 1.0, 1.0};
  x.p = {3.0, -1.0, 4.0};
  x.z = 5.0;
  FieldValue f = contact_hamiltonian_field(sys, x);
  // qdot = (S - N R, 0, N), pdot = (0, negP, R T), zdot = p.dH/dp - H.
  CHECK(f.lift.qdot[0] == doctest::Approx(1.0));
  CHECK(f.lift.qdot[1] == doctest::Approx(0.0));
  CHECK(f.lift.qdot[2] == doctest::Approx(1.0));
  CHECK(f.lift.pdot[0] == doctest::Approx(0.0));
  CHECK(f.lift.pdot[1] == doctest::Approx(-1.0));
  CHECK(f.lift.pdot[2] == doctest::Approx(3.0));
  CHECK(f.lift.zdot == doctest::Approx(5.0));
  CHECK(f.lift.u == doctest::Approx(-1.0));
  CHECK(f.conformal == doctest::Approx(-1.0));

  // Evolution variant replaces zdot by p.dH/dp = T(S - N R) + mu N.
  FieldValue e = evolution_field(sys, x);
  CHECK(e.lift.zdot == doctest::Approx(7.0));
}

TEST_CASE("equilibrium membership detects perturbations") {
  GasConstants gas;
  SubmanifoldTest eq = thermo::gas_legendrian(gas);
  CHECK(eq.ambient_dim == 7);
  auto state = thermo::gas_state(gas, 0.3, 1.2, 0.9);
  CHECK(membership_residual(eq, state) < 1e-12);

  auto off = state;
  off[4] += 0.05;  // shift -P away from the gradient slot
  CHECK(membership_residual(eq, off) > 1e-3);
  off = state;
  off[6] *= 1.1;  // energy slot off the potential surface
  CHECK(membership_residual(eq, off) > 1e-3);
}

TEST_CASE("quantomorphisms trade slots and preserve the contact form") {
  CoordMap q1 = thermo::quantomorphism(1, {0}, "single");
  std::vector<double> x{1.0, 2.0, 5.0};
  auto y = q1.forward(std::span<const double>(x));
  REQUIRE(y.size() == 3);
  CHECK(y[0] == doctest::Approx(2.0));
  CHECK(y[1] == doctest::Approx(-1.0));
  CHECK(y[2] == doctest::Approx(3.0));  // u - x y

  // phi1 trades slot 1 of the 3-pair chart.
  std::vector<double> p{1, 2, 3, 4, 5, 6, 7};
  auto z = thermo::phi1().forward(std::span<const double>(p));
  CHECK(z[1] == doctest::Approx(5.0));
  CHECK(z[4] == doctest::Approx(-2.0));
  CHECK(z[6] == doctest::Approx(-3.0));
  CHECK(z[0] == doctest::Approx(1.0));

  Rng rng(7);
  for (const CoordMap& m : {thermo::phi1(), thermo::phi2(), thermo::quantato(),
                            thermo::quantato2()}) {
    auto r = verify_pullback(m, eta_form(3), eta_form(3), 40, rng, 1e-9);
    CHECK(r.pass);
    auto rt = verify_round_trip(m, 40, rng, 1e-12);
    CHECK(rt.pass);
  }

  auto comp = verify_map_equal(compose(thermo::phi3(), thermo::phi2()), thermo::quantato(),
                               "quantato composition", 40, rng, 1e-12);
  CHECK(comp.pass);

  // Four applications of a trade give the identity.
  CoordMap twice = compose(thermo::phi1(), thermo::phi1());
  auto back = compose(twice, twice).forward(std::span<const double>(p));
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(back[i] == doctest::Approx(p[i]));

  CHECK_THROWS_AS(thermo::quantomorphism(3, {3}, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(thermo::quantomorphism(3, {0, 0}, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(thermo::quantomorphism(0, {}, "bad"), std::invalid_argument);
}

TEST_CASE("every potential transports back to the equilibrium submanifold") {
  GasConstants gas;
  Rng rng(19);
  auto u = thermo::generator_transport(gas, 'U', 25, rng, 1e-9);
  CHECK(u.pass);
  CHECK(u.samples == 25);
  for (char which : {'B', 'F', 'G', 'W'}) {
    auto r = thermo::generator_transport(gas, which, 25, rng, 1e-7);
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(thermo::generator_transport(gas, 'X', 5, rng, 1e-7),
                  std::invalid_argument);
}

TEST_CASE("gas morse family encodes the flow constraints") {
  GasConstants gas;
  MorseFamily fam = thermo::gas_lagrangian_family(gas);
  CHECK(fam.n_base == 7);
  CHECK(fam.n_fiber == 3);
  REQUIRE(fam.E->arity() == 10);

  // E = T (Sd - S + N R) + negP Vd + mu (Nd - N) + U.
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 0.1, 0.2, 0.3};
  CHECK((*fam.E)(std::span<const double>(x)) == doctest::Approx(9.5));

  // Fiber gradient slots are the flow constraints.
  auto g = gradient(*fam.E, x);
  CHECK(g[7] == doctest::Approx(4.0 - 1.0 + 3.0));  // Sd - S + N R
  CHECK(g[8] == doctest::Approx(5.0));              // Vd
  CHECK(g[9] == doctest::Approx(6.0 - 3.0));        // Nd - N

  // The fiber Hessian vanishes, so the rank lives in the mixed block.
  std::vector<double> base(x.begin(), x.begin() + 7), fiber(x.begin() + 7, x.end());
  CHECK(morse_rank_check(fam, base, fiber));
}

TEST_CASE("constants are validated") {
  GasConstants bad;
  bad.U0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = GasConstants{};
  bad.c = 0.0;
  CHECK_THROWS_AS(thermo::potentials(bad), std::invalid_argument);
  bad = GasConstants{};
  bad.R = -2.0;
  CHECK_THROWS_AS(thermo::gas_hamiltonian(bad), std::invalid_argument);
}
