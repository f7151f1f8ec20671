#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <span>
#include <vector>

#include "contact/expr.hpp"
#include "contact/legendrian.hpp"
#include "contact/rng.hpp"
#include "contact/suites.hpp"

using namespace contact;

namespace {

std::vector<double> param(const SubmanifoldTest& s, std::vector<double> chart) {
  return s.parametrize(std::span<const double>(chart));
}

double residual(const SubmanifoldTest& s, std::vector<double> pt) {
  return membership_residual(s, std::span<const double>(pt));
}

}  // namespace

TEST_CASE("first prolongation of a potential") {
  auto F = parse_field("q^2/2", {"q"}, {});
  SubmanifoldTest s = prolong(F);
  CHECK(s.ambient_dim == 3);
  CHECK(s.param_dim == 1);

  // Points (q, dF/dq, F) = (q, q, q^2/2).
  CHECK(residual(s, {2.0, 2.0, 2.0}) == doctest::Approx(0.0));
  CHECK(residual(s, {2.0, 1.0, 2.0}) > 0.5);
  CHECK(residual(s, {2.0, 2.0, 2.5}) > 0.4);

  auto pt = param(s, {3.0});
  CHECK(pt[0] == doctest::Approx(3.0));
  CHECK(pt[1] == doctest::Approx(3.0));
  CHECK(pt[2] == doctest::Approx(4.5));
}

TEST_CASE("morse family generation with a quadratic family") {
  // E(q; eps) = q eps - eps^2/2: critical fiber eps = q, generated points
  // (q, q, q^2/2).
  MorseFamily fam;
  fam.E = parse_field("q*eps - eps^2/2", {"q", "eps"}, {});
  fam.n_base = 1;
  fam.n_fiber = 1;

  std::vector<double> base{2.0}, fiber{2.0};
  CHECK(morse_rank_check(fam, base, fiber));

  std::vector<double> seed0{0.0};
  auto eps = critical_fiber(fam, base, seed0);
  REQUIRE(eps.size() == 1);
  CHECK(eps[0] == doctest::Approx(2.0));

  SubmanifoldTest s =
      legendrian_from_morse(fam, [](std::span<const double>) { return std::vector<double>{0.0}; });
  CHECK(s.ambient_dim == 3);
  CHECK(residual(s, {1.0, 1.0, 0.5}) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(residual(s, {1.0, 0.5, 0.5}) > 0.1);

  // Dropping the extension slot gives the classical Lagrangian submanifold.
  SubmanifoldTest lag = legendrian_from_morse(
      fam, [](std::span<const double>) { return std::vector<double>{0.0}; }, false);
  CHECK(lag.ambient_dim == 2);
  CHECK(residual(lag, {1.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("rank condition distinguishes morse from non morse fibers") {
  MorseFamily cubic;
  cubic.E = parse_field("eps^3", {"q", "eps"}, {});
  cubic.n_base = 1;
  cubic.n_fiber = 1;
  std::vector<double> base{1.0};
  std::vector<double> origin{0.0}, off{1.0};
  CHECK(!morse_rank_check(cubic, base, origin));  // second derivative vanishes at 0
  CHECK(morse_rank_check(cubic, base, off));

  // A family linear in the fiber has no critical fiber anywhere.
  MorseFamily linear;
  linear.E = parse_field("q*eps", {"q", "eps"}, {});
  linear.n_base = 1;
  linear.n_fiber = 1;
  CHECK_THROWS_AS(critical_fiber(linear, base, origin), NoCriticalFiber);
}

TEST_CASE("critical fiber accepts an exact seed without stepping") {
  // dE/deps vanishes on the seed, so even a singular fiber Hessian is fine.
  MorseFamily flat_fam;
  flat_fam.E = parse_field("q + 0*eps", {"q", "eps"}, {});
  flat_fam.n_base = 1;
  flat_fam.n_fiber = 1;
  std::vector<double> base{1.0}, seed{0.3};
  auto eps = critical_fiber(flat_fam, base, seed);
  CHECK(eps[0] == doctest::Approx(0.3));
}

TEST_CASE("flow legendrian of the reeb hamiltonian") {
  SubmanifoldTest s = hamiltonian_legendrian(reeb_system());  // H = z
  CHECK(s.ambient_dim == 7);
  CHECK(s.param_dim == 3);

  // Lift at (q, p, z) = (0, 1, 2): qdot = 0, pdot = -p, zdot = -z, u = 1.
  auto pt = param(s, {0.0, 1.0, 2.0});
  REQUIRE(pt.size() == 7);
  CHECK(pt[3] == doctest::Approx(0.0));
  CHECK(pt[4] == doctest::Approx(-1.0));
  CHECK(pt[5] == doctest::Approx(-2.0));
  CHECK(pt[6] == doctest::Approx(1.0));
  CHECK(residual(s, pt) == doctest::Approx(0.0));

  pt[4] += 0.1;
  CHECK(residual(s, pt) > 0.05);
}

TEST_CASE("negative prolongation holds minus the gradient and value") {
  HamiltonianSystem sys = damped_system(0.3);
  SubmanifoldTest s = negative_prolongation(sys.H);
  auto pt = param(s, {1.0, 0.0, 0.0});
  REQUIRE(pt.size() == 7);
  CHECK(pt[3] == doctest::Approx(-1.0));   // -dH/dq
  CHECK(pt[4] == doctest::Approx(0.0));    // -dH/dp
  CHECK(pt[5] == doctest::Approx(-0.3));   // -dH/dz
  CHECK(pt[6] == doctest::Approx(-0.5));   // -H
  CHECK(residual(s, pt) == doctest::Approx(0.0));
}

TEST_CASE("lagrangian side legendrian slots") {
  LagrangianSystem sys = damped_lagrangian(0.3);
  SubmanifoldTest s = lagrangian_legendrian(sys);
  CHECK(s.ambient_dim == 7);
  CHECK(s.param_dim == 3);

  // At (q, qdot, z) = (0, 1, 0): (q, dL/dqdot, z, qdot, dL/dz dL/dqdot + dL/dq,
  // L, -dL/dz) = (0, 1, 0, 1, -0.3, 0.5, 0.3).
  auto pt = param(s, {0.0, 1.0, 0.0});
  REQUIRE(pt.size() == 7);
  CHECK(pt[0] == doctest::Approx(0.0));
  CHECK(pt[1] == doctest::Approx(1.0));
  CHECK(pt[2] == doctest::Approx(0.0));
  CHECK(pt[3] == doctest::Approx(1.0));
  CHECK(pt[4] == doctest::Approx(-0.3));
  CHECK(pt[5] == doctest::Approx(0.5));
  CHECK(pt[6] == doctest::Approx(0.3));
  CHECK(residual(s, pt) == doctest::Approx(0.0));

  SubmanifoldTest ev = evolution_lagrangian_submanifold(sys);
  auto ept = param(ev, {0.0, 1.0, 0.0});
  CHECK(ept[5] == doctest::Approx(1.0));  // zdot = qdot dL/dqdot
  CHECK(ept[6] == doctest::Approx(0.3));
  CHECK(residual(ev, ept) == doctest::Approx(0.0));

  // A z independent Lagrangian has u = 0 on every point.
  SubmanifoldTest hs = lagrangian_legendrian(harmonic_lagrangian());
  auto hpt = param(hs, {0.7, -0.4, 1.1});
  CHECK(hpt[6] == doctest::Approx(0.0));
}

TEST_CASE("parametrized points are tangent to the lifted contact structure") {
  std::vector<double> chart{0.6, -0.8, 0.4};
  SubmanifoldTest hs = hamiltonian_legendrian(damped_system(0.3));
  CHECK(tangency_residual(hs, chart) < 1e-7);
  SubmanifoldTest ls = lagrangian_legendrian(damped_lagrangian(0.3));
  CHECK(tangency_residual(ls, chart) < 1e-7);
  SubmanifoldTest cs = lagrangian_legendrian(harmonic_lagrangian());
  CHECK(tangency_residual(cs, chart) < 1e-7);
}

TEST_CASE("energy family generates the legendre transform") {
  LagrangianSystem sys = harmonic_lagrangian();
  MorseFamily fam = energy_family(sys);
  CHECK(fam.n_base == 3);
  CHECK(fam.n_fiber == 1);
  REQUIRE(fam.E->arity() == 4);
  // E(q, p, z; qdot) = p qdot - L(q, qdot, z) = 8 - (8 - 0.5) at (1, 2, 3, 4).
  std::vector<double> at{1.0, 2.0, 3.0, 4.0};
  CHECK((*fam.E)(std::span<const double>(at)) == doctest::Approx(0.5));

  // The mixed block keeps the rank condition even where d2L/dqdot2 = 0.
  MorseFamily deg = energy_family(degenerate_lagrangian());
  std::vector<double> base{0.3, -0.7, 0.1}, fiber{0.9};
  CHECK(morse_rank_check(deg, base, fiber));

  // Critical fiber of the harmonic family: dE/dqdot = p - qdot = 0.
  std::vector<double> b{0.5, 1.5, 0.0}, seed{0.0};
  auto eps = critical_fiber(fam, b, seed);
  CHECK(eps[0] == doctest::Approx(1.5));

  // Generated point (q, p, z, dE/dq, dE/dp, dE/dz, E) at the critical fiber:
  // dE/dq = q, dE/dp = qdot = p, dE/dz = 0, E = (q^2 + p^2)/2.
  SubmanifoldTest s = legendrian_from_morse(
      fam, [](std::span<const double> x) { return std::vector<double>{x[1]}; });
  CHECK(s.ambient_dim == 7);
  CHECK(residual(s, {0.5, 1.5, 0.0, 0.5, 1.5, 0.0, 1.25}) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("legendre equivalence holds for regular and degenerate catalog systems") {
  Rng rng(42);
  auto r1 = legendre_equivalence(harmonic_lagrangian(), "harmonic", 40, rng);
  CHECK(r1.pass);
  CHECK(r1.samples == 40);
  auto r2 = legendre_equivalence(damped_lagrangian(0.3), "damped", 40, rng);
  CHECK(r2.pass);
  auto r3 = legendre_equivalence(degenerate_lagrangian(), "degenerate", 40, rng);
  CHECK(r3.pass);
  CHECK(r3.tolerance == 1e-10);
}

TEST_CASE("membership residual reports the worst violated constraint") {
  SubmanifoldTest s = hamiltonian_legendrian(conservative_system());
  auto pt = param(s, {1.0, 1.0, 0.0});
  pt[5] += 0.25;
  pt[6] -= 0.5;
  CHECK(residual(s, pt) == doctest::Approx(0.5));
}
