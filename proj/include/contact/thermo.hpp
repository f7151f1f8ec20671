#pragma once

// Ideal gas on the 7-dimensional contact phase space with coordinates
//   (S, V, N, T, negP, mu, U),
// base (S, V, N), momenta (T, negP, mu), fiber U. The slot negP stores -P so
// the momenta are literally the gradient entries of the energy potential.

#include <string>
#include <vector>

#include "contact/coord_map.hpp"
#include "contact/dynamics.hpp"
#include "contact/legendrian.hpp"
#include "contact/report.hpp"
#include "contact/rng.hpp"
#include "contact/scalar_field.hpp"

namespace contact::thermo {

struct GasConstants {
  double U0 = 1.0;  // energy scale
  double c = 1.5;   // dimensionless heat capacity per particle, in units of R
  double R = 1.0;   // gas constant

  // Throws std::invalid_argument unless every constant is positive and finite.
  void validate() const;
};

// Closed-form potentials. Each is a ScalarField over its own chart:
//   U(S, V, N)      energy,        U = U0 V^(-1/c) N^((c+1)/c) exp(S/(c N R))
//   B(S, P, N)      enthalpy,      B = U + P V
//   F(T, V, N)      free energy,   F = U - T S
//   G(T, P, N)      free enthalpy, G = U - T S + P V
//   W(T, P, mu, s)  null potential W = G(T, P, N(s)) - mu N(s) with the
//                   substitution N(s) = T s / ((c+1) R T - mu); W vanishes
//                   wherever (T, P, mu) fit a gas state, for every s.
struct GasPotentials {
  FieldPtr U, B, F, G, W;
};

GasPotentials potentials(const GasConstants& gas);

// Equilibrium state over (S, V, N): momenta from the gradient of U, fiber
// slot from U itself.
std::vector<double> gas_state(const GasConstants& gas, double S, double V, double N);

// H = T S - N R T + mu N - U. The zero level is the energy relation
// U = T S - P V + mu N combined with P V = N R T; the slope along the fiber
// slot is -1 everywhere.
FieldPtr gas_hamiltonian(const GasConstants& gas);
HamiltonianSystem gas_system(const GasConstants& gas);

// Equilibrium states as a submanifold test. Membership residuals: the three
// slot equations T = dU/dS, negP = dU/dV, mu = dU/dN and the fiber equation
// U_slot = U(S, V, N), each scaled by 1 + |reference|.
SubmanifoldTest gas_legendrian(const GasConstants& gas);

// Strict contact transformation of (x[m], y[m], u) trading the slots in
// swap_slots: x_r -> y_r, y_r -> -x_r, u -> u - sum_r x_r y_r. It preserves
// du - y.dx exactly; four applications give the identity, so the inverse is
// the third iterate.
CoordMap quantomorphism(int m, const std::vector<int>& swap_slots, std::string name);

CoordMap phi1();  // m = 3, trades slot 1: gas chart -> enthalpy chart
CoordMap phi2();  // m = 3, trades slot 0: gas chart -> free energy chart
CoordMap phi3();  // m = 3, trades slot 1: free energy chart -> free enthalpy chart
CoordMap phi4();  // m = 3, trades slot 2: free enthalpy chart -> null chart

CoordMap quantato();   // closed form of phi3 o phi2 (trades slots 0 and 1)
CoordMap quantato2();  // closed form of phi4 o phi3 o phi2 (trades all slots)

// Checks that one potential regenerates the equilibrium submanifold: sample
// gas states, build the first-jet point of the potential in its own chart
// (for W, at a critical fiber of the null family), pull it back through the
// matching inverse transformation, and take the worst membership residual.
// `which` is one of 'U', 'B', 'F', 'G', 'W'.
VerificationReport generator_transport(const GasConstants& gas, char which, int samples,
                                       Rng& rng, double tolerance);

// Morse family over base (S, V, N, Sd, Vd, Nd, U) with fibers (T, negP, mu):
//   E = T (Sd - S + N R) + negP Vd + mu (Nd - N) + U.
// Fiber criticality encodes the gas flow equations Sd = S - N R, Vd = 0,
// Nd = N; the fiber block of the Hessian vanishes identically, so the rank
// condition is carried entirely by the mixed block.
MorseFamily gas_lagrangian_family(const GasConstants& gas);

}  // namespace contact::thermo
