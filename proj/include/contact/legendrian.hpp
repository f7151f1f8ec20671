#pragma once

// Legendrian submanifolds as residual membership tests plus optional
// parametrizations, generated from Morse families, first prolongations,
// contact Hamiltonians and (possibly degenerate) contact Lagrangians.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "contact/coord_map.hpp"
#include "contact/dynamics.hpp"
#include "contact/report.hpp"
#include "contact/rng.hpp"
#include "contact/scalar_field.hpp"

namespace contact {

// Generating family E(x; eps) over n_base base and n_fiber fiber coordinates
// (base slots first in E's coordinate list).
struct MorseFamily {
  FieldPtr E;
  int n_base = 0;
  int n_fiber = 0;
};

// A submanifold presented as the zero set of a residual vector, with an
// optional parametrization emitting ambient points from chart parameters.
struct SubmanifoldTest {
  std::string name;
  int ambient_dim = 0;
  std::function<std::vector<double>(std::span<const double>)> membership;
  int param_dim = 0;
  std::function<std::vector<double>(std::span<const double>)> parametrize;
};

class NoCriticalFiber : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rank of the n_fiber x (n_base + n_fiber) matrix (d2E/deps dx, d2E/deps deps)
// must equal n_fiber; singular values below 1e-10 * sigma_max count as zero.
bool morse_rank_check(const MorseFamily& fam, std::span<const double> base,
                      std::span<const double> fiber);

// Damped Newton on dE/deps = 0 over the fiber at a fixed base point.
std::vector<double> critical_fiber(const MorseFamily& fam, std::span<const double> base,
                                   std::span<const double> seed, int max_iter = 50);

using FiberSeed = std::function<std::vector<double>(std::span<const double>)>;

// First prolongation of F: points (x, dF/dx, F(x)) in T*X x R.
SubmanifoldTest prolong(FieldPtr F);

// Legendrian generated by a Morse family: points (x, dE/dx, E) at critical
// fibers. with_z_slot = false drops the extension slot and residual, giving
// the classical Lagrangian submanifold of T*X. The Newton seed for the
// critical fiber is supplied by the caller and receives the ambient point.
SubmanifoldTest legendrian_from_morse(const MorseFamily& fam, FiberSeed seed,
                                      bool with_z_slot = true);

// Energy Morse family E(q, p, z; qdot) = p.qdot - L(q, qdot, z). The mixed
// rank block contains d2E/dqdot dp = I, so the rank condition holds for every
// L, regular or not.
MorseFamily energy_family(const LagrangianSystem& sys);

// Flow Legendrian of -H in T(T*Q x R): slots (dH/dp, -dH/dz p - dH/dq,
// p.dH/dp - H, dH/dz); parametrized over (q, p, z) by the field lift.
SubmanifoldTest hamiltonian_legendrian(const HamiltonianSystem& sys);

// Image of -dH prolongation in T*(T*Q x R) x R: (x, -dH/dx, -H).
SubmanifoldTest negative_prolongation(FieldPtr H);

// Lagrangian-side Legendrian in T(T*Q x R): points
// (q, dL/dqdot, z, qdot, dL/dz dL/dqdot + dL/dq, L, -dL/dz) over (q, qdot, z).
SubmanifoldTest lagrangian_legendrian(const LagrangianSystem& sys);

// Evolution variant with zdot = qdot.dL/dqdot instead of zdot = L.
SubmanifoldTest evolution_lagrangian_submanifold(const LagrangianSystem& sys);

// Pushes parametrized points of the Lagrangian-side Legendrian through the
// contact beta leg and checks the closed-form image of the energy generator
// (slots dL/dq, -qdot, dL/dz, L - p.qdot with p = dL/dqdot), plus the reverse
// direction through the inverse leg. Works for degenerate Lagrangians.
VerificationReport legendre_equivalence(const LagrangianSystem& sys,
                                        const std::string& label, int samples, Rng& rng,
                                        double tolerance = 1e-10, double box_lo = -1.5,
                                        double box_hi = 1.5);

// Max |eta_T(tangent)| over finite-difference tangent vectors of parametrize
// at the given chart parameters; the ambient must be T(T*Q x R).
double tangency_residual(const SubmanifoldTest& s, std::span<const double> params,
                         double h = 1e-5);

// Max-norm of the membership residual vector.
double membership_residual(const SubmanifoldTest& s, std::span<const double> point);

}  // namespace contact
