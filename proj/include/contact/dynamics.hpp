#pragma once

// Contact Hamiltonian and Herglotz (contact Lagrangian) dynamics:
// vector fields, the Jacobi bracket, second-order Herglotz right-hand sides,
// a fixed-step RK4 integrator with diagnostics, and flow monitors.

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "contact/geometry.hpp"
#include "contact/report.hpp"
#include "contact/scalar_field.hpp"

namespace contact {

// H over coordinates (q[n], p[n], z).
struct HamiltonianSystem {
  FieldPtr H;
  int n = 1;
};

// L over coordinates (q[n], qdot[n], z). The regularity tag records whether
// the velocity Hessian is expected to be invertible; Unknown defers to the
// runtime check inside the second-order solver.
enum class Regularity { Regular, Degenerate, Unknown };

struct LagrangianSystem {
  FieldPtr L;
  int n = 1;
  Regularity regularity = Regularity::Unknown;
};

class SingularLagrangian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldValue {
  ExtTangentPoint lift;  // (x, qdot, pdot, zdot) with u = dH/dz
  double conformal = 0.0;
};

// Contact Hamiltonian field: qdot = dH/dp, pdot = -dH/dq - p dH/dz,
// zdot = p.dH/dp - H; the conformal rate is dH/dz.
FieldValue contact_hamiltonian_field(const HamiltonianSystem& sys, const ContactPoint& x);

// Evolution field: the contact field plus H times the Reeb field, so
// zdot = p.dH/dp and eta vanishes on it.
FieldValue evolution_field(const HamiltonianSystem& sys, const ContactPoint& x);

// {F,H} = dF/dq.dH/dp - dF/dp.dH/dq + (F - p.dF/dp) dH/dz - (H - p.dH/dp) dF/dz.
double jacobi_bracket(const ScalarField& F, const ScalarField& H, const ContactPoint& x);

// State layouts for second-order dynamics: (q[n], qdot[n], z).
struct LagrangianRhs {
  std::vector<double> qdot, qddot;
  double zdot = 0.0;
};

// Herglotz equations with zdot = L; the velocity Hessian is solved by LU with
// partial pivoting and a singular Hessian is a hard error.
LagrangianRhs herglotz_rhs(const LagrangianSystem& sys, std::span<const double> state);

// Same equations on the evolution side, with zdot = qdot.dL/dqdot.
LagrangianRhs evolution_herglotz_rhs(const LagrangianSystem& sys,
                                     std::span<const double> state);

// Fiber derivative (q, qdot, z) -> (q, dL/dqdot, z); defined for degenerate L.
ContactPoint fiber_derivative(const LagrangianSystem& sys, std::span<const double> state);

struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> states;
  std::vector<std::string> state_names;
  std::map<std::string, std::vector<double>> diagnostics;
  bool blew_up = false;
};

using Rhs = std::function<std::vector<double>(double, std::span<const double>)>;
using Monitor = std::function<double(double, std::span<const double>)>;

// Classical fixed-step RK4; a final partial step lands exactly on t1.
// Non-finite states truncate the trajectory and set blew_up.
Trajectory integrate(const Rhs& rhs, std::span<const double> y0, double t0, double t1,
                     double step,
                     const std::vector<std::pair<std::string, Monitor>>& monitors = {});

// Trajectory of the contact (or evolution) Hamiltonian flow from x0.
Trajectory simulate_hamiltonian(const HamiltonianSystem& sys, const ContactPoint& x0,
                                double t0, double t1, double step, bool evolution = false,
                                const std::vector<std::pair<std::string, Monitor>>& monitors = {});

// Trajectory of the Herglotz (or evolution-Herglotz) flow from (q, qdot, z).
Trajectory simulate_lagrangian(const LagrangianSystem& sys, std::span<const double> state0,
                               double t0, double t1, double step, bool evolution = false,
                               const std::vector<std::pair<std::string, Monitor>>& monitors = {});

// Dissipation law along a Hamiltonian trajectory: compares the analytic rate
// grad(H).X against -dH/dz * H, normalized by 1 + |H|.
VerificationReport monitor_dissipation(const HamiltonianSystem& sys, const Trajectory& traj,
                                       double tolerance = 1e-6);

// I(t) = exp(-int dL/dz dtheta) (L - qdot.dL/dqdot) along a Lagrangian
// trajectory; the integral starts at the first stored sample and uses the
// trapezoid rule on the stored grid.
std::vector<double> conserved_quantity(const LagrangianSystem& sys, const Trajectory& traj);

// Divergence of the contact Hamiltonian field by central differences; the
// volume rate of dq^dp^dz along the flow for n = 1.
double fd_divergence(const HamiltonianSystem& sys, const ContactPoint& x, double h = 1e-5);

void write_csv(const Trajectory& traj, const std::string& path);
void write_json(const Trajectory& traj, const std::string& path);

}  // namespace contact
