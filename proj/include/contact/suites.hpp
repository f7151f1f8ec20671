#pragma once

// Named example systems, the differentiation catalog, and the sampled
// verification suites behind `contactmech verify` and the acceptance tests.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "contact/dynamics.hpp"
#include "contact/report.hpp"
#include "contact/thermo.hpp"

namespace contact {

// Catalog Hamiltonians over (q, p, z), n = 1.
HamiltonianSystem reeb_system();                      // H = z
HamiltonianSystem linear_system();                    // H = p^2/2 + q
HamiltonianSystem conservative_system();              // H = (q^2 + p^2)/2
HamiltonianSystem damped_system(double gamma = 0.3);  // H = (q^2 + p^2)/2 + gamma z

// Catalog Lagrangians over (q, qdot, z), n = 1.
LagrangianSystem harmonic_lagrangian();                    // L = qdot^2/2 - q^2/2
LagrangianSystem damped_lagrangian(double gamma = 0.3);    // L = qdot^2/2 - q^2/2 - gamma z
LagrangianSystem free_lagrangian();                        // L = qdot^2/2
LagrangianSystem degenerate_lagrangian();                  // L = qdot

struct BoxedField {
  std::string name;
  FieldPtr field;
  std::vector<std::pair<double, double>> box;  // per-coordinate sampling range
};

// Every scalar field the library differentiates, each with a box on which it
// is smooth: the catalog Hamiltonians and Lagrangians, the gas Hamiltonian,
// and the five gas potentials.
std::vector<BoxedField> differentiation_catalog(const thermo::GasConstants& gas = {});

// Dual-number gradients against central differences over the catalog.
std::vector<VerificationReport> gradient_suite(int samples, std::uint64_t seed);

// Pullback identities, round trips and compositions of the triple legs.
std::vector<VerificationReport> maps_suite(int samples, std::uint64_t seed);

// Generating-object checks: Legendre equivalence, parametrize-membership,
// tangency, lift images and energy-family ranks for the catalog systems.
std::vector<VerificationReport> legendrian_suite(int samples, std::uint64_t seed);

// Closed-form identities between the gas potentials.
std::vector<VerificationReport> potentials_suite(const thermo::GasConstants& gas,
                                                 int samples, std::uint64_t seed);

// Potential transports along the quantomorphism chain plus strictness and
// composition checks for the chain maps.
std::vector<VerificationReport> legendre_chain_suite(const thermo::GasConstants& gas,
                                                     int samples, std::uint64_t seed);

// Gas flow: closed-form field check, conserved coordinates, dissipation law,
// surface invariance and the lifted-flow image.
std::vector<VerificationReport> gas_flow_suite(const thermo::GasConstants& gas,
                                               int samples, std::uint64_t seed);

// Gas Morse family: rank condition, critical equations, and agreement of the
// generated submanifold with the images of the triple legs.
std::vector<VerificationReport> gas_morse_suite(const thermo::GasConstants& gas,
                                                int samples, std::uint64_t seed);

// which = "maps", "legendrian" or "all"; "all" appends the gradient and
// thermodynamic suites at default gas constants.
std::vector<VerificationReport> verify_suite(const std::string& which, int samples,
                                             std::uint64_t seed);

// Deterministic JSON array of report objects, two-space indented.
std::string reports_json(const std::vector<VerificationReport>& reports);

}  // namespace contact
