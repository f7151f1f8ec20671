#include "contact/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "contact/diff.hpp"
#include "contact/expr.hpp"

namespace contact::thermo {

namespace {

std::map<std::string, double> named_constants(const GasConstants& gas) {
  return {{"U0", gas.U0}, {"c", gas.c}, {"R", gas.R}};
}

// Same field read in a chart where coordinate `slot` carries the opposite
// sign (used to move between P and negP slots).
FieldPtr flip_slot(FieldPtr f, std::size_t slot, std::vector<std::string> coords) {
  return make_field(std::move(coords), [f, slot](auto xs) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> flipped(xs.begin(), xs.end());
    flipped[slot] = -flipped[slot];
    return f->eval(std::span<const T>(flipped));
  });
}

void check_positive(double value, const char* what) {
  if (!(std::isfinite(value) && value > 0.0))
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace

void GasConstants::validate() const {
  check_positive(U0, "U0");
  check_positive(c, "c");
  check_positive(R, "R");
}

GasPotentials potentials(const GasConstants& gas) {
  gas.validate();
  const auto consts = named_constants(gas);
  GasPotentials p;
  p.U = parse_field("U0 * V^(-1/c) * N^((c+1)/c) * exp(S/(c*N*R))", {"S", "V", "N"},
                    consts);
  p.B = parse_field("(1+c) * (U0/c)^(c/(1+c)) * P^(1/(1+c)) * N * exp(S/((1+c)*N*R))",
                    {"S", "P", "N"}, consts);
  p.F = parse_field("N*R*T * (c - c*log(c*R*T/U0) - log(V/N))", {"T", "V", "N"}, consts);
  p.G = parse_field("N*R*T * (c + 1 - c*log(c*R*T/U0) - log(R*T/P))", {"T", "P", "N"},
                    consts);
  FieldPtr w_raw = parse_field(
      "(R*T * (c + 1 - c*log(c*R*T/U0) - log(R*T/P)) - mu) * T*s / ((c+1)*R*T - mu)",
      {"T", "P", "mu", "s"}, consts);
  // The mole number entering W comes from the substitution N = T*s / ((c+1)*R*T - mu);
  // a vanishing denominator leaves N undefined, so refuse to evaluate there.
  double cr = (gas.c + 1.0) * gas.R;
  p.W = make_field({"T", "P", "mu", "s"}, [w_raw, cr](auto xs) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    double heat = cr * scalar_value(xs[0]);
    double mu = scalar_value(xs[2]);
    if (std::abs(heat - mu) <= 1e-12 * (1.0 + std::abs(heat) + std::abs(mu)))
      throw DomainError("null potential denominator (c+1)*R*T - mu vanishes");
    return w_raw->eval(std::span<const T>(xs));
  });
  return p;
}

std::vector<double> gas_state(const GasConstants& gas, double S, double V, double N) {
  const GasPotentials pots = potentials(gas);
  const std::vector<double> base{S, V, N};
  const std::vector<double> grad = gradient(*pots.U, base);
  const double energy = (*pots.U)(base);
  return {S, V, N, grad[0], grad[1], grad[2], energy};
}

FieldPtr gas_hamiltonian(const GasConstants& gas) {
  gas.validate();
  return parse_field("T*S - N*R*T + mu*N - U", {"S", "V", "N", "T", "negP", "mu", "U"},
                     named_constants(gas));
}

HamiltonianSystem gas_system(const GasConstants& gas) {
  return HamiltonianSystem{gas_hamiltonian(gas), 3};
}

SubmanifoldTest gas_legendrian(const GasConstants& gas) {
  gas.validate();
  const FieldPtr U = potentials(gas).U;
  const double U0 = gas.U0, c = gas.c, R = gas.R;
  SubmanifoldTest s;
  s.name = "gas equilibrium states";
  s.ambient_dim = 7;
  s.param_dim = 3;
  // State equations: c V^(1/c) R T = U0 N^(1/c) exp(S/(c N R)), P V = N R T,
  // mu = (c+1) R T - T S / N, plus the fiber slot carrying U itself. Each
  // residual is scaled by 1 + |right-hand side|.
  s.membership = [U, U0, c, R](std::span<const double> x) {
    const double S = x[0], V = x[1], N = x[2];
    const double T = x[3], P = -x[4], mu = x[5];
    std::vector<double> r(4);
    const double thermal = U0 * std::pow(N, 1.0 / c) * std::exp(S / (c * N * R));
    r[0] = (c * std::pow(V, 1.0 / c) * R * T - thermal) / (1.0 + std::abs(thermal));
    r[1] = (P * V - N * R * T) / (1.0 + std::abs(N * R * T));
    const double chemical = (c + 1.0) * R * T - T * S / N;
    r[2] = (mu - chemical) / (1.0 + std::abs(chemical));
    const std::vector<double> base{S, V, N};
    const double energy = (*U)(base);
    r[3] = (x[6] - energy) / (1.0 + std::abs(energy));
    return r;
  };
  s.parametrize = [U](std::span<const double> q) {
    const std::vector<double> grad = gradient(*U, q);
    return std::vector<double>{q[0], q[1], q[2], grad[0], grad[1], grad[2], (*U)(q)};
  };
  return s;
}

CoordMap quantomorphism(int m, const std::vector<int>& swap_slots, std::string name) {
  if (m <= 0) throw std::invalid_argument("quantomorphism needs at least one slot pair");
  std::vector<char> trade(static_cast<std::size_t>(m), 0);
  for (int r : swap_slots) {
    if (r < 0 || r >= m) throw std::invalid_argument("quantomorphism slot out of range");
    if (trade[static_cast<std::size_t>(r)])
      throw std::invalid_argument("quantomorphism slot repeated");
    trade[static_cast<std::size_t>(r)] = 1;
  }
  const int dim = 2 * m + 1;
  const std::size_t un = static_cast<std::size_t>(2 * m);
  auto fwd = [m, trade, un](auto xs) {
    using T = std::remove_cvref_t<decltype(xs[0])>;
    std::vector<T> out(xs.begin(), xs.end());
    for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r) {
      if (!trade[r]) continue;
      const std::size_t yr = r + static_cast<std::size_t>(m);
      out[r] = xs[yr];
      out[yr] = -xs[r];
      out[un] = out[un] - xs[r] * xs[yr];
    }
    return out;
  };
  auto inv = [m, trade, un](std::span<const double> ys) {
    std::vector<double> out(ys.begin(), ys.end());
    for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r) {
      if (!trade[r]) continue;
      const std::size_t yr = r + static_cast<std::size_t>(m);
      out[r] = -ys[yr];
      out[yr] = ys[r];
      out[un] -= ys[r] * ys[yr];
    }
    return out;
  };
  return CoordMap::make(std::move(name), dim, dim, fwd, inv);
}

CoordMap phi1() { return quantomorphism(3, {1}, "phi1"); }
CoordMap phi2() { return quantomorphism(3, {0}, "phi2"); }
CoordMap phi3() { return quantomorphism(3, {1}, "phi3"); }
CoordMap phi4() { return quantomorphism(3, {2}, "phi4"); }

CoordMap quantato() { return quantomorphism(3, {0, 1}, "quantato"); }
CoordMap quantato2() { return quantomorphism(3, {0, 1, 2}, "quantato-2"); }

VerificationReport generator_transport(const GasConstants& gas, char which, int samples,
                                       Rng& rng, double tolerance) {
  gas.validate();
  const GasPotentials pots = potentials(gas);
  const SubmanifoldTest equilibrium = gas_legendrian(gas);

  // B rides the forward map (its jet lives in the source chart of phi1); the
  // others ride inverse maps, reading the potential over the image chart with
  // the stored-sign slot where needed.
  FieldPtr generator;
  CoordMap chart;
  bool use_forward = false;
  bool use_family = false;
  MorseFamily family;
  switch (which) {
    case 'U':
      break;
    case 'B':
      generator = pots.B;
      chart = phi1();
      use_forward = true;
      break;
    case 'F':
      generator = pots.F;
      chart = phi2();
      break;
    case 'G':
      generator = flip_slot(pots.G, 1, {"T", "negP", "N"});
      chart = quantato();
      break;
    case 'W':
      family.E = flip_slot(pots.W, 1, {"T", "negP", "mu", "s"});
      family.n_base = 3;
      family.n_fiber = 1;
      use_family = true;
      chart = quantato2();
      break;
    default:
      throw std::invalid_argument("unknown potential tag");
  }

  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double S = rng.uniform(-1.0, 2.0);
    if (use_family) {
      // The null-family substitution divides by (c+1) R T - mu, which is
      // T S / N on shell; the chart degenerates at S = 0.
      while (std::abs(S) < 0.1) S = rng.uniform(-1.0, 2.0);
    }
    const double V = rng.log_uniform(0.5, 2.0);
    const double N = rng.log_uniform(0.5, 2.0);
    const std::vector<double> state = gas_state(gas, S, V, N);

    std::vector<double> back;
    if (which == 'U') {
      back = state;
    } else {
      std::vector<double> base(3);
      if (which == 'B')
        base = {S, -state[4], N};
      else if (which == 'F')
        base = {state[3], V, N};
      else if (which == 'G')
        base = {state[3], state[4], N};
      else
        base = {state[3], state[4], state[5]};

      std::vector<double> lifted(7);
      if (use_family) {
        const std::vector<double> seed{S};
        const std::vector<double> fiber = critical_fiber(family, base, seed);
        std::vector<double> full = base;
        full.insert(full.end(), fiber.begin(), fiber.end());
        const std::vector<double> grad = gradient(*family.E, full);
        lifted = {base[0], base[1], base[2], grad[0], grad[1], grad[2],
                  family.E->eval(std::span<const double>(full))};
      } else {
        const std::vector<double> grad = gradient(*generator, base);
        lifted = {base[0], base[1], base[2], grad[0], grad[1], grad[2],
                  (*generator)(base)};
      }
      back = use_forward ? chart.forward(std::span<const double>(lifted))
                         : chart.inverse(lifted);
    }
    worst = std::max(worst, membership_residual(equilibrium, back));
  }
  return finalize_report(std::string("generator transport ") + which, samples, worst,
                         tolerance);
}

MorseFamily gas_lagrangian_family(const GasConstants& gas) {
  gas.validate();
  MorseFamily fam;
  fam.E = parse_field("T*(Sd - S + N*R) + negP*Vd + mu*(Nd - N) + U",
                      {"S", "V", "N", "Sd", "Vd", "Nd", "U", "T", "negP", "mu"},
                      named_constants(gas));
  fam.n_base = 7;
  fam.n_fiber = 3;
  return fam;
}

}  // namespace contact::thermo
