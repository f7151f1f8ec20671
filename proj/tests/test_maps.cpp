#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <span>
#include <vector>

#include "contact/coord_map.hpp"
#include "contact/rng.hpp"
#include "contact/tulczyjew.hpp"

using namespace contact;

namespace {

std::vector<double> fwd(const CoordMap& m, std::vector<double> x) {
  return m.forward(std::span<const double>(x));
}

void check_tuple(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
}

double round_trip_error(const CoordMap& m, const std::vector<double>& x) {
  auto y = m.forward(std::span<const double>(x));
  auto back = m.inverse(std::span<const double>(y));
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e = std::max(e, std::abs(back[i] - x[i]));
  return e;
}

}  // namespace

TEST_CASE("classical legs move slots as documented") {
  // (q, p, qd, pd) = (1, 2, 3, 4).
  check_tuple(fwd(classical_alpha(1), {1, 2, 3, 4}), {1, 3, 4, 2});
  check_tuple(fwd(classical_beta(1), {1, 2, 3, 4}), {1, 2, 4, -3});
  // (q, qd, a, ad) = (1, 3, 4, 2) -> (q, ad, a, -qd).
  check_tuple(fwd(classical_psi(1), {1, 3, 4, 2}), {1, 2, 4, -3});
  // kappa swaps the middle blocks.
  check_tuple(fwd(kappa(1), {1, 2, 3, 4}), {1, 3, 2, 4});

  // n = 2 keeps block order.
  check_tuple(fwd(classical_alpha(2), {1, 2, 3, 4, 5, 6, 7, 8}),
              {1, 2, 5, 6, 7, 8, 3, 4});
  check_tuple(fwd(kappa(2), {1, 2, 3, 4, 5, 6, 7, 8}), {1, 2, 5, 6, 3, 4, 7, 8});
}

TEST_CASE("contact legs move slots as documented") {
  // (q, p, z, qd, pd, zd, u) = (1, 2, 3, 4, 5, 6, 7).
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7};
  // beta_c -> (q, p, z, u p + pd, -qd, -u, zd - p.qd) = (1, 2, 3, 19, -4, -7, -2).
  check_tuple(fwd(beta_c(1), x), {1, 2, 3, 19, -4, -7, -2});
  // alpha_c -> (q, qd, z, u p + pd, p, -u, zd) = (1, 4, 3, 19, 2, -7, 6).
  check_tuple(fwd(alpha_c(1), x), {1, 4, 3, 19, 2, -7, 6});
  // psi_c: (q, qd, z, a, ad, v, u) -> (q, ad, z, a, -qd, v, u - ad.qd)
  // at (1, 2, 3, 4, 5, 6, 7) -> (1, 5, 3, 4, -2, 6, -3).
  check_tuple(fwd(psi_c(1), x), {1, 5, 3, 4, -2, 6, -3});
}

TEST_CASE("evolution legs move slots as documented") {
  // (q, p, z, qd, pd, u) = (1, 2, 3, 4, 5, 7).
  std::vector<double> x{1, 2, 3, 4, 5, 7};
  check_tuple(fwd(evolution_alpha0(1), x), {1, 4, 3, 19, 2, -7});
  check_tuple(fwd(evolution_beta0(1), x), {1, 2, 3, 19, -4, -7});
}

TEST_CASE("legs invert exactly") {
  std::vector<double> x4{0.3, -1.2, 2.5, 0.7};
  CHECK(round_trip_error(classical_alpha(1), x4) == doctest::Approx(0.0));
  CHECK(round_trip_error(classical_beta(1), x4) == doctest::Approx(0.0));
  CHECK(round_trip_error(classical_psi(1), x4) == doctest::Approx(0.0));
  CHECK(round_trip_error(kappa(1), x4) == doctest::Approx(0.0));

  std::vector<double> x7{0.3, -1.2, 2.5, 0.7, 1.9, -0.4, 1.1};
  CHECK(round_trip_error(beta_c(1), x7) == doctest::Approx(0.0));
  CHECK(round_trip_error(alpha_c(1), x7) == doctest::Approx(0.0));
  CHECK(round_trip_error(psi_c(1), x7) == doctest::Approx(0.0));

  std::vector<double> x6{0.3, -1.2, 2.5, 0.7, 1.9, 1.1};
  CHECK(round_trip_error(evolution_alpha0(1), x6) == doctest::Approx(0.0));
  CHECK(round_trip_error(evolution_beta0(1), x6) == doctest::Approx(0.0));
}

TEST_CASE("composition identities hold pointwise") {
  Rng rng(17);
  for (int n : {1, 2}) {
    // psi = beta o alpha^{-1} on T*TQ.
    auto r1 = verify_map_equal(
        compose(classical_psi(n), classical_alpha(n)), classical_beta(n),
        "psi o alpha = beta", 50, rng, 1e-12);
    CHECK(r1.pass);

    // beta_c = psi_c o alpha_c on T(T*Q x R).
    auto r2 = verify_map_equal(compose(psi_c(n), alpha_c(n)), beta_c(n),
                               "psi_c o alpha_c = beta_c", 50, rng, 1e-12);
    CHECK(r2.pass);

    // kappa is an involution.
    auto idmap = CoordMap::make("id", 4 * n, 4 * n, [](auto x) {
      return std::vector<std::remove_cv_t<typename decltype(x)::value_type>>(x.begin(),
                                                                             x.end());
    });
    auto r3 = verify_map_equal(compose(kappa(n), kappa(n)), idmap, "kappa o kappa = id",
                               50, rng, 1e-12);
    CHECK(r3.pass);
  }
}

TEST_CASE("jacobians from duals match finite differences") {
  std::vector<double> x{0.4, -0.9, 1.3, 0.2, -0.5, 0.8, 1.6};
  for (const CoordMap& m : {beta_c(1), alpha_c(1), psi_c(1)}) {
    Eigen::MatrixXd j = jacobian(m, x);
    Eigen::MatrixXd jf = fd_jacobian_of(
        [&m](std::span<const double> v) { return m.forward(v); }, x);
    CHECK((j - jf).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("classical legs pull the symplectic forms back to the tangent form") {
  Rng rng(5);
  for (int n : {1, 2}) {
    auto r_alpha =
        verify_pullback(classical_alpha(n), tangent_symplectic_form(n),
                        canonical_symplectic_form(2 * n, "omega_{T*TQ}"), 60, rng, 1e-8);
    CHECK(r_alpha.pass);
    auto r_beta =
        verify_pullback(classical_beta(n), tangent_symplectic_form(n),
                        canonical_symplectic_form(2 * n, "omega_{T*T*Q}"), 60, rng, 1e-8);
    CHECK(r_beta.pass);
  }
}

TEST_CASE("contact legs pull the canonical contact forms back to eta_T") {
  Rng rng(11);
  for (int n : {1, 2}) {
    auto r_beta = verify_pullback(beta_c(n), eta_T_form(n), eta_cot_cot_form(n), 60, rng,
                                  1e-8);
    CHECK(r_beta.pass);
    CHECK(r_beta.samples == 60);
    auto r_alpha = verify_pullback(alpha_c(n), eta_T_form(n), eta_cot_tan_form(n), 60,
                                   rng, 1e-8);
    CHECK(r_alpha.pass);
    auto r_psi = verify_pullback(psi_c(n), eta_cot_tan_form(n), eta_cot_cot_form(n), 60,
                                 rng, 1e-8);
    CHECK(r_psi.pass);
  }
}

TEST_CASE("evolution legs pull the symplectic forms back to omega_eta") {
  Rng rng(13);
  for (int n : {1, 2}) {
    auto r_alpha = verify_pullback(evolution_alpha0(n), omega_eta_form(n),
                                   omega_cot_tan_form(n), 60, rng, 1e-8);
    CHECK(r_alpha.pass);
    auto r_beta = verify_pullback(evolution_beta0(n), omega_eta_form(n),
                                  omega_cot_cot_form(n), 60, rng, 1e-8);
    CHECK(r_beta.pass);
  }
}

TEST_CASE("a broken map fails the pullback check") {
  // Drop the u p term from beta_c; the pullback must miss eta_{T*(T*QxR)xR}.
  auto broken = CoordMap::make("broken beta_c", 7, 7, [](auto x) {
    using T = std::remove_cv_t<typename decltype(x)::value_type>;
    return std::vector<T>{x[0], x[1], x[2], x[4], -x[3], -x[6], x[5] - x[1] * x[3]};
  });
  Rng rng(3);
  auto r = verify_pullback(broken, eta_T_form(1), eta_cot_cot_form(1), 40, rng, 1e-8);
  CHECK(!r.pass);
  CHECK(r.max_residual > 1e-3);
}

TEST_CASE("verification report bookkeeping") {
  Rng rng(1);
  auto r = verify_round_trip(beta_c(1), 25, rng, 1e-12);
  CHECK(r.pass);
  CHECK(r.samples == 25);
  CHECK(r.max_residual <= 1e-12);
  CHECK(r.tolerance == 1e-12);

  auto vacuous = verify_round_trip(beta_c(1), 0, rng, 1e-12);
  CHECK(vacuous.pass);
  CHECK(vacuous.samples == 0);

  CHECK_THROWS_AS(compose(classical_alpha(1), beta_c(1)), std::invalid_argument);

  auto no_inv = CoordMap::make("fold", 2, 1, [](auto x) {
    using T = std::remove_cv_t<typename decltype(x)::value_type>;
    return std::vector<T>{x[0] + x[1]};
  });
  std::vector<double> y{1.0};
  CHECK(!no_inv.has_inverse());
  CHECK_THROWS_AS(no_inv.inverse(std::span<const double>(y)), std::logic_error);
}
