#pragma once

// Tulczyjew-triple legs for classical, contact and evolution dynamics, the
// canonical forms they intertwine, and a sampled pullback verifier.
// Slot orderings are the canonical table in geometry.hpp.

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "contact/coord_map.hpp"
#include "contact/geometry.hpp"
#include "contact/report.hpp"
#include "contact/rng.hpp"
#include "contact/scalar_field.hpp"

namespace contact {

// Classical triple on T*Q (all 4n slots).
CoordMap classical_alpha(int n);  // TT*Q -> T*TQ: (q,p,qd,pd) -> (q,qd,pd,p)
CoordMap classical_beta(int n);   // TT*Q -> T*T*Q: (q,p,qd,pd) -> (q,p,pd,-qd)
CoordMap classical_psi(int n);    // T*TQ -> T*T*Q: (q,qd,a,ad) -> (q,ad,a,-qd)
CoordMap kappa(int n);            // TTQ -> TTQ: (q,qd,q',qd') -> (q,q',qd,qd')

// Contact triple on T*Q x R (4n+3 slots).
CoordMap beta_c(int n);   // T(T*QxR) -> T*(T*QxR)xR: (...,qd,pd,zd,u) -> (q,p,z, u p+pd, -qd, -u, zd-p.qd)
CoordMap alpha_c(int n);  // T(T*QxR) -> T*(TQxR)xR:  -> (q, qd, z, u p+pd, p, -u, zd)
CoordMap psi_c(int n);    // T*(TQxR)xR -> T*(T*QxR)xR: (q,qd,z,a,ad,v,u) -> (q,ad,z,a,-qd,v,u-ad.qd)

// Evolution legs on the slice H(T*QxR) (4n+2 slots).
CoordMap evolution_alpha0(int n);  // -> T*(TQxR): (q,p,z,qd,pd,u) -> (q,qd,z, u p+pd, p, -u)
CoordMap evolution_beta0(int n);   // -> T*(T*QxR): (q,p,z,qd,pd,u) -> (q,p,z, u p+pd, -qd, -u)

// Point forms with sampled evaluators. degree selects which callback is set.
struct FormEvaluator {
  std::string name;
  int dim = 0;
  int degree = 1;
  std::function<double(std::span<const double>, std::span<const double>)> one;
  std::function<double(std::span<const double>, std::span<const double>,
                       std::span<const double>)>
      two;
};

// Contact form d(last) - xi.dx on T*X x R for dim X = k (2k+1 slots).
FormEvaluator canonical_contact_form(int k, std::string name);
// Symplectic form sum dx_i ^ dxi_i on T*X for dim X = k (2k slots).
FormEvaluator canonical_symplectic_form(int k, std::string name);

FormEvaluator eta_form(int n);              // on T*Q x R
FormEvaluator eta_T_form(int n);            // on T(T*Q x R)
FormEvaluator eta_cot_cot_form(int n);      // on T*(T*Q x R) x R
FormEvaluator eta_cot_tan_form(int n);      // on T*(TQ x R) x R
FormEvaluator theta_eta_form(int n);        // on H(T*Q x R)
FormEvaluator omega_eta_form(int n);        // on H(T*Q x R), degree 2
FormEvaluator omega_cot_tan_form(int n);    // on T*(TQ x R), degree 2
FormEvaluator omega_cot_cot_form(int n);    // on T*(T*Q x R), degree 2
FormEvaluator tangent_symplectic_form(int n);  // dq^dpd + dqd^dp on TT*Q

// Checks dst(m(x), Dm(x) W [, Dm(x) W2]) = conformal(x) * src(x, W [, W2]) at
// sampled points and directions; the Jacobian is exact (dual numbers).
// conformal defaults to the constant 1.
VerificationReport verify_pullback(const CoordMap& m, const FormEvaluator& src,
                                   const FormEvaluator& dst, int samples, Rng& rng,
                                   double tolerance, const ScalarField* conformal = nullptr,
                                   double box_lo = -2.0, double box_hi = 2.0);

// Max round-trip error |inverse(forward(x)) - x| over sampled points.
VerificationReport verify_round_trip(const CoordMap& m, int samples, Rng& rng,
                                     double tolerance, double box_lo = -2.0,
                                     double box_hi = 2.0);

// Max |f(x) - g(x)| over sampled points for maps with equal dimensions.
VerificationReport verify_map_equal(const CoordMap& f, const CoordMap& g,
                                    const std::string& name, int samples, Rng& rng,
                                    double tolerance, double box_lo = -2.0,
                                    double box_hi = 2.0);

}  // namespace contact
