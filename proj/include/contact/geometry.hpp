#pragma once

// Darboux-coordinate contact geometry on the extended cotangent bundle.
//
// Canonical slot ordering (n = dim Q), used by every flattened array:
//
//   T*Q x R          (2n+1):  q[n], p[n], z
//   T(T*Q x R)       (4n+3):  q[n], p[n], z, qdot[n], pdot[n], zdot, u
//   T*(T*Q x R) x R  (4n+3):  q[n], p[n], z, a[n], b[n], v, w
//   T*(TQ x R) x R   (4n+3):  q[n], qdot[n], z, a[n], adot[n], v, u
//   TT*Q             (4n):    q[n], p[n], qdot[n], pdot[n]
//   T*TQ             (4n):    q[n], qdot[n], a[n], adot[n]
//   T*T*Q            (4n):    q[n], p[n], a[n], b[n]
//   TTQ              (4n):    q[n], qdot[n], qprime[n], qdotprime[n]
//   H(T*Q x R)       (4n+2):  q[n], p[n], z, qdot[n], pdot[n], u   (zdot = p.qdot)
//   T*R^m x R        (2m+1):  x[m], y[m], u
//
// Fiber slots sit directly after the base slots they are conjugate to; the
// contact extension coordinate always comes last. Tangent vectors and
// covectors are plain arrays in the same slot order as the point they sit at.

#include <span>
#include <vector>

namespace contact {

struct ContactPoint {
  std::vector<double> q, p;
  double z = 0.0;

  int n() const { return static_cast<int>(q.size()); }
};

// Point of T(T*Q x R): base point plus tangent components and the extension
// velocity u of the lifted contact coordinate.
struct ExtTangentPoint {
  ContactPoint base;
  std::vector<double> qdot, pdot;
  double zdot = 0.0, u = 0.0;

  int n() const { return base.n(); }
};

// Point of T*(T*Q x R) x R: base point plus covector components (a, b, v)
// and the new extension coordinate w.
struct ExtCotangentPoint {
  ContactPoint base;
  std::vector<double> a, b;
  double v = 0.0, w = 0.0;

  int n() const { return base.n(); }
};

std::vector<double> flatten(const ContactPoint& x);
std::vector<double> flatten(const ExtTangentPoint& x);
std::vector<double> flatten(const ExtCotangentPoint& x);
ContactPoint unflatten_contact(std::span<const double> x);
ExtTangentPoint unflatten_ext_tangent(std::span<const double> x);
ExtCotangentPoint unflatten_ext_cotangent(std::span<const double> x);

// eta = dz - p.dq evaluated on a tangent array V (2n+1 slots).
double eta_eval(const ContactPoint& x, std::span<const double> V);

// Reeb field d/dz as a tangent array.
std::vector<double> reeb(int n);

// Musical map of the Jacobi structure applied to a covector
// alpha = alpha_q.dq + alpha_p.dp + u.dz; its kernel is spanned by eta.
std::vector<double> sharp_lambda(const ContactPoint& x, std::span<const double> alpha);

// flat(v) = i_v deta + eta(v) eta with deta = sum dq^i ^ dp_i; sends the Reeb
// field to eta.
std::vector<double> flat(const ContactPoint& x, std::span<const double> v);

// Tangent lift of eta on T(T*Q x R):
// eta^T = dzdot + u dz - (pdot_i + u p_i) dq^i - p_i dqdot^i.
double eta_T_eval(const ExtTangentPoint& x, std::span<const double> W);

// One- and two-form of the evolution-side symplectic slice zdot = p.qdot.
// W arrays use the 4n+2 slice slots (q, p, z, qdot, pdot, u); evaluation at a
// point violating |zdot - p.qdot| <= 1e-9 is an error.
// theta_eta = u dz - (pdot_i + u p_i) dq^i + qdot^i dp_i
double theta_eta_eval(const ExtTangentPoint& x, std::span<const double> W);
// omega_eta = d theta_eta
//           = du^dz - dpdot^dq - p du^dq - u dp^dq + dqdot^dp
double omega_eta_eval(const ExtTangentPoint& x, std::span<const double> W1,
                      std::span<const double> W2);

}  // namespace contact
