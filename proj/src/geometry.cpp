#include "contact/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace contact {

namespace {

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(want) +
                                " slots, got " + std::to_string(got));
}

}  // namespace

std::vector<double> flatten(const ContactPoint& x) {
  std::vector<double> out;
  out.reserve(2 * x.q.size() + 1);
  out.insert(out.end(), x.q.begin(), x.q.end());
  out.insert(out.end(), x.p.begin(), x.p.end());
  out.push_back(x.z);
  return out;
}

std::vector<double> flatten(const ExtTangentPoint& x) {
  std::vector<double> out = flatten(x.base);
  out.insert(out.end(), x.qdot.begin(), x.qdot.end());
  out.insert(out.end(), x.pdot.begin(), x.pdot.end());
  out.push_back(x.zdot);
  out.push_back(x.u);
  return out;
}

std::vector<double> flatten(const ExtCotangentPoint& x) {
  std::vector<double> out = flatten(x.base);
  out.insert(out.end(), x.a.begin(), x.a.end());
  out.insert(out.end(), x.b.begin(), x.b.end());
  out.push_back(x.v);
  out.push_back(x.w);
  return out;
}

ContactPoint unflatten_contact(std::span<const double> x) {
  if (x.size() % 2 != 1 || x.size() < 3)
    throw std::invalid_argument("contact point needs 2n+1 slots");
  std::size_t n = (x.size() - 1) / 2;
  ContactPoint pt;
  pt.q.assign(x.begin(), x.begin() + n);
  pt.p.assign(x.begin() + n, x.begin() + 2 * n);
  pt.z = x[2 * n];
  return pt;
}

ExtTangentPoint unflatten_ext_tangent(std::span<const double> x) {
  if (x.size() % 4 != 3) throw std::invalid_argument("tangent point needs 4n+3 slots");
  std::size_t n = (x.size() - 3) / 4;
  ExtTangentPoint pt;
  pt.base = unflatten_contact(x.subspan(0, 2 * n + 1));
  pt.qdot.assign(x.begin() + 2 * n + 1, x.begin() + 3 * n + 1);
  pt.pdot.assign(x.begin() + 3 * n + 1, x.begin() + 4 * n + 1);
  pt.zdot = x[4 * n + 1];
  pt.u = x[4 * n + 2];
  return pt;
}

ExtCotangentPoint unflatten_ext_cotangent(std::span<const double> x) {
  if (x.size() % 4 != 3) throw std::invalid_argument("cotangent point needs 4n+3 slots");
  std::size_t n = (x.size() - 3) / 4;
  ExtCotangentPoint pt;
  pt.base = unflatten_contact(x.subspan(0, 2 * n + 1));
  pt.a.assign(x.begin() + 2 * n + 1, x.begin() + 3 * n + 1);
  pt.b.assign(x.begin() + 3 * n + 1, x.begin() + 4 * n + 1);
  pt.v = x[4 * n + 1];
  pt.w = x[4 * n + 2];
  return pt;
}

double eta_eval(const ContactPoint& x, std::span<const double> V) {
  std::size_t n = x.q.size();
  check_dim(V.size(), 2 * n + 1, "eta argument");
  double r = V[2 * n];
  for (std::size_t i = 0; i < n; ++i) r -= x.p[i] * V[i];
  return r;
}

std::vector<double> reeb(int n) {
  std::vector<double> v(2 * static_cast<std::size_t>(n) + 1, 0.0);
  v.back() = 1.0;
  return v;
}

std::vector<double> sharp_lambda(const ContactPoint& x, std::span<const double> alpha) {
  std::size_t n = x.q.size();
  check_dim(alpha.size(), 2 * n + 1, "sharp argument");
  double u = alpha[2 * n];
  std::vector<double> v(2 * n + 1, 0.0);
  double pdotalpha = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = alpha[n + i];                       // dq components from dp slots
    v[n + i] = -(alpha[i] + x.p[i] * u);       // dp components
    pdotalpha += x.p[i] * alpha[n + i];
  }
  v[2 * n] = pdotalpha;                        // dz component
  return v;
}

std::vector<double> flat(const ContactPoint& x, std::span<const double> v) {
  std::size_t n = x.q.size();
  check_dim(v.size(), 2 * n + 1, "flat argument");
  double ev = eta_eval(x, v);
  std::vector<double> alpha(2 * n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = -v[n + i] - ev * x.p[i];        // dq slot
    alpha[n + i] = v[i];                       // dp slot
  }
  alpha[2 * n] = ev;                           // dz slot
  return alpha;
}

double eta_T_eval(const ExtTangentPoint& x, std::span<const double> W) {
  std::size_t n = x.base.q.size();
  check_dim(W.size(), 4 * n + 3, "eta_T argument");
  double r = W[4 * n + 1] + x.u * W[2 * n];
  for (std::size_t i = 0; i < n; ++i) {
    r -= (x.pdot[i] + x.u * x.base.p[i]) * W[i];
    r -= x.base.p[i] * W[2 * n + 1 + i];
  }
  return r;
}

namespace {

void check_slice(const ExtTangentPoint& x) {
  double c = x.zdot;
  for (std::size_t i = 0; i < x.base.p.size(); ++i) c -= x.base.p[i] * x.qdot[i];
  if (std::abs(c) > 1e-9)
    throw std::invalid_argument("point violates the slice constraint zdot = p.qdot by " +
                                std::to_string(c));
}

}  // namespace

double theta_eta_eval(const ExtTangentPoint& x, std::span<const double> W) {
  std::size_t n = x.base.q.size();
  check_slice(x);
  check_dim(W.size(), 4 * n + 2, "theta_eta argument");
  double r = x.u * W[2 * n];
  for (std::size_t i = 0; i < n; ++i) {
    r -= (x.pdot[i] + x.u * x.base.p[i]) * W[i];
    r += x.qdot[i] * W[n + i];
  }
  return r;
}

double omega_eta_eval(const ExtTangentPoint& x, std::span<const double> W1,
                      std::span<const double> W2) {
  std::size_t n = x.base.q.size();
  check_slice(x);
  check_dim(W1.size(), 4 * n + 2, "omega_eta argument");
  check_dim(W2.size(), 4 * n + 2, "omega_eta argument");
  // Slice slots: q[0..n), p[n..2n), z [2n], qdot [2n+1..3n+1), pdot [3n+1..4n+1), u [4n+1].
  auto wedge = [&](std::size_t i, std::size_t j) {
    return W1[i] * W2[j] - W1[j] * W2[i];
  };
  std::size_t zi = 2 * n, ui = 4 * n + 1;
  double r = wedge(ui, zi);
  for (std::size_t i = 0; i < n; ++i) {
    r -= wedge(3 * n + 1 + i, i);              // dpdot ^ dq
    r -= x.base.p[i] * wedge(ui, i);           // p du ^ dq
    r -= x.u * wedge(n + i, i);                // u dp ^ dq
    r += wedge(2 * n + 1 + i, n + i);          // dqdot ^ dp
  }
  return r;
}

}  // namespace contact
