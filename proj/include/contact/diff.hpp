#pragma once

// Gradients, Hessians and finite-difference cross checks for scalar fields,
// plus Jacobians of vector-valued coordinate functions.

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "contact/dual.hpp"
#include "contact/scalar_field.hpp"

namespace contact {

inline std::vector<double> gradient(const ScalarField& f, std::span<const double> x) {
  f.check_arity(x.size());
  auto seeded = seed_duals(x);
  Dual r = f.eval(std::span<const Dual>(seeded));
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t i = 0; i < r.partials.size(); ++i) g[i] = r.partials[i];
  return g;
}

// Central differences; the independent oracle for dual-number gradients.
inline std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x,
                                       double h = 1e-5) {
  f.check_arity(x.size());
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double xi = xp[i];
    xp[i] = xi + h;
    double fp = f.eval(std::span<const double>(xp));
    xp[i] = xi - h;
    double fm = f.eval(std::span<const double>(xp));
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

inline Eigen::MatrixXd hessian(const ScalarField& f, std::span<const double> x) {
  f.check_arity(x.size());
  auto seeded = seed_dual2(x);
  Dual2 r = f.eval(std::span<const Dual2>(seeded));
  auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < r.partials.size(); ++i)
    for (std::size_t j = 0; j < r.partials[i].partials.size(); ++j)
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          r.partials[i].partials[j];
  return h;
}

using VectorFn = std::function<std::vector<double>(std::span<const double>)>;
using DualVectorFn = std::function<std::vector<Dual>(std::span<const Dual>)>;

inline Eigen::MatrixXd jacobian_of(const DualVectorFn& f, std::span<const double> x) {
  auto seeded = seed_duals(x);
  std::vector<Dual> out = f(std::span<const Dual>(seeded));
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.size()),
                                            static_cast<Eigen::Index>(x.size()));
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t c = 0; c < out[r].partials.size(); ++c)
      j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = out[r].partials[c];
  return j;
}

inline Eigen::MatrixXd fd_jacobian_of(const VectorFn& f, std::span<const double> x,
                                      double h = 1e-5) {
  std::vector<double> xp(x.begin(), x.end());
  Eigen::MatrixXd j;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double xi = xp[i];
    xp[i] = xi + h;
    std::vector<double> fp = f(std::span<const double>(xp));
    xp[i] = xi - h;
    std::vector<double> fm = f(std::span<const double>(xp));
    xp[i] = xi;
    if (j.size() == 0)
      j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(fp.size()),
                                static_cast<Eigen::Index>(x.size()));
    for (std::size_t r = 0; r < fp.size(); ++r)
      j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

}  // namespace contact
