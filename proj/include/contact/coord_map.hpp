#pragma once

// Named coordinate transformations evaluable over doubles and duals, so
// exact Jacobians come from the same definition that moves points.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "contact/diff.hpp"
#include "contact/dual.hpp"

namespace contact {

class CoordMap {
 public:
  CoordMap() = default;

  std::string name;
  int dim_in = 0, dim_out = 0;

  std::vector<double> forward(std::span<const double> x) const {
    check(x.size());
    return fwd_d_(x);
  }
  std::vector<Dual> forward(std::span<const Dual> x) const {
    check(x.size());
    return fwd_dual_(x);
  }

  bool has_inverse() const { return static_cast<bool>(inv_d_); }
  std::vector<double> inverse(std::span<const double> y) const {
    if (!has_inverse()) throw std::logic_error("map '" + name + "' has no inverse");
    if (static_cast<int>(y.size()) != dim_out)
      throw std::invalid_argument("map '" + name + "' inverse needs " +
                                  std::to_string(dim_out) + " slots");
    return inv_d_(y);
  }

  template <class F>
  static CoordMap make(std::string name, int dim_in, int dim_out, F f) {
    CoordMap m;
    m.name = std::move(name);
    m.dim_in = dim_in;
    m.dim_out = dim_out;
    m.fwd_d_ = [f](std::span<const double> x) { return f(x); };
    m.fwd_dual_ = [f](std::span<const Dual> x) { return f(x); };
    return m;
  }

  template <class F, class G>
  static CoordMap make(std::string name, int dim_in, int dim_out, F f, G g) {
    CoordMap m = make(std::move(name), dim_in, dim_out, std::move(f));
    m.inv_d_ = [g](std::span<const double> y) { return g(y); };
    return m;
  }

  friend CoordMap compose(const CoordMap& outer, const CoordMap& inner);

 private:
  void check(std::size_t got) const {
    if (static_cast<int>(got) != dim_in)
      throw std::invalid_argument("map '" + name + "' needs " + std::to_string(dim_in) +
                                  " slots, got " + std::to_string(got));
  }

  std::function<std::vector<double>(std::span<const double>)> fwd_d_;
  std::function<std::vector<Dual>(std::span<const Dual>)> fwd_dual_;
  std::function<std::vector<double>(std::span<const double>)> inv_d_;
};

inline CoordMap compose(const CoordMap& outer, const CoordMap& inner) {
  if (inner.dim_out != outer.dim_in)
    throw std::invalid_argument("compose: dimensions of '" + outer.name + "' and '" +
                                inner.name + "' do not chain");
  CoordMap m;
  m.name = outer.name + " o " + inner.name;
  m.dim_in = inner.dim_in;
  m.dim_out = outer.dim_out;
  const CoordMap o = outer, i = inner;
  m.fwd_d_ = [o, i](std::span<const double> x) {
    auto mid = i.forward(x);
    return o.forward(std::span<const double>(mid));
  };
  m.fwd_dual_ = [o, i](std::span<const Dual> x) {
    auto mid = i.forward(x);
    return o.forward(std::span<const Dual>(mid));
  };
  if (outer.has_inverse() && inner.has_inverse()) {
    m.inv_d_ = [o, i](std::span<const double> y) {
      auto mid = o.inverse(y);
      return i.inverse(std::span<const double>(mid));
    };
  }
  return m;
}

inline Eigen::MatrixXd jacobian(const CoordMap& m, std::span<const double> x) {
  return jacobian_of([&m](std::span<const Dual> v) { return m.forward(v); }, x);
}

}  // namespace contact
