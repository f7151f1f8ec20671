#pragma once

// A ScalarField is a smooth real function of named coordinates, evaluable
// over plain doubles and over (nested) dual numbers so first and second
// partials are exact.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "contact/dual.hpp"

namespace contact {

class ScalarField {
 public:
  explicit ScalarField(std::vector<std::string> coords) : coords_(std::move(coords)) {}
  virtual ~ScalarField() = default;

  int arity() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }

  virtual double eval(std::span<const double> x) const = 0;
  virtual Dual eval(std::span<const Dual> x) const = 0;
  virtual Dual2 eval(std::span<const Dual2> x) const = 0;

  double operator()(std::span<const double> x) const {
    check_arity(x.size());
    return eval(x);
  }

  void check_arity(std::size_t got) const {
    if (static_cast<int>(got) != arity())
      throw std::invalid_argument("field over " + std::to_string(arity()) +
                                  " coordinates evaluated with " + std::to_string(got) +
                                  " values");
  }

 private:
  std::vector<std::string> coords_;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

namespace detail {

template <class F>
class LambdaField final : public ScalarField {
 public:
  LambdaField(std::vector<std::string> coords, F f)
      : ScalarField(std::move(coords)), f_(std::move(f)) {}

  double eval(std::span<const double> x) const override { return f_(x); }
  Dual eval(std::span<const Dual> x) const override { return f_(x); }
  Dual2 eval(std::span<const Dual2> x) const override { return f_(x); }

 private:
  F f_;
};

}  // namespace detail

// Wraps a generic callable (span<const T> -> T for T in {double, Dual, Dual2}).
template <class F>
FieldPtr make_field(std::vector<std::string> coords, F f) {
  return std::make_shared<detail::LambdaField<F>>(std::move(coords), std::move(f));
}

}  // namespace contact
