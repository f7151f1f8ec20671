#pragma once

// Forward-mode dual numbers with a per-call vector of partial derivatives.
// DualT<double> carries first derivatives; DualT<DualT<double>> carries
// second derivatives (outer partials of inner duals form the Hessian).
// An empty partials vector marks a constant; binary operations broadcast it.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace contact {

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

template <class T>
struct DualT {
  T value{};
  std::vector<T> partials;

  DualT() = default;
  DualT(double v) : value(v) {}                                    // NOLINT: implicit constant lift
  DualT(T v, std::vector<T> p) : value(std::move(v)), partials(std::move(p)) {}
};

using Dual = DualT<double>;
using Dual2 = DualT<Dual>;

inline double scalar_value(double x) { return x; }
template <class T>
double scalar_value(const DualT<T>& d) { return scalar_value(d.value); }

inline bool is_zero(double x) { return x == 0.0; }
template <class T>
bool is_zero(const DualT<T>& d) {
  if (!is_zero(d.value)) return false;
  for (const auto& p : d.partials)
    if (!is_zero(p)) return false;
  return true;
}

inline bool is_constant(double) { return true; }
template <class T>
bool is_constant(const DualT<T>& d) {
  for (const auto& p : d.partials)
    if (!is_zero(p)) return false;
  return true;
}

namespace detail {

// ca*pa + cb*pb with empty vectors acting as zero.
template <class T>
std::vector<T> lincomb(const std::vector<T>& pa, const T& ca,
                       const std::vector<T>& pb, const T& cb) {
  if (pa.empty() && pb.empty()) return {};
  std::size_t m = pa.empty() ? pb.size() : pa.size();
  if (!pa.empty() && !pb.empty() && pa.size() != pb.size())
    throw std::logic_error("dual partials length mismatch");
  std::vector<T> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (pa.empty())
      out[i] = cb * pb[i];
    else if (pb.empty())
      out[i] = ca * pa[i];
    else
      out[i] = ca * pa[i] + cb * pb[i];
  }
  return out;
}

template <class T>
std::vector<T> scale(const std::vector<T>& p, const T& c) {
  std::vector<T> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = c * p[i];
  return out;
}

}  // namespace detail

template <class T>
DualT<T> operator+(const DualT<T>& a, const DualT<T>& b) {
  return {a.value + b.value, detail::lincomb(a.partials, T(1.0), b.partials, T(1.0))};
}
template <class T>
DualT<T> operator-(const DualT<T>& a, const DualT<T>& b) {
  return {a.value - b.value, detail::lincomb(a.partials, T(1.0), b.partials, T(-1.0))};
}
template <class T>
DualT<T> operator*(const DualT<T>& a, const DualT<T>& b) {
  return {a.value * b.value, detail::lincomb(a.partials, b.value, b.partials, a.value)};
}
template <class T>
DualT<T> operator/(const DualT<T>& a, const DualT<T>& b) {
  T inv = T(1.0) / b.value;
  T q = a.value * inv;
  return {q, detail::lincomb(a.partials, inv, b.partials, T(0.0) - q * inv)};
}
template <class T>
DualT<T> operator-(const DualT<T>& a) {
  return {T(0.0) - a.value, detail::scale(a.partials, T(-1.0))};
}

template <class T>
DualT<T> operator+(const DualT<T>& a, double c) { return {a.value + c, a.partials}; }
template <class T>
DualT<T> operator+(double c, const DualT<T>& a) { return a + c; }
template <class T>
DualT<T> operator-(const DualT<T>& a, double c) { return {a.value - c, a.partials}; }
template <class T>
DualT<T> operator-(double c, const DualT<T>& a) { return -(a - c); }
template <class T>
DualT<T> operator*(const DualT<T>& a, double c) {
  return {a.value * c, detail::scale(a.partials, T(c))};
}
template <class T>
DualT<T> operator*(double c, const DualT<T>& a) { return a * c; }
template <class T>
DualT<T> operator/(const DualT<T>& a, double c) { return a * (1.0 / c); }
template <class T>
DualT<T> operator/(double c, const DualT<T>& a) { return DualT<T>(c) / a; }

// Chain rule f(a) given f(a.value) and f'(a.value).
template <class T>
DualT<T> chain(const T& fv, const T& fp, const DualT<T>& a) {
  return {fv, detail::scale(a.partials, fp)};
}

template <class T>
DualT<T> exp(const DualT<T>& a) {
  using std::exp;
  T v = exp(a.value);
  return chain(v, v, a);
}

template <class T>
DualT<T> log(const DualT<T>& a) {
  using std::log;
  if (scalar_value(a) <= 0.0)
    throw DomainError("log of non-positive argument " + std::to_string(scalar_value(a)));
  return chain(log(a.value), T(1.0) / a.value, a);
}

template <class T>
DualT<T> sin(const DualT<T>& a) {
  using std::cos;
  using std::sin;
  return chain(sin(a.value), cos(a.value), a);
}

template <class T>
DualT<T> cos(const DualT<T>& a) {
  using std::cos;
  using std::sin;
  return chain(cos(a.value), T(0.0) - sin(a.value), a);
}

template <class T>
DualT<T> sqrt(const DualT<T>& a) {
  using std::sqrt;
  if (scalar_value(a) < 0.0)
    throw DomainError("sqrt of negative argument " + std::to_string(scalar_value(a)));
  T v = sqrt(a.value);
  return chain(v, T(0.5) / v, a);
}

// Power with constant real exponent; uses the power rule, so negative bases
// with integer exponents stay valid.
template <class T>
DualT<T> pow(const DualT<T>& a, double k) {
  using std::pow;
  double av = scalar_value(a);
  if (av == 0.0 && k < 0.0) throw DomainError("zero base raised to negative exponent");
  T v = pow(a.value, k);
  if (std::isnan(scalar_value(v)))
    throw DomainError("negative base " + std::to_string(av) +
                      " raised to non-integer exponent " + std::to_string(k));
  if (a.partials.empty() || k == 0.0) return {v, {}};
  return chain(v, T(k) * pow(a.value, k - 1.0), a);
}

inline double pow_checked(double a, double b) {
  if (a == 0.0 && b < 0.0) throw DomainError("zero base raised to negative exponent");
  double v = std::pow(a, b);
  if (std::isnan(v) && !std::isnan(a) && !std::isnan(b))
    throw DomainError("negative base " + std::to_string(a) +
                      " raised to non-integer exponent " + std::to_string(b));
  return v;
}

template <class T>
DualT<T> pow(const DualT<T>& a, const DualT<T>& b) {
  if (is_constant(b)) return pow(a, scalar_value(b));
  if (scalar_value(a) <= 0.0)
    throw DomainError("non-positive base " + std::to_string(scalar_value(a)) +
                      " raised to varying exponent");
  return exp(b * log(a));
}
template <class T>
DualT<T> pow(double a, const DualT<T>& b) { return pow(DualT<T>(a), b); }

// Independent-variable seeding: unit partials at the outer (and, for Dual2,
// inner) level so one evaluation yields the full gradient or Hessian row set.
inline std::vector<Dual> seed_duals(std::span<const double> x) {
  std::vector<Dual> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i].value = x[i];
    out[i].partials.assign(x.size(), 0.0);
    out[i].partials[i] = 1.0;
  }
  return out;
}

inline std::vector<Dual2> seed_dual2(std::span<const double> x) {
  std::size_t m = x.size();
  std::vector<Dual2> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    Dual inner(x[i]);
    inner.partials.assign(m, 0.0);
    inner.partials[i] = 1.0;
    out[i].value = inner;
    out[i].partials.assign(m, Dual(0.0));
    out[i].partials[i] = Dual(1.0);
  }
  return out;
}

}  // namespace contact
