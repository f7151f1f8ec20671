#include "contact/tulczyjew.hpp"

#include <cmath>
#include <stdexcept>

namespace contact {

CoordMap classical_alpha(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
      y[n + i] = x[2 * n + i];      // qdot
      y[2 * n + i] = x[3 * n + i];  // a = pdot
      y[3 * n + i] = x[n + i];      // adot = p
    }
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    for (int i = 0; i < n; ++i) {
      x[n + i] = y[3 * n + i];      // p = adot
      x[2 * n + i] = y[n + i];      // qdot
      x[3 * n + i] = y[2 * n + i];  // pdot = a
    }
    return x;
  };
  return CoordMap::make("alpha", 4 * n, 4 * n, fwd, inv);
}

CoordMap classical_beta(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
      y[2 * n + i] = x[3 * n + i];   // a = pdot
      y[3 * n + i] = -x[2 * n + i];  // b = -qdot
    }
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    for (int i = 0; i < n; ++i) {
      x[2 * n + i] = -y[3 * n + i];
      x[3 * n + i] = y[2 * n + i];
    }
    return x;
  };
  return CoordMap::make("beta", 4 * n, 4 * n, fwd, inv);
}

CoordMap classical_psi(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
      y[n + i] = x[3 * n + i];       // p = adot
      y[2 * n + i] = x[2 * n + i];   // a
      y[3 * n + i] = -x[n + i];      // b = -qdot
    }
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    for (int i = 0; i < n; ++i) {
      x[n + i] = -y[3 * n + i];      // qdot = -b
      x[2 * n + i] = y[2 * n + i];   // a
      x[3 * n + i] = y[n + i];       // adot = p
    }
    return x;
  };
  return CoordMap::make("psi", 4 * n, 4 * n, fwd, inv);
}

CoordMap kappa(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
      y[n + i] = x[2 * n + i];
      y[2 * n + i] = x[n + i];
    }
    return y;
  };
  auto inv = [fwd](std::span<const double> y) { return fwd(y); };
  return CoordMap::make("kappa", 4 * n, 4 * n, fwd, inv);
}

CoordMap beta_c(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    const auto& u = x[4 * n + 2];
    for (int i = 0; i < n; ++i) {
      y[2 * n + 1 + i] = u * x[n + i] + x[3 * n + 1 + i];  // a = u p + pdot
      y[3 * n + 1 + i] = -x[2 * n + 1 + i];                // b = -qdot
    }
    y[4 * n + 1] = -u;                                     // v
    T w = x[4 * n + 1];
    for (int i = 0; i < n; ++i) w = w - x[n + i] * x[2 * n + 1 + i];
    y[4 * n + 2] = w;                                      // w = zdot - p.qdot
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    double u = -y[4 * n + 1];
    double pq = 0.0;
    for (int i = 0; i < n; ++i) {
      x[2 * n + 1 + i] = -y[3 * n + 1 + i];                // qdot = -b
      x[3 * n + 1 + i] = y[2 * n + 1 + i] - u * y[n + i];  // pdot = a - u p
      pq += y[n + i] * x[2 * n + 1 + i];
    }
    x[4 * n + 1] = y[4 * n + 2] + pq;                      // zdot = w + p.qdot
    x[4 * n + 2] = u;
    return x;
  };
  return CoordMap::make("beta_c", 4 * n + 3, 4 * n + 3, fwd, inv);
}

CoordMap alpha_c(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    const auto& u = x[4 * n + 2];
    for (int i = 0; i < n; ++i) {
      y[n + i] = x[2 * n + 1 + i];                         // qdot to base slot
      y[2 * n + 1 + i] = u * x[n + i] + x[3 * n + 1 + i];  // a = u p + pdot
      y[3 * n + 1 + i] = x[n + i];                         // adot = p
    }
    y[4 * n + 1] = -u;                                     // v
    y[4 * n + 2] = x[4 * n + 1];                           // extension = zdot
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    double u = -y[4 * n + 1];
    for (int i = 0; i < n; ++i) {
      x[n + i] = y[3 * n + 1 + i];                         // p = adot
      x[2 * n + 1 + i] = y[n + i];                         // qdot
      x[3 * n + 1 + i] = y[2 * n + 1 + i] - u * y[3 * n + 1 + i];  // pdot = a - u p
    }
    x[4 * n + 1] = y[4 * n + 2];
    x[4 * n + 2] = u;
    return x;
  };
  return CoordMap::make("alpha_c", 4 * n + 3, 4 * n + 3, fwd, inv);
}

CoordMap psi_c(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
      y[n + i] = x[3 * n + 1 + i];                         // p = adot
      y[2 * n + 1 + i] = x[2 * n + 1 + i];                 // a
      y[3 * n + 1 + i] = -x[n + i];                        // b = -qdot
    }
    T w = x[4 * n + 2];
    for (int i = 0; i < n; ++i) w = w - x[3 * n + 1 + i] * x[n + i];
    y[4 * n + 2] = w;                                      // w = u - adot.qdot
    return y;                                              // v passes through
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    double aq = 0.0;
    for (int i = 0; i < n; ++i) {
      x[n + i] = -y[3 * n + 1 + i];                        // qdot = -b
      x[2 * n + 1 + i] = y[2 * n + 1 + i];                 // a
      x[3 * n + 1 + i] = y[n + i];                         // adot = p
      aq += y[n + i] * x[n + i];
    }
    x[4 * n + 2] = y[4 * n + 2] + aq;                      // u = w + adot.qdot
    return x;
  };
  return CoordMap::make("psi_c", 4 * n + 3, 4 * n + 3, fwd, inv);
}

CoordMap evolution_alpha0(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    const auto& u = x[4 * n + 1];
    for (int i = 0; i < n; ++i) {
      y[n + i] = x[2 * n + 1 + i];                         // qdot
      y[2 * n + 1 + i] = u * x[n + i] + x[3 * n + 1 + i];  // a = u p + pdot
      y[3 * n + 1 + i] = x[n + i];                         // adot = p
    }
    y[4 * n + 1] = -u;                                     // v
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    double u = -y[4 * n + 1];
    for (int i = 0; i < n; ++i) {
      x[n + i] = y[3 * n + 1 + i];
      x[2 * n + 1 + i] = y[n + i];
      x[3 * n + 1 + i] = y[2 * n + 1 + i] - u * y[3 * n + 1 + i];
    }
    x[4 * n + 1] = u;
    return x;
  };
  return CoordMap::make("alpha0", 4 * n + 2, 4 * n + 2, fwd, inv);
}

CoordMap evolution_beta0(int n) {
  auto fwd = [n](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> y(x.begin(), x.end());
    const auto& u = x[4 * n + 1];
    for (int i = 0; i < n; ++i) {
      y[2 * n + 1 + i] = u * x[n + i] + x[3 * n + 1 + i];  // a = u p + pdot
      y[3 * n + 1 + i] = -x[2 * n + 1 + i];                // b = -qdot
    }
    y[4 * n + 1] = -u;
    return y;
  };
  auto inv = [n](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    double u = -y[4 * n + 1];
    for (int i = 0; i < n; ++i) {
      x[2 * n + 1 + i] = -y[3 * n + 1 + i];
      x[3 * n + 1 + i] = y[2 * n + 1 + i] - u * y[n + i];
    }
    x[4 * n + 1] = u;
    return x;
  };
  return CoordMap::make("beta0", 4 * n + 2, 4 * n + 2, fwd, inv);
}

FormEvaluator canonical_contact_form(int k, std::string name) {
  FormEvaluator f;
  f.name = std::move(name);
  f.dim = 2 * k + 1;
  f.degree = 1;
  f.one = [k](std::span<const double> x, std::span<const double> W) {
    double r = W[2 * k];
    for (int i = 0; i < k; ++i) r -= x[k + i] * W[i];
    return r;
  };
  return f;
}

FormEvaluator canonical_symplectic_form(int k, std::string name) {
  FormEvaluator f;
  f.name = std::move(name);
  f.dim = 2 * k;
  f.degree = 2;
  f.two = [k](std::span<const double>, std::span<const double> W1,
              std::span<const double> W2) {
    double r = 0.0;
    for (int i = 0; i < k; ++i)
      r += W1[i] * W2[k + i] - W1[k + i] * W2[i];
    return r;
  };
  return f;
}

FormEvaluator eta_form(int n) { return canonical_contact_form(n, "eta"); }

FormEvaluator eta_T_form(int n) {
  FormEvaluator f;
  f.name = "eta_T";
  f.dim = 4 * n + 3;
  f.degree = 1;
  f.one = [](std::span<const double> x, std::span<const double> W) {
    return eta_T_eval(unflatten_ext_tangent(x), W);
  };
  return f;
}

FormEvaluator eta_cot_cot_form(int n) {
  return canonical_contact_form(2 * n + 1, "eta_{T*(T*QxR)xR}");
}

FormEvaluator eta_cot_tan_form(int n) {
  return canonical_contact_form(2 * n + 1, "eta_{T*(TQxR)xR}");
}

namespace {

ExtTangentPoint slice_point(int n, std::span<const double> x) {
  // Slice slots (q,p,z,qdot,pdot,u); zdot restored from the constraint.
  ExtTangentPoint pt;
  pt.base.q.assign(x.begin(), x.begin() + n);
  pt.base.p.assign(x.begin() + n, x.begin() + 2 * n);
  pt.base.z = x[2 * n];
  pt.qdot.assign(x.begin() + 2 * n + 1, x.begin() + 3 * n + 1);
  pt.pdot.assign(x.begin() + 3 * n + 1, x.begin() + 4 * n + 1);
  pt.u = x[4 * n + 1];
  pt.zdot = 0.0;
  for (int i = 0; i < n; ++i) pt.zdot += pt.base.p[i] * pt.qdot[i];
  return pt;
}

}  // namespace

FormEvaluator theta_eta_form(int n) {
  FormEvaluator f;
  f.name = "theta_eta";
  f.dim = 4 * n + 2;
  f.degree = 1;
  f.one = [n](std::span<const double> x, std::span<const double> W) {
    return theta_eta_eval(slice_point(n, x), W);
  };
  return f;
}

FormEvaluator omega_eta_form(int n) {
  FormEvaluator f;
  f.name = "omega_eta";
  f.dim = 4 * n + 2;
  f.degree = 2;
  f.two = [n](std::span<const double> x, std::span<const double> W1,
              std::span<const double> W2) {
    return omega_eta_eval(slice_point(n, x), W1, W2);
  };
  return f;
}

FormEvaluator omega_cot_tan_form(int n) {
  return canonical_symplectic_form(2 * n + 1, "omega_{T*(TQxR)}");
}

FormEvaluator omega_cot_cot_form(int n) {
  return canonical_symplectic_form(2 * n + 1, "omega_{T*(T*QxR)}");
}

FormEvaluator tangent_symplectic_form(int n) {
  FormEvaluator f;
  f.name = "dT omega";
  f.dim = 4 * n;
  f.degree = 2;
  f.two = [n](std::span<const double>, std::span<const double> W1,
              std::span<const double> W2) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      r += W1[i] * W2[3 * n + i] - W1[3 * n + i] * W2[i];          // dq ^ dpdot
      r += W1[2 * n + i] * W2[n + i] - W1[n + i] * W2[2 * n + i];  // dqdot ^ dp
    }
    return r;
  };
  return f;
}

VerificationReport verify_pullback(const CoordMap& m, const FormEvaluator& src,
                                   const FormEvaluator& dst, int samples, Rng& rng,
                                   double tolerance, const ScalarField* conformal,
                                   double box_lo, double box_hi) {
  if (src.dim != m.dim_in || dst.dim != m.dim_out)
    throw std::invalid_argument("verify_pullback: form dimensions do not match map '" +
                                m.name + "'");
  if (src.degree != dst.degree)
    throw std::invalid_argument("verify_pullback: mixed form degrees");
  double max_res = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x = rng.box(m.dim_in, box_lo, box_hi);
    std::vector<double> w1 = rng.box(m.dim_in, -1.0, 1.0);
    std::vector<double> w2 = rng.box(m.dim_in, -1.0, 1.0);
    std::vector<double> y = m.forward(std::span<const double>(x));
    Eigen::MatrixXd J = jacobian(m, x);
    Eigen::Map<const Eigen::VectorXd> w1v(w1.data(), static_cast<Eigen::Index>(w1.size()));
    Eigen::Map<const Eigen::VectorXd> w2v(w2.data(), static_cast<Eigen::Index>(w2.size()));
    Eigen::VectorXd jw1 = J * w1v;
    Eigen::VectorXd jw2 = J * w2v;
    std::span<const double> jw1s(jw1.data(), static_cast<std::size_t>(jw1.size()));
    std::span<const double> jw2s(jw2.data(), static_cast<std::size_t>(jw2.size()));
    double mu = conformal ? (*conformal)(std::span<const double>(x)) : 1.0;
    double lhs, rhs;
    if (src.degree == 1) {
      lhs = dst.one(y, jw1s);
      rhs = mu * src.one(x, w1);
    } else {
      lhs = dst.two(y, jw1s, jw2s);
      rhs = mu * src.two(x, w1, w2);
    }
    double res = std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
    max_res = std::max(max_res, res);
  }
  return finalize_report("pullback " + m.name + ": " + src.name + " <- " + dst.name,
                         samples, max_res, tolerance);
}

VerificationReport verify_round_trip(const CoordMap& m, int samples, Rng& rng,
                                     double tolerance, double box_lo, double box_hi) {
  double max_res = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x = rng.box(m.dim_in, box_lo, box_hi);
    std::vector<double> y = m.forward(std::span<const double>(x));
    std::vector<double> back = m.inverse(std::span<const double>(y));
    for (std::size_t i = 0; i < x.size(); ++i)
      max_res = std::max(max_res, std::abs(back[i] - x[i]));
  }
  return finalize_report("round trip " + m.name, samples, max_res, tolerance);
}

VerificationReport verify_map_equal(const CoordMap& f, const CoordMap& g,
                                    const std::string& name, int samples, Rng& rng,
                                    double tolerance, double box_lo, double box_hi) {
  if (f.dim_in != g.dim_in || f.dim_out != g.dim_out)
    throw std::invalid_argument("verify_map_equal: dimension mismatch");
  double max_res = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x = rng.box(f.dim_in, box_lo, box_hi);
    std::vector<double> ya = f.forward(std::span<const double>(x));
    std::vector<double> yb = g.forward(std::span<const double>(x));
    for (std::size_t i = 0; i < ya.size(); ++i)
      max_res = std::max(max_res, std::abs(ya[i] - yb[i]));
  }
  return finalize_report(name, samples, max_res, tolerance);
}

}  // namespace contact
