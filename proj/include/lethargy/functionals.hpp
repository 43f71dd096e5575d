#ifndef LETHARGY_FUNCTIONALS_HPP
#define LETHARGY_FUNCTIONALS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lethargy/detail/simplex.hpp"
#include "lethargy/distance.hpp"
#include "lethargy/errors.hpp"
#include "lethargy/space_core.hpp"

namespace lethargy {

inline constexpr double kDefaultFuncTol = 1e-8;
inline constexpr int kLimitDoublingBudget = 60;

// A linear functional f(x) = <dual_vector, x> on (R^m, ||.||_p). Its operator
// norm is the conjugate-exponent norm of dual_vector. kernel_basis spans a
// subspace certified to lie in ker f.
struct Functional {
  Vector dual_vector;
  double dual_norm_value = 0.0;
  Subspace kernel_basis;
  NormSpec norm;

  double operator()(const Vector& x) const { return dual_vector.dot(x); }
};

inline Functional make_functional(const Vector& dual_vector, const NormSpec& norm,
                                  std::optional<Subspace> kernel = std::nullopt) {
  Functional f;
  f.dual_vector = dual_vector;
  f.norm = norm;
  f.dual_norm_value = norm_eval(dual_vector, norm.dual());
  f.kernel_basis = kernel ? *kernel : Subspace::zero(static_cast<std::size_t>(dual_vector.size()));
  return f;
}

namespace detail {

// For smooth p != 2 the default distance accuracy is too coarse for the
// cancellations below; ask for near machine precision and fall back.
inline DistanceResult precise_rho(const Vector& x, const Subspace& q, const NormSpec& norm) {
  if (!norm.is_l2() && !norm.is_polyhedral()) {
    try {
      return rho(x, q, norm, 1e-13 * std::max(1.0, norm_eval(x, norm)));
    } catch (const SolverError&) {
      // fall through
    }
  }
  return rho(x, q, norm);
}

inline DistanceResult rho_checked(const Vector& x1, const Subspace& q, const NormSpec& norm, double func_tol) {
  DistanceResult r = precise_rho(x1, q, norm);
  if (!(r.value > func_tol)) {
    throw InputError("x1 lies in Q to within tolerance (rho(x1, Q) = " + std::to_string(r.value) +
                     "); the functional would divide by a near-zero distance");
  }
  return r;
}

struct LimitSample {
  double value = 0.0;
  double noise = 0.0;  // certified error bound on value from the distance solve
};

inline LimitSample limit_sample(const Vector& x2, const Vector& x1, const Subspace& q, const NormSpec& norm,
                                double a, const DistanceResult& d1) {
  const double r1 = d1.value;
  // g subtracts two quantities of size a, so the distance is needed to a
  // relative accuracy well below the requested tolerance / a.
  const double scale = std::max(1.0, std::abs(a) * norm_eval(x1, norm));
  const Vector target = x2 - a * x1;
  DistanceResult d;
  bool done = false;
  if (!norm.is_l2() && !norm.is_polyhedral()) {
    try {
      d = rho(target, q, norm, 1e-13 * scale);
      done = true;
    } catch (const SolverError&) {
      // retry at the default accuracy
    }
  }
  if (!done) d = rho(target, q, norm, default_distance_tol(norm) * scale);
  return {a - d.value / r1, (d.achieved_tol + d.value * d1.achieved_tol / r1) / r1};
}

}  // namespace detail

// g(a) = a - rho(x2 - a x1, Q) / rho(x1, Q)
inline double limit_expression(const Vector& x2, const Vector& x1, const Subspace& q, const NormSpec& norm,
                               double a, double func_tol = kDefaultFuncTol) {
  q.check_dim(x1);
  q.check_dim(x2);
  return detail::limit_sample(x2, x1, q, norm, a, detail::rho_checked(x1, q, norm, func_tol)).value;
}

struct LimitEstimate {
  double value = 0.0;
  double last_a = 0.0;
  int doublings = 0;
  double bound = 0.0;  // rho(x2, Q) / rho(x1, Q), an upper bound for |g|
};

// lim_{a -> +inf} g(a), by doubling a until successive values stop moving.
// g is non-decreasing and bounded, so the limit exists.
inline LimitEstimate limit_value_detailed(const Vector& x2, const Vector& x1, const Subspace& q,
                                          const NormSpec& norm, double rel_tol = kDefaultFuncTol) {
  const DistanceResult d1 = detail::rho_checked(x1, q, norm, kDefaultFuncTol);
  LimitEstimate est;
  est.bound = rho(x2, q, norm).value / d1.value;
  double a = std::max(1.0, norm_eval(x2, norm) / norm_eval(x1, norm));
  detail::LimitSample g = detail::limit_sample(x2, x1, q, norm, a, d1);
  for (int i = 0; i < kLimitDoublingBudget; ++i) {
    const double a2 = 2.0 * a;
    const detail::LimitSample g2 = detail::limit_sample(x2, x1, q, norm, a2, d1);
    est.doublings = i + 1;
    // Stop once the increments are below tolerance or below the solver noise,
    // which grows with a and would otherwise dominate.
    const double step = g2.value - g.value;
    if (step < rel_tol * std::max(1.0, std::abs(g2.value)) || step <= 2.0 * (g.noise + g2.noise)) {
      est.value = step <= 2.0 * (g.noise + g2.noise) ? g.value : g2.value;
      est.last_a = a2;
      return est;
    }
    a = a2;
    g = g2;
  }
  throw SolverError("limit_value: doubling budget exhausted", g.value, g.value, est.bound);
}

inline double limit_value(const Vector& x2, const Vector& x1, const Subspace& q, const NormSpec& norm,
                          double rel_tol = kDefaultFuncTol) {
  return limit_value_detailed(x2, x1, q, norm, rel_tol).value;
}

namespace detail {

// Among dual vectors w with Q'w = 0, <w, x1> = 1 and ||w||_q <= norm_cap,
// minimize <w, x2>; with norm_cap <= 0 instead minimize ||w||_q.
// q is the conjugate exponent of a polyhedral norm (so q is 1 or inf).
inline Vector polyhedral_dual_lp(const Subspace& sub, const Vector& x1, const Vector* x2, const NormSpec& norm,
                                 double norm_cap) {
  const Matrix& qb = sub.basis();
  const std::size_t m = static_cast<std::size_t>(x1.size());
  const std::size_t k = sub.rank();
  const bool dual_is_sup = norm.is_l1();  // ||w||_inf
  const bool minimize_norm = norm_cap <= 0.0;
  const std::size_t extra = (dual_is_sup && minimize_norm) ? 1 : 0;
  const std::size_t cols = 2 * m + extra;

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  auto add_equality = [&](const Vector& coeff, double rhs) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = coeff(static_cast<Eigen::Index>(i));
      row[m + i] = -coeff(static_cast<Eigen::Index>(i));
    }
    a.push_back(row);
    b.push_back(rhs);
    for (auto& v : row) v = -v;
    a.push_back(row);
    b.push_back(-rhs);
  };
  for (std::size_t j = 0; j < k; ++j) add_equality(qb.col(static_cast<Eigen::Index>(j)), 0.0);
  add_equality(x1, 1.0);

  if (dual_is_sup) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> row(cols, 0.0);
      row[i] = 1.0;
      row[m + i] = 1.0;
      if (minimize_norm) row[2 * m] = -1.0;
      a.push_back(row);
      b.push_back(minimize_norm ? 0.0 : norm_cap);
    }
  } else if (!minimize_norm) {
    std::vector<double> row(cols, 1.0);
    a.push_back(row);
    b.push_back(norm_cap);
  }

  std::vector<double> c(cols, 0.0);
  if (minimize_norm) {
    if (dual_is_sup) {
      c[2 * m] = -1.0;
    } else {
      for (std::size_t i = 0; i < 2 * m; ++i) c[i] = -1.0;
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      c[i] = -(*x2)(static_cast<Eigen::Index>(i));
      c[m + i] = (*x2)(static_cast<Eigen::Index>(i));
    }
  }
  DenseSimplex lp(a, b, c);
  const LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal) {
    throw SolverError("norming functional LP failed", 0.0);
  }
  Vector w(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) w(static_cast<Eigen::Index>(i)) = sol.primal[i] - sol.primal[m + i];
  return w;
}

// Projects onto Q's annihilator and rescales so that <w, x1> = 1.
inline Vector polish_dual(Vector w, const Subspace& q, const Vector& x1) {
  if (!q.is_zero()) w = q.euclidean_residual(w);
  return w / w.dot(x1);
}

}  // namespace detail

// A functional f with f|Q = 0, f(x1) = 1 and ||f|| = 1 / rho(x1, Q). When x2
// is supplied, f(x2) equals lim_{a->inf} (a - rho(x2 - a x1, Q)/rho(x1, Q)):
// for 1 < p < inf the minimal-norm extension is unique and has this value
// automatically; for p in {1, inf} the extension with that value is selected
// by a second linear program over the norming face.
inline Functional norming_functional(const Vector& x1, const Subspace& q, const NormSpec& norm,
                                     const std::optional<Vector>& x2 = std::nullopt,
                                     double func_tol = kDefaultFuncTol) {
  q.check_dim(x1);
  require_finite(x1, "norming_functional");
  const DistanceResult d1 = detail::precise_rho(x1, q, norm);
  if (!(d1.value > func_tol)) {
    throw InputError("norming_functional: x1 lies in Q (rho(x1, Q) = " + std::to_string(d1.value) + ")");
  }
  if (x2) {
    q.check_dim(*x2);
    require_finite(*x2, "norming_functional");
    Matrix aug(q.basis().rows(), q.basis().cols() + 1);
    aug << q.basis(), x1;
    const Subspace u(aug);
    const double resid = u.euclidean_residual(*x2).norm();
    if (resid <= 1e-9 * std::max(1.0, x2->norm())) {
      throw InputError("norming_functional: x2 lies in span[{x1} u Q] (residual " + std::to_string(resid) + ")");
    }
  }

  Vector w;
  if (norm.is_l2()) {
    const Vector r = q.euclidean_residual(x1);
    w = r / r.squaredNorm();
  } else if (norm.is_polyhedral() && x2) {
    const double s1 = x1.norm();
    const double s2 = x2->norm();
    const Vector x1s = x1 / s1;
    const Vector x2s = *x2 / s2;
    const Vector w_min = detail::polish_dual(detail::polyhedral_dual_lp(q, x1s, nullptr, norm, 0.0), q, x1s);
    const double cap = norm_eval(w_min, norm.dual()) * (1.0 + 1e-12);
    Vector w_face = detail::polyhedral_dual_lp(q, x1s, &x2s, norm, cap);
    w = detail::polish_dual(w_face, q, x1s) / s1;
  } else {
    w = detail::polish_dual(d1.dual_certificate, q, x1);
  }
  return make_functional(w, norm, q);
}

// |f(x)| >= (1 - tol) ||f|| ||x||: x is where f attains its norm.
inline bool norm_attainment_check(const Functional& f, const Vector& x, const NormSpec& norm, double tol) {
  return std::abs(f(x)) >= (1.0 - tol) * f.dual_norm_value * norm_eval(x, norm);
}

// ker f as an explicit subspace (orthogonal complement of the dual vector).
inline Subspace kernel_of(const Functional& f) {
  const Eigen::Index m = f.dual_vector.size();
  if (f.dual_vector.isZero(0.0)) throw InputError("kernel_of: functional is zero");
  Eigen::HouseholderQR<Matrix> qr(Matrix(f.dual_vector));
  const Matrix full = qr.householderQ() * Matrix::Identity(m, m);
  return Subspace(full.rightCols(m - 1));
}

struct KernelIdentity {
  double distance = 0.0;  // rho(x, ker f)
  double ratio = 0.0;     // |f(x)| / ||f||
  bool holds = false;
};

inline KernelIdentity kernel_distance_identity(const Functional& f, const Vector& x, const NormSpec& norm,
                                               double tol) {
  KernelIdentity out;
  out.distance = rho(x, kernel_of(f), norm).value;
  out.ratio = std::abs(f(x)) / norm_eval(f.dual_vector, norm.dual());
  out.holds = std::abs(out.distance - out.ratio) <= tol;
  return out;
}

// rho(x, ker f) = |f(x)| / ||f||
inline bool kernel_distance_identity_check(const Functional& f, const Vector& x, const NormSpec& norm,
                                           double tol) {
  return kernel_distance_identity(f, x, norm, tol).holds;
}

}  // namespace lethargy

#endif  // LETHARGY_FUNCTIONALS_HPP
