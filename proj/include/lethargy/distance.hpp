#ifndef LETHARGY_DISTANCE_HPP
#define LETHARGY_DISTANCE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lethargy/detail/simplex.hpp"
#include "lethargy/errors.hpp"
#include "lethargy/space_core.hpp"

namespace lethargy {

enum class DistanceSolver { closed_form_l2, linear_program, convex_descent, zero_subspace };

inline const char* to_string(DistanceSolver s) {
  switch (s) {
    case DistanceSolver::closed_form_l2: return "closed_form_l2";
    case DistanceSolver::linear_program: return "linear_program";
    case DistanceSolver::convex_descent: return "convex_descent";
    case DistanceSolver::zero_subspace: return "zero_subspace";
  }
  return "unknown";
}

// rho(x, Y) together with a best approximant y0 = Y.basis() * witness_coeffs.
//
// dual_certificate is a vector n with Y.basis()' n = 0 and ||n||_q = 1 (q the
// conjugate exponent); <n, x> is a lower bound for rho(x, Y), and
// achieved_tol = value - <n, x> is the certified optimality gap.
struct DistanceResult {
  double value = 0.0;
  Vector witness_coeffs;
  double achieved_tol = 0.0;
  DistanceSolver solver = DistanceSolver::zero_subspace;
  Vector dual_certificate;
  int iterations = 0;
};

inline double default_distance_tol(const NormSpec& norm) {
  if (norm.is_l2()) return 1e-10;
  if (norm.is_polyhedral()) return 1e-8;
  return 1e-7;
}

inline constexpr int kDistanceIterationBudget = 10000;

namespace detail {

inline Vector signed_power(const Vector& r, double e) {
  Vector out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double a = std::abs(r(i));
    out(i) = a == 0.0 ? 0.0 : std::copysign(std::pow(a, e), r(i));
  }
  return out;
}

// Norming vector of the residual r under l^p, before projection.
inline Vector raw_norming_vector(const Vector& r, const NormSpec& norm) {
  const Eigen::Index m = r.size();
  Vector n = Vector::Zero(m);
  if (norm.is_sup()) {
    Eigen::Index arg = 0;
    r.cwiseAbs().maxCoeff(&arg);
    if (r(arg) != 0.0) n(arg) = r(arg) > 0.0 ? 1.0 : -1.0;
    return n;
  }
  if (norm.is_l1()) {
    for (Eigen::Index i = 0; i < m; ++i) n(i) = r(i) > 0.0 ? 1.0 : (r(i) < 0.0 ? -1.0 : 0.0);
    return n;
  }
  return signed_power(r, norm.p() - 1.0);
}

// Projects a candidate dual vector onto Y's annihilator, normalizes it in the
// dual norm, and returns it together with the lower bound <n, x>.
inline double certify(const Vector& x, const Subspace& y, const NormSpec& norm, const Vector& candidate,
                      Vector& certificate) {
  Vector n = candidate;
  if (!y.is_zero()) n = y.euclidean_residual(n);
  const double dn = norm_eval(n, norm.dual());
  if (!(dn > 0.0)) {
    certificate = Vector::Zero(x.size());
    return 0.0;
  }
  certificate = n / dn;
  double lb = certificate.dot(x);
  if (lb < 0.0) {
    certificate = -certificate;
    lb = -lb;
  }
  return lb;
}

inline DistanceResult solve_polyhedral(const Vector& xs, const Subspace& y, const NormSpec& norm) {
  const Matrix& q = y.basis();
  const std::size_t m = static_cast<std::size_t>(q.rows());
  const std::size_t k = static_cast<std::size_t>(q.cols());
  const bool sup = norm.is_sup();
  const std::size_t slack_cols = sup ? 1 : m;
  const std::size_t cols = 2 * k + slack_cols;
  std::vector<std::vector<double>> a(2 * m, std::vector<double>(cols, 0.0));
  std::vector<double> b(2 * m, 0.0);
  std::vector<double> c(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const std::size_t slack = sup ? 2 * k : 2 * k + i;
    // -(Qc)_i - s <= -x_i
    for (std::size_t j = 0; j < k; ++j) {
      const double v = q(ii, static_cast<Eigen::Index>(j));
      a[i][j] = -v;
      a[i][k + j] = v;
      a[m + i][j] = v;
      a[m + i][k + j] = -v;
    }
    a[i][slack] = -1.0;
    a[m + i][slack] = -1.0;
    b[i] = -xs(ii);
    b[m + i] = xs(ii);
  }
  for (std::size_t j = 2 * k; j < cols; ++j) c[j] = -1.0;

  DenseSimplex lp(a, b, c);
  const LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal) {
    throw SolverError("distance LP did not reach an optimum", norm_eval(xs, norm));
  }
  DistanceResult res;
  res.solver = DistanceSolver::linear_program;
  res.witness_coeffs = Vector(static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    res.witness_coeffs(static_cast<Eigen::Index>(j)) = sol.primal[j] - sol.primal[k + j];
  }
  Vector dual(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) dual(static_cast<Eigen::Index>(i)) = sol.dual[i] - sol.dual[m + i];
  res.dual_certificate = dual;
  return res;
}

inline DistanceResult solve_smooth(const Vector& xs, const Subspace& y, const NormSpec& norm, double target) {
  const Matrix& q = y.basis();
  const double p = norm.p();
  const Eigen::Index k = q.cols();
  Vector c = q.transpose() * xs;

  auto objective = [&](const Vector& coeffs) {
    const Vector r = xs - q * coeffs;
    return norm_eval(r, norm);
  };

  DistanceResult res;
  res.solver = DistanceSolver::convex_descent;
  double best_gap = std::numeric_limits<double>::infinity();
  double value = objective(c);
  for (int it = 0; it < kDistanceIterationBudget; ++it) {
    res.iterations = it + 1;
    const Vector r = xs - q * c;
    value = norm_eval(r, norm);
    if (value == 0.0) {
      best_gap = 0.0;
      res.dual_certificate = Vector::Zero(xs.size());
      break;
    }
    Vector cert;
    const double lb = certify(xs, y, norm, raw_norming_vector(r / value, norm), cert);
    const double gap = value - lb;
    if (gap < best_gap) {
      best_gap = gap;
      res.dual_certificate = cert;
      res.witness_coeffs = c;
    }
    if (gap <= target) break;

    // Newton step on F(c) = sum |r_i|^p / value^p (scaled to O(1)).
    const Vector rs = r / value;
    const double floor_abs = 1e-9;
    Vector weights(rs.size());
    for (Eigen::Index i = 0; i < rs.size(); ++i) {
      weights(i) = p * (p - 1.0) * std::pow(std::max(std::abs(rs(i)), floor_abs), p - 2.0);
    }
    const Vector grad = -p * (q.transpose() * signed_power(rs, p - 1.0));
    Matrix hess = q.transpose() * weights.asDiagonal() * q;
    hess.diagonal().array() += 1e-14 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
    const Vector step = -hess.ldlt().solve(grad) * value;

    auto fval = [&](const Vector& coeffs) {
      const Vector rr = (xs - q * coeffs) / value;
      double acc = 0.0;
      for (double v : rr) acc += std::pow(std::abs(v), p);
      return acc;
    };
    const double f0 = fval(c);
    const double slope = grad.dot(step / value);
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector trial = c + t * step;
      if (fval(trial) <= f0 + 1e-4 * t * std::min(slope, 0.0)) {
        c = trial;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // Newton direction stalled; fall back to a short gradient step.
      const Vector g = grad;
      double s = 1.0 / (1.0 + hess.diagonal().maxCoeff());
      for (int ls = 0; ls < 60 && !moved; ++ls) {
        const Vector trial = c - s * g * value;
        if (fval(trial) < f0) {
          c = trial;
          moved = true;
        }
        s *= 0.5;
      }
      if (!moved) break;
    }
  }
  if (res.witness_coeffs.size() != k) res.witness_coeffs = c;
  res.achieved_tol = best_gap;
  return res;
}

}  // namespace detail

// rho(x, Y) = inf { ||x - y|| : y in Y }.
inline DistanceResult rho(const Vector& x, const Subspace& y, const NormSpec& norm, double tol) {
  y.check_dim(x);
  require_finite(x, "rho");
  if (!(tol > 0.0)) throw InputError("rho: tolerance must be positive");

  DistanceResult res;
  if (y.is_zero()) {
    res.value = norm_eval(x, norm);
    res.witness_coeffs = Vector(0);
    res.solver = DistanceSolver::zero_subspace;
    Vector cert;
    detail::certify(x, y, norm, detail::raw_norming_vector(x, norm), cert);
    res.dual_certificate = cert;
    return res;
  }

  const double scale = norm_eval(x, norm);
  if (scale == 0.0) {
    res.value = 0.0;
    res.witness_coeffs = Vector::Zero(static_cast<Eigen::Index>(y.rank()));
    res.solver = norm.is_l2() ? DistanceSolver::closed_form_l2
                              : (norm.is_polyhedral() ? DistanceSolver::linear_program
                                                      : DistanceSolver::convex_descent);
    res.dual_certificate = Vector::Zero(x.size());
    return res;
  }
  const Vector xs = x / scale;

  if (norm.is_l2()) {
    res.solver = DistanceSolver::closed_form_l2;
    const Vector p = y.project(xs);
    res.witness_coeffs = y.basis().transpose() * p;
  } else if (norm.is_polyhedral()) {
    res = detail::solve_polyhedral(xs, y, norm);
  } else {
    res = detail::solve_smooth(xs, y, norm, tol / scale);
  }

  Vector residual = xs - y.basis() * res.witness_coeffs;
  double value = norm_eval(residual, norm);
  if (value > 1.0) {
    // 0 is always feasible and has value ||x||.
    res.witness_coeffs.setZero();
    residual = xs;
    value = 1.0;
  }
  Vector candidate = norm.is_l2() ? Vector(residual) : res.dual_certificate;
  if (candidate.size() == 0 || candidate.isZero(0.0)) candidate = detail::raw_norming_vector(residual, norm);
  Vector cert;
  double lb = detail::certify(xs, y, norm, candidate, cert);
  if (!norm.is_l2() && !norm.is_polyhedral()) {
    Vector alt;
    const double lb2 = detail::certify(xs, y, norm, detail::raw_norming_vector(residual, norm), alt);
    if (lb2 > lb) {
      lb = lb2;
      cert = alt;
    }
  }
  res.value = value * scale;
  res.witness_coeffs *= scale;
  res.dual_certificate = cert;
  res.achieved_tol = std::max(0.0, value - lb) * scale;
  if (res.achieved_tol > tol) {
    throw SolverError("rho: optimality gap " + std::to_string(res.achieved_tol) + " exceeds tolerance " +
                          std::to_string(tol) + " (p = " + norm.to_string() + ")",
                      res.value, lb * scale, res.value);
  }
  return res;
}

inline DistanceResult rho(const Vector& x, const Subspace& y, const NormSpec& norm) {
  return rho(x, y, norm, default_distance_tol(norm));
}

inline Vector best_approximant(const Vector& x, const Subspace& y, const NormSpec& norm, double tol) {
  const DistanceResult r = rho(x, y, norm, tol);
  if (y.is_zero()) return Vector::Zero(x.size());
  return y.basis() * r.witness_coeffs;
}

inline Vector best_approximant(const Vector& x, const Subspace& y, const NormSpec& norm) {
  return best_approximant(x, y, norm, default_distance_tol(norm));
}

// Brute-force upper bound on rho(x, Y): minimum of ||x - Q c|| over the grid
// [-radius, radius]^rank with grid_steps points per axis, Q = Y.basis().
inline double rho_oracle(const Vector& x, const Subspace& y, const NormSpec& norm, double grid_radius,
                         int grid_steps) {
  y.check_dim(x);
  if (y.rank() > 3) throw InputError("rho_oracle: rank " + std::to_string(y.rank()) + " exceeds 3");
  if (grid_steps < 10) throw InputError("rho_oracle: grid_steps must be at least 10");
  if (y.is_zero()) return norm_eval(x, norm);
  const Matrix& q = y.basis();
  const double h = 2.0 * grid_radius / (grid_steps - 1);
  const auto coord = [&](int i) { return -grid_radius + h * i; };
  double best = std::numeric_limits<double>::infinity();
  Vector r(x.size());
  if (y.rank() == 1) {
    for (int i = 0; i < grid_steps; ++i) {
      r = x - coord(i) * q.col(0);
      best = std::min(best, norm_eval(r, norm));
    }
  } else if (y.rank() == 2) {
    for (int i = 0; i < grid_steps; ++i) {
      const Vector base = x - coord(i) * q.col(0);
      for (int j = 0; j < grid_steps; ++j) {
        r = base - coord(j) * q.col(1);
        best = std::min(best, norm_eval(r, norm));
      }
    }
  } else {
    for (int i = 0; i < grid_steps; ++i) {
      const Vector b1 = x - coord(i) * q.col(0);
      for (int j = 0; j < grid_steps; ++j) {
        const Vector b2 = b1 - coord(j) * q.col(1);
        for (int l = 0; l < grid_steps; ++l) {
          r = b2 - coord(l) * q.col(2);
          best = std::min(best, norm_eval(r, norm));
        }
      }
    }
  }
  return best;
}

// Worst-case excess of rho_oracle over rho when the minimizer lies inside
// the grid box: half a cell along every basis direction.
inline double rho_oracle_resolution(const Subspace& y, const NormSpec& norm, double grid_radius, int grid_steps) {
  const double h = 2.0 * grid_radius / (grid_steps - 1);
  double lip = 0.0;
  for (Eigen::Index j = 0; j < y.basis().cols(); ++j) lip += norm_eval(y.basis().col(j), norm);
  return 0.5 * h * lip;
}

}  // namespace lethargy

#endif  // LETHARGY_DISTANCE_HPP
