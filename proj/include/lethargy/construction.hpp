#ifndef LETHARGY_CONSTRUCTION_HPP
#define LETHARGY_CONSTRUCTION_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lethargy/distance.hpp"
#include "lethargy/errors.hpp"
#include "lethargy/functionals.hpp"
#include "lethargy/space_core.hpp"
#include "lethargy/targets.hpp"

namespace lethargy {

struct ConstructOptions {
  double tol = 1e-6;
  int bisection_budget = 200;
  int expansion_budget = 200;

  // Distance sub-calls run an order of magnitude tighter than the target.
  double distance_tol(const NormSpec& norm) const { return std::min(default_distance_tol(norm), tol / 10.0); }

  // Root-finding target: as tight as the distance solver allows.
  double root_tol(const NormSpec& norm) const { return std::min(tol / 4.0, 10.0 * distance_tol(norm)); }
};

namespace detail {

// A unit vector y in `upper` with rho(y, lower) = ||y|| = 1: the caller's basis
// column of `upper` farthest from `lower` (ties go to the later column) minus
// its best approximant in `lower`.
inline Vector unit_step(const Subspace& lower, const Subspace& upper, const NormSpec& norm, double dtol) {
  const Matrix& cols = upper.original_basis();
  Eigen::Index pick = -1;
  double best = 0.0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const Vector c = cols.col(j);
    const double r = lower.euclidean_residual(c).norm() / c.norm();
    if (r > 1e-12 && r >= best * (1.0 - 1e-12)) {
      best = std::max(best, r);
      pick = j;
    }
  }
  if (pick < 0) throw InputError("step: upper subspace adds no direction to the lower one");
  const Vector z = cols.col(pick);
  Vector y = z - best_approximant(z, lower, norm, dtol);
  y /= norm_eval(y, norm);
  const double r = rho(y, lower, norm, dtol).value;
  if (std::abs(r - 1.0) > 100.0 * dtol) {
    throw SolverError("step: rho(y, lower) = " + std::to_string(r) + " differs from ||y|| = 1", r, r, 1.0);
  }
  return y;
}

struct CoefficientSolve {
  double lambda = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

// Solves h(lambda) = target for a convex coercive h (h(lambda) = rho(x + lambda q, Y)).
// With h(0) <= target the root is the smallest non-negative crossing; otherwise
// the crossing nearest 0 on the side of the minimizer.
template <class H>
CoefficientSolve solve_coefficient(H&& h, double target, double tol, const ConstructOptions& opts) {
  CoefficientSolve out;
  auto eval = [&](double l) {
    ++out.evaluations;
    return h(l);
  };
  const double h0 = eval(0.0);
  if (std::abs(h0 - target) <= tol) {
    out.value = h0;
    return out;
  }

  double lo = 0.0;  // h(lo) - target and h(hi) - target have opposite signs
  double hi = 0.0;
  if (h0 < target) {
    hi = std::max(target - h0, 1e-300);
    int n = 0;
    while (eval(hi) < target) {
      if (++n > opts.expansion_budget) {
        throw SolverError("coefficient bracket not found (h reached " + std::to_string(h(hi)) + " < " +
                              std::to_string(target) + ")",
                          hi, h0, h(hi));
      }
      hi *= 2.0;
    }
  } else {
    // h(0) > target: locate a point below target by golden-section search.
    double r = std::max(h0 + target, 1e-300);
    for (int n = 0; eval(r) < h0 || eval(-r) < h0; ++n) {
      if (n > opts.expansion_budget) throw SolverError("coefficient search interval did not close", r, 0, h0);
      r *= 2.0;
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = -r, b = r;
    double c = b - g * (b - a), d = a + g * (b - a);
    double hc = eval(c), hd = eval(d);
    double found = std::numeric_limits<double>::quiet_NaN();
    for (int n = 0; n < opts.bisection_budget; ++n) {
      if (hc <= target) { found = c; break; }
      if (hd <= target) { found = d; break; }
      if (hc < hd) {
        b = d; d = c; hd = hc;
        c = b - g * (b - a);
        hc = eval(c);
      } else {
        a = c; c = d; hc = hd;
        d = a + g * (b - a);
        hd = eval(d);
      }
    }
    if (std::isnan(found)) {
      const double hmin = std::min(hc, hd);
      if (hmin <= target + tol) {
        out.lambda = hc < hd ? c : d;
        out.value = hmin;
        return out;
      }
      throw SolverError("no coefficient attains the target: min over lambda is " + std::to_string(hmin) +
                            " > " + std::to_string(target),
                        hmin, hmin, h0);
    }
    hi = found;
  }

  const bool lo_above = eval(lo) > target;
  for (int n = 0; n < opts.bisection_budget; ++n) {
    const double mid = 0.5 * (lo + hi);
    const double hm = eval(mid);
    out.lambda = mid;
    out.value = hm;
    if (std::abs(hm - target) <= tol || mid == lo || mid == hi) break;
    if ((hm > target) == lo_above) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (std::abs(out.value - target) > tol) {
    throw SolverError("coefficient bisection budget exhausted (|h - target| = " +
                          std::to_string(std::abs(out.value - target)) + ")",
                      out.value, std::min(lo, hi), std::max(lo, hi));
  }
  return out;
}

}  // namespace detail

// y_n in Y_{n+1} \ Y_n with ||y_n|| = rho(y_n, Y_n) = 1. n = 0 uses Y_0 = {0};
// n = chain.size() uses the ambient space as Y_{n+1} when the chain stops short.
inline Vector normalize_step(const Chain& chain, std::size_t n, double dtol) {
  return detail::unit_step(chain.extended_level(n), chain.extended_level(n + 1), chain.norm, dtol);
}

inline Vector normalize_step(const Chain& chain, std::size_t n) {
  return normalize_step(chain, n, default_distance_tol(chain.norm));
}

struct FamilyMember {
  Vector q;
  double mu = 0.0;
  double rho_q1 = 0.0;  // re-measured rho(q, Q1)
  double rho_q2 = 0.0;  // re-measured rho(q, Q2)
};

// q_m = v_m y + (mu_m - v_m) s with y a unit step of Q3 over Q2 and s a unit
// step of Q2 over Q1, so rho(q_m, Q2) = v_m exactly and mu_m is tuned until
// rho(q_m, Q1) = u_m. z = y + s, w = 2z - s and f (the norming functional of
// w over Q1, selected by z) are kept for reference.
struct InterpolationFamily {
  Vector y;
  Vector s;
  Vector z;
  Vector w;
  Functional f;
  std::vector<FamilyMember> members;
  std::vector<double> u_targets;
  std::vector<double> v_targets;
};

inline InterpolationFamily interpolating_family(const Subspace& q1, const Subspace& q2, const Subspace& q3,
                                                const NormSpec& norm, const std::vector<double>& u,
                                                const std::vector<double>& v, const ConstructOptions& opts = {}) {
  const Chain triple{q1.ambient_dim(), norm, {q1, q2, q3}};
  const ChainReport chk = validate_chain(triple);
  if (!chk.ok) throw InputError("interpolating_family: need Q1 < Q2 < Q3 strictly nested: " + chk.message);
  if (u.size() != v.size()) throw InputError("interpolating_family: u and v differ in length");
  for (std::size_t m = 0; m < u.size(); ++m) {
    if (!std::isfinite(u[m]) || !std::isfinite(v[m]) || !(v[m] >= 0.0) || !(u[m] >= v[m])) {
      throw InputError("interpolating_family: need u_m >= v_m >= 0 (m = " + std::to_string(m + 1) + ")");
    }
  }
  const double dtol = opts.distance_tol(norm);
  InterpolationFamily fam;
  fam.u_targets = u;
  fam.v_targets = v;
  fam.y = detail::unit_step(q2, q3, norm, dtol);
  fam.s = detail::unit_step(q1, q2, norm, dtol);
  fam.z = fam.y + fam.s;
  fam.w = 2.0 * fam.z - fam.s;
  fam.f = norming_functional(fam.w, q1, norm, fam.z);

  for (std::size_t m = 0; m < u.size(); ++m) {
    const Vector base = v[m] * fam.y;
    auto h = [&](double t) { return rho(base + t * fam.s, q1, norm, dtol).value; };
    const detail::CoefficientSolve sol = detail::solve_coefficient(h, u[m], opts.root_tol(norm), opts);
    FamilyMember mem;
    mem.mu = v[m] + sol.lambda;
    mem.q = base + sol.lambda * fam.s;
    mem.rho_q1 = rho(mem.q, q1, norm, dtol).value;
    mem.rho_q2 = rho(mem.q, q2, norm, dtol).value;
    if (std::abs(mem.rho_q1 - u[m]) > opts.tol || std::abs(mem.rho_q2 - v[m]) > opts.tol) {
      throw SolverError("interpolating_family: member " + std::to_string(m + 1) + " misses its targets",
                        mem.rho_q1, mem.rho_q2, mem.rho_q1);
    }
    fam.members.push_back(std::move(mem));
  }
  return fam;
}

struct LipschitzReport {
  bool holds = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;  // 1-based member indices
  std::size_t pairs_checked = 0;
};

// ||q_m - q_n|| <= (||z|| + 2)(max{u_m, u_n} - min{v_m, v_n}) for every pair.
inline LipschitzReport lipschitz_check(const InterpolationFamily& fam, const NormSpec& norm, double tol = 1e-9) {
  LipschitzReport rep;
  const double lead = norm_eval(fam.z, norm) + 2.0;
  for (std::size_t m = 0; m < fam.members.size(); ++m) {
    for (std::size_t n = m + 1; n < fam.members.size(); ++n) {
      const double lhs = norm_eval(fam.members[m].q - fam.members[n].q, norm);
      const double rhs = lead * (std::max(fam.u_targets[m], fam.u_targets[n]) -
                                 std::min(fam.v_targets[m], fam.v_targets[n]));
      const double slack = rhs - lhs;
      ++rep.pairs_checked;
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_pair = {m + 1, n + 1};
      }
      if (slack < -tol) rep.holds = false;
    }
  }
  return rep;
}

struct CoefficientCheck {
  std::size_t k = 0;
  double lambda = 0.0;
  double bound = 0.0;  // d_k - d_{k+1}(1 - 2^-k) for k < N, d_N for k = N
  bool within_dk = true;
  bool holds = true;
};

struct ConstructionTrace {
  Vector x;
  std::vector<Vector> step_vectors;      // q_k, k = 1..N
  std::vector<double> coefficients;      // lambda_k
  std::vector<Vector> shifts;            // v_k in Y_k removed after level k (finite_construct)
  std::vector<DistanceResult> achieved;  // rho(x, Y_k), re-measured
  TargetSequence targets;
  std::vector<double> residuals;         // |achieved_k - d_k|
  std::vector<CoefficientCheck> coefficient_checks;
  bool coefficient_bounds_hold = true;

  double max_residual() const {
    double r = 0.0;
    for (double v : residuals) r = std::max(r, v);
    return r;
  }
};

namespace detail {

inline void measure(ConstructionTrace& t, const Chain& chain, std::size_t levels, double dtol) {
  t.achieved.clear();
  t.residuals.clear();
  for (std::size_t k = 1; k <= levels; ++k) {
    t.achieved.push_back(rho(t.x, chain.level(k), chain.norm, dtol));
    t.residuals.push_back(std::abs(t.achieved.back().value - t.targets.at(k)));
  }
}

inline void require_tolerance(const ConstructionTrace& t, double tol, const char* who) {
  const double worst = t.max_residual();
  if (worst > tol) {
    throw SolverError(std::string(who) + ": tolerance not met (max residual " + std::to_string(worst) + ")",
                      worst, 0.0, worst);
  }
}

}  // namespace detail

// x with rho(x, Y_k) = d_k for a finite target list with zero tail, by
// backward induction from the last positive target. After each level the
// best approximant in Y_k is removed, so ||x|| = d_1 at the end.
inline ConstructionTrace finite_construct(const Chain& chain, const TargetSequence& d,
                                          const ConstructOptions& opts = {}) {
  d.validate();
  if (d.tail != TailKind::zero) throw InputError("finite_construct: targets must have a zero tail");
  require_valid_chain(chain);
  const std::size_t levels = d.size();
  if (levels > chain.size()) {
    throw InputError("finite_construct: chain too short (" + std::to_string(levels) + " targets, " +
                     std::to_string(chain.size()) + " levels)");
  }
  const std::size_t n = d.last_positive();
  if (n > 0 && n + 1 > chain.extended_size()) {
    throw InputError("finite_construct: chain too short, d_" + std::to_string(n) +
                     " > 0 but Y_" + std::to_string(n) + " is the whole space");
  }
  const double dtol = opts.distance_tol(chain.norm);
  ConstructionTrace t;
  t.targets = d;
  t.x = Vector::Zero(static_cast<Eigen::Index>(chain.ambient_dim));
  t.step_vectors.resize(n);
  t.coefficients.assign(n, 0.0);
  t.shifts.assign(n, Vector::Zero(static_cast<Eigen::Index>(chain.ambient_dim)));
  if (n > 0) {
    t.step_vectors[n - 1] = normalize_step(chain, n, dtol);
    t.coefficients[n - 1] = d.at(n);
    t.x = d.at(n) * t.step_vectors[n - 1];
    for (std::size_t k = n - 1; k >= 1; --k) {
      const Subspace& yk = chain.level(k);
      const Vector q = normalize_step(chain, k, dtol);
      auto h = [&](double l) { return rho(t.x + l * q, yk, chain.norm, dtol).value; };
      const detail::CoefficientSolve sol = detail::solve_coefficient(h, d.at(k), opts.root_tol(chain.norm), opts);
      t.step_vectors[k - 1] = q;
      t.coefficients[k - 1] = sol.lambda;
      t.x += sol.lambda * q;
      t.shifts[k - 1] = best_approximant(t.x, yk, chain.norm, dtol);
      t.x -= t.shifts[k - 1];
    }
  }
  detail::measure(t, chain, levels, dtol);
  detail::require_tolerance(t, opts.tol, "finite_construct");
  return t;
}

// q_{j,n} for j = 1..n and n in [n_lo, n_hi], from interpolating families
// over (Y_0, Y_j, Y_{j+1}) with u = u_n^(j), v = 1. steps[j-1][n-n_lo].
struct StepTable {
  std::size_t n_lo = 1;
  std::size_t n_hi = 0;
  std::vector<std::vector<Vector>> steps;
  std::vector<std::optional<InterpolationFamily>> families;  // empty when Y_j = {0}

  const Vector& at(std::size_t j, std::size_t n) const { return steps.at(j - 1).at(n - n_lo); }
};

inline StepTable build_step_table(const Chain& chain, const BorodinSchedule& sched, std::size_t n_lo,
                                  std::size_t n_hi, const ConstructOptions& opts = {}) {
  StepTable tab;
  tab.n_lo = n_lo;
  tab.n_hi = n_hi;
  const double dtol = opts.distance_tol(chain.norm);
  for (std::size_t j = 1; j <= n_hi; ++j) {
    const std::size_t first = std::max(j, n_lo);
    std::vector<Vector> row(n_hi - n_lo + 1);
    if (chain.extended_level(j).is_zero()) {
      const Vector q = normalize_step(chain, j, dtol);
      for (std::size_t n = first; n <= n_hi; ++n) row[n - n_lo] = q;
      tab.families.emplace_back(std::nullopt);
    } else {
      std::vector<double> u, v;
      for (std::size_t n = first; n <= n_hi; ++n) {
        u.push_back(sched.u_at(j, n));
        v.push_back(sched.v_at(j, n));
      }
      InterpolationFamily fam = interpolating_family(chain.extended_level(0), chain.extended_level(j),
                                                     chain.extended_level(j + 1), chain.norm, u, v, opts);
      for (std::size_t n = first; n <= n_hi; ++n) row[n - n_lo] = fam.members[n - first].q;
      tab.families.emplace_back(std::move(fam));
    }
    tab.steps.push_back(std::move(row));
  }
  return tab;
}

namespace detail {

inline void require_prefix_hypotheses(const Chain& chain, const TargetSequence& d, std::size_t n) {
  d.validate();
  require_valid_chain(chain);
  if (n == 0) throw InputError("construct_prefix: N must be positive");
  if (n > chain.size()) {
    throw InputError("construct_prefix: chain too short (N = " + std::to_string(n) + ", " +
                     std::to_string(chain.size()) + " levels)");
  }
  if (d.tail == TailKind::geometric) {
    const BorodinReport b = check_borodin_condition(d);
    if (!b.passes) throw InputError("construct_prefix: targets fail the strict tail-sum condition: " + b.message);
  }
}

// Number of positive targets among d_1..d_n.
inline std::size_t positive_prefix(const TargetSequence& d, std::size_t n) {
  std::size_t p = 0;
  while (p < n && d.at(p + 1) > 0.0) ++p;
  return p;
}

inline ConstructionTrace prefix_from_steps(const Chain& chain, const TargetSequence& d, std::size_t n,
                                           const StepTable& tab, const ConstructOptions& opts) {
  const double dtol = opts.distance_tol(chain.norm);
  const std::size_t np = positive_prefix(d, n);
  if (np > 0 && np + 1 > chain.extended_size()) {
    throw InputError("construct_prefix: d_" + std::to_string(np) + " > 0 but Y_" + std::to_string(np) +
                     " is the whole space");
  }
  ConstructionTrace t;
  t.targets = TargetSequence::finite(d.prefix(n));
  t.x = Vector::Zero(static_cast<Eigen::Index>(chain.ambient_dim));
  t.step_vectors.resize(np);
  t.coefficients.assign(np, 0.0);
  if (np > 0) {
    t.step_vectors[np - 1] = tab.at(np, np);
    t.coefficients[np - 1] = d.at(np);
    t.x = d.at(np) * t.step_vectors[np - 1];
    for (std::size_t k = np - 1; k >= 1; --k) {
      const Subspace& yk = chain.level(k);
      const Vector& q = tab.at(k, np);
      auto h = [&](double l) { return rho(t.x + l * q, yk, chain.norm, dtol).value; };
      const CoefficientSolve sol = solve_coefficient(h, d.at(k), opts.root_tol(chain.norm), opts);
      t.step_vectors[k - 1] = q;
      t.coefficients[k - 1] = sol.lambda;
      t.x += sol.lambda * q;
    }
  }
  for (std::size_t k = 1; k <= np; ++k) {
    CoefficientCheck c;
    c.k = k;
    c.lambda = t.coefficients[k - 1];
    const double dk = d.at(k);
    c.within_dk = std::abs(c.lambda) <= dk + opts.tol;
    c.bound = k < np ? dk - d.at(k + 1) * (1.0 - std::ldexp(1.0, -static_cast<int>(k))) : dk;
    c.holds = c.within_dk && std::abs(c.lambda) <= c.bound + opts.tol;
    t.coefficient_bounds_hold = t.coefficient_bounds_hold && c.holds;
    t.coefficient_checks.push_back(c);
  }
  measure(t, chain, n, dtol);
  require_tolerance(t, opts.tol, "construct_prefix");
  return t;
}

}  // namespace detail

// x_N = lambda_N q_{N,N} + ... + lambda_1 q_{1,N} with rho(x_N, Y_k) = d_k for
// k <= N. Zero targets inside the prefix restrict the construction to the
// positive part. Coefficient bounds are recorded in the trace, not enforced.
inline ConstructionTrace construct_prefix(const Chain& chain, const TargetSequence& d, std::size_t n,
                                          const ConstructOptions& opts = {}) {
  detail::require_prefix_hypotheses(chain, d, n);
  const std::size_t np = detail::positive_prefix(d, n);
  if (np == 0) return detail::prefix_from_steps(chain, d, n, StepTable{}, opts);
  const BorodinSchedule sched = build_schedule(d, np);
  const StepTable tab = build_step_table(chain, sched, np, np, opts);
  return detail::prefix_from_steps(chain, d, n, tab, opts);
}

struct SequenceResult {
  std::vector<std::optional<ConstructionTrace>> traces;  // index N - 1
  std::vector<std::string> errors;                       // empty string on success
  Matrix differences;                                    // ||x_N - x_M||, NaN if either failed
  std::vector<double> max_later;                         // max_{M > N} ||x_N - x_M||, N = 1..N_max-1
  std::vector<double> tail_bound;                        // 4 tau_N (1 - 2^-N) + d_N
  bool non_increasing = true;
  bool below_tail_bound = true;
  bool all_succeeded = true;
};

inline SequenceResult construct_sequence(const Chain& chain, const TargetSequence& d, std::size_t n_max,
                                         const ConstructOptions& opts = {}) {
  detail::require_prefix_hypotheses(chain, d, n_max);
  const std::size_t np = detail::positive_prefix(d, n_max);
  SequenceResult res;
  res.traces.resize(n_max);
  res.errors.assign(n_max, "");

  std::optional<BorodinSchedule> sched;
  std::optional<StepTable> tab;
  if (np > 0) {
    sched = build_schedule(d, np);
    tab = build_step_table(chain, *sched, 1, np, opts);
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    try {
      res.traces[n - 1] = detail::prefix_from_steps(chain, d, n, tab ? *tab : StepTable{}, opts);
    } catch (const Error& e) {
      res.errors[n - 1] = e.what();
      res.all_succeeded = false;
    }
  }

  const auto nn = static_cast<Eigen::Index>(n_max);
  res.differences = Matrix::Constant(nn, nn, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t a = 0; a < n_max; ++a) {
    for (std::size_t b = 0; b < n_max; ++b) {
      if (res.traces[a] && res.traces[b]) {
        res.differences(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            norm_eval(res.traces[a]->x - res.traces[b]->x, chain.norm);
      }
    }
  }
  for (std::size_t n = 1; n < n_max; ++n) {
    double worst = 0.0;
    for (std::size_t m = n + 1; m <= n_max; ++m) {
      worst = std::max(worst, res.differences(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(m - 1)));
    }
    res.max_later.push_back(worst);
    const double tau = sched ? sched->tau[std::min(n, np) - 1] : 0.0;
    res.tail_bound.push_back(4.0 * tau * (1.0 - std::ldexp(1.0, -static_cast<int>(n))) + d.at(n));
    if (!(worst <= res.tail_bound.back() + opts.tol)) res.below_tail_bound = false;
    if (n > 1 && !(worst <= res.max_later[n - 2] + opts.tol)) res.non_increasing = false;
  }
  return res;
}

struct SubspaceSample {
  double norm = 0.0;
  double rho = 0.0;
  double rhs = 0.0;  // (d_{k-1} / d_k) rho(q, Y_k)
  bool holds = false;
};

// A sampled verdict: passing means no counterexample among the samples,
// never that the inequality holds on the whole span.
struct SubspaceConditionReport {
  bool no_counterexample = true;
  double ratio = 0.0;
  std::vector<SubspaceSample> samples;
  std::optional<std::size_t> first_counterexample;  // 0-based sample index
  std::string message;
};

// ||q|| <= (d_{k-1} / d_k) rho(q, Y_k) on each sample q.
inline SubspaceConditionReport check_subspace_condition(const Chain& chain, const TargetSequence& d,
                                                        const std::vector<Vector>& samples, std::size_t k,
                                                        double tol = 1e-9) {
  d.validate();
  if (k < 2 || k > chain.size()) {
    throw InputError("check_subspace_condition: k must lie in [2, " + std::to_string(chain.size()) + "]");
  }
  if (!(d.at(k) > 0.0)) throw InputError("check_subspace_condition: d_k = 0 makes the ratio undefined");
  SubspaceConditionReport rep;
  rep.ratio = d.at(k - 1) / d.at(k);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    SubspaceSample s;
    s.norm = norm_eval(samples[i], chain.norm);
    s.rho = rho(samples[i], chain.level(k), chain.norm).value;
    s.rhs = rep.ratio * s.rho;
    s.holds = s.norm <= s.rhs + tol;
    if (!s.holds && rep.no_counterexample) {
      rep.no_counterexample = false;
      rep.first_counterexample = i;
    }
    rep.samples.push_back(s);
  }
  rep.message = rep.no_counterexample
                    ? "no counterexample among " + std::to_string(samples.size()) +
                          " samples (sampled check, not a proof over the span)"
                    : "counterexample at sample " + std::to_string(*rep.first_counterexample);
  return rep;
}

}  // namespace lethargy

#endif  // LETHARGY_CONSTRUCTION_HPP
