#ifndef LETHARGY_TARGETS_HPP
#define LETHARGY_TARGETS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lethargy/errors.hpp"

namespace lethargy {

enum class TailKind { zero, geometric };

inline const char* to_string(TailKind t) { return t == TailKind::zero ? "zero" : "geometric"; }

// d_1 >= d_2 >= ... >= d_N >= 0 stored explicitly. Past N the sequence is
// either identically zero or continues as d_N r^k.
struct TargetSequence {
  std::vector<double> values;
  TailKind tail = TailKind::zero;
  double ratio = 0.0;

  static TargetSequence finite(std::vector<double> d) {
    TargetSequence t{std::move(d), TailKind::zero, 0.0};
    t.validate();
    return t;
  }

  // first, first r, ..., first r^(count-1), then the geometric tail.
  static TargetSequence geometric(double first, double r, std::size_t count = 1) {
    TargetSequence t;
    t.tail = TailKind::geometric;
    t.ratio = r;
    double v = first;
    for (std::size_t i = 0; i < count; ++i, v *= r) t.values.push_back(v);
    t.validate();
    return t;
  }

  std::size_t size() const noexcept { return values.size(); }

  // 1-based d_n, following the tail past the stored prefix.
  double at(std::size_t n) const {
    if (n == 0) throw InputError("target index is 1-based");
    if (n <= values.size()) return values[n - 1];
    if (tail == TailKind::zero || values.empty()) return 0.0;
    return values.back() * std::pow(ratio, static_cast<double>(n - values.size()));
  }

  // The first n targets as explicit values.
  std::vector<double> prefix(std::size_t n) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i + 1);
    return out;
  }

  // Index of the last positive stored entry (0 if none).
  std::size_t last_positive() const noexcept {
    for (std::size_t i = values.size(); i > 0; --i) {
      if (values[i - 1] > 0.0) return i;
    }
    return 0;
  }

  bool strictly_decreasing() const noexcept {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i - 1] > values[i])) return false;
    }
    return true;
  }

  void validate() const {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i]) || values[i] < 0.0) {
        throw InputError("targets: d_" + std::to_string(i + 1) + " must be finite and non-negative");
      }
      if (i > 0 && values[i] > values[i - 1]) {
        throw InputError("targets: sequence must be non-increasing (d_" + std::to_string(i + 1) + " > d_" +
                         std::to_string(i) + ")");
      }
    }
    if (tail == TailKind::geometric) {
      if (!(ratio > 0.0 && ratio < 1.0)) {
        throw InputError("targets: invalid tail, geometric ratio must lie in (0, 1) (got " +
                         std::to_string(ratio) + ")");
      }
      if (values.empty()) throw InputError("targets: a geometric tail needs at least one stored value");
    }
  }
};

struct BorodinReport {
  bool passes = false;
  std::optional<std::size_t> n0;
  std::vector<double> margins;  // d_n - sum_{k>n} d_k for the stored n
  // Geometric tail only: margin_n = d_n * tail_factor for every n past the
  // stored prefix, with tail_factor = 1 - r / (1 - r).
  std::optional<double> tail_factor;
  std::string message;
};

// d_n > sum_{k>n} d_k for all n >= n0 with d_n > 0. Reports the smallest such n0.
inline BorodinReport check_borodin_condition(const TargetSequence& d) {
  d.validate();
  BorodinReport rep;
  const std::size_t n = d.size();
  // Suffix sums in extended precision; the tail is added in closed form.
  long double tail_sum = 0.0L;
  if (d.tail == TailKind::geometric) {
    const long double r = d.ratio;
    tail_sum = static_cast<long double>(d.values.back()) * r / (1.0L - r);
    rep.tail_factor = static_cast<double>(1.0L - r / (1.0L - r));
  }
  rep.margins.assign(n, 0.0);
  long double suffix = tail_sum;
  for (std::size_t i = n; i > 0; --i) {
    rep.margins[i - 1] = static_cast<double>(static_cast<long double>(d.values[i - 1]) - suffix);
    suffix += d.values[i - 1];
  }

  // A geometric tail passes exactly when r < 1/2; the stored entries need a
  // margin clear of summation error to count as strict.
  if (d.tail == TailKind::geometric && !(d.ratio < 0.5)) {
    rep.passes = false;
    rep.message = "geometric tail with ratio " + std::to_string(d.ratio) +
                  " >= 1/2: d_n <= sum of the tail for every n past the prefix";
    return rep;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t last_fail = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double dn = d.values[i - 1];
    if (dn <= 0.0) continue;
    if (!(rep.margins[i - 1] > 4.0 * static_cast<double>(n) * eps * dn)) last_fail = i;
  }
  rep.passes = true;
  rep.n0 = last_fail + 1;
  rep.message = last_fail == 0 ? "condition holds from n = 1"
                               : "condition holds from n = " + std::to_string(last_fail + 1);
  return rep;
}

// tau_1 = d_1, tau_j = min_{k=2..j} (d_{k-1} - d_k); u_n^(j) = 1 + tau_n / (2^j d_j), v = 1.
struct BorodinSchedule {
  std::vector<double> tau;             // tau[n-1] = tau_n
  std::vector<std::vector<double>> u;  // u[n-1][j-1] for 1 <= j <= n
  std::vector<std::vector<double>> v;

  std::size_t size() const noexcept { return tau.size(); }
  double u_at(std::size_t j, std::size_t n) const { return u.at(n - 1).at(j - 1); }
  double v_at(std::size_t j, std::size_t n) const { return v.at(n - 1).at(j - 1); }
};

inline BorodinSchedule build_schedule(const TargetSequence& d, std::size_t n_max) {
  d.validate();
  const std::vector<double> dv = d.prefix(n_max);
  for (std::size_t j = 0; j < n_max; ++j) {
    if (!(dv[j] > 0.0)) {
      throw InputError("build_schedule: d_" + std::to_string(j + 1) + " = 0 lies inside the schedule range");
    }
  }
  BorodinSchedule s;
  s.tau.resize(n_max);
  for (std::size_t j = 0; j < n_max; ++j) {
    s.tau[j] = j == 0 ? dv[0] : (j == 1 ? dv[0] - dv[1] : std::min(s.tau[j - 1], dv[j - 1] - dv[j]));
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<double> un(n), vn(n, 1.0);
    for (std::size_t j = 1; j <= n; ++j) un[j - 1] = 1.0 + s.tau[n - 1] / (std::ldexp(1.0, static_cast<int>(j)) * dv[j - 1]);
    s.u.push_back(std::move(un));
    s.v.push_back(std::move(vn));
  }
  return s;
}

}  // namespace lethargy

#endif  // LETHARGY_TARGETS_HPP
