#ifndef LETHARGY_SPACE_CORE_HPP
#define LETHARGY_SPACE_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lethargy/errors.hpp"

namespace lethargy {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultNestTol = 1e-10;

inline bool all_finite(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

inline void require_finite(const Vector& x, const char* what) {
  if (!all_finite(x)) throw InputError(std::string(what) + ": entries must be finite");
}

// The l^p norm on R^m, p in [1, +inf].
class NormSpec {
 public:
  NormSpec() = default;
  explicit NormSpec(double p) : p_(p) {
    if (!(p >= 1.0)) throw InputError("norm exponent p must satisfy p >= 1 (got " + std::to_string(p) + ")");
  }

  static NormSpec l1() { return NormSpec(1.0); }
  static NormSpec l2() { return NormSpec(2.0); }
  static NormSpec sup() { return NormSpec(std::numeric_limits<double>::infinity()); }

  double p() const noexcept { return p_; }
  bool is_sup() const noexcept { return std::isinf(p_); }
  bool is_l1() const noexcept { return p_ == 1.0; }
  bool is_l2() const noexcept { return p_ == 2.0; }
  bool is_polyhedral() const noexcept { return is_l1() || is_sup(); }

  // Conjugate exponent q with 1/p + 1/q = 1.
  NormSpec dual() const {
    if (is_l1()) return sup();
    if (is_sup()) return l1();
    return NormSpec(p_ / (p_ - 1.0));
  }

  std::string to_string() const {
    if (is_sup()) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << p_;
    return os.str();
  }

  friend bool operator==(const NormSpec& a, const NormSpec& b) { return a.p_ == b.p_; }

 private:
  double p_ = 2.0;
};

inline double norm_eval(const Vector& x, const NormSpec& norm) {
  if (x.size() == 0) return 0.0;
  const double peak = x.cwiseAbs().maxCoeff();
  if (norm.is_sup() || peak == 0.0) return peak;
  if (norm.is_l1()) return x.cwiseAbs().sum();
  if (norm.is_l2()) return x.norm();
  // Scale by the peak entry so |x_i|^p cannot overflow.
  double acc = 0.0;
  for (double v : x) acc += std::pow(std::abs(v) / peak, norm.p());
  return peak * std::pow(acc, 1.0 / norm.p());
}

// A linear subspace of R^m given by basis columns. The columns are
// orthonormalized on ingestion; the caller's basis is kept for reporting.
// rank 0 is the zero subspace.
class Subspace {
 public:
  Subspace() = default;

  explicit Subspace(const Matrix& basis, double rank_tol = kDefaultRankTol)
      : original_(basis), ambient_dim_(static_cast<std::size_t>(basis.rows())) {
    if (basis.rows() == 0) throw InputError("subspace: ambient dimension must be positive");
    if (basis.cols() > basis.rows()) throw InputError("subspace: rank exceeds ambient dimension");
    if (!basis.allFinite()) throw InputError("subspace: basis entries must be finite");
    if (basis.cols() == 0) {
      orthonormal_ = Matrix(basis.rows(), 0);
      return;
    }
    Eigen::JacobiSVD<Matrix> svd(basis);
    const auto& sv = svd.singularValues();
    const double largest = sv(0);
    const double smallest = sv(sv.size() - 1);
    if (!(largest > 0.0) || smallest <= rank_tol * largest) {
      throw InputError("subspace: basis columns are linearly dependent (sigma_min/sigma_max = " +
                       std::to_string(largest > 0.0 ? smallest / largest : 0.0) + ")");
    }
    Eigen::HouseholderQR<Matrix> qr(basis);
    orthonormal_ = qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols());
  }

  static Subspace zero(std::size_t ambient_dim) {
    return Subspace(Matrix(static_cast<Eigen::Index>(ambient_dim), 0));
  }

  static Subspace whole(std::size_t ambient_dim) {
    const auto m = static_cast<Eigen::Index>(ambient_dim);
    return Subspace(Matrix::Identity(m, m));
  }

  // span{e_1, ..., e_k}
  static Subspace coordinate(std::size_t ambient_dim, std::size_t k) {
    const auto m = static_cast<Eigen::Index>(ambient_dim);
    return Subspace(Matrix::Identity(m, m).leftCols(static_cast<Eigen::Index>(k)));
  }

  std::size_t rank() const noexcept { return static_cast<std::size_t>(orthonormal_.cols()); }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  bool is_zero() const noexcept { return rank() == 0; }

  // Orthonormal basis; coefficient vectors throughout the library refer to it.
  const Matrix& basis() const noexcept { return orthonormal_; }
  const Matrix& original_basis() const noexcept { return original_; }

  // Euclidean orthogonal projection onto the subspace.
  Vector project(const Vector& x) const {
    check_dim(x);
    if (is_zero()) return Vector::Zero(x.size());
    Vector p = orthonormal_ * (orthonormal_.transpose() * x);
    // One re-orthogonalization pass.
    const Vector r = x - p;
    p += orthonormal_ * (orthonormal_.transpose() * r);
    return p;
  }

  Vector euclidean_residual(const Vector& x) const { return x - project(x); }

  void check_dim(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != ambient_dim_) {
      throw DimensionError("vector of dimension " + std::to_string(x.size()) +
                           " does not match subspace ambient dimension " + std::to_string(ambient_dim_));
    }
  }

 private:
  Matrix original_;
  Matrix orthonormal_;
  std::size_t ambient_dim_ = 0;
};

// Least-squares membership test: ||x - P_Y x||_2 <= tol * max(1, ||x||_2).
inline bool contains(const Subspace& y, const Vector& x, double tol = 1e-9) {
  y.check_dim(x);
  return y.euclidean_residual(x).norm() <= tol * std::max(1.0, x.norm());
}

// Y_1 ⊂ Y_2 ⊂ ... ⊂ Y_L in R^m under one norm. levels[0] is Y_1.
struct Chain {
  std::size_t ambient_dim = 0;
  NormSpec norm;
  std::vector<Subspace> levels;

  std::size_t size() const noexcept { return levels.size(); }

  // 1-based access matching Y_k.
  const Subspace& level(std::size_t k) const {
    if (k == 0 || k > levels.size()) throw InputError("chain level " + std::to_string(k) + " out of range");
    return levels[k - 1];
  }

  // Y_k for k = 0..size(), with Y_0 = {0}; Y_{size()+1} is the ambient space
  // when the last level is a proper subspace.
  Subspace extended_level(std::size_t k) const {
    if (k == 0) return Subspace::zero(ambient_dim);
    if (k <= levels.size()) return levels[k - 1];
    if (k == levels.size() + 1 && (levels.empty() || levels.back().rank() < ambient_dim)) {
      return Subspace::whole(ambient_dim);
    }
    throw InputError("chain has no level " + std::to_string(k) + " (ambient space already reached)");
  }

  // Number of levels available through extended_level (excluding Y_0).
  std::size_t extended_size() const noexcept {
    return (levels.empty() || levels.back().rank() < ambient_dim) ? levels.size() + 1 : levels.size();
  }

  static Chain coordinate(std::size_t ambient_dim, std::size_t count, NormSpec norm) {
    Chain c{ambient_dim, norm, {}};
    for (std::size_t k = 1; k <= count; ++k) c.levels.push_back(Subspace::coordinate(ambient_dim, k));
    return c;
  }
};

struct PairCheck {
  std::size_t lower = 0;  // 1-based index k of Y_k; the pair is (Y_k, Y_{k+1})
  bool nested = false;
  bool strict = false;
  long rank_gap = 0;
  double max_residual = 0.0;
};

struct ChainReport {
  bool ok = true;
  std::vector<PairCheck> pairs;
  std::optional<std::size_t> first_failure;  // lower index of the first failing pair
  std::string message;
};

inline ChainReport validate_chain(const Chain& chain, double nest_tol = kDefaultNestTol) {
  ChainReport report;
  auto fail = [&](std::size_t k, std::string msg) {
    if (report.ok) {
      report.ok = false;
      report.first_failure = k;
      report.message = std::move(msg);
    }
  };
  if (chain.ambient_dim == 0) fail(0, "ambient dimension must be positive");
  for (std::size_t k = 1; k <= chain.levels.size(); ++k) {
    if (chain.levels[k - 1].ambient_dim() != chain.ambient_dim) {
      fail(k, "level " + std::to_string(k) + " lives in dimension " +
                  std::to_string(chain.levels[k - 1].ambient_dim()) + ", chain ambient is " +
                  std::to_string(chain.ambient_dim));
    }
  }
  if (!report.ok) return report;
  for (std::size_t k = 1; k < chain.levels.size(); ++k) {
    const Subspace& lo = chain.levels[k - 1];
    const Subspace& hi = chain.levels[k];
    PairCheck pc;
    pc.lower = k;
    pc.rank_gap = static_cast<long>(hi.rank()) - static_cast<long>(lo.rank());
    for (Eigen::Index j = 0; j < lo.basis().cols(); ++j) {
      pc.max_residual = std::max(pc.max_residual, hi.euclidean_residual(lo.basis().col(j)).norm());
    }
    pc.nested = pc.max_residual <= nest_tol;
    pc.strict = pc.nested && pc.rank_gap > 0;
    report.pairs.push_back(pc);
    if (!pc.nested) {
      fail(k, "Y_" + std::to_string(k) + " is not contained in Y_" + std::to_string(k + 1) +
                  " (residual " + std::to_string(pc.max_residual) + ")");
    } else if (!pc.strict) {
      fail(k, "Y_" + std::to_string(k) + " and Y_" + std::to_string(k + 1) + " are not strictly nested");
    }
  }
  return report;
}

inline void require_valid_chain(const Chain& chain) {
  const ChainReport r = validate_chain(chain);
  if (!r.ok) throw InputError("invalid chain: " + r.message);
}

}  // namespace lethargy

#endif  // LETHARGY_SPACE_CORE_HPP
