#ifndef LETHARGY_ERRORS_HPP
#define LETHARGY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lethargy {

// Base class for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector / subspace dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input violates a structural hypothesis (non-finite entries, dependent
// basis columns, increasing targets, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A numerical routine did not reach its tolerance within its budget.
// best_bound carries the best value seen, lower/upper describe a bracket
// when one is known.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double best_bound, double lower = 0.0,
              double upper = 0.0)
      : Error(what), best_bound_(best_bound), lower_(lower), upper_(upper) {}

  double best_bound() const noexcept { return best_bound_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double best_bound_;
  double lower_;
  double upper_;
};

}  // namespace lethargy

#endif  // LETHARGY_ERRORS_HPP
