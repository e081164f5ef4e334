#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace anc {

struct StepResult {
  double y;  // filter output
  double e;  // a priori error, d - y
};

// Thrown when a filter's coefficients (or auxiliary state) go non-finite.
class NumericalDivergence : public std::runtime_error {
 public:
  NumericalDivergence(std::size_t sample_index, const std::string& what)
      : std::runtime_error(what), sample_index_(sample_index) {}
  std::size_t sample_index() const { return sample_index_; }

 private:
  std::size_t sample_index_;
};

class DenominatorUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Common per-sample contract shared by the four algorithms. Every step
// returns the a priori error e = d - h^T x computed before the coefficient
// update, so learning curves are comparable across algorithms.
class AdaptiveFilter {
 public:
  virtual ~AdaptiveFilter() = default;
  virtual StepResult step(double x_new, double d_new) = 0;
  virtual const std::vector<double>& taps() const = 0;
  virtual std::size_t order() const = 0;
};

}  // namespace anc
