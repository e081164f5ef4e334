#pragma once

#include <cstddef>
#include <vector>

#include "anc/fap.hpp"

namespace anc::reference {

// Naive matching-pursuit affine projection that materializes the L x M data
// matrix and the L-length residual every sample. Slow on purpose; it exists
// only to validate the inner-product-domain fast path.
class NaiveFap {
 public:
  NaiveFap(const FapConfig& cfg);

  // Returns the taps after this sample's P iterations.
  void step(double x_new, double d_new);

  const std::vector<double>& taps() const { return h_; }

  // Residual <e_i, x_j> for all j, materialized from the current signal
  // history and the given coefficient vector.
  std::vector<double> residual_cross(const std::vector<double>& h) const;

  // Column energies ||x_j||^2 over the current window.
  std::vector<double> column_energies() const;

 private:
  double column_sample(std::size_t j, std::size_t row) const;

  FapConfig cfg_;
  std::vector<double> h_;
  std::vector<double> x_hist_;  // newest first
  std::vector<double> d_hist_;  // newest first
};

// Inverse of a small dense symmetric positive-definite matrix via
// Gauss-Jordan elimination with partial pivoting. Row-major m x m.
std::vector<double> invert_matrix(std::vector<double> a, std::size_t m);

}  // namespace anc::reference
