#pragma once

#include <cstddef>
#include <vector>

#include "anc/delay_line.hpp"

namespace anc {

// Sliding-window Gram matrix <x_k, x_j> and cross vector <d, x_j> over the
// last L samples, maintained by rank-1 recursions so each sample step costs
// O(M) for the cross vector and O(M^2) for the Gram matrix.
//
// Column j is the L-vector [x(n-j), ..., x(n-j-L+1)]; the desired window is
// [d(n), ..., d(n-L+1)]. Pre-start samples read as 0, so the recursions are
// valid from the first sample without warm-up handling.
class InnerProductCache {
 public:
  InnerProductCache(std::size_t order, std::size_t window)
      : m_(order), l_(window), gram_(order * order, 0.0), cross_(order, 0.0) {}

  std::size_t order() const { return m_; }
  std::size_t window() const { return l_; }

  double gram(std::size_t k, std::size_t j) const { return gram_[k * m_ + j]; }
  double cross(std::size_t j) const { return cross_[j]; }
  double norm_sq(std::size_t j) const { return gram_[j * m_ + j]; }

  // Advance one sample. The delay lines must already hold the new samples
  // x(n), d(n) at lag 0; x_line must retain lags to M+L-1 and d_line to L.
  void step(const DelayLine& x_line, const DelayLine& d_line) {
    const double d_new = d_line.at(0);
    const double d_old = d_line.at(l_);
    for (std::size_t j = 0; j < m_; ++j) {
      cross_[j] += d_new * x_line.at(j) - d_old * x_line.at(j + l_);
    }
    for (std::size_t k = 0; k < m_; ++k) {
      const double xk_new = x_line.at(k);
      const double xk_old = x_line.at(k + l_);
      for (std::size_t j = k; j < m_; ++j) {
        const double v =
            gram_[k * m_ + j] + xk_new * x_line.at(j) - xk_old * x_line.at(j + l_);
        gram_[k * m_ + j] = v;
        gram_[j * m_ + k] = v;  // mirrored write keeps symmetry bit-exact
      }
    }
  }

  // Rebuild every entry by direct summation over the L-length windows.
  // This is the non-recursive reference path; also usable as a periodic
  // drift reset.
  void rebuild(const DelayLine& x_line, const DelayLine& d_line) {
    for (std::size_t j = 0; j < m_; ++j) {
      double c = 0.0;
      for (std::size_t t = 0; t < l_; ++t) c += d_line.at(t) * x_line.at(j + t);
      cross_[j] = c;
    }
    for (std::size_t k = 0; k < m_; ++k) {
      for (std::size_t j = k; j < m_; ++j) {
        double g = 0.0;
        for (std::size_t t = 0; t < l_; ++t) {
          g += x_line.at(k + t) * x_line.at(j + t);
        }
        gram_[k * m_ + j] = g;
        gram_[j * m_ + k] = g;
      }
    }
  }

 private:
  std::size_t m_;
  std::size_t l_;
  std::vector<double> gram_;   // row-major M x M
  std::vector<double> cross_;  // length M
};

// Direct-summation oracle: a fresh cache built from the delay lines alone.
inline InnerProductCache cache_oracle(const DelayLine& x_line,
                                      const DelayLine& d_line,
                                      std::size_t order, std::size_t window) {
  InnerProductCache c(order, window);
  c.rebuild(x_line, d_line);
  return c;
}

}  // namespace anc
