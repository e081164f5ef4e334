#pragma once

#include <cstddef>
#include <vector>

#include "anc/delay_line.hpp"
#include "anc/filter.hpp"

namespace anc {

// h(n+1) = h(n) + mu * x(n) * e(n)
class LmsFilter : public AdaptiveFilter {
 public:
  LmsFilter(std::size_t order, double mu);

  StepResult step(double x_new, double d_new) override;
  const std::vector<double>& taps() const override { return h_; }
  std::size_t order() const override { return h_.size(); }

 private:
  std::vector<double> h_;
  double mu_;
  DelayLine x_line_;
  std::size_t n_ = 0;
};

// h(n+1) = h(n) + mu / (||x(n)||^2 + eps) * x(n) * e(n)
// When the denominator is exactly 0 (silent history, eps = 0) the update is
// skipped.
class NlmsFilter : public AdaptiveFilter {
 public:
  NlmsFilter(std::size_t order, double mu, double epsilon = 1e-8);

  StepResult step(double x_new, double d_new) override;
  const std::vector<double>& taps() const override { return h_; }
  std::size_t order() const override { return h_.size(); }

 private:
  std::vector<double> h_;
  double mu_;
  double eps_;
  DelayLine x_line_;
  std::size_t n_ = 0;
};

// Exponentially weighted RLS via the matrix-inversion identity.
// P(n) tracks the inverse of C(n) = lambda*C(n-1) + x(n)x(n)^T,
// P(0) = I/delta. P is resymmetrized each step.
class RlsFilter : public AdaptiveFilter {
 public:
  RlsFilter(std::size_t order, double lambda, double delta = 0.01);

  StepResult step(double x_new, double d_new) override;
  const std::vector<double>& taps() const override { return h_; }
  std::size_t order() const override { return h_.size(); }

  double p_matrix(std::size_t r, std::size_t c) const {
    return p_[r * h_.size() + c];
  }

 private:
  std::vector<double> h_;
  double lambda_;
  std::vector<double> p_;  // row-major M x M
  DelayLine x_line_;
  std::size_t n_ = 0;
};

}  // namespace anc
