#include "anc/filters_classic.hpp"

#include <cmath>

namespace anc {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

LmsFilter::LmsFilter(std::size_t order, double mu)
    : h_(order, 0.0), mu_(mu), x_line_(order) {
  if (order == 0) throw InvalidConfig("filter order must be positive");
  if (mu <= 0.0) throw InvalidConfig("mu must be positive");
}

StepResult LmsFilter::step(double x_new, double d_new) {
  x_line_.push(x_new);
  const std::size_t m = h_.size();
  double y = 0.0;
  for (std::size_t k = 0; k < m; ++k) y += h_[k] * x_line_.at(k);
  const double e = d_new - y;
  for (std::size_t k = 0; k < m; ++k) h_[k] += mu_ * x_line_.at(k) * e;
  if (!all_finite(h_)) throw NumericalDivergence(n_, "LMS taps non-finite");
  ++n_;
  return {y, e};
}

NlmsFilter::NlmsFilter(std::size_t order, double mu, double epsilon)
    : h_(order, 0.0), mu_(mu), eps_(epsilon), x_line_(order) {
  if (order == 0) throw InvalidConfig("filter order must be positive");
  if (mu <= 0.0) throw InvalidConfig("mu must be positive");
  if (epsilon < 0.0) throw InvalidConfig("epsilon must be non-negative");
}

StepResult NlmsFilter::step(double x_new, double d_new) {
  x_line_.push(x_new);
  const std::size_t m = h_.size();
  double y = 0.0;
  double norm_sq = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double xk = x_line_.at(k);
    y += h_[k] * xk;
    norm_sq += xk * xk;
  }
  const double e = d_new - y;
  const double denom = norm_sq + eps_;
  if (denom > 0.0) {
    const double g = mu_ / denom;
    for (std::size_t k = 0; k < m; ++k) h_[k] += g * x_line_.at(k) * e;
  }
  if (!all_finite(h_)) throw NumericalDivergence(n_, "NLMS taps non-finite");
  ++n_;
  return {y, e};
}

RlsFilter::RlsFilter(std::size_t order, double lambda, double delta)
    : h_(order, 0.0),
      lambda_(lambda),
      p_(order * order, 0.0),
      x_line_(order) {
  if (order == 0) throw InvalidConfig("filter order must be positive");
  if (lambda <= 0.0 || lambda > 1.0) throw InvalidConfig("lambda must be in (0, 1]");
  if (delta <= 0.0) throw InvalidConfig("delta must be positive");
  for (std::size_t k = 0; k < order; ++k) p_[k * order + k] = 1.0 / delta;
}

StepResult RlsFilter::step(double x_new, double d_new) {
  x_line_.push(x_new);
  const std::size_t m = h_.size();

  std::vector<double> x(m);
  for (std::size_t k = 0; k < m; ++k) x[k] = x_line_.at(k);

  double y = 0.0;
  for (std::size_t k = 0; k < m; ++k) y += h_[k] * x[k];
  const double e = d_new - y;

  // px = P(n-1) x, denom = lambda + x^T P(n-1) x
  std::vector<double> px(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m; ++c) acc += p_[r * m + c] * x[c];
    px[r] = acc;
  }
  double denom = lambda_;
  for (std::size_t k = 0; k < m; ++k) denom += x[k] * px[k];
  if (denom < 1e-300) throw DenominatorUnderflow("RLS gain denominator underflow");

  // P(n) = (P(n-1) - g px^T) / lambda, then resymmetrize
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k) g[k] = px[k] / denom;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      p_[r * m + c] = (p_[r * m + c] - g[r] * px[c]) / lambda_;
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r + 1; c < m; ++c) {
      const double s = 0.5 * (p_[r * m + c] + p_[c * m + r]);
      p_[r * m + c] = s;
      p_[c * m + r] = s;
    }
  }

  for (std::size_t k = 0; k < m; ++k) h_[k] += g[k] * e;

  if (!all_finite(h_) || !all_finite(p_)) {
    throw NumericalDivergence(n_, "RLS state non-finite");
  }
  ++n_;
  return {y, e};
}

}  // namespace anc
