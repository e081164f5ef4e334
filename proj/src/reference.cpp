#include "anc/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace anc::reference {

NaiveFap::NaiveFap(const FapConfig& cfg) : cfg_(cfg), h_(cfg.order, 0.0) {}

double NaiveFap::column_sample(std::size_t j, std::size_t row) const {
  // Row r of column j is x(n - j - r); history is newest first.
  const std::size_t lag = j + row;
  return lag < x_hist_.size() ? x_hist_[lag] : 0.0;
}

std::vector<double> NaiveFap::residual_cross(const std::vector<double>& h) const {
  const std::size_t m = cfg_.order;
  const std::size_t l = cfg_.window;
  // e = d - X h, materialized row by row.
  std::vector<double> e(l);
  for (std::size_t r = 0; r < l; ++r) {
    double dr = r < d_hist_.size() ? d_hist_[r] : 0.0;
    for (std::size_t k = 0; k < m; ++k) dr -= h[k] * column_sample(k, r);
    e[r] = dr;
  }
  std::vector<double> rho(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < l; ++r) acc += e[r] * column_sample(j, r);
    rho[j] = acc;
  }
  return rho;
}

std::vector<double> NaiveFap::column_energies() const {
  const std::size_t m = cfg_.order;
  const std::size_t l = cfg_.window;
  std::vector<double> en(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < l; ++r) {
      const double v = column_sample(j, r);
      acc += v * v;
    }
    en[j] = acc;
  }
  return en;
}

void NaiveFap::step(double x_new, double d_new) {
  x_hist_.insert(x_hist_.begin(), x_new);
  d_hist_.insert(d_hist_.begin(), d_new);

  for (std::size_t i = 0; i < cfg_.iterations; ++i) {
    const auto rho = residual_cross(h_);
    const auto en = column_energies();
    double best_score = -1.0;
    std::size_t best_j = cfg_.order;
    for (std::size_t j = 0; j < cfg_.order; ++j) {
      if (en[j] <= cfg_.norm_floor) continue;
      const double denom = cfg_.selection_norm == SelectionNorm::kNorm
                               ? std::sqrt(en[j])
                               : en[j];
      const double score = std::fabs(rho[j]) / denom;
      if (score > best_score) {
        best_score = score;
        best_j = j;
      }
    }
    if (best_j == cfg_.order) break;
    h_[best_j] += cfg_.mu * rho[best_j] / en[best_j];
  }
}

std::vector<double> invert_matrix(std::vector<double> a, std::size_t m) {
  std::vector<double> inv(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::fabs(a[r * m + col]) > std::fabs(a[pivot * m + col])) pivot = r;
    }
    if (std::fabs(a[pivot * m + col]) < 1e-300) {
      throw std::runtime_error("singular matrix in invert_matrix");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(a[pivot * m + c], a[col * m + c]);
        std::swap(inv[pivot * m + c], inv[col * m + c]);
      }
    }
    const double d = a[col * m + col];
    for (std::size_t c = 0; c < m; ++c) {
      a[col * m + c] /= d;
      inv[col * m + c] /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r * m + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < m; ++c) {
        a[r * m + c] -= f * a[col * m + c];
        inv[r * m + c] -= f * inv[col * m + c];
      }
    }
  }
  return inv;
}

}  // namespace anc::reference
