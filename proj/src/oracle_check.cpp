#include "anc/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "anc/delay_line.hpp"
#include "anc/filters_classic.hpp"
#include "anc/inner_product_cache.hpp"
#include "anc/reference.hpp"

namespace anc {

namespace {

double uniform_pm1(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-52 - 1.0;
}

double rel_dev(double got, double want) {
  const double scale = std::max({std::fabs(got), std::fabs(want), 1e-3});
  return std::fabs(got - want) / scale;
}

}  // namespace

OracleReport check_cache_vs_oracle(std::size_t samples, std::size_t order,
                                   std::size_t window, std::uint64_t seed,
                                   bool inject_fault) {
  std::mt19937_64 eng(seed);
  DelayLine x_line(order + window);
  DelayLine d_line(window + 1);
  InnerProductCache cache(order, window);

  double max_dev = 0.0;
  const std::size_t check_stride = std::max<std::size_t>(1, samples / 500);
  for (std::size_t t = 0; t < samples; ++t) {
    x_line.push(uniform_pm1(eng));
    d_line.push(uniform_pm1(eng));
    cache.step(x_line, d_line);
    if (t % check_stride != 0 && t + 1 != samples) continue;
    const InnerProductCache want = cache_oracle(x_line, d_line, order, window);
    for (std::size_t j = 0; j < order; ++j) {
      max_dev = std::max(max_dev, rel_dev(cache.cross(j), want.cross(j)));
      for (std::size_t k = 0; k < order; ++k) {
        max_dev = std::max(max_dev, rel_dev(cache.gram(k, j), want.gram(k, j)));
      }
    }
  }
  if (inject_fault) max_dev += 1.0;
  return {"cache-vs-oracle", max_dev, 1e-9, max_dev < 1e-9};
}

OracleReport check_fap_vs_naive(std::size_t configs, std::size_t samples,
                                std::uint64_t seed, bool inject_fault) {
  std::mt19937_64 eng(seed);
  double max_dev = 0.0;
  for (std::size_t c = 0; c < configs; ++c) {
    FapConfig cfg;
    cfg.order = 1 + eng() % 4;
    cfg.window = cfg.order + 1 + eng() % (8 - cfg.order);
    cfg.iterations = 1 + eng() % 4;
    cfg.mu = 0.1 + 0.8 * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
    cfg.selection_norm =
        (eng() & 1) ? SelectionNorm::kNorm : SelectionNorm::kNormSquared;

    FapFilter fast(cfg);
    reference::NaiveFap naive(cfg);
    for (std::size_t t = 0; t < samples; ++t) {
      const double x = uniform_pm1(eng);
      const double d = uniform_pm1(eng);
      fast.step(x, d);
      naive.step(x, d);
      for (std::size_t k = 0; k < cfg.order; ++k) {
        max_dev = std::max(max_dev,
                           std::fabs(fast.taps()[k] - naive.taps()[k]));
      }
    }
  }
  if (inject_fault) max_dev += 1.0;
  return {"fap-fast-vs-naive", max_dev, 1e-8, max_dev < 1e-8};
}

OracleReport check_rls_vs_direct(std::size_t steps, std::uint64_t seed,
                                 bool inject_fault) {
  std::mt19937_64 eng(seed);
  double max_dev = 0.0;
  const double lambdas[] = {0.9, 0.99, 1.0};
  for (double lambda : lambdas) {
    const std::size_t m = 1 + eng() % 4;
    const double delta = 0.01;
    RlsFilter rls(m, lambda, delta);
    std::vector<double> c_direct(m * m, 0.0);
    for (std::size_t k = 0; k < m; ++k) c_direct[k * m + k] = delta;
    std::vector<double> hist;  // newest first

    for (std::size_t t = 0; t < steps; ++t) {
      const double x_new = uniform_pm1(eng);
      const double d_new = uniform_pm1(eng);
      rls.step(x_new, d_new);

      hist.insert(hist.begin(), x_new);
      std::vector<double> x(m, 0.0);
      for (std::size_t k = 0; k < m && k < hist.size(); ++k) x[k] = hist[k];
      for (double& v : c_direct) v *= lambda;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t col = 0; col < m; ++col) {
          c_direct[r * m + col] += x[r] * x[col];
        }
      }

      if (t < m) continue;  // direct inverse is near delta*I, fine either way
      const auto inv = reference::invert_matrix(c_direct, m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t col = 0; col < m; ++col) {
          max_dev = std::max(
              max_dev, rel_dev(rls.p_matrix(r, col), inv[r * m + col]));
        }
      }
    }
  }
  if (inject_fault) max_dev += 1.0;
  return {"rls-vs-direct-inverse", max_dev, 1e-6, max_dev < 1e-6};
}

std::vector<OracleReport> run_all_oracle_checks(std::size_t samples,
                                                std::uint64_t seed,
                                                bool inject_fault) {
  std::vector<OracleReport> out;
  out.push_back(check_cache_vs_oracle(samples, 8, 25, seed, inject_fault));
  out.push_back(check_fap_vs_naive(20, std::min<std::size_t>(samples, 500),
                                   seed + 1, inject_fault));
  out.push_back(check_rls_vs_direct(200, seed + 2, inject_fault));
  return out;
}

}  // namespace anc
