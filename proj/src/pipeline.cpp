#include "anc/pipeline.hpp"

#include <cmath>

namespace anc {

namespace {

double power(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  double acc = 0.0;
  for (std::size_t t = begin; t < end; ++t) acc += v[t] * v[t];
  return acc;
}

constexpr double kSnrCapDb = 150.0;

// SNR over [begin, end), with the degenerate cases pinned to +/-150 dB.
double windowed_snr(const std::vector<double>& signal,
                    const std::vector<double>& noise, std::size_t begin,
                    std::size_t end, bool* capped) {
  const double ps = power(signal, begin, end);
  const double pn = power(noise, begin, end);
  if (pn == 0.0) {
    *capped = true;
    return kSnrCapDb;
  }
  if (ps == 0.0) {
    *capped = true;
    return -kSnrCapDb;
  }
  return 10.0 * std::log10(ps / pn);
}

}  // namespace

double snr_db(const std::vector<double>& signal,
              const std::vector<double>& noise) {
  if (signal.size() != noise.size()) {
    throw InvalidConfig("snr_db: length mismatch");
  }
  const double pn = power(noise, 0, noise.size());
  if (pn == 0.0) throw DegenerateSnr("noise power is zero");
  return 10.0 * std::log10(power(signal, 0, signal.size()) / pn);
}

LearningCurve LearningCurve::from_errors(const std::vector<double>& e,
                                         std::size_t window) {
  LearningCurve c;
  c.mse.resize(e.size());
  for (std::size_t t = 0; t < e.size(); ++t) c.mse[t] = e[t] * e[t];
  c.smoothed.resize(e.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < e.size(); ++t) {
    acc += c.mse[t];
    if (t >= window) acc -= c.mse[t - window];
    const std::size_t n = std::min(t + 1, window);
    c.smoothed[t] = acc / static_cast<double>(n);
  }
  return c;
}

std::size_t samples_to_converge(const LearningCurve& curve) {
  const std::size_t n = curve.mse.size();
  if (n == 0) return 0;

  // Centered moving average wide enough to iron out amplitude modulation
  // of the target signal; the display smoothing (trailing, W=128) is too
  // narrow for a stable threshold test.
  const std::size_t w = std::max<std::size_t>(128, n / 8);
  std::vector<double> trend(n);
  double acc = 0.0;
  std::size_t lo = 0, hi = 0;  // [lo, hi) window around t
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t want_lo = t > w / 2 ? t - w / 2 : 0;
    const std::size_t want_hi = std::min(n, t + w / 2 + 1);
    while (hi < want_hi) acc += curve.mse[hi++];
    while (lo < want_lo) acc -= curve.mse[lo++];
    trend[t] = acc / static_cast<double>(hi - lo);
  }

  const std::size_t q = (3 * n) / 4;
  double final_mean = 0.0;
  for (std::size_t t = q; t < n; ++t) final_mean += trend[t];
  final_mean /= static_cast<double>(n - q);
  const double threshold = final_mean * std::pow(10.0, 0.3);  // +3 dB
  std::size_t converged_at = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (trend[t] > threshold) converged_at = t + 1;
  }
  return converged_at;
}

AncResult run_anc(const AncScenario& scenario, AdaptiveFilter& filter,
                  const RunOptions& opts) {
  const std::size_t n = scenario.length();
  if (scenario.n1.size() != n || scenario.d.size() != n ||
      scenario.n0.size() != n) {
    throw InvalidConfig("scenario streams differ in length");
  }
  if (filter.order() > n) {
    throw InvalidConfig("filter order exceeds scenario length");
  }

  AncResult res;
  res.e.reserve(n);
  res.y.reserve(n);
  auto* fap = opts.keep_update_log ? dynamic_cast<FapFilter*>(&filter) : nullptr;

  for (std::size_t t = 0; t < n; ++t) {
    StepResult sr;
    try {
      sr = filter.step(scenario.n1[t], scenario.d[t]);
    } catch (const NumericalDivergence& div) {
      res.diverged = true;
      res.divergence_index = t;
      break;
    }
    res.y.push_back(sr.y);
    res.e.push_back(sr.e);
    if (fap) res.update_log.push_back(fap->last_records());
  }

  res.curve = LearningCurve::from_errors(res.e, opts.smoothing_window);

  // Steady-state SNR window: final 50% of the produced samples.
  const std::size_t produced = res.e.size();
  const std::size_t begin = produced / 2;
  std::vector<double> residual_noise(produced);
  for (std::size_t t = 0; t < produced; ++t) {
    residual_noise[t] = res.e[t] - scenario.s[t];
  }
  bool cap_in = false, cap_out = false;
  res.snr_in = windowed_snr(scenario.s, scenario.n0, begin, produced, &cap_in);
  res.snr_out = windowed_snr(scenario.s, residual_noise, begin, produced, &cap_out);
  res.snr_capped = cap_in || cap_out;
  res.snri = res.snr_out - res.snr_in;
  return res;
}

}  // namespace anc
