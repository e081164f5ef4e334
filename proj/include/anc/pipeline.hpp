#pragma once

#include <cstddef>
#include <vector>

#include "anc/fap.hpp"
#include "anc/filter.hpp"
#include "anc/scenario.hpp"

namespace anc {

class DegenerateSnr : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 10*log10(P_signal / P_noise) over whole series.
double snr_db(const std::vector<double>& signal, const std::vector<double>& noise);

struct LearningCurve {
  std::vector<double> mse;       // e^2 per sample
  std::vector<double> smoothed;  // moving average, partial windows at edges

  static LearningCurve from_errors(const std::vector<double>& e,
                                   std::size_t window = 128);
};

// First sample index where the smoothed curve enters and stays within 3 dB
// of its final-quartile mean.
std::size_t samples_to_converge(const LearningCurve& curve);

struct AncResult {
  std::vector<double> e;  // denoised output, d - y
  std::vector<double> y;
  LearningCurve curve;
  double snr_in = 0.0;
  double snr_out = 0.0;
  double snri = 0.0;
  bool snr_capped = false;  // residual noise vanished; snr_out pinned at 150
  bool diverged = false;
  std::size_t divergence_index = 0;
  std::vector<std::vector<UpdateRecord>> update_log;  // FAP only
};

struct RunOptions {
  std::size_t smoothing_window = 128;
  bool keep_update_log = false;
};

// Drive one filter over the two-microphone scenario: x = n1, desired = d.
// SNR figures use the final 50% of samples; the curve covers everything.
AncResult run_anc(const AncScenario& scenario, AdaptiveFilter& filter,
                  const RunOptions& opts = {});

}  // namespace anc
