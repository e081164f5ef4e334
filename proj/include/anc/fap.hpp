#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "anc/delay_line.hpp"
#include "anc/filter.hpp"
#include "anc/inner_product_cache.hpp"

namespace anc {

// Which norm divides the projection in the column-selection argmax.
// kNorm is the matching-pursuit projection length |<e, x_j>| / ||x_j||;
// kNormSquared uses ||x_j||^2 instead. Both pick the same index when the
// column norms are equal.
enum class SelectionNorm { kNorm, kNormSquared };

// One coefficient update within a sample's iteration sequence.
struct UpdateRecord {
  std::size_t index;    // selected tap
  double value;         // projection coefficient before step-size scaling
  std::size_t iteration;
};

struct FapConfig {
  std::size_t order;        // M
  std::size_t window;       // L, must exceed M
  std::size_t iterations;   // P updates per sample
  double mu;
  SelectionNorm selection_norm = SelectionNorm::kNorm;
  double norm_floor = 1e-12;  // columns at or below this energy are skipped
  std::size_t rebuild_every = 0;  // 0 = never; else periodic cache rebuild
};

// Matching-pursuit fast affine projection. Per sample: refresh the
// sliding-window inner products, then run P rounds of greedy single-
// coefficient selection and update. The L-length residual is never
// materialized; everything runs on the M-dimensional residual cross
// vector rho(j) = <e_i, x_j>.
class FapFilter : public AdaptiveFilter {
 public:
  explicit FapFilter(const FapConfig& cfg);

  // Full per-sample procedure; records of the applied updates are kept
  // until the next step.
  StepResult step(double x_new, double d_new) override;

  const std::vector<double>& taps() const override { return h_; }
  std::size_t order() const override { return h_.size(); }

  const std::vector<UpdateRecord>& last_records() const { return records_; }

  // The three phases, exposed individually for the oracle tests.
  void refresh(double x_new, double d_new);
  std::optional<UpdateRecord> select(std::size_t iteration) const;
  void apply(const UpdateRecord& rec);

  const InnerProductCache& cache() const { return cache_; }
  const std::vector<double>& residual_cross() const { return rho_; }
  const FapConfig& config() const { return cfg_; }

 private:
  FapConfig cfg_;
  std::vector<double> h_;
  DelayLine x_line_;  // lags to M+L-1
  DelayLine d_line_;  // lags to L
  InnerProductCache cache_;
  std::vector<double> rho_;  // <e_i, x_j> for the current iteration
  std::vector<UpdateRecord> records_;
  std::size_t n_ = 0;
};

}  // namespace anc
