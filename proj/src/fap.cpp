#include "anc/fap.hpp"

#include <cmath>

namespace anc {

FapFilter::FapFilter(const FapConfig& cfg)
    : cfg_(cfg),
      h_(cfg.order, 0.0),
      x_line_(cfg.order + cfg.window),
      d_line_(cfg.window + 1),
      cache_(cfg.order, cfg.window),
      rho_(cfg.order, 0.0) {
  if (cfg.order == 0) throw InvalidConfig("filter order must be positive");
  if (cfg.window <= cfg.order) throw InvalidConfig("window L must exceed order M");
  if (cfg.iterations == 0) throw InvalidConfig("iteration count P must be positive");
  if (cfg.mu <= 0.0) throw InvalidConfig("mu must be positive");
}

void FapFilter::refresh(double x_new, double d_new) {
  x_line_.push(x_new);
  d_line_.push(d_new);
  if (cfg_.rebuild_every > 0 && n_ > 0 && n_ % cfg_.rebuild_every == 0) {
    cache_.rebuild(x_line_, d_line_);
  } else {
    cache_.step(x_line_, d_line_);
  }
  const std::size_t m = h_.size();
  for (std::size_t j = 0; j < m; ++j) {
    double acc = cache_.cross(j);
    for (std::size_t k = 0; k < m; ++k) acc -= h_[k] * cache_.gram(k, j);
    rho_[j] = acc;
  }
}

std::optional<UpdateRecord> FapFilter::select(std::size_t iteration) const {
  const std::size_t m = h_.size();
  double best_score = -1.0;
  std::size_t best_j = m;
  for (std::size_t j = 0; j < m; ++j) {
    const double energy = cache_.norm_sq(j);
    if (energy <= cfg_.norm_floor) continue;
    const double denom = cfg_.selection_norm == SelectionNorm::kNorm
                             ? std::sqrt(energy)
                             : energy;
    const double score = std::fabs(rho_[j]) / denom;
    if (score > best_score) {  // strict: ties go to the smallest index
      best_score = score;
      best_j = j;
    }
  }
  if (best_j == m) return std::nullopt;
  return UpdateRecord{best_j, rho_[best_j] / cache_.norm_sq(best_j), iteration};
}

void FapFilter::apply(const UpdateRecord& rec) {
  const double scaled = cfg_.mu * rec.value;
  h_[rec.index] += scaled;
  if (!std::isfinite(h_[rec.index])) {
    throw NumericalDivergence(n_, "FAP tap non-finite");
  }
  const std::size_t m = h_.size();
  for (std::size_t j = 0; j < m; ++j) {
    rho_[j] -= scaled * cache_.gram(rec.index, j);
  }
}

StepResult FapFilter::step(double x_new, double d_new) {
  refresh(x_new, d_new);

  // Scalar a priori error with this sample's pre-update coefficients.
  const std::size_t m = h_.size();
  double y = 0.0;
  for (std::size_t k = 0; k < m; ++k) y += h_[k] * x_line_.at(k);
  const double e = d_new - y;

  records_.clear();
  for (std::size_t i = 0; i < cfg_.iterations; ++i) {
    auto rec = select(i);
    if (!rec) break;  // silent window, nothing eligible this sample
    apply(*rec);
    records_.push_back(*rec);
  }
  ++n_;
  return {y, e};
}

}  // namespace anc
