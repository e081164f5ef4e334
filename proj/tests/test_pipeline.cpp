#include <doctest.h>

#include <cmath>
#include <vector>

#include "anc/fap.hpp"
#include "anc/filters_classic.hpp"
#include "anc/pipeline.hpp"
#include "anc/scenario.hpp"

using anc::AncScenario;
using anc::ScenarioConfig;

namespace {

// Pass-through "filter": y = 0, e = d. Used to pin the snri = 0 baseline.
class ZeroFilter : public anc::AdaptiveFilter {
 public:
  explicit ZeroFilter(std::size_t order) : h_(order, 0.0) {}
  anc::StepResult step(double, double d_new) override { return {0.0, d_new}; }
  const std::vector<double>& taps() const override { return h_; }
  std::size_t order() const override { return h_.size(); }

 private:
  std::vector<double> h_;
};

ScenarioConfig default_cfg() {
  ScenarioConfig cfg;
  cfg.seed = 5;
  cfg.length = 6000;
  cfg.channel_order = 8;
  cfg.snr_target_db = -10.0;
  cfg.noise_kind = anc::NoiseKind::kColored;
  return cfg;
}

}  // namespace

TEST_CASE("snr_db basics") {
  std::vector<double> sig(100, 1.0);
  std::vector<double> noise(100, 0.1);
  CHECK(anc::snr_db(sig, noise) == doctest::Approx(20.0));
  CHECK(anc::snr_db(sig, sig) == doctest::Approx(0.0));
  std::vector<double> zero(100, 0.0);
  CHECK_THROWS_AS(anc::snr_db(sig, zero), anc::DegenerateSnr);
}

TEST_CASE("scenario construction invariants") {
  const AncScenario sc = anc::synth_scenario(default_cfg());
  REQUIRE(sc.length() == 6000);
  for (std::size_t t = 0; t < sc.length(); ++t) {
    CHECK(sc.d[t] == sc.s[t] + sc.n0[t]);  // exact by construction
  }
  const std::vector<double> n0_check = anc::fir_filter(sc.w_e, sc.n1);
  for (std::size_t t = 0; t < sc.length(); ++t) CHECK(sc.n0[t] == n0_check[t]);
  CHECK(sc.w_e[0] != 0.0);
  // Target SNR is hit by construction.
  CHECK(anc::snr_db(sc.s, sc.n0) == doctest::Approx(-10.0).epsilon(1e-3));
}

TEST_CASE("same seed gives bit-identical scenarios") {
  const AncScenario a = anc::synth_scenario(default_cfg());
  const AncScenario b = anc::synth_scenario(default_cfg());
  CHECK(a.s == b.s);
  CHECK(a.n1 == b.n1);
  CHECK(a.d == b.d);
  CHECK(a.w_e == b.w_e);
}

TEST_CASE("different noise kinds are all generated") {
  for (auto kind : {anc::NoiseKind::kWhite, anc::NoiseKind::kColored,
                    anc::NoiseKind::kBabble}) {
    ScenarioConfig cfg = default_cfg();
    cfg.noise_kind = kind;
    cfg.length = 2000;
    const AncScenario sc = anc::synth_scenario(cfg);
    double p = 0.0;
    for (double v : sc.n1) p += v * v;
    CHECK(p > 0.0);
  }
}

TEST_CASE("output identity e + y = d for every algorithm") {
  ScenarioConfig cfg = default_cfg();
  cfg.length = 1500;
  const AncScenario sc = anc::synth_scenario(cfg);

  anc::LmsFilter lms(8, 0.002);
  anc::NlmsFilter nlms(8, 0.005);
  anc::RlsFilter rls(8, 0.99);
  anc::FapConfig fc{8, 25, 8, 0.002};
  anc::FapFilter fap(fc);

  for (anc::AdaptiveFilter* f :
       std::initializer_list<anc::AdaptiveFilter*>{&lms, &nlms, &rls, &fap}) {
    const anc::AncResult res = anc::run_anc(sc, *f);
    REQUIRE(res.e.size() == sc.length());
    for (std::size_t t = 0; t < sc.length(); ++t) {
      CHECK(res.e[t] == sc.d[t] - res.y[t]);  // exact, e is computed this way
    }
    CHECK(!res.diverged);
  }
}

TEST_CASE("identity non-filter gives snri 0") {
  const AncScenario sc = anc::synth_scenario(default_cfg());
  ZeroFilter zf(8);
  const anc::AncResult res = anc::run_anc(sc, zf);
  CHECK(std::fabs(res.snri) < 1e-9);
}

TEST_CASE("boundary run of length M completes") {
  ScenarioConfig cfg = default_cfg();
  cfg.length = 8;
  cfg.channel_order = 4;
  const AncScenario sc = anc::synth_scenario(cfg);
  anc::NlmsFilter f(8, 0.5);
  const anc::AncResult res = anc::run_anc(sc, f);
  CHECK(!res.diverged);
  CHECK(res.e.size() == 8);
  CHECK(std::isfinite(res.snri));
}

TEST_CASE("divergence truncates instead of aborting") {
  const AncScenario sc = anc::synth_scenario(default_cfg());
  anc::LmsFilter f(8, 1e9);
  const anc::AncResult res = anc::run_anc(sc, f);
  CHECK(res.diverged);
  CHECK(res.e.size() < sc.length());
  CHECK(res.e.size() == res.divergence_index);
}

TEST_CASE("speech is uncorrelated with the residual noise path") {
  ScenarioConfig cfg = default_cfg();
  cfg.length = 20000;
  cfg.noise_kind = anc::NoiseKind::kColored;
  const AncScenario sc = anc::synth_scenario(cfg);
  // Small step size: the residual jitter driven by s scales with mu.
  anc::NlmsFilter f(8, 0.01);
  const anc::AncResult res = anc::run_anc(sc, f);
  // E[e^2] = E[s^2] + E[(n0-y)^2] holds when the 2<s, n0-y> cross-term is
  // negligible next to the component powers.
  const std::size_t begin = sc.length() / 2;
  double cross = 0.0, ps = 0.0, pr = 0.0;
  for (std::size_t t = begin; t < sc.length(); ++t) {
    const double r = sc.n0[t] - res.y[t];
    cross += sc.s[t] * r;
    ps += sc.s[t] * sc.s[t];
    pr += r * r;
  }
  CHECK(std::fabs(2.0 * cross) / (ps + pr) < 0.05);
}

TEST_CASE("snri of a converged scale-invariant filter survives global gain") {
  ScenarioConfig cfg = default_cfg();
  cfg.length = 10000;
  AncScenario sc = anc::synth_scenario(cfg);

  anc::NlmsFilter a(8, 0.5, 0.0);
  const double snri_1 = anc::run_anc(sc, a).snri;

  const double g = 2.0;
  for (double& v : sc.s) v *= g;
  for (double& v : sc.n0) v *= g;
  for (double& v : sc.n1) v *= g;
  for (double& v : sc.d) v *= g;
  anc::NlmsFilter b(8, 0.5, 0.0);
  const double snri_g = anc::run_anc(sc, b).snri;
  CHECK(std::fabs(snri_1 - snri_g) < 0.1);
}

TEST_CASE("learning curve smoothing") {
  std::vector<double> e = {2.0, 0.0, 0.0, 0.0};
  const anc::LearningCurve c = anc::LearningCurve::from_errors(e, 2);
  REQUIRE(c.smoothed.size() == 4);
  CHECK(c.mse[0] == 4.0);
  CHECK(c.smoothed[0] == 4.0);  // partial window of 1
  CHECK(c.smoothed[1] == 2.0);
  CHECK(c.smoothed[2] == 0.0);
  for (double v : c.mse) CHECK(v >= 0.0);
}

TEST_CASE("convergence metric on a synthetic curve") {
  // 200 samples of high error then flat floor: convergence right at the drop.
  std::vector<double> e(1000, 0.01);
  for (int t = 0; t < 200; ++t) e[t] = 1.0;
  const anc::LearningCurve c = anc::LearningCurve::from_errors(e, 16);
  const std::size_t conv = anc::samples_to_converge(c);
  CHECK(conv >= 200);
  CHECK(conv <= 280);  // the centered trend window straddles the drop
}

TEST_CASE("FAP recovers the channel with zero speech") {
  ScenarioConfig cfg;
  cfg.seed = 9;
  cfg.length = 5000;
  cfg.channel_order = 6;
  cfg.zero_speech = true;
  cfg.noise_kind = anc::NoiseKind::kWhite;
  const AncScenario sc = anc::synth_scenario(cfg);

  anc::FapConfig fc{8, 25, 8, 0.5};
  anc::FapFilter f(fc);
  anc::run_anc(sc, f);
  double err = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    const double w = k < sc.w_e.size() ? sc.w_e[k] : 0.0;
    err += (f.taps()[k] - w) * (f.taps()[k] - w);
  }
  CHECK(std::sqrt(err) < 1e-3);
}

TEST_CASE("update log is captured for FAP") {
  ScenarioConfig cfg = default_cfg();
  cfg.length = 300;
  const AncScenario sc = anc::synth_scenario(cfg);
  anc::FapConfig fc{8, 25, 4, 0.5};
  anc::FapFilter f(fc);
  anc::RunOptions opts;
  opts.keep_update_log = true;
  const anc::AncResult res = anc::run_anc(sc, f, opts);
  REQUIRE(res.update_log.size() == 300);
  CHECK(res.update_log.back().size() == 4);
  for (const auto& rec : res.update_log.back()) CHECK(rec.index < 8);
}
