#include "anc/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "anc/filter.hpp"

namespace anc {

namespace {

// mt19937_64 output is standardized; the transforms below avoid the
// implementation-defined std:: distributions so runs are reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {  // Box-Muller, one value per call pair
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

double rms(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return v.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(v.size()));
}

void scale_to_rms(std::vector<double>& v, double target) {
  const double r = rms(v);
  if (r == 0.0) return;
  const double g = target / r;
  for (double& x : v) x *= g;
}

// Speech-like source: AR(2) resonance with a slowly wandering center
// frequency and pitch-rate amplitude modulation. The excitation is scaled
// by the inverse resonance gain so the output power stays stationary as
// the formant moves; otherwise the learning-curve floor wanders with it.
std::vector<double> make_speech(Rng& rng, std::size_t length) {
  std::vector<double> s(length, 0.0);
  const double phase1 = rng.uniform() * 2.0 * std::numbers::pi;
  const double phase2 = rng.uniform() * 2.0 * std::numbers::pi;
  const double radius = 0.95;
  const double r_sq = radius * radius;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t t = 0; t < length; ++t) {
    const double ft = static_cast<double>(t);
    const double theta =
        2.0 * std::numbers::pi *
        (0.05 + 0.03 * std::sin(2.0 * std::numbers::pi * ft / 4000.0 + phase1));
    const double a1 = 2.0 * radius * std::cos(theta);
    const double a2 = -r_sq;
    // Stationary variance of this AR(2) per unit excitation.
    const double var_gain = (1.0 + r_sq) /
                            ((1.0 - r_sq) * ((1.0 + r_sq) * (1.0 + r_sq) - a1 * a1));
    const double pitch =
        0.55 + 0.45 * std::sin(2.0 * std::numbers::pi * ft / 137.0 + phase2);
    const double v =
        a1 * s1 + a2 * s2 + rng.gaussian() * pitch / std::sqrt(var_gain);
    s2 = s1;
    s1 = v;
    s[t] = v;
  }
  scale_to_rms(s, 0.05);
  return s;
}

std::vector<double> make_noise(Rng& rng, std::size_t length, NoiseKind kind) {
  std::vector<double> n(length, 0.0);
  switch (kind) {
    case NoiseKind::kWhite:
      for (std::size_t t = 0; t < length; ++t) n[t] = rng.gaussian();
      break;
    case NoiseKind::kColored: {
      // AR(1) shaping; mild pole keeps the slow LMS modes inside the
      // benchmark horizon.
      const double a = 0.9;
      double prev = 0.0;
      for (std::size_t t = 0; t < length; ++t) {
        prev = a * prev + rng.gaussian();
        n[t] = prev;
      }
      break;
    }
    case NoiseKind::kBabble: {
      // Amplitude-modulated resonant stream: a narrowband voice whose
      // excitation swells and nearly dies on a syllable-scale period. The
      // deep power dips are the point — they keep sample-normalized
      // adapters unsettled the way real babble does.
      const double theta =
          2.0 * std::numbers::pi * (0.03 + 0.09 * rng.uniform());
      const double mod_rate = 900.0 + 2200.0 * rng.uniform();
      const double phase = rng.uniform() * 2.0 * std::numbers::pi;
      const double a1 = 2.0 * 0.9 * std::cos(theta);
      const double a2 = -0.81;
      double v1 = 0.0, v2 = 0.0;
      for (std::size_t t = 0; t < length; ++t) {
        const double env =
            0.5 + 0.5 * std::sin(2.0 * std::numbers::pi *
                                     static_cast<double>(t) / mod_rate +
                                 phase);
        const double am = 0.05 + 0.95 * env * env;
        const double x = a1 * v1 + a2 * v2 + rng.gaussian() * am;
        v2 = v1;
        v1 = x;
        n[t] = x;
      }
      break;
    }
  }
  scale_to_rms(n, 0.45);
  return n;
}

}  // namespace

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "white") return NoiseKind::kWhite;
  if (name == "colored") return NoiseKind::kColored;
  if (name == "babble") return NoiseKind::kBabble;
  throw InvalidConfig("unknown noise kind: " + name);
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kWhite: return "white";
    case NoiseKind::kColored: return "colored";
    case NoiseKind::kBabble: return "babble";
  }
  return "?";
}

std::vector<double> fir_filter(const std::vector<double>& taps,
                               const std::vector<double>& input) {
  std::vector<double> out(input.size(), 0.0);
  for (std::size_t t = 0; t < input.size(); ++t) {
    double acc = 0.0;
    const std::size_t kmax = std::min(taps.size(), t + 1);
    for (std::size_t k = 0; k < kmax; ++k) acc += taps[k] * input[t - k];
    out[t] = acc;
  }
  return out;
}

AncScenario synth_scenario(const ScenarioConfig& cfg) {
  if (cfg.length == 0) throw InvalidConfig("scenario length must be positive");
  if (cfg.channel_order == 0) throw InvalidConfig("channel order must be positive");
  if (cfg.length <= cfg.channel_order) {
    throw InvalidConfig("scenario length must exceed channel order");
  }

  // Independent streams so changing one knob never reshuffles another.
  Rng speech_rng(cfg.seed * 0x9e3779b97f4a7c15ull + 1);
  Rng noise_rng(cfg.seed * 0x9e3779b97f4a7c15ull + 2);
  Rng channel_rng(cfg.seed * 0x9e3779b97f4a7c15ull + 3);

  AncScenario sc;
  sc.s = cfg.zero_speech ? std::vector<double>(cfg.length, 0.0)
                         : make_speech(speech_rng, cfg.length);
  sc.n1 = make_noise(noise_rng, cfg.length, cfg.noise_kind);

  // Decaying random channel; |w_e(0)| >= 0.5 before scaling.
  std::vector<double> w(cfg.channel_order);
  for (std::size_t k = 0; k < cfg.channel_order; ++k) {
    const double mag = 0.5 + 0.5 * channel_rng.uniform();
    const double sign = channel_rng.uniform() < 0.5 ? -1.0 : 1.0;
    w[k] = sign * mag * std::pow(0.7, static_cast<double>(k));
  }

  if (!cfg.zero_speech) {
    // Solve the channel gain so that SNR(d vs s) lands on the target.
    const std::vector<double> n0_raw = fir_filter(w, sc.n1);
    double ps = 0.0, pn = 0.0;
    for (double v : sc.s) ps += v * v;
    for (double v : n0_raw) pn += v * v;
    if (pn <= 0.0) throw InvalidConfig("reference noise is degenerate");
    const double gain =
        std::sqrt(ps / (pn * std::pow(10.0, cfg.snr_target_db / 10.0)));
    for (double& v : w) v *= gain;
  }

  sc.w_e = w;
  sc.n0 = fir_filter(sc.w_e, sc.n1);
  sc.d.resize(cfg.length);
  for (std::size_t t = 0; t < cfg.length; ++t) sc.d[t] = sc.s[t] + sc.n0[t];
  return sc;
}

}  // namespace anc
