#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace anc {

enum class NoiseKind { kWhite, kColored, kBabble };

NoiseKind parse_noise_kind(const std::string& name);
std::string to_string(NoiseKind kind);

// The five signal roles of the two-microphone setup: clean speech s, the
// noise source n1 seen at the reference sensor, the unknown FIR channel w_e
// from the noise source to the primary sensor, the primary-sensor noise
// n0 = w_e * n1, and the primary input d = s + n0.
struct AncScenario {
  std::vector<double> s;
  std::vector<double> n1;
  std::vector<double> n0;
  std::vector<double> d;
  std::vector<double> w_e;

  std::size_t length() const { return s.size(); }
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  std::size_t length = 30000;
  std::size_t channel_order = 8;
  double snr_target_db = -10.0;
  NoiseKind noise_kind = NoiseKind::kBabble;
  bool zero_speech = false;  // s = 0, for exact-identification runs
};

// Deterministic synthetic stand-in for a two-microphone recording: a
// speech-like AR(2) process with pitch-rate amplitude modulation for s,
// one of three noise generators for n1, and a random decaying FIR channel.
// The channel gain is solved so the SNR of d against s hits the target
// exactly (trivially so when s is zero, where the target is ignored).
AncScenario synth_scenario(const ScenarioConfig& cfg);

// FIR convolution with zero initial conditions, matching input length.
std::vector<double> fir_filter(const std::vector<double>& taps,
                               const std::vector<double>& input);

}  // namespace anc
