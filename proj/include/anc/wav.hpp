#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace anc {

class UnsupportedFormat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WavData {
  std::vector<double> samples;  // int16 / 32768, in [-1, 1)
  std::uint32_t sample_rate = 16000;
};

// Mono 16-bit PCM RIFF/WAVE only; anything else raises UnsupportedFormat
// with the offending property in the message.
WavData wav_read(const std::string& path);

// Inverse mapping with saturation at [-32768, 32767]. Returns the number of
// clipped samples. The file is written atomically (temp + rename).
std::size_t wav_write(const std::string& path, const std::vector<double>& samples,
                      std::uint32_t sample_rate);

// Atomic whole-file text write, shared by the CSV/JSON emitters.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace anc
