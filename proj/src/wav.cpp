#include "anc/wav.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace anc {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

WavData wav_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw UnsupportedFormat("not a RIFF/WAVE file: " + path);
  }

  WavData out;
  bool have_fmt = false;
  const unsigned char* data_chunk = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t len = read_u32(bytes.data() + pos + 4);
    if (pos + 8 + len > bytes.size()) break;
    const unsigned char* body = bytes.data() + pos + 8;
    if (std::memcmp(id, "fmt ", 4) == 0 && len >= 16) {
      const std::uint16_t format = read_u16(body);
      const std::uint16_t channels = read_u16(body + 2);
      const std::uint16_t bits = read_u16(body + 14);
      if (format != 1) {
        throw UnsupportedFormat("only PCM (format 1) WAV is supported: " + path);
      }
      if (channels != 1) {
        throw UnsupportedFormat("only mono WAV is supported (" +
                                std::to_string(channels) + " channels): " + path);
      }
      if (bits != 16) {
        throw UnsupportedFormat("only 16-bit WAV is supported (" +
                                std::to_string(bits) + " bits): " + path);
      }
      out.sample_rate = read_u32(body + 4);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_chunk = body;
      data_len = len;
    }
    pos += 8 + len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_chunk == nullptr) {
    throw UnsupportedFormat("missing fmt/data chunk: " + path);
  }

  const std::size_t count = data_len / 2;
  out.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::int16_t raw = static_cast<std::int16_t>(
        data_chunk[2 * i] | (data_chunk[2 * i + 1] << 8));
    out.samples[i] = static_cast<double>(raw) / 32768.0;
  }
  return out;
}

std::size_t wav_write(const std::string& path, const std::vector<double>& samples,
                      std::uint32_t sample_rate) {
  std::size_t clipped = 0;
  std::string body;
  body.reserve(44 + samples.size() * 2);
  const std::uint32_t data_len = static_cast<std::uint32_t>(samples.size() * 2);

  body.append("RIFF");
  put_u32(body, 36 + data_len);
  body.append("WAVE");
  body.append("fmt ");
  put_u32(body, 16);
  put_u16(body, 1);  // PCM
  put_u16(body, 1);  // mono
  put_u32(body, sample_rate);
  put_u32(body, sample_rate * 2);
  put_u16(body, 2);
  put_u16(body, 16);
  body.append("data");
  put_u32(body, data_len);

  for (double v : samples) {
    double scaled = v * 32768.0;
    if (scaled > 32767.0) {
      scaled = 32767.0;
      ++clipped;
    } else if (scaled < -32768.0) {
      scaled = -32768.0;
      ++clipped;
    }
    const auto q = static_cast<std::int16_t>(std::lrint(scaled));
    put_u16(body, static_cast<std::uint16_t>(q));
  }

  write_file_atomic(path, body);
  return clipped;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path + ": " + ec.message());
}

}  // namespace anc
