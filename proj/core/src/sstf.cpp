#include "sstpca/sstf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sstpca/error.hpp"

namespace sstpca::sstf {
namespace {

constexpr std::array<std::uint8_t, 5> kMagic{'S', 'S', 'T', 'F', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

std::vector<std::uint8_t> encode(const DenseTensor& y) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 8 * y.size());
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  put_u32(out, y.p());
  put_u32(out, y.n());
  for (const double v : y.data()) put_f64(out, v);
  return out;
}

DenseTensor decode(std::span<const std::uint8_t> bytes, std::uint64_t entry_cap) {
  if (bytes.size() < kHeaderSize) throw FormatError("SSTF1: truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw FormatError("SSTF1: bad magic bytes");
  }
  if (bytes[5] != kVersion) {
    throw FormatError("SSTF1: unsupported version " + std::to_string(bytes[5]));
  }
  const std::uint32_t p = get_u32(bytes.data() + 6);
  const std::uint32_t n = get_u32(bytes.data() + 10);
  const std::uint64_t count = checked_entry_count(n, p, entry_cap);
  if (bytes.size() != kHeaderSize + 8 * count) {
    throw FormatError("SSTF1: payload has " + std::to_string(bytes.size() - kHeaderSize) +
                      " bytes, expected " + std::to_string(8 * count));
  }
  std::vector<double> data(count);
  const std::uint8_t* cursor = bytes.data() + kHeaderSize;
  for (std::uint64_t i = 0; i < count; ++i, cursor += 8) data[i] = get_f64(cursor);
  return DenseTensor(n, p, std::move(data), entry_cap);
}

void write(std::ostream& out, const DenseTensor& y) {
  const auto bytes = encode(y);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("SSTF1: write failed");
}

DenseTensor read(std::istream& in, std::uint64_t entry_cap) {
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  return decode(bytes, entry_cap);
}

void save(const std::filesystem::path& path, const DenseTensor& y) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write(out, y);
}

DenseTensor load(const std::filesystem::path& path, std::uint64_t entry_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read(in, entry_cap);
}

}  // namespace sstpca::sstf
