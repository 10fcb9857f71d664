#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "sstpca/tensor.hpp"

namespace sstpca {

/// SSTF1 binary tensor format.
///
///   bytes 0-4   magic "SSTF1"
///   byte  5     version 0x01
///   bytes 6-9   p, uint32 little-endian
///   bytes 10-13 n, uint32 little-endian
///   then n^p IEEE-754 binary64 values, little-endian, lexicographic order
namespace sstf {

inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 14;

std::vector<std::uint8_t> encode(const DenseTensor& y);
DenseTensor decode(std::span<const std::uint8_t> bytes, std::uint64_t entry_cap = kDefaultEntryCap);

void write(std::ostream& out, const DenseTensor& y);
DenseTensor read(std::istream& in, std::uint64_t entry_cap = kDefaultEntryCap);

void save(const std::filesystem::path& path, const DenseTensor& y);
DenseTensor load(const std::filesystem::path& path, std::uint64_t entry_cap = kDefaultEntryCap);

}  // namespace sstf
}  // namespace sstpca
