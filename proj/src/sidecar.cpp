#include "seedsel/sidecar.hpp"

#include <zlib.h>

#include <algorithm>
#include <string>

#include "seedsel/errors.hpp"

namespace seedsel {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename T>
T get_le(std::span<const std::uint8_t> in, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<T>(in[offset + i]) << (8 * i));
  }
  return value;
}

}  // namespace

std::uint32_t crc32_ieee(std::span<const std::uint8_t> bytes) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

std::vector<std::uint8_t> encode_sidecar(const SeedSidecar& s) {
  if (s.selected_index >= s.num_candidates) {
    throw EncodingError("sidecar: selected_index " + std::to_string(s.selected_index) +
                        " must be < num_candidates " + std::to_string(s.num_candidates));
  }
  std::vector<std::uint8_t> out(kSidecarMagic.begin(), kSidecarMagic.end());
  out.reserve(kSidecarSize);
  out.push_back(kSidecarVersion);
  put_le(out, s.total_steps);
  put_le(out, s.num_candidates);
  put_le(out, s.selected_index);
  put_le(out, s.base_seed);
  put_le(out, crc32_ieee(out));
  return out;
}

SeedSidecar decode_sidecar(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSidecarSize) {
    throw TruncationError("sidecar: expected " + std::to_string(kSidecarSize) + " bytes, got " +
                          std::to_string(bytes.size()));
  }
  if (bytes.size() > kSidecarSize) {
    throw FormatError("sidecar: trailing bytes after the " + std::to_string(kSidecarSize) +
                      "-byte record");
  }
  if (!std::equal(kSidecarMagic.begin(), kSidecarMagic.end(), bytes.begin())) {
    throw FormatError("sidecar: bad magic");
  }
  if (bytes[4] != kSidecarVersion) {
    throw FormatError("sidecar: unsupported version " + std::to_string(bytes[4]));
  }
  const std::uint32_t stored = get_le<std::uint32_t>(bytes, kSidecarPayloadSize);
  if (stored != crc32_ieee(bytes.first(kSidecarPayloadSize))) {
    throw CorruptionError("sidecar: CRC mismatch");
  }
  SeedSidecar s;
  s.total_steps = get_le<std::uint16_t>(bytes, 5);
  s.num_candidates = get_le<std::uint16_t>(bytes, 7);
  s.selected_index = get_le<std::uint16_t>(bytes, 9);
  s.base_seed = get_le<std::uint64_t>(bytes, 11);
  if (s.selected_index >= s.num_candidates) {
    throw SemanticError("sidecar: selected_index " + std::to_string(s.selected_index) +
                        " out of range for " + std::to_string(s.num_candidates) + " candidates");
  }
  return s;
}

}  // namespace seedsel
