#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace seedsel {

// Seed sidecar wire format, all integers little-endian:
//
//   offset  size  field
//        0     4  magic "GSDS"
//        4     1  version (0x01)
//        5     2  total_steps T
//        7     2  num_candidates N
//        9     2  selected_index (< N)
//       11     8  base_seed
//       19     4  CRC-32 (IEEE) of bytes [0, 19)
//
// The size never depends on the image or on N.
inline constexpr std::array<std::uint8_t, 4> kSidecarMagic = {'G', 'S', 'D', 'S'};
inline constexpr std::uint8_t kSidecarVersion = 0x01;
inline constexpr std::size_t kSidecarPayloadSize = 19;
inline constexpr std::size_t kSidecarSize = kSidecarPayloadSize + 4;

struct SeedSidecar {
  std::uint16_t total_steps = 20;
  std::uint16_t num_candidates = 5;
  std::uint16_t selected_index = 0;
  std::uint64_t base_seed = 0;

  bool operator==(const SeedSidecar&) const = default;
};

// IEEE 802.3 CRC-32 (reflected polynomial 0xEDB88320).
std::uint32_t crc32_ieee(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_sidecar(const SeedSidecar& s);

// Throws TruncationError (wrong length), FormatError (magic or version),
// CorruptionError (CRC) or SemanticError (index >= N).
SeedSidecar decode_sidecar(std::span<const std::uint8_t> bytes);

}  // namespace seedsel
