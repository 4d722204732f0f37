#ifndef LGRPO_DUMP_HPP
#define LGRPO_DUMP_HPP

#include "lgrpo/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace lgrpo {

// Group dump file, all integers and floats little-endian:
//
//   offset 0   magic        4 bytes  "LGRD"
//          4   version      u16      1
//          6   flags        u16      bit 0: labels present (all other bits zero)
//          8   group_count  u32      > 0
//         12   dimension    u32      > 0
//   then per group:
//              g_size       u32      > 0
//              vectors      g_size * dimension f32, row-major
//              labels       g_size f32 in [0, 1], only when flag bit 0 is set
//
// The file ends exactly after the last group.

inline constexpr std::uint16_t kDumpVersion = 1;
inline constexpr std::uint16_t kDumpFlagLabels = 0x1;
inline constexpr std::size_t kDumpHeaderSize = 16;

/// Serializes groups. Throws EmptyInput for no groups, DimensionMismatch when
/// groups differ in dimension, ShapeMismatch when only some groups carry
/// labels, InvalidArgument for values a 32-bit float cannot hold.
std::vector<std::byte> encode_group_dump(std::span<const TrajectoryGroup> groups);

/// Parses a dump held in memory. Errors: BadMagic, UnsupportedVersion,
/// TruncatedFile (with byte offset), LabelOutOfRange, MalformedDump.
std::vector<TrajectoryGroup> decode_group_dump(std::span<const std::byte> bytes);

/// IoFailure on filesystem errors, otherwise as encode_group_dump.
void write_group_dump(std::span<const TrajectoryGroup> groups, const std::filesystem::path& path);

std::vector<TrajectoryGroup> read_group_dump(const std::filesystem::path& path);

} // namespace lgrpo

#endif
